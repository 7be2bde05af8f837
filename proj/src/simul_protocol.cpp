#include "ccomp/simul_protocol.hpp"

#include <stdexcept>

#include "ccomp/info.hpp"

namespace ccomp {

void SimulProtocol::validate() const {
  if (x_range.empty() || y_range.empty())
    throw std::invalid_argument("SimulProtocol: empty input range");
  if (alice_policy.size() != x_range.size() || bob_policy.size() != y_range.size())
    throw std::invalid_argument("SimulProtocol: policy table not total");
  for (const auto& row : alice_policy) FiniteDist(alice_alphabet, row);
  for (const auto& row : bob_policy) FiniteDist(bob_alphabet, row);
  if (referee.size() != alice_alphabet.size())
    throw std::invalid_argument("SimulProtocol: referee table not total on Alice messages");
  for (const auto& row : referee)
    if (row.size() != bob_alphabet.size())
      throw std::invalid_argument("SimulProtocol: referee table not total on Bob messages");
}

FiniteDist SimulProtocol::alice_message_dist(std::size_t x) const {
  return FiniteDist(alice_alphabet, alice_policy.at(x));
}

FiniteDist SimulProtocol::bob_message_dist(std::size_t y) const {
  return FiniteDist(bob_alphabet, bob_policy.at(y));
}

FiniteDist SimulProtocol::alice_marginal() const {
  std::vector<double> probs(alice_alphabet.size(), 0.0);
  for (const auto& row : alice_policy)
    for (std::size_t m = 0; m < row.size(); ++m) probs[m] += row[m] / alice_policy.size();
  return FiniteDist::normalized(alice_alphabet, std::move(probs));
}

FiniteDist SimulProtocol::bob_marginal() const {
  std::vector<double> probs(bob_alphabet.size(), 0.0);
  for (const auto& row : bob_policy)
    for (std::size_t m = 0; m < row.size(); ++m) probs[m] += row[m] / bob_policy.size();
  return FiniteDist::normalized(bob_alphabet, std::move(probs));
}

double SimulProtocol::alice_information() const {
  const FiniteDist marg = alice_marginal();
  double info = 0.0;
  for (std::size_t x = 0; x < x_range.size(); ++x)
    info += relative_entropy(alice_message_dist(x), marg) / x_range.size();
  return info;
}

double SimulProtocol::bob_information() const {
  const FiniteDist marg = bob_marginal();
  double info = 0.0;
  for (std::size_t y = 0; y < y_range.size(); ++y)
    info += relative_entropy(bob_message_dist(y), marg) / y_range.size();
  return info;
}

double SimulProtocol::success_probability(const FunctionSpec& f, std::size_t x,
                                          std::size_t y) const {
  double ok = 0.0;
  for (std::size_t ma = 0; ma < alice_alphabet.size(); ++ma) {
    const double pa = alice_policy[x][ma];
    if (pa <= 0.0) continue;
    for (std::size_t mb = 0; mb < bob_alphabet.size(); ++mb) {
      const double pb = bob_policy[y][mb];
      if (pb <= 0.0) continue;
      if (f.accepts_symbol(x, y, referee[ma][mb])) ok += pa * pb;
    }
  }
  return ok;
}

ErrorReport SimulProtocol::evaluate_error(const FunctionSpec& f) const {
  ErrorReport rep;
  const double w = 1.0 / (x_range.size() * y_range.size());
  for (std::size_t x = 0; x < x_range.size(); ++x) {
    for (std::size_t y = 0; y < y_range.size(); ++y) {
      const double err = 1.0 - success_probability(f, x, y);
      rep.per_input[{x, y}] = err;
      rep.distributional += w * err;
      if (err > rep.worst_case) rep.worst_case = err;
    }
  }
  return rep;
}

}  // namespace ccomp
