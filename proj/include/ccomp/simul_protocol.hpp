#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccomp/finite_dist.hpp"
#include "ccomp/function_spec.hpp"

namespace ccomp {

/// One-shot simultaneous-message protocol: Alice and Bob each send one
/// private-coin message to a referee who announces the answer.
struct SimulProtocol {
  std::vector<std::string> x_range, y_range;
  std::vector<std::string> alice_alphabet, bob_alphabet;
  std::vector<std::vector<double>> alice_policy;  // [x][message]
  std::vector<std::vector<double>> bob_policy;    // [y][message]
  std::vector<std::vector<std::string>> referee;  // [mA][mB] -> z symbol

  void validate() const;

  FiniteDist alice_message_dist(std::size_t x) const;
  FiniteDist bob_message_dist(std::size_t y) const;
  /// Marginal of Alice's message under the uniform input distribution.
  FiniteDist alice_marginal() const;
  FiniteDist bob_marginal() const;

  /// I(X : M_A) with X uniform, in bits (and symmetrically for Bob).
  double alice_information() const;
  double bob_information() const;

  /// Pr[referee answers acceptably | x, y], exact.
  double success_probability(const FunctionSpec& f, std::size_t x, std::size_t y) const;
  /// Exact per-input errors under the uniform input distribution.
  ErrorReport evaluate_error(const FunctionSpec& f) const;
};

}  // namespace ccomp
