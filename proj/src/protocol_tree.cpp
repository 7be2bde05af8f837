#include "ccomp/protocol_tree.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "ccomp/tolerances.hpp"

namespace ccomp {

namespace {

std::int64_t fixed_bits(std::size_t alphabet_size) {
  if (alphabet_size <= 1) return 0;
  std::int64_t b = 0;
  std::size_t v = alphabet_size - 1;
  while (v > 0) {
    ++b;
    v >>= 1;
  }
  return b;
}

}  // namespace

ProtocolTree::ProtocolTree(std::vector<std::string> x_range, std::vector<std::string> y_range,
                           std::vector<Owner> owners,
                           std::vector<std::vector<std::string>> alphabets)
    : x_range_(std::move(x_range)),
      y_range_(std::move(y_range)),
      owners_(std::move(owners)),
      alphabets_(std::move(alphabets)) {
  if (x_range_.empty() || y_range_.empty())
    throw std::invalid_argument("ProtocolTree: empty input range");
  if (owners_.empty()) throw std::invalid_argument("ProtocolTree: zero rounds");
  if (owners_.size() != alphabets_.size())
    throw std::invalid_argument("ProtocolTree: owners/alphabets size mismatch");
  for (const auto& a : alphabets_)
    if (a.empty()) throw std::invalid_argument("ProtocolTree: empty round alphabet");
  bit_lengths_.resize(owners_.size());
  for (std::size_t i = 0; i < owners_.size(); ++i)
    bit_lengths_[i].assign(alphabets_[i].size(), fixed_bits(alphabets_[i].size()));
}

void ProtocolTree::set_policy(std::size_t round, std::size_t input, const Transcript& prefix,
                              std::vector<double> probs) {
  if (round >= rounds()) throw std::invalid_argument("set_policy: round out of range");
  if (prefix.size() != round) throw std::invalid_argument("set_policy: prefix length != round");
  if (input >= owner_range(round).size())
    throw std::invalid_argument("set_policy: input out of range");
  if (probs.size() != alphabets_[round].size())
    throw std::invalid_argument("set_policy: wrong distribution size");
  FiniteDist check(alphabets_[round], probs);  // validates
  policy_[{round, input, prefix}] = std::move(probs);
}

const std::vector<double>& ProtocolTree::policy(std::size_t round, std::size_t input,
                                                const Transcript& prefix) const {
  const auto it = policy_.find({round, input, prefix});
  if (it == policy_.end())
    throw std::invalid_argument("ProtocolTree: missing policy entry (round " +
                                std::to_string(round) + ")");
  return it->second;
}

bool ProtocolTree::has_policy(std::size_t round, std::size_t input,
                              const Transcript& prefix) const {
  return policy_.count({round, input, prefix}) > 0;
}

void ProtocolTree::set_output(const Transcript& transcript, std::string z) {
  if (transcript.size() != rounds())
    throw std::invalid_argument("set_output: transcript length != rounds");
  output_[transcript] = std::move(z);
}

const std::string& ProtocolTree::output(const Transcript& transcript) const {
  const auto it = output_.find(transcript);
  if (it == output_.end())
    throw std::invalid_argument("ProtocolTree: missing output for transcript " +
                                transcript_name(transcript));
  return it->second;
}

void ProtocolTree::set_bit_lengths(std::size_t round, std::vector<std::int64_t> lengths) {
  if (round >= rounds()) throw std::invalid_argument("set_bit_lengths: round out of range");
  if (lengths.size() != alphabets_[round].size())
    throw std::invalid_argument("set_bit_lengths: size mismatch");
  for (std::int64_t b : lengths)
    if (b < 0) throw std::invalid_argument("set_bit_lengths: negative length");
  bit_lengths_[round] = std::move(lengths);
}

std::int64_t ProtocolTree::bit_length(std::size_t round, std::size_t symbol) const {
  return bit_lengths_.at(round).at(symbol);
}

std::vector<std::pair<Transcript, double>> ProtocolTree::transcript_table(std::size_t x,
                                                                          std::size_t y) const {
  if (x >= x_range_.size() || y >= y_range_.size())
    throw std::invalid_argument("transcript_table: input out of range");
  std::vector<std::pair<Transcript, double>> out;
  Transcript prefix;
  std::function<void(std::size_t, double)> walk = [&](std::size_t round, double weight) {
    if (weight <= 0.0) return;
    if (round == rounds()) {
      out.emplace_back(prefix, weight);
      return;
    }
    const auto& probs = policy(round, owner_input(round, x, y), prefix);
    for (std::size_t m = 0; m < probs.size(); ++m) {
      if (probs[m] <= 0.0) continue;
      prefix.push_back(m);
      walk(round + 1, weight * probs[m]);
      prefix.pop_back();
    }
  };
  walk(0, 1.0);
  return out;
}

FiniteDist ProtocolTree::transcript_distribution(std::size_t x, std::size_t y) const {
  const auto table = transcript_table(x, y);
  std::vector<std::string> symbols;
  std::vector<double> probs;
  symbols.reserve(table.size());
  probs.reserve(table.size());
  for (const auto& [t, p] : table) {
    symbols.push_back(transcript_name(t));
    probs.push_back(p);
  }
  return FiniteDist::normalized(std::move(symbols), std::move(probs));
}

std::vector<Transcript> ProtocolTree::reachable_transcripts() const {
  std::set<Transcript> seen;
  for (std::size_t x = 0; x < x_range_.size(); ++x)
    for (std::size_t y = 0; y < y_range_.size(); ++y)
      for (const auto& [t, p] : transcript_table(x, y))
        if (p > 0.0) seen.insert(t);
  return {seen.begin(), seen.end()};
}

std::int64_t ProtocolTree::communication_cost() const {
  std::int64_t best = 0;
  for (const auto& t : reachable_transcripts()) {
    std::int64_t bits = 0;
    for (std::size_t i = 0; i < t.size(); ++i) bits += bit_length(i, t[i]);
    if (bits > best) best = bits;
  }
  return best;
}

std::string ProtocolTree::transcript_name(const Transcript& t) const {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += alphabets_[i][t[i]];
  }
  return s;
}

void ProtocolTree::validate() const {
  // Walk all (input, prefix) nodes with positive reach and demand a policy;
  // demand an output on every reachable leaf.
  for (std::size_t x = 0; x < x_range_.size(); ++x) {
    for (std::size_t y = 0; y < y_range_.size(); ++y) {
      for (const auto& [t, p] : transcript_table(x, y)) {
        (void)p;
        output(t);
      }
    }
  }
}

}  // namespace ccomp
