#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccomp/finite_dist.hpp"

namespace ccomp {

enum class Owner { alice, bob };

/// Transcripts are tuples of per-round alphabet indices. Bit accounting is a
/// separate layer: each round carries per-symbol bit lengths (defaulting to
/// the fixed ceil(log2 |alphabet|) encoding), so variable-length encodings
/// produced by compression live in the same representation.
using Transcript = std::vector<std::size_t>;

/// A k-round private-coin protocol as an explicit finite tree. The policy of
/// round i depends only on (owner's input, transcript prefix); the output is
/// a function of the full transcript alone.
class ProtocolTree {
 public:
  ProtocolTree(std::vector<std::string> x_range, std::vector<std::string> y_range,
               std::vector<Owner> owners, std::vector<std::vector<std::string>> alphabets);

  std::size_t rounds() const { return owners_.size(); }
  Owner owner(std::size_t round) const { return owners_[round]; }
  const std::vector<std::string>& x_range() const { return x_range_; }
  const std::vector<std::string>& y_range() const { return y_range_; }
  const std::vector<std::string>& alphabet(std::size_t round) const { return alphabets_[round]; }

  /// Policy table. The input index refers to the owner's range.
  void set_policy(std::size_t round, std::size_t input, const Transcript& prefix,
                  std::vector<double> probs);
  const std::vector<double>& policy(std::size_t round, std::size_t input,
                                    const Transcript& prefix) const;
  bool has_policy(std::size_t round, std::size_t input, const Transcript& prefix) const;

  void set_output(const Transcript& transcript, std::string z);
  const std::string& output(const Transcript& transcript) const;

  /// Per-symbol encoded lengths for one round (variable-length encodings).
  void set_bit_lengths(std::size_t round, std::vector<std::int64_t> lengths);
  std::int64_t bit_length(std::size_t round, std::size_t symbol) const;

  /// Exact law of the full transcript on input (x, y): the product of policy
  /// probabilities along each root-leaf path.
  std::vector<std::pair<Transcript, double>> transcript_table(std::size_t x,
                                                              std::size_t y) const;
  /// Same law as a distribution over ','-joined transcript symbols.
  FiniteDist transcript_distribution(std::size_t x, std::size_t y) const;

  /// All transcripts reachable with positive probability from some input.
  std::vector<Transcript> reachable_transcripts() const;

  /// Max over reachable transcripts of the summed encoded length. With the
  /// default fixed encoding this equals sum_i ceil(log2 |alphabet_i|).
  std::int64_t communication_cost() const;

  std::string transcript_name(const Transcript& t) const;

  /// Checks policies are present and valid on every reachable node and that
  /// the output map is total on reachable transcripts.
  void validate() const;

 private:
  std::vector<std::string> x_range_, y_range_;
  std::vector<Owner> owners_;
  std::vector<std::vector<std::string>> alphabets_;
  std::vector<std::vector<std::int64_t>> bit_lengths_;
  std::map<std::tuple<std::size_t, std::size_t, Transcript>, std::vector<double>> policy_;
  std::map<Transcript, std::string> output_;

  const std::vector<std::string>& owner_range(std::size_t round) const {
    return owners_[round] == Owner::alice ? x_range_ : y_range_;
  }
  std::size_t owner_input(std::size_t round, std::size_t x, std::size_t y) const {
    return owners_[round] == Owner::alice ? x : y;
  }

 public:
  const std::map<std::tuple<std::size_t, std::size_t, Transcript>, std::vector<double>>&
  policy_table() const {
    return policy_;
  }
  const std::map<Transcript, std::string>& output_table() const { return output_; }
  std::size_t owner_input_of(std::size_t round, std::size_t x, std::size_t y) const {
    return owner_input(round, x, y);
  }
  const std::vector<std::string>& owner_range_of(std::size_t round) const {
    return owner_range(round);
  }
};

}  // namespace ccomp
