#pragma once

#include <cstdint>
#include <string>

namespace ccomp {

/// Self-delimiting integer code used for stopping-index transmission.
/// Codeword "0" is reserved for the dummy/abort message; j >= 1 is sent as
/// "1" followed by a unary length header (floor(log2 j) zeros, then a one)
/// and the remaining floor(log2 j) low bits of j. Total length for j >= 1 is
/// 2 floor(log2 j) + 2 bits, within the 2 floor(log2 j) + 3 budget.
std::string prefix_free_encode(std::uint64_t j);

/// Inverse of prefix_free_encode on a single codeword.
std::uint64_t prefix_free_decode(const std::string& bits);

/// Decodes the first codeword of a stream starting at pos; advances pos.
std::uint64_t prefix_free_decode_stream(const std::string& bits, std::size_t& pos);

/// Codeword length in bits for an index known only through floor(log2 j),
/// for indices too large to materialize.
std::int64_t prefix_code_length_from_log2(std::int64_t floor_log2_j);

std::int64_t prefix_code_length(std::uint64_t j);

}  // namespace ccomp
