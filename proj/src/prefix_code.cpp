#include "ccomp/prefix_code.hpp"

#include <stdexcept>

namespace ccomp {

namespace {

int floor_log2_u64(std::uint64_t j) {
  int b = -1;
  while (j > 0) {
    ++b;
    j >>= 1;
  }
  return b;
}

}  // namespace

std::string prefix_free_encode(std::uint64_t j) {
  if (j == 0) return "0";
  const int lg = floor_log2_u64(j);
  std::string out = "1";
  out.append(static_cast<std::size_t>(lg), '0');
  for (int b = lg; b >= 0; --b) out += ((j >> b) & 1u) ? '1' : '0';
  return out;
}

std::uint64_t prefix_free_decode_stream(const std::string& bits, std::size_t& pos) {
  if (pos >= bits.size()) throw std::invalid_argument("prefix code: empty input");
  if (bits[pos] == '0') {
    ++pos;
    return 0;
  }
  ++pos;
  std::size_t zeros = 0;
  while (pos < bits.size() && bits[pos] == '0') {
    ++zeros;
    ++pos;
  }
  if (pos >= bits.size()) throw std::invalid_argument("prefix code: truncated header");
  ++pos;  // the marker one, also the leading bit of j
  std::uint64_t j = 1;
  for (std::size_t b = 0; b < zeros; ++b) {
    if (pos >= bits.size()) throw std::invalid_argument("prefix code: truncated payload");
    j = (j << 1) | static_cast<std::uint64_t>(bits[pos] == '1');
    ++pos;
  }
  return j;
}

std::uint64_t prefix_free_decode(const std::string& bits) {
  std::size_t pos = 0;
  const std::uint64_t j = prefix_free_decode_stream(bits, pos);
  if (pos != bits.size()) throw std::invalid_argument("prefix code: trailing bits");
  return j;
}

std::int64_t prefix_code_length_from_log2(std::int64_t floor_log2_j) {
  if (floor_log2_j < 0) throw std::invalid_argument("prefix code: log2 must be >= 0");
  return 2 * floor_log2_j + 2;
}

std::int64_t prefix_code_length(std::uint64_t j) {
  if (j == 0) return 1;
  return prefix_code_length_from_log2(floor_log2_u64(j));
}

}  // namespace ccomp
