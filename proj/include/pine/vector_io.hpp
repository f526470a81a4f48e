#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pine {

// A client input: d signed integers with a claimed squared-norm bound B.
// precision records the fixed-point scale 2^precision used to encode it
// (0 for native integer data).
struct InputVector {
  std::uint64_t B = 0;
  unsigned precision = 0;
  std::vector<std::int64_t> values;
};

// Text form: "d B precision" on the first non-comment line ('#' starts a
// comment), then d whitespace-separated integers.
// Binary form: "PINV" | u64 d | u64 B | u32 precision | d x i64, little-endian.
// Both throw FormatError on malformed input.
InputVector parse_vector_text(std::istream& in);
InputVector parse_vector_binary(std::span<const std::uint8_t> in);
// Detects the binary magic, otherwise parses text.
InputVector parse_vector(std::span<const std::uint8_t> in);

std::string format_vector_text(const InputVector& v);
std::vector<std::uint8_t> format_vector_binary(const InputVector& v);

// Fixed-point encoding of a real vector with ||x||_2 <= 1: round(2^precision x_i).
// The bound is the worst case after rounding, ceil((2^precision + sqrt(d)/2)^2).
// Throws std::invalid_argument if ||x||_2 > 1 (beyond a 1e-9 tolerance).
InputVector encode_unit_vector(std::span<const double> x, unsigned precision);

}  // namespace pine
