#include "pine/wire.hpp"

#include <bit>
#include <cstring>

#include "pine/error.hpp"

namespace pine {

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteReader::need(std::size_t n) const {
  if (remaining() < n) throw FormatError("unexpected end of input");
}

std::uint8_t ByteReader::u8() {
  need(1);
  return in_[pos_++];
}

std::uint32_t ByteReader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | in_[pos_ + i];
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in_[pos_ + i];
  pos_ += 8;
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::span<const std::uint8_t> ByteReader::bytes(std::size_t n) {
  need(n);
  auto s = in_.subspan(pos_, n);
  pos_ += n;
  return s;
}

Fe ByteReader::fe(const Field& f) {
  need(f.byte_length());
  Fe a = f.read(in_.subspan(pos_, f.byte_length()));
  pos_ += f.byte_length();
  return a;
}

std::vector<Fe> ByteReader::fes(const Field& f, std::size_t n) {
  if (n > remaining() / f.byte_length()) throw FormatError("unexpected end of input");
  std::vector<Fe> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(fe(f));
  return v;
}

void ByteReader::expect_end() const {
  if (remaining() != 0) throw FormatError("trailing bytes after message");
}

std::string to_hex(std::span<const std::uint8_t> b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (auto c : b) {
    s.push_back(digits[c >> 4]);
    s.push_back(digits[c & 15]);
  }
  return s;
}

}  // namespace pine
