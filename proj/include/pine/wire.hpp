#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pine/field.hpp"

namespace pine {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void fe(const Field& f, Fe a) { f.write(a, out_); }
  void fes(const Field& f, std::span<const Fe> v) {
    for (Fe a : v) f.write(a, out_);
  }

  const std::vector<std::uint8_t>& data() const { return out_; }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

// Every accessor throws FormatError when the input runs short.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::span<const std::uint8_t> bytes(std::size_t n);
  Fe fe(const Field& f);
  std::vector<Fe> fes(const Field& f, std::size_t n);

  std::size_t remaining() const { return in_.size() - pos_; }
  void expect_end() const;

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> b);

}  // namespace pine
