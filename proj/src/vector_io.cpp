#include "pine/vector_io.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pine/error.hpp"
#include "pine/wire.hpp"

namespace pine {

namespace {

constexpr char kMagic[4] = {'P', 'I', 'N', 'V'};

bool next_token(std::istream& in, std::string& tok) {
  while (in >> tok) {
    if (tok[0] != '#') return true;
    std::string rest;
    std::getline(in, rest);
  }
  return false;
}

template <typename T>
T parse_number(const std::string& tok, const char* what) {
  std::istringstream is(tok);
  T v{};
  if (!(is >> v) || is.peek() != std::char_traits<char>::eof()) {
    throw FormatError(std::string("bad ") + what + ": '" + tok + "'");
  }
  return v;
}

}  // namespace

InputVector parse_vector_text(std::istream& in) {
  std::string tok;
  InputVector v;
  if (!next_token(in, tok)) throw FormatError("empty vector file");
  const auto d = parse_number<std::uint64_t>(tok, "dimension");
  if (!next_token(in, tok)) throw FormatError("missing bound");
  v.B = parse_number<std::uint64_t>(tok, "bound");
  if (!next_token(in, tok)) throw FormatError("missing precision");
  v.precision = parse_number<unsigned>(tok, "precision");
  if (d == 0) throw FormatError("dimension must be positive");
  v.values.reserve(d);
  while (next_token(in, tok)) v.values.push_back(parse_number<std::int64_t>(tok, "entry"));
  if (v.values.size() != d) {
    throw FormatError("expected " + std::to_string(d) + " entries, found " + std::to_string(v.values.size()));
  }
  return v;
}

InputVector parse_vector_binary(std::span<const std::uint8_t> in) {
  ByteReader r(in);
  const auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("missing vector magic");
  InputVector v;
  const std::uint64_t d = r.u64();
  v.B = r.u64();
  v.precision = r.u32();
  if (d == 0) throw FormatError("dimension must be positive");
  if (d > r.remaining() / 8) throw FormatError("vector file is truncated");
  v.values.resize(d);
  for (auto& x : v.values) x = static_cast<std::int64_t>(r.u64());
  r.expect_end();
  return v;
}

InputVector parse_vector(std::span<const std::uint8_t> in) {
  if (in.size() >= 4 && std::memcmp(in.data(), kMagic, 4) == 0) return parse_vector_binary(in);
  std::istringstream is(std::string(in.begin(), in.end()));
  return parse_vector_text(is);
}

std::string format_vector_text(const InputVector& v) {
  std::ostringstream os;
  os << v.values.size() << " " << v.B << " " << v.precision << "\n";
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    os << v.values[i] << ((i + 1) % 16 == 0 || i + 1 == v.values.size() ? "\n" : " ");
  }
  return os.str();
}

std::vector<std::uint8_t> format_vector_binary(const InputVector& v) {
  ByteWriter w;
  w.bytes(std::span(reinterpret_cast<const std::uint8_t*>(kMagic), 4));
  w.u64(v.values.size());
  w.u64(v.B);
  w.u32(v.precision);
  for (auto x : v.values) w.u64(static_cast<std::uint64_t>(x));
  return w.take();
}

InputVector encode_unit_vector(std::span<const double> x, unsigned precision) {
  if (x.empty()) throw std::invalid_argument("empty vector");
  if (precision > 30) throw std::invalid_argument("precision above 30 bits is not supported");
  double sq = 0;
  for (double e : x) sq += e * e;
  if (!(sq <= 1.0 + 1e-9)) throw std::invalid_argument("vector norm exceeds 1");
  const double scale = std::ldexp(1.0, static_cast<int>(precision));
  InputVector v;
  v.precision = precision;
  v.values.reserve(x.size());
  for (double e : x) v.values.push_back(static_cast<std::int64_t>(std::llround(e * scale)));
  const double radius = scale + std::sqrt(static_cast<double>(x.size())) / 2.0;
  v.B = static_cast<std::uint64_t>(std::ceil(radius * radius));
  return v;
}

}  // namespace pine
