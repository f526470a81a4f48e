#include "pine/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pine {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_choose(std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return (std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1)) / std::log(2.0);
}

double log2_sum(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0;
  for (double t : terms) s += std::exp2(t - m);
  return m + std::log2(s);
}

}  // namespace

double log2_binomial_upper_tail(std::size_t n, std::size_t k, double p) {
  if (k == 0) return 0.0;
  if (k > n || p <= 0.0) return kNegInf;
  if (p >= 1.0) return 0.0;
  const double lp = std::log2(p);
  const double lq = std::log1p(-p) / std::log(2.0);
  std::vector<double> terms;
  terms.reserve(n - k + 1);
  for (std::size_t j = k; j <= n; ++j) {
    terms.push_back(log2_choose(n, j) + static_cast<double>(j) * lp + static_cast<double>(n - j) * lq);
  }
  return log2_sum(terms);
}

double binomial_upper_tail(std::size_t n, std::size_t k, double p) {
  return std::exp2(log2_binomial_upper_tail(n, k, p));
}

double log2_err_sound(std::size_t r, std::size_t tau_r) {
  if (tau_r > r) throw std::invalid_argument("tau*r exceeds r");
  if (tau_r == 0) return 0.0;
  std::vector<double> terms;
  for (std::size_t j = tau_r; j <= r; ++j) terms.push_back(log2_choose(r, j) - static_cast<double>(r));
  return log2_sum(terms);
}

double err_sound(std::size_t r, std::size_t tau_r) { return std::exp2(log2_err_sound(r, tau_r)); }

double log2_err_complete(std::size_t r, std::size_t tau_r, double eta) {
  if (tau_r > r) throw std::invalid_argument("tau*r exceeds r");
  // Rejection happens when failures exceed r - tau_r.
  return log2_binomial_upper_tail(r, r - tau_r + 1, eta);
}

double err_complete(std::size_t r, std::size_t tau_r, double eta) {
  return std::exp2(log2_err_complete(r, tau_r, eta));
}

std::size_t tau_count(std::size_t r, double tau) {
  if (!(tau > 0.5 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (1/2, 1]");
  const double x = tau * static_cast<double>(r);
  const double k = std::round(x);
  if (std::fabs(x - k) > 5e-5 * static_cast<double>(r) + 1e-9) {
    throw std::invalid_argument("tau*r is not an integer");
  }
  return static_cast<std::size_t>(k);
}

}  // namespace pine
