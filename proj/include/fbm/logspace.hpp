#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace fbm {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without leaving log space. -inf acts as the identity.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

namespace detail {

// ln(k!) for k < kLogFactorialTableSize, accumulated in extended precision
// with Kahan compensation and kept in long double. The Beta-ratio identities
// cancel values in the thousands down to single digits; doing that
// subtraction in double costs ~1e-12 relative accuracy, in long double it
// stays at a few ulp.
inline constexpr std::size_t kLogFactorialTableSize = 1 << 17;

inline const std::vector<long double>& log_factorial_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kLogFactorialTableSize);
    long double sum = 0.0L;
    long double comp = 0.0L;
    t[0] = 0.0L;
    for (std::size_t k = 1; k < kLogFactorialTableSize; ++k) {
      const long double term = logl(static_cast<long double>(k)) - comp;
      const long double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
      t[k] = sum;
    }
    return t;
  }();
  return table;
}

inline long double log_factorial_ext(std::uint64_t k) {
  const auto& table = log_factorial_table();
  if (k < table.size()) return table[k];
  return lgammal(static_cast<long double>(k) + 1.0L);
}

}  // namespace detail

/// ln(k!). Table lookup below 2^17, lgamma beyond.
inline double log_factorial(std::uint64_t k) {
  return static_cast<double>(detail::log_factorial_ext(k));
}

/// ln Beta(a, b) for integer a, b >= 1:
/// Beta(a, b) = Gamma(a)Gamma(b)/Gamma(a+b) = (a-1)!(b-1)!/(a+b-1)!.
/// Combined in extended precision, rounded once on return.
inline double log_beta_int(std::uint64_t a, std::uint64_t b) {
  return static_cast<double>(detail::log_factorial_ext(a - 1) +
                             detail::log_factorial_ext(b - 1) -
                             detail::log_factorial_ext(a + b - 1));
}

}  // namespace fbm
