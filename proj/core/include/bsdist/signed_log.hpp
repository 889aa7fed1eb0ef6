#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace bsdist {

using Complex = std::complex<double>;

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Keeps quantities like N! and the beam-splitter amplitudes (ratios of
/// numbers ~ 10^600) inside ordinary double precision. sign == 0 encodes an
/// exact zero and log_mag is then meaningless.
struct SignedLogValue {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static SignedLogValue zero() { return {}; }
  static SignedLogValue one() { return {+1, 0.0}; }

  static SignedLogValue from_log(int sign, double log_mag) {
    if (sign == 0) return zero();
    return {sign > 0 ? +1 : -1, log_mag};
  }

  static SignedLogValue from_real(double v) {
    if (v == 0.0) return zero();
    return {v > 0.0 ? +1 : -1, std::log(std::abs(v))};
  }

  double to_real() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::exp(log_mag);
  }

  bool is_zero() const { return sign == 0; }

  SignedLogValue negated() const { return {-sign, log_mag}; }
  SignedLogValue abs() const { return {sign == 0 ? 0 : +1, log_mag}; }

  friend SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.log_mag + b.log_mag};
  }
  friend SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
    if (a.sign == 0) return zero();
    return {a.sign * b.sign, a.log_mag - b.log_mag};
  }
  friend SignedLogValue operator-(SignedLogValue a) { return a.negated(); }
};

/// ln(k!), exact 0 for k in {0, 1}. Cached table up to an internal threshold,
/// lgamma beyond. Relative error <= 1e-12. Throws std::domain_error for k < 0.
double log_factorial(std::int64_t k);

/// Binomial coefficient C(n, k) in signed log form. Out-of-range k (k < 0 or
/// k > n) yields an exact zero, which is the convention the closed-form
/// amplitude branches rely on. Requires n >= 0.
SignedLogValue log_binomial(std::int64_t n, std::int64_t k);

/// Sum of signed log-domain terms. Rescales by the maximum log magnitude and
/// accumulates with Kahan compensation, so inputs spanning hundreds of orders
/// of magnitude neither overflow nor lose the compensated digits. An input
/// that cancels exactly returns an exact zero.
SignedLogValue signed_log_sum(std::span<const SignedLogValue> terms);

/// Incremental form of signed_log_sum for hot loops: push terms, then total().
class SignedLogAccumulator {
 public:
  void clear() { terms_.clear(); }
  void push(SignedLogValue v) {
    if (v.sign != 0) terms_.push_back(v);
  }
  void push(int sign, double log_mag) {
    if (sign != 0) terms_.push_back(SignedLogValue{sign, log_mag});
  }
  SignedLogValue total() const {
    return signed_log_sum(std::span<const SignedLogValue>(terms_));
  }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<SignedLogValue> terms_;
};

/// base^k as a SignedLogValue for integer k, with 0^0 = 1 and 0^k = 0 for
/// k > 0. Negative k with base 0 throws std::domain_error.
SignedLogValue pow_signed_log(double base, std::int64_t k);

}  // namespace bsdist
