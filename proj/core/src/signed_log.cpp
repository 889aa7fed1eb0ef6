#include "bsdist/signed_log.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsdist {

namespace {

constexpr std::int64_t kTableSize = 16384;

// Cumulative sum of ln(k) in long double so that consecutive entries differ
// by ln(k+1) to well below double rounding.
std::vector<double> build_log_factorial_table() {
  std::vector<double> table(kTableSize);
  long double acc = 0.0L;
  table[0] = 0.0;
  for (std::int64_t k = 1; k < kTableSize; ++k) {
    acc += std::log(static_cast<long double>(k));
    table[k] = static_cast<double>(acc);
  }
  return table;
}

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = build_log_factorial_table();
  return table;
}

}  // namespace

double log_factorial(std::int64_t k) {
  if (k < 0) throw std::domain_error("log_factorial: negative argument");
  if (k < kTableSize) return log_factorial_table()[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

SignedLogValue log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("log_binomial: negative n");
  if (k < 0 || k > n) return SignedLogValue::zero();
  return SignedLogValue{+1, log_factorial(n) - log_factorial(k) -
                                log_factorial(n - k)};
}

namespace {

// Structural zeros (e.g. the suppressed balanced outputs) cancel in exactly
// opposite pairs. When the compensated sum lands inside the roundoff band,
// annihilate bitwise-equal opposite-sign magnitudes and re-sum the remainder;
// an empty remainder is an exact zero, not a small number.
SignedLogValue cancel_exact_pairs(std::span<const SignedLogValue> terms,
                                  double max_lm) {
  std::vector<SignedLogValue> sorted;
  sorted.reserve(terms.size());
  for (const auto& t : terms)
    if (t.sign != 0) sorted.push_back(t);
  std::sort(sorted.begin(), sorted.end(),
            [](const SignedLogValue& a, const SignedLogValue& b) {
              if (a.log_mag != b.log_mag) return a.log_mag < b.log_mag;
              return a.sign < b.sign;
            });
  std::vector<SignedLogValue> rest;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].log_mag == sorted[i].log_mag) ++j;
    int net = 0;
    for (std::size_t k = i; k < j; ++k) net += sorted[k].sign;
    for (int k = 0; k < std::abs(net); ++k)
      rest.push_back(SignedLogValue{net > 0 ? +1 : -1, sorted[i].log_mag});
    i = j;
  }
  if (rest.empty()) return SignedLogValue::zero();
  double sum = 0.0, comp = 0.0;
  for (const auto& t : rest) {
    const double v = static_cast<double>(t.sign) * std::exp(t.log_mag - max_lm);
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  if (sum == 0.0) return SignedLogValue::zero();
  return SignedLogValue{sum > 0.0 ? +1 : -1, max_lm + std::log(std::abs(sum))};
}

}  // namespace

SignedLogValue signed_log_sum(std::span<const SignedLogValue> terms) {
  double max_lm = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign != 0 && t.log_mag > max_lm) max_lm = t.log_mag;
  }
  if (!std::isfinite(max_lm)) return SignedLogValue::zero();

  // Kahan summation of sign * exp(log_mag - max_lm).
  double sum = 0.0, comp = 0.0;
  double gross = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double v = static_cast<double>(t.sign) * std::exp(t.log_mag - max_lm);
    gross += std::abs(v);
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  if (std::abs(sum) <= 64.0 * std::numeric_limits<double>::epsilon() * gross)
    return cancel_exact_pairs(terms, max_lm);
  if (sum == 0.0) return SignedLogValue::zero();
  return SignedLogValue{sum > 0.0 ? +1 : -1, max_lm + std::log(std::abs(sum))};
}

SignedLogValue pow_signed_log(double base, std::int64_t k) {
  if (base == 0.0) {
    if (k == 0) return SignedLogValue::one();
    if (k > 0) return SignedLogValue::zero();
    throw std::domain_error("pow_signed_log: 0 raised to negative power");
  }
  const int sign = (base < 0.0 && (k & 1)) ? -1 : +1;
  return SignedLogValue{sign, static_cast<double>(k) * std::log(std::abs(base))};
}

}  // namespace bsdist
