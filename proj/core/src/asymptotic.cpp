#include "bsdist/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

namespace bsdist {

namespace {

void require_even_total(std::int64_t n_total, const char* who) {
  if (n_total < 0 || (n_total & 1))
    throw std::domain_error(std::string(who) + ": N must be even and >= 0");
}

void require_point(std::int64_t n_total, std::int64_t m_a, const char* who) {
  if (m_a < 0 || m_a > n_total)
    throw std::domain_error(std::string(who) + ": m_a outside [0, n_total]");
}

void require_imbalance(std::int64_t ny, std::int64_t n_total, const char* who) {
  if (ny < 0 || (ny & 1) || ny > n_total)
    throw std::domain_error(std::string(who) +
                            ": ny must be even and in [0, N]");
}

}  // namespace

BranchTag branch_of(std::int64_t n_total, std::int64_t m_a) {
  require_even_total(n_total, "branch_of");
  require_point(n_total, m_a, "branch_of");
  // N(1+x)/4 = m_a/2: integer exactly when m_a is even.
  return (m_a & 1) ? BranchTag::half_integer_branch : BranchTag::integer_branch;
}

BranchTag branch_of_x(std::int64_t n_total, double x, double tol) {
  require_even_total(n_total, "branch_of_x");
  const double r = static_cast<double>(n_total) * (1.0 + x) / 4.0;
  if (std::abs(r - std::round(r)) <= tol) return BranchTag::integer_branch;
  if (std::abs(r + 0.5 - std::round(r + 0.5)) <= tol)
    return BranchTag::half_integer_branch;
  return BranchTag::vanishing;
}

SignedLogValue balanced_asymptotic(std::int64_t n_total, std::int64_t m_a) {
  require_even_total(n_total, "balanced_asymptotic");
  require_point(n_total, m_a, "balanced_asymptotic");
  if (m_a & 1) return SignedLogValue::zero();
  if (m_a == 0 || m_a == n_total)
    throw std::domain_error("balanced_asymptotic: diverges at |x| = 1");
  const double x = grid_x(n_total, m_a);
  const double lm = std::log(2.0) -
                    0.5 * std::log(kPi * static_cast<double>(n_total)) -
                    0.25 * std::log1p(-x * x);
  const int sign = ((m_a / 2) & 1) ? -1 : +1;
  return SignedLogValue{sign, lm};
}

SignedLogValue imbalanced_amplitude(std::int64_t n_total, std::int64_t ny,
                                    std::int64_t m_a) {
  require_even_total(n_total, "imbalanced_amplitude");
  require_point(n_total, m_a, "imbalanced_amplitude");
  require_imbalance(ny, n_total, "imbalanced_amplitude");

  const std::int64_t N = n_total;
  const std::int64_t n = ny / 2;
  const std::int64_t m_b = N - m_a;
  const std::int64_t n_in_a = (N + ny) / 2;
  const std::int64_t n_in_b = (N - ny) / 2;

  const double x = grid_x(N, m_a);
  const double phi = kPi / 2.0 + std::asin(x);
  const double nd = static_cast<double>(n);

  double pref_lm = 0.5 * (log_factorial(m_a) + log_factorial(m_b) -
                          log_factorial(n_in_a) - log_factorial(n_in_b)) -
                   0.5 * static_cast<double>(N) * std::log(2.0);
  if (N > 0)
    pref_lm += static_cast<double>(ny) * static_cast<double>(ny) /
               (4.0 * static_cast<double>(N));

  double value;        // slow factor, O(1)
  SignedLogValue bin;  // branch binomial
  if ((m_a & 1) == 0) {
    // Integer branch: -(x sin(n phi) + sin((n-1) phi)) / sin(phi), which is
    // cos(n phi) in closed form; the 0/0 at the edges has a finite limit.
    const std::int64_t j = m_a / 2;
    bin = log_binomial(N / 2, j);
    if (m_a == 0) {
      value = 1.0;
    } else if (m_a == N) {
      value = (n & 1) ? -1.0 : 1.0;  // cos(n pi)
    } else {
      const double sphi = std::sqrt((1.0 - x) * (1.0 + x));
      value = -(x * std::sin(nd * phi) + std::sin((nd - 1.0) * phi)) / sphi;
    }
    if (j & 1) value = -value;
  } else {
    const std::int64_t k = (m_a - 1) / 2;
    bin = log_binomial(N / 2 - 1, k);
    const double sphi = std::sqrt((1.0 - x) * (1.0 + x));
    value = 2.0 * std::sin(nd * phi) / sphi;
    if (k & 1) value = -value;
  }

  if (value == 0.0 || bin.is_zero()) return SignedLogValue::zero();
  return SignedLogValue{value > 0.0 ? +1 : -1,
                        pref_lm + bin.log_mag + std::log(std::abs(value))};
}

SignedLogValue large_n_amplitude(std::int64_t n_total, std::int64_t ny,
                                 std::int64_t m_a) {
  require_even_total(n_total, "large_n_amplitude");
  require_point(n_total, m_a, "large_n_amplitude");
  require_imbalance(ny, n_total, "large_n_amplitude");
  if (n_total < 100)
    throw std::invalid_argument("large_n_amplitude: requires N >= 100");

  const std::int64_t N = n_total;
  const std::int64_t n = ny / 2;
  const double Nd = static_cast<double>(N);
  const double y = static_cast<double>(ny) / Nd;
  const double x = grid_x(N, m_a);
  const double phi = kPi / 2.0 + std::asin(x);
  const double nd = static_cast<double>(n);

  // e^{N y^2/4} / ((1+y)^{N(1+y)/4} (1-y)^{N(1-y)/4} (1-y^2)^{1/4});
  // t ln t -> 0 as t -> 0, so total imbalance degrades to a tagged infinity
  // instead of a NaN.
  auto plogp = [](double t) { return t > 0.0 ? t * std::log(t) : 0.0; };
  const double env_lm = Nd * y * y / 4.0 -
                        Nd / 4.0 * (plogp(1.0 + y) + plogp(1.0 - y)) -
                        0.25 * (std::log1p(y) + std::log1p(-y));
  const double base_lm = std::log(2.0) - 0.5 * std::log(kPi * Nd) + env_lm;

  const bool edge = (m_a == 0 || m_a == N);
  if ((m_a & 1) == 0) {
    const std::int64_t j = m_a / 2;
    double trig = std::cos(nd * phi);
    if (edge) trig = (m_a == 0) ? 1.0 : ((n & 1) ? -1.0 : 1.0);
    if (j & 1) trig = -trig;
    if (trig == 0.0) return SignedLogValue::zero();
    if (edge) {
      // Integer branch diverges as (1 - x^2)^{-1/4}: tagged edge value.
      return SignedLogValue{trig > 0.0 ? +1 : -1,
                            std::numeric_limits<double>::infinity()};
    }
    const double lm = base_lm - 0.25 * std::log1p(-x * x);
    return SignedLogValue{trig > 0.0 ? +1 : -1, lm + std::log(std::abs(trig))};
  }
  const std::int64_t k = (m_a - 1) / 2;
  double trig = std::sin(nd * phi);
  if (k & 1) trig = -trig;
  if (trig == 0.0) return SignedLogValue::zero();
  const double lm = base_lm - 0.25 * std::log1p(-x * x);
  return SignedLogValue{trig > 0.0 ? +1 : -1, lm + std::log(std::abs(trig))};
}

double arcsine_envelope(double x) {
  if (!(std::abs(x) < 1.0))
    throw std::domain_error("arcsine_envelope: requires |x| < 1");
  return 1.0 / (kPi * std::sqrt((1.0 - x) * (1.0 + x)));
}

}  // namespace bsdist
