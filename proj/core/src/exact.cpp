#include "bsdist/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "bsdist/asymptotic.hpp"
#include "bsdist/oracle.hpp"

namespace bsdist {

void FockInput::validate() const {
  if (n_total < 0) throw std::invalid_argument("FockInput: n_total < 0");
  if (n_a < 0 || n_a > n_total)
    throw std::invalid_argument("FockInput: n_a outside [0, n_total]");
  if (!std::isfinite(xi)) throw std::invalid_argument("FockInput: xi not finite");
}

std::string engine_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::exact: return "exact";
    case EngineKind::balanced_closed: return "balanced";
    case EngineKind::balanced_stirling: return "eq7";
    case EngineKind::imbalanced_analytic: return "eq17";
    case EngineKind::large_n: return "eq18";
    case EngineKind::oracle: return "oracle";
    case EngineKind::averaged_direct: return "average";
  }
  throw std::invalid_argument("engine_name: unknown engine");
}

EngineKind engine_from_name(const std::string& name) {
  if (name == "exact") return EngineKind::exact;
  if (name == "balanced") return EngineKind::balanced_closed;
  if (name == "eq7") return EngineKind::balanced_stirling;
  if (name == "eq17") return EngineKind::imbalanced_analytic;
  if (name == "eq18") return EngineKind::large_n;
  if (name == "oracle") return EngineKind::oracle;
  if (name == "average") return EngineKind::averaged_direct;
  throw std::invalid_argument("unknown engine: " + name);
}

double DistributionSeries::total_mass() const {
  double sum = 0.0, comp = 0.0;
  for (const auto& p : points) {
    const double a = p.amplitude.to_real();
    const double v = a * a;
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

namespace detail {

namespace {
unsigned thread_count() {
  if (const char* env = std::getenv("BSDIST_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min<long>(v, 64));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}
}  // namespace

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  const unsigned workers =
      std::min<std::int64_t>(thread_count(), std::max<std::int64_t>(n, 1));
  if (workers <= 1 || n < 64) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t lo = n * w / workers;
    const std::int64_t hi = n * (w + 1) / workers;
    pool.emplace_back([&fn, lo, hi] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

namespace {
bool is_half_mixing_angle(double xi) {
  return std::abs(xi - kHalfMixing) <= 1e-12;
}
}  // namespace

SignedLogValue leibniz_amplitude(const FockInput& input, std::int64_t m_a,
                                 double* err_bound) {
  input.validate();
  const std::int64_t N = input.n_total;
  if (m_a < 0 || m_a > N)
    throw std::domain_error("exact_amplitude: m_a outside [0, n_total]");

  // At the balanced mixing angle the evaluation points are the exact
  // rationals alpha = 1/2, beta = -1, gamma = 1/2. Using them keeps the
  // log magnitudes of the j <-> m_a - j term pairs bitwise identical for
  // balanced inputs, so the parity-suppressed outputs cancel to an exact
  // zero instead of a 1e-16 residue.
  const bool half = is_half_mixing_angle(input.xi);
  const double c = half ? std::sqrt(0.5) : std::cos(input.xi);
  const double s = half ? std::sqrt(0.5) : std::sin(input.xi);
  if (std::abs(c) < 1e-300)
    throw std::domain_error("exact_amplitude: cos(xi) = 0");

  const std::int64_t na = input.n_a;
  const std::int64_t nb = N - na;
  const double alpha = half ? 0.5 : s * c;   // sin(xi) cos(xi)
  const double beta = half ? -1.0 : -s / c;  // -tan(xi)
  const double gamma = half ? 0.5 : c * c;   // 1 + alpha*beta
  const double la = alpha == 0.0 ? 0.0 : std::log(std::abs(alpha));
  const double lb = beta == 0.0 ? 0.0 : std::log(std::abs(beta));
  const double lg = std::log(gamma);
  const bool alpha_neg = alpha < 0.0;
  const bool beta_neg = beta < 0.0;

  const std::int64_t j_lo = std::max<std::int64_t>(0, m_a - nb);
  const std::int64_t j_hi = std::min(m_a, na);

  const double base = log_factorial(m_a) + log_factorial(na) + log_factorial(nb);

  thread_local std::vector<SignedLogValue> terms;
  terms.clear();
  double max_term_lm = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const std::int64_t ea = na - j;          // power of alpha
    const std::int64_t eb = m_a - j;         // power of beta
    const std::int64_t eg = nb - m_a + j;    // power of gamma
    if (alpha == 0.0 && ea > 0) continue;
    if (beta == 0.0 && eb > 0) continue;
    // Grouped so the combinatorial part is symmetric under j <-> m_a - j.
    const double comb = (log_factorial(j) + log_factorial(m_a - j)) +
                        (log_factorial(na - j) + log_factorial(nb - m_a + j));
    double pows = 0.0;
    int sign = +1;
    if (alpha != 0.0) {
      pows += static_cast<double>(ea) * la + static_cast<double>(eg) * lg;
      if (alpha_neg && (ea & 1)) sign = -sign;
    } else {
      pows += static_cast<double>(eg) * lg;
    }
    if (beta != 0.0) {
      pows += static_cast<double>(eb) * lb;
      if (beta_neg && (eb & 1)) sign = -sign;
    }
    const double lm = (base - comb) + pows;
    max_term_lm = std::max(max_term_lm, lm);
    terms.push_back(SignedLogValue{sign, lm});
  }
  const SignedLogValue sum = signed_log_sum(terms);
  if (err_bound != nullptr) {
    if (sum.is_zero()) {
      *err_bound = 0.0;
    } else {
      *err_bound = static_cast<double>(terms.size()) *
                   std::numeric_limits<double>::epsilon() *
                   std::exp(max_term_lm - sum.log_mag);
    }
  }
  if (sum.is_zero()) return sum;

  // sqrt((N-m)! / m!) / sqrt(na! nb!) and cos(xi)^{2m - N}
  const double pref_lm =
      0.5 * (log_factorial(N - m_a) - log_factorial(m_a) -
             log_factorial(na) - log_factorial(nb));
  const SignedLogValue pref =
      half ? SignedLogValue{+1, pref_lm + (0.5 * static_cast<double>(N) -
                                           static_cast<double>(m_a)) *
                                              std::log(2.0)}
           : SignedLogValue{+1, pref_lm} * pow_signed_log(c, 2 * m_a - N);
  return pref * sum;
}

std::vector<SignedLogValue> exact_amplitudes(const FockInput& input) {
  input.validate();
  const std::int64_t N = input.n_total;
  std::vector<SignedLogValue> out(static_cast<std::size_t>(N) + 1);
  if (N == 0) {
    out[0] = leibniz_amplitude(input, 0);
    return out;
  }

  const bool half = is_half_mixing_angle(input.xi);
  const double beta_angle = 2.0 * input.xi;
  const double cb = half ? 0.0 : std::cos(beta_angle);
  const double sb = half ? 1.0 : std::sin(beta_angle);
  if (std::abs(sb) < 0.1) {
    // Small-rotation regime: the product-rule sum is graded (one dominant
    // term) and the recurrence divides by sin(2 xi); use the sum per point.
    for (std::int64_t m = 0; m <= N; ++m)
      out[static_cast<std::size_t>(m)] = leibniz_amplitude(input, m);
    return out;
  }

  // Seeds: single-term closed values at the two edges.
  out[0] = leibniz_amplitude(input, 0);
  out[static_cast<std::size_t>(N)] = leibniz_amplitude(input, N);

  const double half_n = 0.5 * static_cast<double>(N);
  const double kn = static_cast<double>(input.n_a) - half_n;
  // Meeting point: the classical center of the output distribution. Both
  // passes then run in their growing/neutral direction and stay stable.
  std::int64_t m_meet =
      static_cast<std::int64_t>(std::llround(half_n + kn * cb));
  m_meet = std::clamp<std::int64_t>(m_meet, 0, N - 1);

  constexpr double kRescaleHi = 1e250;
  constexpr double kRescaleLo = 1e-250;
  auto store = [&out](std::int64_t m, double u, double scale_lm) {
    out[static_cast<std::size_t>(m)] =
        u == 0.0 ? SignedLogValue::zero()
                 : SignedLogValue{u > 0.0 ? +1 : -1,
                                  std::log(std::abs(u)) + scale_lm};
  };

  // Left pass: m = 0 .. m_meet.
  {
    double scale_lm = out[0].is_zero() ? 0.0 : out[0].log_mag;
    double prev = 0.0;
    double curr = out[0].is_zero() ? 0.0 : static_cast<double>(out[0].sign);
    for (std::int64_t m = 0; m < m_meet; ++m) {
      const double md = static_cast<double>(m);
      const double next =
          (2.0 * (kn - cb * (md - half_n)) * curr -
           sb * std::sqrt(md * (static_cast<double>(N) - md + 1.0)) * prev) /
          (sb * std::sqrt((md + 1.0) * (static_cast<double>(N) - md)));
      prev = curr;
      curr = next;
      const double a = std::max(std::abs(prev), std::abs(curr));
      if (a > kRescaleHi || (a < kRescaleLo && a > 0.0)) {
        const double f = a > kRescaleHi ? kRescaleLo : kRescaleHi;
        prev *= f;
        curr *= f;
        scale_lm -= std::log(f);
      }
      store(m + 1, curr, scale_lm);
    }
  }

  // Right pass: m = N .. m_meet + 1.
  {
    const auto& seed = out[static_cast<std::size_t>(N)];
    double scale_lm = seed.is_zero() ? 0.0 : seed.log_mag;
    double prev = 0.0;  // plays v_{m+1}
    double curr = seed.is_zero() ? 0.0 : static_cast<double>(seed.sign);
    for (std::int64_t m = N; m > m_meet + 1; --m) {
      const double md = static_cast<double>(m);
      const double next =
          (2.0 * (kn - cb * (md - half_n)) * curr -
           sb * std::sqrt((md + 1.0) * (static_cast<double>(N) - md)) * prev) /
          (sb * std::sqrt(md * (static_cast<double>(N) - md + 1.0)));
      prev = curr;
      curr = next;
      const double a = std::max(std::abs(prev), std::abs(curr));
      if (a > kRescaleHi || (a < kRescaleLo && a > 0.0)) {
        const double f = a > kRescaleHi ? kRescaleLo : kRescaleHi;
        prev *= f;
        curr *= f;
        scale_lm -= std::log(f);
      }
      store(m - 1, curr, scale_lm);
    }
  }
  return out;
}

namespace {

struct AmplitudeCache {
  bool valid = false;
  FockInput key;
  std::vector<SignedLogValue> values;
};

bool same_input(const FockInput& a, const FockInput& b) {
  return a.n_total == b.n_total && a.n_a == b.n_a && a.xi == b.xi;
}

}  // namespace

SignedLogValue exact_amplitude(const FockInput& input, std::int64_t m_a) {
  input.validate();
  const std::int64_t N = input.n_total;
  if (m_a < 0 || m_a > N)
    throw std::domain_error("exact_amplitude: m_a outside [0, n_total]");

  const double sb = std::sin(2.0 * input.xi);
  if (!is_half_mixing_angle(input.xi) && std::abs(sb) < 0.1)
    return leibniz_amplitude(input, m_a);

  thread_local AmplitudeCache cache;
  if (!cache.valid || !same_input(cache.key, input)) {
    cache.values = exact_amplitudes(input);
    cache.key = input;
    cache.valid = true;
  }
  return cache.values[static_cast<std::size_t>(m_a)];
}

SignedLogValue balanced_amplitude(std::int64_t n_total, std::int64_t m_a) {
  if (n_total < 0 || (n_total & 1))
    throw std::domain_error("balanced_amplitude: N must be even and >= 0");
  if (m_a < 0 || m_a > n_total)
    throw std::domain_error("balanced_amplitude: m_a outside [0, n_total]");
  if (m_a & 1) return SignedLogValue::zero();
  const std::int64_t m_b = n_total - m_a;
  const double lm = 0.5 * (log_factorial(m_a) + log_factorial(m_b)) -
                    0.5 * static_cast<double>(n_total) * std::log(2.0) -
                    log_factorial(m_a / 2) - log_factorial(m_b / 2);
  const int sign = ((m_a / 2) & 1) ? -1 : +1;
  return SignedLogValue{sign, lm};
}

SignedLogValue negative_y_amplitude(const FockInput& input, std::int64_t m_a) {
  input.validate();
  if (input.ny() >= 0)
    throw std::invalid_argument("negative_y_amplitude: requires ny < 0");
  FockInput mirrored = input;
  mirrored.n_a = input.n_b();
  SignedLogValue a = exact_amplitude(mirrored, m_a);
  return (m_a & 1) ? a.negated() : a;
}

namespace {

SignedLogValue edge_tagged_stirling(std::int64_t m_a) {
  // Stirling form diverges as (1 - x^2)^{-1/4} at the grid edges; the series
  // carries the limit as a signed infinity.
  const int sign = ((m_a / 2) & 1) ? -1 : +1;
  return SignedLogValue{sign, std::numeric_limits<double>::infinity()};
}

}  // namespace

DistributionSeries distribution(const FockInput& input, EngineKind engine) {
  input.validate();
  const std::int64_t N = input.n_total;
  const std::int64_t ny = input.ny();

  DistributionSeries series;
  series.input = input;
  series.engine = engine;
  series.points.resize(static_cast<std::size_t>(N) + 1);

  switch (engine) {
    case EngineKind::balanced_closed:
    case EngineKind::balanced_stirling:
      if (!is_half_mixing_angle(input.xi))
        throw std::invalid_argument("balanced engines require xi = pi/4");
      if (ny != 0)
        throw std::invalid_argument("balanced engines require n_a = n_b");
      break;
    case EngineKind::imbalanced_analytic:
    case EngineKind::large_n:
      if (!is_half_mixing_angle(input.xi))
        throw std::invalid_argument("analytic engines require xi = pi/4");
      if (N & 1)
        throw std::invalid_argument("analytic engines require even N");
      if (engine == EngineKind::large_n && N < 100)
        throw std::invalid_argument("large-N engine requires N >= 100");
      if (std::abs(ny) > N / 4) series.in_validity_range = false;
      break;
    case EngineKind::exact:
    case EngineKind::oracle:
      break;
    case EngineKind::averaged_direct:
      throw std::invalid_argument(
          "averaged series are built by averaged_distribution_direct");
  }

  const double half_n = 0.5 * static_cast<double>(N);
  auto finish_point = [&](std::int64_t m, SignedLogValue amp) {
    OutputPoint& p = series.points[static_cast<std::size_t>(m)];
    p.m_a = m;
    p.x = grid_x(N, m);
    p.amplitude = amp;
    if (amp.is_zero()) {
      p.density = 0.0;
    } else {
      p.density = half_n * std::exp(2.0 * amp.log_mag);
    }
  };

  if (engine == EngineKind::oracle) {
    const std::vector<double> v = oracle_evolve(N, input.n_a, input.xi);
    for (std::int64_t m = 0; m <= N; ++m)
      finish_point(m, SignedLogValue::from_real(v[static_cast<std::size_t>(m)]));
    return series;
  }

  if (engine == EngineKind::exact) {
    const std::vector<SignedLogValue> v = exact_amplitudes(input);
    for (std::int64_t m = 0; m <= N; ++m)
      finish_point(m, v[static_cast<std::size_t>(m)]);
    return series;
  }

  const std::int64_t abs_ny = std::abs(ny);
  auto point_amplitude = [&](std::int64_t m) -> SignedLogValue {
    switch (engine) {
      case EngineKind::balanced_closed:
        return balanced_amplitude(N, m);
      case EngineKind::balanced_stirling:
        if (m == 0 || m == N) return edge_tagged_stirling(m);
        return balanced_asymptotic(N, m);
      case EngineKind::imbalanced_analytic: {
        SignedLogValue a = imbalanced_amplitude(N, abs_ny, m);
        return (ny < 0 && (m & 1)) ? a.negated() : a;
      }
      case EngineKind::large_n: {
        SignedLogValue a = large_n_amplitude(N, abs_ny, m);
        return (ny < 0 && (m & 1)) ? a.negated() : a;
      }
      default:
        throw std::logic_error("unreachable engine");
    }
  };

  // Per-point closed forms are cheap; serial assembly keeps ordering trivial.
  for (std::int64_t m = 0; m <= N; ++m) finish_point(m, point_amplitude(m));
  return series;
}

}  // namespace bsdist
