#include "bsdist/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsdist {

namespace {

constexpr double kIntegerTol = 1e-6;

bool near_integer(double r, std::int64_t* out) {
  const double rounded = std::round(r);
  if (std::abs(r - rounded) <= kIntegerTol) {
    *out = static_cast<std::int64_t>(rounded);
    return true;
  }
  return false;
}

Complex i_power(std::int64_t k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double parity_sign(std::int64_t k) { return (k & 1) ? -1.0 : 1.0; }

void require_even(std::int64_t n_total, const char* who) {
  if (n_total < 0 || (n_total & 1))
    throw std::domain_error(std::string(who) + ": N must be even and >= 0");
}

struct QuadResult {
  Complex integral;
  double l1 = 0.0;  // h * sum |f|, the natural magnitude scale
};

QuadResult trapezoid_pass(std::int64_t N, std::int64_t n, double x,
                          std::int64_t nodes) {
  const double a = 0.5 * static_cast<double>(N) - static_cast<double>(n);
  const double b = 0.5 * static_cast<double>(N) + static_cast<double>(n);
  const double w = 0.5 * static_cast<double>(N) * x;
  const double ln2N = static_cast<double>(N) * std::log(2.0);

  // Pass 1: log magnitudes and phases per node.
  std::vector<double> lm(static_cast<std::size_t>(nodes));
  std::vector<double> ph(static_cast<std::size_t>(nodes));
  double max_lm = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < nodes; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / nodes;
    const double sh = std::sin(0.5 * theta);
    const double ch = std::cos(0.5 * theta);
    double v = ln2N;
    double phase = -w * theta;
    bool zero = false;
    auto add_factor = [&](double base, double expnt) {
      if (expnt == 0.0 || zero) return;
      if (base == 0.0) {
        if (expnt > 0.0) {
          zero = true;
          return;
        }
        throw std::domain_error("in_quadrature: zero base, negative exponent");
      }
      v += expnt * std::log(std::abs(base));
      if (base < 0.0 && (std::llround(expnt) & 1)) phase += kPi;
    };
    add_factor(sh, a);
    add_factor(ch, b);
    if (zero) {
      lm[static_cast<std::size_t>(j)] = -std::numeric_limits<double>::infinity();
      ph[static_cast<std::size_t>(j)] = 0.0;
    } else {
      lm[static_cast<std::size_t>(j)] = v;
      ph[static_cast<std::size_t>(j)] = phase;
      max_lm = std::max(max_lm, v);
    }
  }
  if (!std::isfinite(max_lm)) return {Complex{0.0, 0.0}, 0.0};

  // Pass 2: compensated accumulation of the rescaled nodes.
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0, sa = 0.0, ca = 0.0;
  auto kahan = [](double& sum, double& comp, double v) {
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  };
  for (std::int64_t j = 0; j < nodes; ++j) {
    const double l = lm[static_cast<std::size_t>(j)];
    if (!std::isfinite(l)) continue;
    const double mag = std::exp(l - max_lm);
    kahan(sr, cr, mag * std::cos(ph[static_cast<std::size_t>(j)]));
    kahan(si, ci, mag * std::sin(ph[static_cast<std::size_t>(j)]));
    kahan(sa, ca, mag);
  }
  const double h = 2.0 * kPi / static_cast<double>(nodes);
  const double scale = h * std::exp(max_lm);
  return {Complex{scale * sr, scale * si}, scale * sa};
}

}  // namespace

QuadratureResult in_quadrature_detailed(std::int64_t n_total,
                                        std::int64_t n_index, double x) {
  require_even(n_total, "in_quadrature");
  if (n_index < -n_total / 2 || n_index > n_total / 2)
    throw std::domain_error("in_quadrature: |n| must not exceed N/2");

  std::int64_t nodes = std::max<std::int64_t>(4 * n_total, 256);
  QuadResult prev = trapezoid_pass(n_total, n_index, x, nodes);
  for (int refine = 0; refine < 2; ++refine) {
    nodes *= 2;
    const QuadResult next = trapezoid_pass(n_total, n_index, x, nodes);
    const double tol =
        1e-10 * std::max(std::abs(next.integral), 1e-3 * next.l1);
    if (std::abs(next.integral - prev.integral) <= tol)
      return {next.integral, next.l1};
    prev = next;
  }
  throw numerical_error("in_quadrature: trapezoidal rule did not converge");
}

Complex in_quadrature(std::int64_t n_total, std::int64_t n_index, double x) {
  return in_quadrature_detailed(n_total, n_index, x).value;
}

Complex i0_closed(std::int64_t n_total, double x) {
  require_even(n_total, "i0_closed");
  const double r = static_cast<double>(n_total) * (1.0 + x) / 4.0;
  std::int64_t j = 0;
  if (!near_integer(r, &j)) return {0.0, 0.0};
  const SignedLogValue bin = log_binomial(n_total / 2, j);
  if (bin.is_zero()) return {0.0, 0.0};
  const double mag = 2.0 * kPi * bin.to_real();
  return i_power(n_total / 2) * (parity_sign(j) * mag);
}

Complex i1_closed(std::int64_t n_total, double x) {
  require_even(n_total, "i1_closed");
  const std::int64_t half = n_total / 2;
  const double r = static_cast<double>(n_total) * (1.0 + x) / 4.0;

  double brace = 0.0;
  std::int64_t l = 0;
  if (near_integer(r - 0.5, &l)) {
    // exponent N(1-x)/4 - 1/2 = N/2 - l - 1 when the lower entry is integer
    const SignedLogValue bin = log_binomial(half - 1, l);
    if (!bin.is_zero())
      brace += 2.0 * parity_sign(half - l - 1) * bin.to_real();
  }
  if (near_integer(r, &l)) {
    const SignedLogValue bin = log_binomial(half, l);
    if (!bin.is_zero()) brace += x * parity_sign(half - l) * bin.to_real();
  }
  if (brace == 0.0) return {0.0, 0.0};
  return i_power(1 - half) * (2.0 * kPi * brace);
}

std::vector<Complex> in_recursion(std::int64_t n_total, double x, Complex i0,
                                  Complex i1, std::int64_t n_max) {
  require_even(n_total, "in_recursion");
  if (n_max < 0) throw std::domain_error("in_recursion: n_max < 0");
  std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = i0;
  if (n_max >= 1) out[1] = i1;
  const double half = 0.5 * static_cast<double>(n_total);
  const Complex iNx{0.0, static_cast<double>(n_total) * x};
  for (std::int64_t n = 0; n + 2 <= n_max; ++n) {
    const double divisor = half - static_cast<double>(n) - 1.0;
    if (divisor == 0.0)
      throw std::range_error("in_recursion: forward step divides by zero");
    out[static_cast<std::size_t>(n) + 2] =
        ((half + static_cast<double>(n) + 1.0) * out[static_cast<std::size_t>(n)] +
         iNx * out[static_cast<std::size_t>(n) + 1]) /
        divisor;
  }
  return out;
}

Complex in_approx(std::int64_t n_total, std::int64_t n_index, double x,
                  bool corrected) {
  require_even(n_total, "in_approx");
  if (n_index < 0) throw std::domain_error("in_approx: n must be >= 0");

  const Complex I0 = i0_closed(n_total, x);
  const Complex I1 = i1_closed(n_total, x);
  Complex value;
  if (n_index == 0) {
    value = I0;
  } else if (n_index == 1) {
    value = I1;
  } else {
    const double nd = static_cast<double>(n_index);
    if (std::abs(x) == 1.0) {
      // p = q = i x: confluent limit n p^{n-1} I1 + (n-1) p^{n-2} I0.
      const Complex p{0.0, x};
      value = nd * std::pow(p, n_index - 1) * I1 +
              (nd - 1.0) * std::pow(p, n_index - 2) * I0;
    } else {
      const double s = std::sqrt((1.0 - x) * (1.0 + x));
      const double tp = std::atan2(x, s);    // arg p, p = s + i x
      const double tq = std::atan2(x, -s);   // arg q, q = -s + i x
      auto unit_pow = [](double t, double k) {
        return Complex{std::cos(k * t), std::sin(k * t)};
      };
      const Complex coeff1 = (unit_pow(tp, nd) - unit_pow(tq, nd)) / (2.0 * s);
      const Complex coeff0 =
          (unit_pow(tp, nd - 1.0) - unit_pow(tq, nd - 1.0)) / (2.0 * s);
      value = coeff1 * I1 + coeff0 * I0;  // -pq = +1
    }
  }
  if (corrected && n_total > 0) {
    value *= std::exp(static_cast<double>(n_index) *
                      static_cast<double>(n_index) /
                      static_cast<double>(n_total));
  }
  return value;
}

InEvaluation in_evaluate(std::int64_t n_total, std::int64_t n_index, double x,
                         InMethod method) {
  InEvaluation ev;
  ev.n_total = n_total;
  ev.n_index = n_index;
  ev.x = x;
  ev.method = method;
  switch (method) {
    case InMethod::quadrature:
      ev.value = in_quadrature(n_total, n_index, x);
      break;
    case InMethod::recursion: {
      const std::int64_t n_max = std::max<std::int64_t>(n_index, 1);
      ev.value = in_recursion(n_total, x, i0_closed(n_total, x),
                              i1_closed(n_total, x),
                              n_max)[static_cast<std::size_t>(n_index)];
      break;
    }
    case InMethod::approx_order0:
      ev.value = in_approx(n_total, n_index, x, false);
      ev.flagged = std::abs(x) == 1.0 && n_index >= 2;
      break;
    case InMethod::approx_corrected:
      ev.value = in_approx(n_total, n_index, x, true);
      ev.flagged = std::abs(x) == 1.0 && n_index >= 2;
      break;
  }
  return ev;
}

}  // namespace bsdist
