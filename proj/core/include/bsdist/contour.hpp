#pragma once

#include <vector>

#include "bsdist/fock.hpp"

namespace bsdist {

enum class InMethod { quadrature, recursion, approx_order0, approx_corrected };

struct InEvaluation {
  std::int64_t n_total = 0;
  std::int64_t n_index = 0;  // n = N y / 2
  double x = 0.0;
  Complex value{0.0, 0.0};
  InMethod method = InMethod::quadrature;
  bool flagged = false;  // degenerate edge handled by a limit, or quadrature
                         // needed an extra refinement
};

/// I_n = 2^N \oint dtheta (sin theta/2)^{N/2-n} (cos theta/2)^{N/2+n}
///       e^{-i (N x / 2) theta},  theta over [0, 2pi), plain measure.
///
/// Periodic trapezoidal rule with at least max(4N, 256) nodes; the integrand
/// is assembled in log-magnitude/phase form so the 2^N prefactor cannot
/// overflow intermediate values. For on-grid x (N x even) the integrand is a
/// trigonometric polynomial within the node budget, so the rule is exact up
/// to rounding; a doubling refinement enforces a 1e-10 relative convergence
/// check and failure raises numerical_error.
Complex in_quadrature(std::int64_t n_total, std::int64_t n_index, double x);

/// Quadrature value together with the L1 mass of the integrand, which sets
/// the absolute roundoff scale of the rule: when |value| << l1 the relative
/// precision of the value degrades proportionally.
struct QuadratureResult {
  Complex value;
  double l1 = 0.0;
};
QuadratureResult in_quadrature_detailed(std::int64_t n_total,
                                        std::int64_t n_index, double x);

/// Closed form of I_0: 2 pi i^{N/2} (-1)^{N(1+x)/4} C(N/2, N(1+x)/4) when
/// N(1+x)/4 is an integer, zero otherwise.
Complex i0_closed(std::int64_t n_total, double x);

/// Closed form of I_1: two binomial terms, each zeroed unless its lower
/// entry is an integer.
Complex i1_closed(std::int64_t n_total, double x);

/// I_0..I_{n_max} by the forward rearrangement of the three-term recursion
/// I_{n+2} = ((N/2 + n + 1) I_n + i N x I_{n+1}) / (N/2 - n - 1).
/// Raises std::range_error when a step would divide by zero.
std::vector<Complex> in_recursion(std::int64_t n_total, double x, Complex i0,
                                  Complex i1, std::int64_t n_max);

/// Approximate I_n^{(0)} built from the constant-coefficient recursion with
/// roots p, q = i x +- sqrt(1 - x^2) and the closed I_0, I_1. n = 0, 1 return
/// the closed values themselves. |x| = 1 collapses p = q and is evaluated by
/// the confluent limit. With `corrected`, the result carries the e^{n^2/N}
/// factor that repairs the accumulated O(n/N) steps.
Complex in_approx(std::int64_t n_total, std::int64_t n_index, double x,
                  bool corrected);

/// Convenience wrapper producing a tagged evaluation.
InEvaluation in_evaluate(std::int64_t n_total, std::int64_t n_index, double x,
                         InMethod method);

}  // namespace bsdist
