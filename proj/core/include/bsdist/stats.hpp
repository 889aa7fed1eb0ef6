#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bsdist/fock.hpp"

namespace bsdist {

/// Density convention. half_n is the normative one used throughout:
/// density = (N/2) |A|^2, so that sum(density) * (2/N) = 1. quarter_n scales
/// everything by 1/2 (its distribution sums to 1/2); it is kept as an
/// alternative normalization switch because the averaging and correlation
/// closed forms are more commonly quoted in that convention.
enum class Normalization { half_n, quarter_n };

enum class Weighting { uniform, gaussian_poissonian };

/// Ensemble of input imbalances: Ny runs over the n_bound + 1 even values in
/// [-n_bound, n_bound]. gaussian_poissonian weights each member by
/// e^{-(Ny)^2/(4N)} (truncated at |Ny| <= 6 sqrt(N)), renormalized.
struct AveragingWindow {
  std::int64_t n_bound = 0;
  Weighting weighting = Weighting::uniform;
};

enum class CorrelationMethod { closed_form, direct_ensemble };

struct CorrelationGrid {
  std::vector<std::int64_t> ms;  // grid point indices m_a
  std::vector<double> xs;
  std::vector<double> values;    // row-major, ms.size() x ms.size()
  std::vector<int> epsilon;      // parity mask per pair

  std::size_t size() const { return ms.size(); }
  double at(std::size_t i, std::size_t j) const {
    return values[i * ms.size() + j];
  }
  int eps_at(std::size_t i, std::size_t j) const {
    return epsilon[i * ms.size() + j];
  }
};

/// Weighted average over the imbalance window of the exact densities,
/// assembled from exact amplitudes at xi = pi/4. Throws std::domain_error
/// when n_bound >= N or is odd, std::invalid_argument for odd N.
DistributionSeries averaged_distribution_direct(
    std::int64_t n_total, const AveragingWindow& window,
    Normalization norm = Normalization::half_n);

/// Branch-resolved closed form of the averaged density at grid point m_a:
/// (1 -+ sin((n+1) phi) / ((n+1) sin phi)) / (2 pi sin phi) in the quarter_n
/// convention (doubled under half_n), minus branch on odd m_a, plus branch on
/// even m_a, phi = pi/2 + asin(x). Valid in the sub-Poissonian window
/// n_bound <= floor(sqrt(N)); edge points |x| = 1 raise std::domain_error.
double averaged_distribution_closed(std::int64_t n_total, std::int64_t n_bound,
                                    std::int64_t m_a,
                                    Normalization norm = Normalization::half_n);

/// The two window-averaged trig identities behind the closed forms, for
/// angle phi: first = mean_k sin^2(|k| phi) / sin^2(phi), second =
/// mean_k cos^2(|k| phi), k over the n_bound+1 integers in [-n/2, n/2].
/// phi at a multiple of pi is a removable point evaluated analytically.
std::pair<double, double> trig_average_identities(std::int64_t n_bound,
                                                  double phi);

/// Parity mask of a pair of grid points: +1 when both lie on the same slow
/// branch (both N(1+x)/4 integer or both half-integer), -1 on opposite
/// branches. On the physical grid every point is on one branch or the other;
/// 0 is reserved for off-grid diagnostic values (see the x overload).
int epsilon_parity(std::int64_t n_total, std::int64_t m_a, std::int64_t m_a2);
int epsilon_parity_x(std::int64_t n_total, double x, double x2,
                     double tol = 1e-9);

/// Closed-form two-point correlation of the averaged distribution at grid
/// points (m_a, m_a2), sub-Poissonian window. Removable sin(phi +- phi') = 0
/// points are evaluated by their analytic limits. Edge points raise
/// std::domain_error.
double correlation(std::int64_t n_total, std::int64_t n_bound,
                   std::int64_t m_a, std::int64_t m_a2,
                   Normalization norm = Normalization::half_n);

/// Closed-form correlation over the whole interior grid.
CorrelationGrid correlation_grid_closed(std::int64_t n_total,
                                        std::int64_t n_bound,
                                        Normalization norm = Normalization::half_n);

/// Direct ensemble covariance of the exact densities over the full grid
/// (edges included): cov(m, m') over the window members.
CorrelationGrid ensemble_covariance(std::int64_t n_total,
                                    const AveragingWindow& window,
                                    Normalization norm = Normalization::half_n);

/// Variance of the ensemble expectation of a tabulated observable f over the
/// x grid (f.size() == N+1): sum over pairs of f(x) f(x') corr(x, x') dx dx'
/// with dx = 2/N. The closed_form method skips the edge points where the
/// closed correlation is singular.
double variance_functional(std::span<const double> f, std::int64_t n_total,
                           std::int64_t n_bound, CorrelationMethod method,
                           Normalization norm = Normalization::half_n);

}  // namespace bsdist
