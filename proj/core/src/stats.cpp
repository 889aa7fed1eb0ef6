#include "bsdist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsdist/asymptotic.hpp"
#include "bsdist/exact.hpp"

namespace bsdist {

namespace {

double norm_prefactor(std::int64_t n_total, Normalization norm) {
  const double half = 0.5 * static_cast<double>(n_total);
  return norm == Normalization::half_n ? half : 0.5 * half;
}

void require_even_total(std::int64_t n_total, const char* who) {
  if (n_total <= 0 || (n_total & 1))
    throw std::invalid_argument(std::string(who) + ": N must be even and > 0");
}

void require_window(std::int64_t n_bound, std::int64_t n_total,
                    const char* who) {
  if (n_bound < 0 || (n_bound & 1))
    throw std::domain_error(std::string(who) + ": n_bound must be even >= 0");
  if (n_bound >= n_total)
    throw std::domain_error(std::string(who) + ": n_bound must be < N");
}

/// Member imbalances Ny and their normalized weights for a window.
struct Members {
  std::vector<std::int64_t> ny;
  std::vector<double> weight;
};

Members window_members(std::int64_t n_total, const AveragingWindow& window) {
  Members m;
  std::int64_t bound = window.n_bound;
  if (window.weighting == Weighting::gaussian_poissonian) {
    std::int64_t cutoff = static_cast<std::int64_t>(
        std::floor(6.0 * std::sqrt(static_cast<double>(n_total))));
    cutoff -= cutoff & 1;
    bound = std::min(bound, cutoff);
  }
  double total = 0.0;
  for (std::int64_t ny = -bound; ny <= bound; ny += 2) {
    double w = 1.0;
    if (window.weighting == Weighting::gaussian_poissonian) {
      const double e = static_cast<double>(ny) * static_cast<double>(ny) /
                       (4.0 * static_cast<double>(n_total));
      w = std::exp(-e);
    }
    m.ny.push_back(ny);
    m.weight.push_back(w);
    total += w;
  }
  for (double& w : m.weight) w /= total;
  return m;
}

/// sin((n+1) psi) / sin(psi) with its analytic limit at multiples of pi.
double dirichlet_ratio(std::int64_t n_plus_1, double psi) {
  const double s = std::sin(psi);
  if (std::abs(s) < 1e-12) {
    const double m = std::round(psi / kPi);
    const double num = std::cos(static_cast<double>(n_plus_1) * m * kPi);
    const double den = std::cos(m * kPi);
    return static_cast<double>(n_plus_1) * num / den;
  }
  return std::sin(static_cast<double>(n_plus_1) * psi) / s;
}

}  // namespace

DistributionSeries averaged_distribution_direct(std::int64_t n_total,
                                                const AveragingWindow& window,
                                                Normalization norm) {
  require_even_total(n_total, "averaged_distribution_direct");
  require_window(window.n_bound, n_total, "averaged_distribution_direct");

  const Members members = window_members(n_total, window);
  const std::size_t npts = static_cast<std::size_t>(n_total) + 1;
  std::vector<double> mean_sq(npts, 0.0);

  for (std::size_t i = 0; i < members.ny.size(); ++i) {
    FockInput input;
    input.n_total = n_total;
    input.n_a = (n_total + members.ny[i]) / 2;
    const DistributionSeries member = distribution(input, EngineKind::exact);
    for (std::size_t m = 0; m < npts; ++m) {
      const double a = member.points[m].amplitude.to_real();
      mean_sq[m] += members.weight[i] * a * a;
    }
  }

  DistributionSeries series;
  series.input.n_total = n_total;
  series.input.n_a = n_total / 2;
  series.engine = EngineKind::averaged_direct;
  const double c = norm_prefactor(n_total, norm);
  series.points.resize(npts);
  for (std::size_t m = 0; m < npts; ++m) {
    OutputPoint& p = series.points[m];
    p.m_a = static_cast<std::int64_t>(m);
    p.x = grid_x(n_total, p.m_a);
    p.amplitude = SignedLogValue::from_real(std::sqrt(mean_sq[m]));
    p.density = c * mean_sq[m];
  }
  return series;
}

double averaged_distribution_closed(std::int64_t n_total, std::int64_t n_bound,
                                    std::int64_t m_a, Normalization norm) {
  require_even_total(n_total, "averaged_distribution_closed");
  require_window(n_bound, n_total, "averaged_distribution_closed");
  if (n_bound > static_cast<std::int64_t>(
                    std::floor(std::sqrt(static_cast<double>(n_total)))))
    throw std::invalid_argument(
        "averaged_distribution_closed: sub-Poissonian guard n_bound <= sqrt(N)");
  if (m_a < 0 || m_a > n_total)
    throw std::domain_error("averaged_distribution_closed: m_a out of range");
  if (m_a == 0 || m_a == n_total)
    throw std::domain_error("averaged_distribution_closed: edge point |x| = 1");

  const double x = grid_x(n_total, m_a);
  const double sphi = std::sqrt((1.0 - x) * (1.0 + x));
  const double phi = kPi / 2.0 + std::asin(x);
  const double osc =
      dirichlet_ratio(n_bound + 1, phi) / static_cast<double>(n_bound + 1);
  // minus branch on odd (half-integer) points, plus branch on even points
  const double branch = (m_a & 1) ? (1.0 - osc) : (1.0 + osc);
  const double quarter = branch / (2.0 * kPi * sphi);
  return norm == Normalization::half_n ? 2.0 * quarter : quarter;
}

std::pair<double, double> trig_average_identities(std::int64_t n_bound,
                                                  double phi) {
  if (n_bound < 0 || (n_bound & 1))
    throw std::domain_error(
        "trig_average_identities: n_bound must be even >= 0");
  const double s = std::sin(phi);
  const double nd = static_cast<double>(n_bound);
  if (std::abs(s) < 1e-5) {
    // Removable point: every cos^2 term is 1 and the sin^2/sin^2 ratio sums
    // the squares of the member indices.
    return {nd * (nd + 2.0) / 12.0, 1.0};
  }
  const double osc =
      dirichlet_ratio(n_bound + 1, phi) / static_cast<double>(n_bound + 1);
  return {(1.0 - osc) / (2.0 * s * s), (1.0 + osc) / 2.0};
}

int epsilon_parity(std::int64_t n_total, std::int64_t m_a, std::int64_t m_a2) {
  if (n_total < 0 || (n_total & 1))
    throw std::domain_error("epsilon_parity: N must be even");
  if (m_a < 0 || m_a > n_total || m_a2 < 0 || m_a2 > n_total)
    throw std::domain_error("epsilon_parity: point out of range");
  return ((m_a ^ m_a2) & 1) ? -1 : +1;
}

int epsilon_parity_x(std::int64_t n_total, double x, double x2, double tol) {
  const BranchTag b1 = branch_of_x(n_total, x, tol);
  const BranchTag b2 = branch_of_x(n_total, x2, tol);
  if (b1 == BranchTag::vanishing || b2 == BranchTag::vanishing) return 0;
  return b1 == b2 ? +1 : -1;
}

double correlation(std::int64_t n_total, std::int64_t n_bound,
                   std::int64_t m_a, std::int64_t m_a2, Normalization norm) {
  require_even_total(n_total, "correlation");
  require_window(n_bound, n_total, "correlation");
  if (n_bound > static_cast<std::int64_t>(
                    std::floor(std::sqrt(static_cast<double>(n_total)))))
    throw std::invalid_argument(
        "correlation: sub-Poissonian guard n_bound <= sqrt(N)");
  if (m_a <= 0 || m_a >= n_total || m_a2 <= 0 || m_a2 >= n_total)
    throw std::domain_error("correlation: edge or out-of-range point");
  if (m_a2 < m_a) std::swap(m_a, m_a2);  // symmetry holds bitwise

  const double x = grid_x(n_total, m_a);
  const double x2 = grid_x(n_total, m_a2);
  const double phi = kPi / 2.0 + std::asin(x);
  const double phi2 = kPi / 2.0 + std::asin(x2);
  const double sphi = std::sqrt((1.0 - x) * (1.0 + x));
  const double sphi2 = std::sqrt((1.0 - x2) * (1.0 + x2));
  const std::int64_t np1 = n_bound + 1;
  const double eps = epsilon_parity(n_total, m_a, m_a2);

  const double bracket =
      dirichlet_ratio(np1, phi + phi2) + dirichlet_ratio(np1, phi - phi2) -
      2.0 / static_cast<double>(np1) * dirichlet_ratio(np1, phi) *
          dirichlet_ratio(np1, phi2);
  const double quarter = eps * bracket /
                         (8.0 * static_cast<double>(np1) * kPi * kPi * sphi *
                          sphi2);
  return norm == Normalization::half_n ? 4.0 * quarter : quarter;
}

CorrelationGrid correlation_grid_closed(std::int64_t n_total,
                                        std::int64_t n_bound,
                                        Normalization norm) {
  require_even_total(n_total, "correlation_grid_closed");
  CorrelationGrid grid;
  for (std::int64_t m = 1; m < n_total; ++m) {
    grid.ms.push_back(m);
    grid.xs.push_back(grid_x(n_total, m));
  }
  const std::size_t n = grid.ms.size();
  grid.values.resize(n * n);
  grid.epsilon.resize(n * n);
  detail::parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      grid.values[idx] = correlation(n_total, n_bound, grid.ms[i], grid.ms[j], norm);
      grid.epsilon[idx] = epsilon_parity(n_total, grid.ms[i], grid.ms[j]);
    }
  });
  return grid;
}

CorrelationGrid ensemble_covariance(std::int64_t n_total,
                                    const AveragingWindow& window,
                                    Normalization norm) {
  require_even_total(n_total, "ensemble_covariance");
  require_window(window.n_bound, n_total, "ensemble_covariance");

  const Members members = window_members(n_total, window);
  const std::size_t npts = static_cast<std::size_t>(n_total) + 1;
  const double c = norm_prefactor(n_total, norm);

  // Member densities and their weighted mean.
  std::vector<std::vector<double>> dens(members.ny.size());
  std::vector<double> mean(npts, 0.0);
  for (std::size_t i = 0; i < members.ny.size(); ++i) {
    FockInput input;
    input.n_total = n_total;
    input.n_a = (n_total + members.ny[i]) / 2;
    const DistributionSeries member = distribution(input, EngineKind::exact);
    dens[i].resize(npts);
    for (std::size_t m = 0; m < npts; ++m) {
      const double a = member.points[m].amplitude.to_real();
      dens[i][m] = c * a * a;
      mean[m] += members.weight[i] * dens[i][m];
    }
  }

  CorrelationGrid grid;
  grid.ms.resize(npts);
  grid.xs.resize(npts);
  for (std::size_t m = 0; m < npts; ++m) {
    grid.ms[m] = static_cast<std::int64_t>(m);
    grid.xs[m] = grid_x(n_total, grid.ms[m]);
  }
  grid.values.resize(npts * npts);
  grid.epsilon.resize(npts * npts);
  detail::parallel_for(static_cast<std::int64_t>(npts), [&](std::int64_t mi) {
    const std::size_t m = static_cast<std::size_t>(mi);
    for (std::size_t m2 = 0; m2 < npts; ++m2) {
      double cov = 0.0;
      for (std::size_t i = 0; i < members.ny.size(); ++i) {
        cov += members.weight[i] * (dens[i][m] - mean[m]) *
               (dens[i][m2] - mean[m2]);
      }
      grid.values[m * npts + m2] = cov;
      grid.epsilon[m * npts + m2] =
          epsilon_parity(n_total, grid.ms[m], grid.ms[m2]);
    }
  });
  return grid;
}

double variance_functional(std::span<const double> f, std::int64_t n_total,
                           std::int64_t n_bound, CorrelationMethod method,
                           Normalization norm) {
  require_even_total(n_total, "variance_functional");
  if (f.size() != static_cast<std::size_t>(n_total) + 1)
    throw std::invalid_argument("variance_functional: f must have N+1 entries");
  const double dx = 2.0 / static_cast<double>(n_total);

  CorrelationGrid grid;
  if (method == CorrelationMethod::direct_ensemble) {
    grid = ensemble_covariance(n_total, AveragingWindow{n_bound}, norm);
  } else {
    grid = correlation_grid_closed(n_total, n_bound, norm);
  }
  double sum = 0.0, comp = 0.0;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = f[static_cast<std::size_t>(grid.ms[i])];
    for (std::size_t j = 0; j < n; ++j) {
      const double fj = f[static_cast<std::size_t>(grid.ms[j])];
      const double v = fi * fj * grid.at(i, j) * dx * dx;
      const double y = v - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
  }
  return sum;
}

}  // namespace bsdist
