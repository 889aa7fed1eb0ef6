#include "bsdist/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "bsdist/exact.hpp"

namespace bsdist {

namespace {

constexpr std::int64_t kMaxDimension = 2000;

/// Eigen-decomposition of the phase-symmetrized generator.
///
/// G (antisymmetric, G_{k+1,k} = c_k = sqrt((k+1)(N-k))) obeys
/// G = -i P^{-1} T P with P = diag(i^k) and T real symmetric tridiagonal
/// with off-diagonal -c_k, so exp(-xi G) = P^{-1} Q e^{i xi L} Q^T P.
struct Decomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

Decomposition decompose(std::int64_t n_total) {
  const Eigen::Index dim = static_cast<Eigen::Index>(n_total) + 1;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sub(dim > 1 ? dim - 1 : 0);
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    const double kk = static_cast<double>(k);
    sub[k] = -std::sqrt((kk + 1.0) * (static_cast<double>(n_total) - kk));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub,
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw numerical_error("oracle: tridiagonal eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::complex<double> i_power(std::int64_t k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_bounds(std::int64_t n_total, std::int64_t n_a) {
  if (n_total < 0) throw std::invalid_argument("oracle: n_total < 0");
  if (n_total > kMaxDimension)
    throw std::length_error("oracle: n_total exceeds dense bound of 2000");
  if (n_a < 0 || n_a > n_total)
    throw std::invalid_argument("oracle: n_a outside [0, n_total]");
}

}  // namespace

std::vector<double> oracle_evolve(std::int64_t n_total, std::int64_t n_a,
                                  double xi) {
  check_bounds(n_total, n_a);
  const Decomposition dec = decompose(n_total);
  const Eigen::Index dim = static_cast<Eigen::Index>(n_total) + 1;
  const Eigen::Index col = static_cast<Eigen::Index>(n_a);

  // u = Q e^{i xi L} Q^T e_{n_a}; amplitude_k = Re(i^{n_a - k} u_k).
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<double> phase(std::cos(xi * dec.eigenvalues[j]),
                                     std::sin(xi * dec.eigenvalues[j]));
    const std::complex<double> w = phase * dec.eigenvectors(col, j);
    for (Eigen::Index k = 0; k < dim; ++k)
      u[k] += dec.eigenvectors(k, j) * w;
  }
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    out[static_cast<std::size_t>(k)] =
        (i_power(n_a - k) * u[k]).real();
  }
  return out;
}

std::vector<double> oracle_unitary(std::int64_t n_total, double xi) {
  check_bounds(n_total, 0);
  const Decomposition dec = decompose(n_total);
  const Eigen::Index dim = static_cast<Eigen::Index>(n_total) + 1;

  Eigen::MatrixXcd phases = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd expl(dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    expl[j] = std::complex<double>(std::cos(xi * dec.eigenvalues[j]),
                                   std::sin(xi * dec.eigenvalues[j]));
  const Eigen::MatrixXcd core = dec.eigenvectors *
                                expl.asDiagonal() *
                                dec.eigenvectors.transpose();

  std::vector<double> out(static_cast<std::size_t>(dim) *
                          static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      out[static_cast<std::size_t>(k) * static_cast<std::size_t>(dim) +
          static_cast<std::size_t>(n)] = (i_power(n - k) * core(k, n)).real();
    }
  }
  return out;
}

std::string OracleReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " oracle check: N <= " << n_max
     << ", max |deviation| = " << max_abs_deviation << " at (N = "
     << worst_n_total << ", n_a = " << worst_n_a << ", m_a = " << worst_m_a
     << ")";
  return os.str();
}

OracleReport oracle_check(std::int64_t n_max) {
  OracleReport report;
  report.n_max = n_max;
  for (std::int64_t N = 0; N <= n_max; ++N) {
    const std::vector<double> u = oracle_unitary(N, kHalfMixing);
    const std::size_t dim = static_cast<std::size_t>(N) + 1;
    for (std::int64_t n_a = 0; n_a <= N; ++n_a) {
      FockInput input;
      input.n_total = N;
      input.n_a = n_a;
      for (std::int64_t m = 0; m <= N; ++m) {
        const double exact =
            std::abs(exact_amplitude(input, m).to_real());
        const double orc = std::abs(
            u[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n_a)]);
        const double dev = std::abs(exact - orc);
        if (dev > report.max_abs_deviation) {
          report.max_abs_deviation = dev;
          report.worst_n_total = N;
          report.worst_n_a = n_a;
          report.worst_m_a = m;
        }
      }
    }
  }
  report.pass = report.max_abs_deviation <= 1e-8;
  return report;
}

}  // namespace bsdist
