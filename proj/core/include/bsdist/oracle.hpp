#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsdist/fock.hpp"

namespace bsdist {

/// Brute-force ground truth: the beam-splitter generator a†b - b†a as a
/// dense (N+1)x(N+1) antisymmetric tridiagonal matrix in the |k, N-k> basis,
/// exponentiated through the eigendecomposition of the phase-symmetrized
/// tridiagonal. Shares no code with the combinatorial engine.
///
/// Returns the real amplitude vector exp(-xi G) e_{n_a} over m_a = 0..N.
/// Throws std::length_error for N > 2000 (dense desk-scale bound).
std::vector<double> oracle_evolve(std::int64_t n_total, std::int64_t n_a,
                                  double xi);

/// Full evolution matrix exp(-xi G); column n_a is oracle_evolve(N, n_a, xi).
/// Row-major (N+1)x(N+1).
std::vector<double> oracle_unitary(std::int64_t n_total, double xi);

struct OracleReport {
  std::int64_t n_max = 0;
  double max_abs_deviation = 0.0;
  std::int64_t worst_n_total = 0;
  std::int64_t worst_n_a = 0;
  std::int64_t worst_m_a = 0;
  bool pass = false;  // max_abs_deviation <= 1e-8
  std::string summary() const;
};

/// Entrywise |oracle| vs |exact_amplitude| for every N <= n_max and every
/// n_a, at xi = pi/4.
OracleReport oracle_check(std::int64_t n_max);

}  // namespace bsdist
