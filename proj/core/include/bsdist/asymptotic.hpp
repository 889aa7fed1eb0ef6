#pragma once

#include "bsdist/fock.hpp"

namespace bsdist {

/// Which slowly-oscillating family a grid point belongs to: N(1+x)/4 integer
/// (even m_a), N(1+x)/4 + 1/2 integer (odd m_a), or neither (off-grid x).
enum class BranchTag { integer_branch, half_integer_branch, vanishing };

/// Branch of the grid point m_a for even N. Throws std::domain_error for odd N.
BranchTag branch_of(std::int64_t n_total, std::int64_t m_a);

/// Branch classification for an arbitrary (diagnostic) x value.
BranchTag branch_of_x(std::int64_t n_total, double x, double tol = 1e-9);

/// Stirling form of the balanced amplitude: (-1)^{m_a/2} * 2 / (sqrt(pi N)
/// (1-x^2)^{1/4}) on even m_a, zero on odd. Throws std::domain_error at
/// |x| = 1 where the form diverges.
SignedLogValue balanced_asymptotic(std::int64_t n_total, std::int64_t m_a);

/// Analytic amplitude for imbalanced input (N even, ny = N*y even, 0 <= ny
/// <= N; intended validity ny << N). The sqrt-factorial prefactor and
/// e^{N y^2 / 4} are carried in log magnitude; the brace is the pair of
/// slow sinusoids sin(n phi) and sin((n-1) phi), phi = pi/2 + asin(x), with
/// each binomial zeroed off its branch. At |x| = 1 the 0/0 form is replaced
/// by its analytic limit, so the value is finite on the whole grid.
/// Throws std::domain_error for odd or negative ny.
SignedLogValue imbalanced_amplitude(std::int64_t n_total, std::int64_t ny,
                                    std::int64_t m_a);

/// Large-N form of imbalanced_amplitude. Edge points |x| = 1 are tagged
/// rather than thrown: the half-integer branch limit is an exact zero and the
/// integer branch diverges (log_mag = +inf). Guard: N >= 100, otherwise
/// std::invalid_argument.
SignedLogValue large_n_amplitude(std::int64_t n_total, std::int64_t ny,
                                 std::int64_t m_a);

/// Arcsine density P(x) = 1 / (pi sqrt(1 - x^2)); the branch-averaged limit
/// law of the output distribution. Throws std::domain_error for |x| >= 1.
double arcsine_envelope(double x);

}  // namespace bsdist
