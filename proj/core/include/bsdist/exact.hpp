#pragma once

#include "bsdist/fock.hpp"

namespace bsdist {

/// Output amplitude <m_a, N - m_a| U |n_a, N - n_a>, exact for any mixing
/// angle with cos(xi) != 0.
///
/// Evaluation is routed between two exact formulations:
///  - the product-rule expansion of the m_a-fold derivative of
///    alpha^{n_a} (1 + alpha beta)^{N - n_a} (see leibniz_amplitude), used
///    where its alternating sum is well conditioned (small |sin 2 xi|, where
///    the terms are graded and one dominates);
///  - a three-term recurrence over m_a seeded by the closed single-term
///    values at m_a = 0 and m_a = N and run from both edges toward the
///    classical center, which is the growing (stable) direction. This is the
///    production route: the Leibniz sum loses tens of digits to cancellation
///    for edge-adjacent m_a once N is in the hundreds.
/// Balanced parity zeros come out as exact zeros (sign = 0) on both routes.
SignedLogValue exact_amplitude(const FockInput& input, std::int64_t m_a);

/// The full amplitude vector over m_a = 0..N via the edge-seeded recurrence;
/// O(N) for the whole series.
std::vector<SignedLogValue> exact_amplitudes(const FockInput& input);

/// The literal product-rule expansion with max-rescaled compensated signed
/// log-domain summation. Exact arithmetic route for verification and for the
/// small-mixing regime; deeply cancellation-limited near the grid edges for
/// xi near pi/4 at large N. If err_bound is non-null it receives a relative
/// roundoff estimate (term_count * eps * max_term / |result|).
SignedLogValue leibniz_amplitude(const FockInput& input, std::int64_t m_a,
                                 double* err_bound = nullptr);

/// Closed-form balanced amplitude (y = 0, xi = pi/4). Exact. Nonzero only
/// when m_a is even, with sign (-1)^{m_a/2}. Throws std::domain_error for
/// odd N.
SignedLogValue balanced_amplitude(std::int64_t n_total, std::int64_t m_a);

/// Amplitude for negative input imbalance via the reflection rule: the
/// mirrored input (n_a <-> n_b) evaluated with exact_amplitude, times
/// (-1)^{m_a}. Requires ny < 0.
SignedLogValue negative_y_amplitude(const FockInput& input, std::int64_t m_a);

/// Fills the N+1 output points with the selected engine's amplitude and
/// density = (N/2) amplitude^2. Regime guards: closed forms demand
/// xi = pi/4 and the parity/imbalance they were derived for, and raise
/// std::invalid_argument otherwise. Point evaluations are independent and
/// are parallelized for large N with deterministic ordering.
DistributionSeries distribution(const FockInput& input, EngineKind engine);

}  // namespace bsdist
