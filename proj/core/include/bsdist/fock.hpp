#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsdist/signed_log.hpp"

namespace bsdist {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfMixing = kPi / 4.0;  // 50:50 splitter

/// A runtime_error distinct from domain/range errors: the computation itself
/// failed (e.g. a quadrature refused to converge).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-mode Fock input |n_a, N - n_a> entering a beam splitter with mixing
/// angle xi (pi/4 = balanced).
struct FockInput {
  std::int64_t n_total = 0;  // N
  std::int64_t n_a = 0;      // photons at port a; n_b = N - n_a
  double xi = kHalfMixing;

  std::int64_t n_b() const { return n_total - n_a; }
  std::int64_t ny() const { return 2 * n_a - n_total; }  // N*y
  double y() const {
    return n_total == 0 ? 0.0 : static_cast<double>(ny()) / n_total;
  }
  /// Throws std::invalid_argument when 0 <= n_a <= N is violated.
  void validate() const;
};

/// Normalized output imbalance x = (2 m_a - N)/N for a grid point.
inline double grid_x(std::int64_t n_total, std::int64_t m_a) {
  return n_total == 0 ? 0.0
                      : static_cast<double>(2 * m_a - n_total) / n_total;
}

struct OutputPoint {
  std::int64_t m_a = 0;
  double x = 0.0;
  SignedLogValue amplitude;  // real amplitude in the convention of the
                             // combinatorial engine; global phase fixed
  double density = 0.0;      // (N/2) * amplitude^2
};

enum class EngineKind {
  exact,              // combinatorial sum, any xi
  balanced_closed,    // closed form, y = 0, xi = pi/4
  balanced_stirling,  // Stirling form of the balanced closed form ("eq7")
  imbalanced_analytic,  // analytic imbalanced amplitude ("eq17")
  large_n,              // its large-N form ("eq18")
  oracle,             // matrix-exponential state-vector evolution
  averaged_direct,    // ensemble average of exact densities
};

std::string engine_name(EngineKind kind);         // CLI/CSV token
EngineKind engine_from_name(const std::string&);  // throws std::invalid_argument

struct DistributionSeries {
  FockInput input;
  EngineKind engine = EngineKind::exact;
  bool in_validity_range = true;  // false when an approximation was evaluated
                                  // outside its guard (e.g. Ny > N/4)
  std::vector<OutputPoint> points;  // m_a = 0..N, ordered

  /// Sum over points of amplitude^2 (the total probability mass).
  double total_mass() const;
};

namespace detail {
/// Runs fn(i) for i in [0, n) across worker threads. Thread count comes from
/// the BSDIST_THREADS environment variable (unset or 0 = hardware default).
/// Results must be written to disjoint slots; ordering is deterministic.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);
}  // namespace detail

}  // namespace bsdist
