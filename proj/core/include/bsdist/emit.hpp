#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsdist/fock.hpp"
#include "bsdist/stats.hpp"

namespace bsdist {

/// 17-significant-digit rendering (round-trip exact for double); infinities
/// render as "inf"/"-inf". Deterministic for a given value.
std::string format_double(double v);

/// 64-bit FNV-1a of a byte string, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

/// Row filter for series emission.
enum class GridFilter { all, nonzero };

/// CSV with header m_a,m_b,x,amplitude_sign,amplitude_log_mag,density,engine.
std::string series_to_csv(const DistributionSeries& series,
                          GridFilter filter = GridFilter::all);

/// JSON document (schema bsdist-distribution-1) carrying N, Ny, xi, engine,
/// artifact version and the points array.
std::string series_to_json(const DistributionSeries& series,
                           GridFilter filter = GridFilter::all);

struct CompareTable {
  DistributionSeries a;
  DistributionSeries b;
  std::vector<double> rel_error;  // per point, vs series a as reference
  double max_rel_all = 0.0;
  double max_rel_core = 0.0;  // over |x| <= 0.8
};

/// Per-point densities of two engines plus relative error columns and the
/// two summary maxima. Throws std::invalid_argument on mismatched grids.
CompareTable compare_series(const DistributionSeries& a,
                            const DistributionSeries& b);

std::string compare_to_csv(const CompareTable& table);
std::string compare_to_json(const CompareTable& table);

struct AverageTable {
  std::int64_t n_total = 0;
  std::int64_t n_bound = 0;
  Weighting weighting = Weighting::uniform;
  Normalization norm = Normalization::half_n;
  DistributionSeries direct;
  std::vector<double> closed;  // +inf at the edge points
};

AverageTable average_table(std::int64_t n_total, const AveragingWindow& window,
                           Normalization norm = Normalization::half_n);

std::string average_to_csv(const AverageTable& table);
std::string average_to_json(const AverageTable& table);

std::string correlation_to_csv(const CorrelationGrid& grid,
                               std::int64_t n_total, std::int64_t n_bound);
std::string correlation_to_json(const CorrelationGrid& grid,
                                std::int64_t n_total, std::int64_t n_bound);

}  // namespace bsdist
