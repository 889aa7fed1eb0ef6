#include "bsdist/emit.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "bsdist/version.hpp"
#include "json.hpp"

namespace bsdist {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* weighting_name(Weighting w) {
  return w == Weighting::uniform ? "uniform" : "gaussian";
}

const char* norm_name(Normalization n) {
  return n == Normalization::half_n ? "half_n" : "quarter_n";
}

void append_header(ordered_json& doc, const char* schema) {
  doc["schema"] = schema;
  doc["version"] = kVersionString;
}

ordered_json point_json(const OutputPoint& p) {
  ordered_json j;
  j["m_a"] = p.m_a;
  j["x"] = p.x;
  j["amplitude_sign"] = p.amplitude.sign;
  j["amplitude_log_mag"] =
      p.amplitude.sign == 0 ? ordered_json(nullptr)
                            : ordered_json(p.amplitude.log_mag);
  j["density"] = p.density;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string series_to_csv(const DistributionSeries& series, GridFilter filter) {
  std::ostringstream os;
  const std::string engine = engine_name(series.engine);
  os << "m_a,m_b,x,amplitude_sign,amplitude_log_mag,density,engine\n";
  for (const auto& p : series.points) {
    if (filter == GridFilter::nonzero && p.amplitude.is_zero()) continue;
    os << p.m_a << ',' << (series.input.n_total - p.m_a) << ','
       << format_double(p.x) << ',' << p.amplitude.sign << ','
       << format_double(p.amplitude.sign == 0
                            ? -std::numeric_limits<double>::infinity()
                            : p.amplitude.log_mag)
       << ',' << format_double(p.density) << ',' << engine << '\n';
  }
  return os.str();
}

std::string series_to_json(const DistributionSeries& series, GridFilter filter) {
  ordered_json doc;
  append_header(doc, "bsdist-distribution-1");
  doc["n_total"] = series.input.n_total;
  doc["ny"] = series.input.ny();
  doc["xi"] = series.input.xi;
  doc["engine"] = engine_name(series.engine);
  doc["in_validity_range"] = series.in_validity_range;
  ordered_json pts = ordered_json::array();
  for (const auto& p : series.points) {
    if (filter == GridFilter::nonzero && p.amplitude.is_zero()) continue;
    pts.push_back(point_json(p));
  }
  doc["points"] = std::move(pts);
  return doc.dump(2) + "\n";
}

CompareTable compare_series(const DistributionSeries& a,
                            const DistributionSeries& b) {
  if (a.input.n_total != b.input.n_total)
    throw std::invalid_argument("compare_series: different N");
  CompareTable t;
  t.a = a;
  t.b = b;
  t.rel_error.resize(a.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const double da = a.points[i].density;
    const double db = b.points[i].density;
    double rel;
    if (da == 0.0 && db == 0.0) {
      rel = 0.0;
    } else if (da == 0.0) {
      rel = std::numeric_limits<double>::infinity();
    } else {
      rel = std::abs(db - da) / std::abs(da);
    }
    t.rel_error[i] = rel;
    if (!std::isnan(rel)) {
      t.max_rel_all = std::max(t.max_rel_all, rel);
      if (std::abs(a.points[i].x) <= 0.8)
        t.max_rel_core = std::max(t.max_rel_core, rel);
    }
  }
  return t;
}

std::string compare_to_csv(const CompareTable& table) {
  std::ostringstream os;
  const std::string ea = engine_name(table.a.engine);
  const std::string eb = engine_name(table.b.engine);
  os << "m_a,m_b,x,density_" << ea << ",density_" << eb << ",rel_error\n";
  const std::int64_t N = table.a.input.n_total;
  for (std::size_t i = 0; i < table.a.points.size(); ++i) {
    const auto& p = table.a.points[i];
    os << p.m_a << ',' << (N - p.m_a) << ',' << format_double(p.x) << ','
       << format_double(p.density) << ','
       << format_double(table.b.points[i].density) << ','
       << format_double(table.rel_error[i]) << '\n';
  }
  os << "# max_rel_error_core_|x|<=0.8," << format_double(table.max_rel_core)
     << '\n';
  os << "# max_rel_error_all," << format_double(table.max_rel_all) << '\n';
  return os.str();
}

std::string compare_to_json(const CompareTable& table) {
  ordered_json doc;
  append_header(doc, "bsdist-compare-1");
  doc["n_total"] = table.a.input.n_total;
  doc["ny"] = table.a.input.ny();
  doc["xi"] = table.a.input.xi;
  doc["engine"] = engine_name(table.a.engine);
  doc["engine_b"] = engine_name(table.b.engine);
  doc["max_rel_error_core"] = table.max_rel_core;
  doc["max_rel_error_all"] = table.max_rel_all;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < table.a.points.size(); ++i) {
    ordered_json r;
    r["m_a"] = table.a.points[i].m_a;
    r["x"] = table.a.points[i].x;
    r["density_a"] = table.a.points[i].density;
    r["density_b"] = table.b.points[i].density;
    const double rel = table.rel_error[i];
    r["rel_error"] = std::isfinite(rel) ? ordered_json(rel)
                                        : ordered_json(format_double(rel));
    rows.push_back(std::move(r));
  }
  doc["points"] = std::move(rows);
  return doc.dump(2) + "\n";
}

AverageTable average_table(std::int64_t n_total, const AveragingWindow& window,
                           Normalization norm) {
  AverageTable t;
  t.n_total = n_total;
  t.n_bound = window.n_bound;
  t.weighting = window.weighting;
  t.norm = norm;
  t.direct = averaged_distribution_direct(n_total, window, norm);
  t.closed.resize(static_cast<std::size_t>(n_total) + 1);
  for (std::int64_t m = 0; m <= n_total; ++m) {
    t.closed[static_cast<std::size_t>(m)] =
        (m == 0 || m == n_total)
            ? std::numeric_limits<double>::infinity()
            : averaged_distribution_closed(n_total, window.n_bound, m, norm);
  }
  return t;
}

std::string average_to_csv(const AverageTable& table) {
  std::ostringstream os;
  os << "m_a,m_b,x,density_direct,density_closed,deviation\n";
  for (std::size_t i = 0; i < table.direct.points.size(); ++i) {
    const auto& p = table.direct.points[i];
    const double closed = table.closed[i];
    os << p.m_a << ',' << (table.n_total - p.m_a) << ',' << format_double(p.x)
       << ',' << format_double(p.density) << ',' << format_double(closed)
       << ',' << format_double(p.density - closed) << '\n';
  }
  return os.str();
}

std::string average_to_json(const AverageTable& table) {
  ordered_json doc;
  append_header(doc, "bsdist-average-1");
  doc["n_total"] = table.n_total;
  doc["ny"] = 0;
  doc["xi"] = kHalfMixing;
  doc["engine"] = "average";
  doc["n_bound"] = table.n_bound;
  doc["weighting"] = weighting_name(table.weighting);
  doc["normalization"] = norm_name(table.norm);
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < table.direct.points.size(); ++i) {
    const auto& p = table.direct.points[i];
    ordered_json r;
    r["m_a"] = p.m_a;
    r["x"] = p.x;
    r["density_direct"] = p.density;
    const double closed = table.closed[i];
    r["density_closed"] = std::isfinite(closed)
                              ? ordered_json(closed)
                              : ordered_json(format_double(closed));
    rows.push_back(std::move(r));
  }
  doc["points"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string correlation_to_csv(const CorrelationGrid& grid,
                               std::int64_t n_total, std::int64_t n_bound) {
  std::ostringstream os;
  os << "m_a,m_a_prime,x,x_prime,epsilon,correlation\n";
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      os << grid.ms[i] << ',' << grid.ms[j] << ',' << format_double(grid.xs[i])
         << ',' << format_double(grid.xs[j]) << ',' << grid.eps_at(i, j) << ','
         << format_double(grid.at(i, j)) << '\n';
    }
  }
  (void)n_total;
  (void)n_bound;
  return os.str();
}

std::string correlation_to_json(const CorrelationGrid& grid,
                                std::int64_t n_total, std::int64_t n_bound) {
  ordered_json doc;
  append_header(doc, "bsdist-correlation-1");
  doc["n_total"] = n_total;
  doc["ny"] = 0;
  doc["xi"] = kHalfMixing;
  doc["engine"] = "exact";
  doc["n_bound"] = n_bound;
  doc["xs"] = grid.xs;
  doc["epsilon"] = grid.epsilon;
  doc["values"] = grid.values;
  return doc.dump(2) + "\n";
}

}  // namespace bsdist
