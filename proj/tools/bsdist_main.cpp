// bsdist: photon-number statistics at the output of a two-mode beam splitter.
//
// Subcommands compute exact and closed-form output distributions, engine
// comparisons, imbalance-ensemble averages, two-point correlations, an
// independent matrix-exponential verification, and the standard N = 600
// figure data set. Output is deterministic CSV or JSON.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bsdist/asymptotic.hpp"
#include "bsdist/emit.hpp"
#include "bsdist/exact.hpp"
#include "bsdist/oracle.hpp"
#include "bsdist/stats.hpp"
#include "bsdist/version.hpp"
#include "json.hpp"

namespace {

using bsdist::EngineKind;
using bsdist::GridFilter;
using bsdist::Normalization;
using bsdist::Weighting;

// Exit codes: 0 success, 2 usage, 3 regime guard, 4 numerical, 5 I/O.
constexpr int kExitUsage = 2;
constexpr int kExitRegime = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitIo = 5;

// Malformed request detected before any computation (exit 2); the library's
// own guards (regime mismatches, domain errors) map to exit 3 instead.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string format = "csv";
  std::string output;  // empty = stdout
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", opts.output,
                  "Output file (default: stdout)");
}

void write_output(const CommonOptions& opts, const std::string& body) {
  if (opts.output.empty()) {
    std::cout << body;
    if (!std::cout) throw std::ios_base::failure("stdout write failed");
    return;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + opts.output);
  out << body;
  if (!out) throw std::ios_base::failure("write failed: " + opts.output);
}

bsdist::FockInput make_input(std::int64_t n_total, std::int64_t ny, double xi) {
  if (n_total < 0 || ((n_total + ny) & 1) || std::abs(ny) > n_total)
    throw usage_error("--ny must have the parity of --n-total and |ny| <= N");
  bsdist::FockInput input;
  input.n_total = n_total;
  input.n_a = (n_total + ny) / 2;
  input.xi = xi;
  return input;
}

Normalization parse_norm(const std::string& s) {
  return s == "quarter_n" ? Normalization::quarter_n : Normalization::half_n;
}

Weighting parse_weighting(const std::string& s) {
  return s == "gaussian" ? Weighting::gaussian_poissonian : Weighting::uniform;
}

int run(int argc, char** argv) {
  CLI::App app{"photon-number statistics at the output of a beam splitter"};
  app.set_version_flag("--version", bsdist::kVersionString);
  app.require_subcommand(1);

  // --- dist ---------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "Output distribution series");
  std::int64_t n_total = 0, ny = 0;
  double xi = bsdist::kHalfMixing;
  std::string engine = "exact", grid = "all";
  CommonOptions dist_opts;
  dist->add_option("--n-total", n_total, "Total photon number N")->required();
  dist->add_option("--ny", ny, "Input imbalance Ny = n_a - n_b")
      ->capture_default_str();
  dist->add_option("--xi", xi, "Mixing angle (radians)")->capture_default_str();
  dist->add_option("--engine", engine, "Engine")
      ->check(CLI::IsMember({"exact", "balanced", "eq7", "eq17", "eq18",
                             "oracle"}))
      ->capture_default_str();
  dist->add_option("--grid", grid, "Row filter")
      ->check(CLI::IsMember({"all", "nonzero"}))
      ->capture_default_str();
  add_common(dist, dist_opts);

  // --- compare ------------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "Two engines side by side");
  std::int64_t cmp_n = 0, cmp_ny = 0;
  double cmp_xi = bsdist::kHalfMixing;
  std::string engine_a = "exact", engine_b = "eq17";
  CommonOptions cmp_opts;
  compare->add_option("--n-total", cmp_n, "Total photon number N")->required();
  compare->add_option("--ny", cmp_ny, "Input imbalance Ny")
      ->capture_default_str();
  compare->add_option("--xi", cmp_xi, "Mixing angle")->capture_default_str();
  const std::vector<std::string> engine_tokens{"exact",  "balanced", "eq7",
                                               "eq17",   "eq18",     "oracle"};
  compare->add_option("--engine-a", engine_a, "Reference engine")
      ->check(CLI::IsMember(engine_tokens))
      ->capture_default_str();
  compare->add_option("--engine-b", engine_b, "Comparison engine")
      ->check(CLI::IsMember(engine_tokens))
      ->capture_default_str();
  add_common(compare, cmp_opts);

  // --- average ------------------------------------------------------------
  auto* average = app.add_subcommand(
      "average", "Imbalance-ensemble average: direct vs closed form");
  std::int64_t avg_n = 0, avg_bound = 0;
  std::string avg_weighting = "uniform", avg_norm = "half_n";
  CommonOptions avg_opts;
  average->add_option("--n-total", avg_n, "Total photon number N")->required();
  average->add_option("--n-bound", avg_bound, "Imbalance bound (|Ny| <= n)")
      ->capture_default_str();
  average->add_option("--weighting", avg_weighting, "Member weighting")
      ->check(CLI::IsMember({"uniform", "gaussian"}))
      ->capture_default_str();
  average->add_option("--normalization", avg_norm, "Density normalization")
      ->check(CLI::IsMember({"half_n", "quarter_n"}))
      ->capture_default_str();
  add_common(average, avg_opts);

  // --- correlate ----------------------------------------------------------
  auto* correlate = app.add_subcommand(
      "correlate", "Closed-form two-point correlation grid");
  std::int64_t cor_n = 0, cor_bound = 0;
  std::string cor_norm = "half_n";
  CommonOptions cor_opts;
  correlate->add_option("--n-total", cor_n, "Total photon number N")
      ->required();
  correlate->add_option("--n-bound", cor_bound, "Imbalance bound")
      ->capture_default_str();
  correlate->add_option("--normalization", cor_norm, "Density normalization")
      ->check(CLI::IsMember({"half_n", "quarter_n"}))
      ->capture_default_str();
  add_common(correlate, cor_opts);

  // --- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Check the combinatorial engine against the matrix oracle");
  std::int64_t verify_n_max = 20;
  CommonOptions verify_opts;
  verify->add_option("--n-max", verify_n_max, "Largest N to verify")
      ->capture_default_str();
  add_common(verify, verify_opts);

  // --- figure2 ------------------------------------------------------------
  auto* figure2 = app.add_subcommand(
      "figure2", "Emit the N = 600, Ny = 0/12/24 reference data set");
  std::string fig_dir = "figure2_out";
  figure2->add_option("--output-dir", fig_dir, "Destination directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (dist->parsed()) {
    const auto input = make_input(n_total, ny, xi);
    const auto series =
        bsdist::distribution(input, bsdist::engine_from_name(engine));
    const GridFilter filter =
        grid == "nonzero" ? GridFilter::nonzero : GridFilter::all;
    write_output(dist_opts, dist_opts.format == "json"
                                ? bsdist::series_to_json(series, filter)
                                : bsdist::series_to_csv(series, filter));
    return 0;
  }

  if (compare->parsed()) {
    const auto input = make_input(cmp_n, cmp_ny, cmp_xi);
    const auto sa =
        bsdist::distribution(input, bsdist::engine_from_name(engine_a));
    const auto sb =
        bsdist::distribution(input, bsdist::engine_from_name(engine_b));
    const auto table = bsdist::compare_series(sa, sb);
    write_output(cmp_opts, cmp_opts.format == "json"
                               ? bsdist::compare_to_json(table)
                               : bsdist::compare_to_csv(table));
    return 0;
  }

  if (average->parsed()) {
    const bsdist::AveragingWindow window{avg_bound,
                                         parse_weighting(avg_weighting)};
    const auto table =
        bsdist::average_table(avg_n, window, parse_norm(avg_norm));
    write_output(avg_opts, avg_opts.format == "json"
                               ? bsdist::average_to_json(table)
                               : bsdist::average_to_csv(table));
    return 0;
  }

  if (correlate->parsed()) {
    const auto grid_values = bsdist::correlation_grid_closed(
        cor_n, cor_bound, parse_norm(cor_norm));
    write_output(cor_opts,
                 cor_opts.format == "json"
                     ? bsdist::correlation_to_json(grid_values, cor_n, cor_bound)
                     : bsdist::correlation_to_csv(grid_values, cor_n, cor_bound));
    return 0;
  }

  if (verify->parsed()) {
    const auto report = bsdist::oracle_check(verify_n_max);
    if (verify_opts.format == "json") {
      nlohmann::ordered_json doc;
      doc["schema"] = "bsdist-verify-1";
      doc["version"] = bsdist::kVersionString;
      doc["n_max"] = report.n_max;
      doc["max_abs_deviation"] = report.max_abs_deviation;
      doc["worst_n_total"] = report.worst_n_total;
      doc["worst_n_a"] = report.worst_n_a;
      doc["worst_m_a"] = report.worst_m_a;
      doc["pass"] = report.pass;
      write_output(verify_opts, doc.dump(2) + "\n");
    } else {
      write_output(verify_opts, report.summary() + "\n");
    }
    return report.pass ? 0 : kExitNumerical;
  }

  if (figure2->parsed()) {
    const auto t0 = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fig_dir, ec);
    if (ec) throw std::ios_base::failure("cannot create " + fig_dir);

    const std::int64_t fig_n = 600;
    nlohmann::ordered_json manifest;
    manifest["schema"] = "bsdist-figure2-manifest-1";
    manifest["version"] = bsdist::kVersionString;
    manifest["n_total"] = fig_n;
    manifest["ny_values"] = {0, 12, 24};
    manifest["xi"] = bsdist::kHalfMixing;
    manifest["engines"] = {"exact", "eq17"};
    manifest["notes"] =
        "For the balanced input (ny = 0) the exact amplitude vanishes exactly "
        "at odd m_a, i.e. at output imbalances Nx = +-2, +-6, ... (Nx = 2 mod "
        "4); the nonvanishing comb sits at Nx = 0 mod 4 where N(1+x)/4 is an "
        "integer. The even- and odd-m_a families carry the two slowly "
        "oscillating envelopes of the imbalanced distributions.";
    nlohmann::ordered_json files = nlohmann::ordered_json::array();

    auto emit_file = [&](const std::string& name, const std::string& body) {
      const fs::path path = fs::path(fig_dir) / name;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::ios_base::failure("cannot open " + path.string());
      out << body;
      if (!out) throw std::ios_base::failure("write failed: " + path.string());
      nlohmann::ordered_json f;
      f["name"] = name;
      f["bytes"] = body.size();
      f["fnv1a64"] = bsdist::fnv1a64_hex(body);
      files.push_back(std::move(f));
    };

    for (const std::int64_t fig_ny : {0, 12, 24}) {
      for (const EngineKind kind :
           {EngineKind::exact, EngineKind::imbalanced_analytic}) {
        const auto input = make_input(fig_n, fig_ny, bsdist::kHalfMixing);
        const auto series = bsdist::distribution(input, kind);
        emit_file("dist_" + bsdist::engine_name(kind) + "_ny" +
                      std::to_string(fig_ny) + ".csv",
                  bsdist::series_to_csv(series));
      }
    }

    // Reference curves: upper comb envelope (twice the arcsine density) and
    // the arcsine density itself, on a uniform diagnostic grid.
    std::string upper = "x,density\n";
    std::string arcsine = "x,density\n";
    for (int i = -499; i <= 499; ++i) {
      const double x = static_cast<double>(i) / 500.0;
      const double p = bsdist::arcsine_envelope(x);
      upper += bsdist::format_double(x) + "," +
               bsdist::format_double(2.0 * p) + "\n";
      arcsine += bsdist::format_double(x) + "," + bsdist::format_double(p) +
                 "\n";
    }
    emit_file("envelope_upper.csv", upper);
    emit_file("envelope_arcsine.csv", arcsine);

    manifest["files"] = std::move(files);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    manifest["elapsed_ms"] = elapsed.count();
    const fs::path mpath = fs::path(fig_dir) / "manifest.json";
    std::ofstream out(mpath, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + mpath.string());
    out << manifest.dump(2) << "\n";
    if (!out) throw std::ios_base::failure("write failed: " + mpath.string());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return kExitUsage;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bsdist::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const std::domain_error& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const std::range_error& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const std::length_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
