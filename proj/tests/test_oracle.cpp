#include <chrono>
#include <cmath>
#include <random>

#include "bsdist/exact.hpp"
#include "bsdist/oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

namespace {
double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}
}  // namespace

TEST_CASE("zero rotation is the identity") {
  for (std::int64_t na = 0; na <= 6; ++na) {
    const auto v = bsdist::oracle_evolve(6, na, 0.0);
    for (std::int64_t m = 0; m <= 6; ++m)
      CHECK(v[m] == doctest::Approx(m == na ? 1.0 : 0.0).epsilon(1e-13));
  }
}

TEST_CASE("the two-photon case evolves to the analytic triple") {
  const auto v = bsdist::oracle_evolve(2, 1, bsdist::kHalfMixing);
  CHECK(std::abs(v[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(v[1]) <= 1e-12);
  CHECK(std::abs(v[2]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(v[0] * v[2] < 0.0);  // opposite signs across the pair
}

TEST_CASE("four photons split 2-2 give squared magnitudes 3/8,0,1/4,0,3/8") {
  const auto v = bsdist::oracle_evolve(4, 2, bsdist::kHalfMixing);
  const double expected[] = {3.0 / 8, 0.0, 1.0 / 4, 0.0, 3.0 / 8};
  for (int m = 0; m <= 4; ++m)
    CHECK(v[m] * v[m] == doctest::Approx(expected[m]).epsilon(1e-12));
}

TEST_CASE("norm preservation across sizes and angles") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> xi_dist(0.0, bsdist::kPi);
  for (const std::int64_t N : {1, 5, 40, 250}) {
    std::uniform_int_distribution<std::int64_t> na_dist(0, N);
    for (int rep = 0; rep < 4; ++rep) {
      const auto v = bsdist::oracle_evolve(N, na_dist(rng), xi_dist(rng));
      CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("one-parameter group composition") {
  const std::int64_t N = 24;
  const double xi1 = 0.31, xi2 = 0.47;
  const auto u1 = bsdist::oracle_unitary(N, xi1);
  const auto u2 = bsdist::oracle_unitary(N, xi2);
  const auto u12 = bsdist::oracle_unitary(N, xi1 + xi2);
  const std::size_t dim = N + 1;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        acc += u2[i * dim + k] * u1[k * dim + j];
      CHECK(std::abs(acc - u12[i * dim + j]) <= 1e-10);
    }
  }
}

TEST_CASE("matrix evolution agrees with the polynomial expansion") {
  for (const double xi : {0.4, bsdist::kHalfMixing, 1.1}) {
    for (std::int64_t na = 0; na <= 7; ++na) {
      const auto v = bsdist::oracle_evolve(7, na, xi);
      const auto p = test_support::polynomial_oracle(7, na, xi);
      for (std::int64_t m = 0; m <= 7; ++m)
        CHECK(v[m] == doctest::Approx(p[m]).epsilon(1e-11));
    }
  }
}

TEST_CASE("signed amplitudes match the combinatorial engine, N <= 60") {
  // Phase alignment: the calibration ratio on the largest entry must be +1,
  // after which every signed entry agrees.
  for (const std::int64_t N : {3, 31, 60}) {
    for (std::int64_t na = 0; na <= N; na += 5) {
      const auto v = bsdist::oracle_evolve(N, na, bsdist::kHalfMixing);
      bsdist::FockInput in;
      in.n_total = N;
      in.n_a = na;
      const auto a = bsdist::exact_amplitudes(in);
      std::size_t ref = 0;
      for (std::size_t m = 0; m < v.size(); ++m)
        if (std::abs(v[m]) > std::abs(v[ref])) ref = m;
      REQUIRE(a[ref].sign != 0);
      const double calibration =
          static_cast<double>(a[ref].sign) * (v[ref] > 0 ? 1.0 : -1.0);
      CHECK(calibration == 1.0);
      for (std::size_t m = 0; m < v.size(); ++m) {
        if (std::abs(v[m]) < 1e-12) {
          CHECK(std::abs(a[m].to_real()) <= 1e-10);
          continue;
        }
        CHECK(a[m].sign == (v[m] > 0 ? 1 : -1));
        CHECK(std::abs(a[m].to_real() - v[m]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("oracle_check sweeps all inputs") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = bsdist::oracle_check(20);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(report.pass);
  CHECK(report.max_abs_deviation <= 1e-8);
  CHECK(report.summary().find("PASS") == 0);
  CHECK(elapsed < 1.0);
}

TEST_CASE("dimension bound") {
  CHECK_THROWS_AS(bsdist::oracle_evolve(2001, 0, 0.5), std::length_error);
}
