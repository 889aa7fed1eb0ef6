#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "bsdist/exact.hpp"
#include "doctest.h"
#include "test_support.hpp"

using bsdist::EngineKind;
using bsdist::FockInput;

namespace {
FockInput fock(std::int64_t n_total, std::int64_t n_a,
               double xi = bsdist::kHalfMixing) {
  FockInput in;
  in.n_total = n_total;
  in.n_a = n_a;
  in.xi = xi;
  return in;
}
}  // namespace

TEST_CASE("balanced pair: the (1,1) output is exactly suppressed") {
  const auto a = bsdist::exact_amplitude(fock(2, 1), 1);
  CHECK(a.sign == 0);
  CHECK(a.to_real() == 0.0);
}

TEST_CASE("N=4 balanced amplitudes match the polynomial expansion") {
  const auto a22 = bsdist::exact_amplitude(fock(4, 2), 2);
  CHECK(a22.sign == -1);
  CHECK(a22.to_real() == doctest::Approx(-0.5).epsilon(1e-12));
  const auto a24 = bsdist::exact_amplitude(fock(4, 2), 4);
  CHECK(std::abs(a24.to_real()) ==
        doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("empty input maps to itself") {
  const auto a = bsdist::exact_amplitude(fock(0, 0), 0);
  CHECK(a.sign == +1);
  CHECK(a.to_real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("amplitudes match the polynomial oracle exhaustively to N = 10") {
  for (std::int64_t N = 0; N <= 10; ++N) {
    for (std::int64_t na = 0; na <= N; ++na) {
      const auto oracle = test_support::polynomial_oracle(N, na, bsdist::kHalfMixing);
      for (std::int64_t m = 0; m <= N; ++m) {
        const double got = bsdist::exact_amplitude(fock(N, na), m).to_real();
        CHECK(got == doctest::Approx(oracle[static_cast<std::size_t>(m)])
                         .epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("amplitudes match the polynomial oracle at generic mixing angles") {
  // 0.05 exercises the graded product-rule route, the rest the recurrence.
  for (const double xi : {0.05, 0.06, 0.3, 0.9, 1.2}) {
    for (std::int64_t na = 0; na <= 8; ++na) {
      const auto oracle = test_support::polynomial_oracle(8, na, xi);
      for (std::int64_t m = 0; m <= 8; ++m) {
        const double got = bsdist::exact_amplitude(fock(8, na, xi), m).to_real();
        CHECK(got ==
              doctest::Approx(oracle[static_cast<std::size_t>(m)]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("exact big-integer arithmetic reproduces both engine routes") {
  // At the balanced angle the amplitude is 2^{-N/2} sqrt((N-m)!/(m! n_a!
  // n_b!)) times an integer: S = sum_j (-1)^{m-j} C(m,j) (n_a)_j (n_b)_{m-j}.
  // Evaluating S in arbitrary precision gives a bit-exact oracle for sign
  // and magnitude, immune to the cancellation that limits the double sum.
  using boost::multiprecision::cpp_int;
  auto falling = [](std::int64_t n, std::int64_t k) {
    cpp_int f = 1;
    for (std::int64_t i = 0; i < k; ++i) f *= (n - i);
    return f;
  };
  auto choose = [](std::int64_t n, std::int64_t k) {
    cpp_int c = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
      c *= (n - k + i);
      c /= i;
    }
    return c;
  };
  auto log_cpp_int = [](cpp_int v) {
    double shift = 0.0;
    while (v > cpp_int(1) << 500) {
      v >>= 500;
      shift += 500.0 * std::log(2.0);
    }
    return std::log(v.convert_to<double>()) + shift;
  };

  for (const std::int64_t N : {16, 32, 64}) {
    for (const std::int64_t na : {N / 2, N / 2 - 3, N / 4}) {
      const std::int64_t nb = N - na;
      for (std::int64_t m = 0; m <= N; ++m) {
        cpp_int sum = 0;
        const std::int64_t j_lo = std::max<std::int64_t>(0, m - nb);
        const std::int64_t j_hi = std::min(m, na);
        for (std::int64_t j = j_lo; j <= j_hi; ++j) {
          const cpp_int term = choose(m, j) * falling(na, j) *
                               falling(nb, m - j);
          sum += ((m - j) & 1) ? -term : term;
        }
        const auto got = bsdist::exact_amplitude(fock(N, na), m);
        if (sum == 0) {
          // Balanced-input parity zeros are bit-exact by construction; the
          // symmetry-protected center zeros of imbalanced inputs (odd
          // N/2 + Ny/2 at x = 0) surface at recurrence roundoff instead.
          if ((na & 1) == (nb & 1) && na == nb) {
            CHECK(got.sign == 0);
          } else {
            CHECK(std::abs(got.to_real()) <= 1e-14);
          }
          continue;
        }
        const int expect_sign = sum < 0 ? -1 : +1;
        const double expect_lm =
            log_cpp_int(abs(sum)) +
            0.5 * (bsdist::log_factorial(N - m) - bsdist::log_factorial(m) -
                   bsdist::log_factorial(na) - bsdist::log_factorial(nb)) -
            0.5 * static_cast<double>(N) * std::log(2.0);
        CHECK(got.sign == expect_sign);
        CHECK(got.log_mag == doctest::Approx(expect_lm).epsilon(1e-12));
        double err = 0.0;
        const auto lei = bsdist::leibniz_amplitude(fock(N, na), m, &err);
        if (err <= 1e-12 && !lei.is_zero()) {
          CHECK(lei.sign == expect_sign);
          CHECK(lei.log_mag == doctest::Approx(expect_lm).epsilon(1e-11));
        }
      }
    }
  }
}

TEST_CASE("leibniz route agrees with the recurrence where well conditioned") {
  for (std::int64_t N : {12, 60, 200}) {
    const std::int64_t na = N / 2;
    for (std::int64_t m = 0; m <= N; ++m) {
      double err = 0.0;
      const auto lei = bsdist::leibniz_amplitude(fock(N, na), m, &err);
      const auto rec = bsdist::exact_amplitude(fock(N, na), m);
      if (lei.is_zero()) {
        CHECK(rec.sign == 0);
        continue;
      }
      if (err > 1e-12) continue;  // outside the sum's stable region
      CHECK(rec.sign == lei.sign);
      CHECK(rec.log_mag == doctest::Approx(lei.log_mag).epsilon(1e-10));
    }
  }
}

TEST_CASE("the amplitude vector satisfies its three-term relation everywhere") {
  // 2 (k_n - cos(2xi) k_m) v_m = sin(2xi) (sqrt(m(N-m+1)) v_{m-1}
  //                               + sqrt((m+1)(N-m)) v_{m+1});
  // in particular the seam where the two recurrence passes meet must obey
  // the same relation as every interior point.
  for (const auto& [N, na, xi] :
       {std::tuple<std::int64_t, std::int64_t, double>{2000, 1000, bsdist::kHalfMixing},
        {2000, 417, bsdist::kHalfMixing},
        {1999, 700, 0.9},
        {600, 306, bsdist::kHalfMixing}}) {
    const auto v = bsdist::exact_amplitudes(fock(N, na, xi));
    const double cb = std::abs(xi - bsdist::kHalfMixing) <= 1e-12
                          ? 0.0
                          : std::cos(2.0 * xi);
    const double sb = std::abs(xi - bsdist::kHalfMixing) <= 1e-12
                          ? 1.0
                          : std::sin(2.0 * xi);
    const double kn = static_cast<double>(na) - 0.5 * N;
    for (std::int64_t m = 0; m <= N; ++m) {
      // Rescale the triple by its largest log magnitude so the deep tails
      // (which underflow in real space) are checked at full precision.
      double lm_max = -std::numeric_limits<double>::infinity();
      for (std::int64_t i = std::max<std::int64_t>(m - 1, 0);
           i <= std::min<std::int64_t>(m + 1, N); ++i)
        if (v[i].sign != 0) lm_max = std::max(lm_max, v[i].log_mag);
      if (!std::isfinite(lm_max)) continue;
      auto w = [&](std::int64_t i) {
        if (i < 0 || i > N || v[i].sign == 0) return 0.0;
        return v[i].sign * std::exp(v[i].log_mag - lm_max);
      };
      const double md = static_cast<double>(m);
      const double lhs = 2.0 * (kn - cb * (md - 0.5 * N)) * w(m);
      const double rhs =
          sb * (std::sqrt(md * (N - md + 1.0)) * w(m - 1) +
                std::sqrt((md + 1.0) * (N - md)) * w(m + 1));
      const double scale =
          std::max({std::abs(lhs), std::abs(rhs), static_cast<double>(N)});
      CHECK(std::abs(lhs - rhs) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("xi = 0 is the identity map") {
  for (std::int64_t na = 0; na <= 5; ++na) {
    for (std::int64_t m = 0; m <= 5; ++m) {
      const double got = bsdist::exact_amplitude(fock(5, na, 0.0), m).to_real();
      CHECK(got == doctest::Approx(na == m ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("balanced_amplitude closed form") {
  SUBCASE("N=4 values") {
    CHECK(bsdist::balanced_amplitude(4, 2).to_real() ==
          doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(bsdist::balanced_amplitude(4, 3).sign == 0);
  }
  SUBCASE("N=600 center matches the Stirling magnitude to 0.1%") {
    const double got = std::abs(bsdist::balanced_amplitude(600, 300).to_real());
    const double stirling = 2.0 / std::sqrt(600.0 * bsdist::kPi);
    CHECK(std::abs(got - stirling) / stirling < 1e-3);
  }
  SUBCASE("odd N rejected") {
    CHECK_THROWS_AS(bsdist::balanced_amplitude(5, 2), std::domain_error);
  }
  SUBCASE("equals exact_amplitude for all N <= 64, identical zero sets") {
    for (std::int64_t N = 2; N <= 64; N += 2) {
      for (std::int64_t m = 0; m <= N; ++m) {
        const auto closed = bsdist::balanced_amplitude(N, m);
        const auto exact = bsdist::exact_amplitude(fock(N, N / 2), m);
        CHECK(closed.sign == exact.sign);
        if (closed.sign != 0)
          CHECK(exact.log_mag ==
                doctest::Approx(closed.log_mag).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distribution assembles densities with the N/2 scaling") {
  SUBCASE("N=2 balanced pair") {
    const auto series = bsdist::distribution(fock(2, 1), EngineKind::exact);
    REQUIRE(series.points.size() == 3);
    CHECK(series.points[0].density == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(series.points[1].density == 0.0);
    CHECK(series.points[2].density == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("N=4 probabilities 3/8, 0, 1/4, 0, 3/8") {
    const auto series = bsdist::distribution(fock(4, 2), EngineKind::exact);
    const double expected[] = {3.0 / 8, 0.0, 1.0 / 4, 0.0, 3.0 / 8};
    for (int m = 0; m <= 4; ++m) {
      const double a = series.points[m].amplitude.to_real();
      CHECK(a * a == doctest::Approx(expected[m]).epsilon(1e-12));
      // density = (N/2) |A|^2
      CHECK(series.points[m].density ==
            doctest::Approx(2.0 * expected[m]).epsilon(1e-12));
    }
  }
  SUBCASE("N=600 balanced closed form is unitary to 1e-9") {
    const auto series =
        bsdist::distribution(fock(600, 300), EngineKind::balanced_closed);
    CHECK(std::abs(series.total_mass() - 1.0) < 1e-9);
  }
  SUBCASE("regime guard: balanced engine needs a balanced input") {
    CHECK_THROWS_AS(bsdist::distribution(fock(4, 3), EngineKind::balanced_closed),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        bsdist::distribution(fock(4, 2, 0.5), EngineKind::balanced_closed),
        std::invalid_argument);
  }
}

TEST_CASE("unitarity of the exact engine across sizes") {
  for (const std::int64_t N : {1, 2, 7, 64, 401, 1000}) {
    for (const std::int64_t na : {std::int64_t{0}, N / 3, N / 2, N}) {
      const auto series = bsdist::distribution(fock(N, na), EngineKind::exact);
      CHECK(std::abs(series.total_mass() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("center-point suppression alternates with N mod 4") {
  // Balanced input: the x = 0 output is an exact zero when N/2 is odd and
  // strictly positive when N/2 is even.
  for (const std::int64_t N : {2, 6, 10, 298, 602}) {
    const auto a = bsdist::exact_amplitude(fock(N, N / 2), N / 2);
    CHECK(a.sign == 0);
  }
  for (const std::int64_t N : {4, 8, 12, 300, 600}) {
    const auto a = bsdist::exact_amplitude(fock(N, N / 2), N / 2);
    CHECK(a.sign != 0);
    CHECK(a.to_real() * a.to_real() > 0.0);
  }
  // The rule generalizes to imbalanced inputs: the center point is
  // suppressed whenever N/2 + Ny/2 is odd (to roundoff for Ny != 0).
  for (const std::int64_t N : {16, 40, 128}) {
    for (std::int64_t ny = -N / 2; ny <= N / 2; ny += 2) {
      const double center =
          bsdist::exact_amplitude(fock(N, (N + ny) / 2), N / 2).to_real();
      if ((N / 2 + ny / 2) & 1) {
        CHECK(std::abs(center) <= 1e-14);
      } else {
        CHECK(std::abs(center) > 1e-10);
      }
    }
  }
}

TEST_CASE("probability symmetries at the balanced mixing angle") {
  for (const std::int64_t N : {9, 12, 31}) {
    for (std::int64_t na = 0; na <= N; na += 3) {
      const auto a = bsdist::exact_amplitudes(fock(N, na));
      const auto mirror = bsdist::exact_amplitudes(fock(N, N - na));
      for (std::int64_t m = 0; m <= N; ++m) {
        // x -> -x within one series
        CHECK(std::abs(a[m].to_real()) ==
              doctest::Approx(std::abs(a[N - m].to_real())).epsilon(1e-10));
        // y -> -y across series
        CHECK(std::abs(a[m].to_real()) ==
              doctest::Approx(std::abs(mirror[m].to_real())).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("negative imbalance reflection rule") {
  SUBCASE("requires ny < 0") {
    CHECK_THROWS_AS(bsdist::negative_y_amplitude(fock(4, 3), 2),
                    std::invalid_argument);
  }
  SUBCASE("reflection reproduces the direct evaluation, signs included") {
    for (std::int64_t N = 2; N <= 12; ++N) {
      for (std::int64_t na = 0; 2 * na < N; ++na) {
        for (std::int64_t m = 0; m <= N; ++m) {
          const auto direct = bsdist::exact_amplitude(fock(N, na), m);
          const auto reflected = bsdist::negative_y_amplitude(fock(N, na), m);
          CHECK(direct.sign == reflected.sign);
          if (direct.sign != 0)
            CHECK(direct.log_mag ==
                  doctest::Approx(reflected.log_mag).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(bsdist::exact_amplitude(fock(4, 2), 5), std::domain_error);
  CHECK_THROWS_AS(bsdist::exact_amplitude(fock(4, 2), -1), std::domain_error);
  CHECK_THROWS_AS(bsdist::exact_amplitude(fock(4, 5), 2), std::invalid_argument);
}

TEST_CASE("the swap limit xi = pi/2 stays finite and correct") {
  // cos(pi/2) rounds to ~6e-17, the graded sum keeps the evaluation stable:
  // the splitter becomes a swap, |<n_b, n_a|U|n_a, n_b>| = 1.
  const double got =
      std::abs(bsdist::exact_amplitude(fock(4, 1, bsdist::kPi / 2), 3).to_real());
  CHECK(got == doctest::Approx(1.0).epsilon(1e-12));
}
