#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gwalk/error.hpp"
#include "gwalk/spectral.hpp"
#include "gwalk/verify.hpp"
#include "test_util.hpp"

using namespace gwalk;
using namespace gwalk::testing;

namespace {

// Weierstrass (Durand-Kerner) iteration: independent of the companion-matrix
// route used by the library.
std::vector<cplx> durand_kerner(std::vector<cplx> coeffs) {
  const cplx lead = coeffs.front();
  for (auto& c : coeffs) c /= lead;
  const std::size_t n = coeffs.size() - 1;
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(cplx(0.4, 0.9), static_cast<double>(i));
  auto eval = [&](cplx x) {
    cplx acc = 0.0;
    for (const auto& c : coeffs) acc = acc * x + c;
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      const cplx dz = eval(z[i]) / den;
      z[i] -= dz;
      moved = std::max(moved, std::abs(dz));
    }
    if (moved < 1e-16) break;
  }
  return z;
}

// Largest distance from a root in `a` to its nearest partner in `b`.
double root_set_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (const auto& x : a) {
    double best = INFINITY;
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

cplx random_on_circle(std::mt19937_64& rng) { return random_unit(rng); }

}  // namespace

TEST_CASE("det_a examples and domain") {
  // lambda = 1, z = 1: (1 * 0) factor vanishes.
  CHECK(std::abs(det_a(1.0, 1.0)) == 0.0);
  // lambda = -1: -1 * -2 / (3z) * (z^2 - 2z + 1)... with 3(-1 + 4/3 - 1) = -2.
  const cplx z(0.3, -0.2);
  const cplx expected = (-1.0 * -2.0) / (3.0 * z) * (z * z - 2.0 * z + 1.0);
  CHECK(std::abs(det_a(-1.0, z) - expected) < 1e-15);
  CHECK_THROWS_AS(det_a(1.0, 0.0), Error);
}

TEST_CASE("property: factored det_a equals the cofactor determinant") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const cplx lambda = random_on_circle(rng);
    const cplx z = std::polar(mag(rng), std::arg(random_on_circle(rng)));
    const cplx direct = det3(lemma1_matrix(lambda, z));
    const cplx factored = det_a(lambda, z);
    CHECK(std::abs(direct - factored) <= 1e-11 * std::max(1.0, std::abs(direct)));

    // Roots of the quadratic factor are -theta_s, -theta_l.
    const ThetaPair t = theta_roots(lambda);
    const cplx quad = lambda * (lambda - 1.0) / (3.0 * z) * (z + t.theta_s) * (z + t.theta_l);
    CHECK(std::abs(quad - factored) <= 1e-11 * std::max(1.0, std::abs(factored)));
  }
}

TEST_CASE("theta_roots examples") {
  const ThetaPair at_minus1 = theta_roots(-1.0);
  CHECK(std::abs(at_minus1.theta_s + 1.0) < 1e-7);
  CHECK(std::abs(at_minus1.theta_l + 1.0) < 1e-7);

  const ThetaPair at_one = theta_roots(1.0);
  CHECK(std::abs(at_one.theta_s - (5.0 - 2.0 * std::sqrt(6.0))) < 1e-14);
  CHECK(std::abs(at_one.theta_l - (5.0 + 2.0 * std::sqrt(6.0))) < 1e-12);

  // lambda(-) at theta = pi gives |theta_s| = 1/5.
  const cplx lm = (-1.0 - cplx(0.0, 2.0 * std::sqrt(6.0))) / -5.0;
  CHECK(std::abs(std::abs(theta_roots(lm).theta_s) - 0.2) < 1e-14);
}

TEST_CASE("property: theta_s theta_l = 1 and ordering") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const cplx lambda = random_on_circle(rng);
    const ThetaPair t = theta_roots(lambda);
    CHECK(std::abs(t.theta_s * t.theta_l - 1.0) < 1e-12);
    CHECK(std::abs(t.theta_s) <= std::abs(t.theta_l));
  }
}

TEST_CASE("lemma2 ratios agree on the lambda(+/-) family") {
  for (double theta : {0.3, kPi / 2.0, kPi, 5.0}) {
    const CoinConfig cfg(theta);
    const auto [lp, lm] = lambda_case_iia(cfg);
    for (cplx lambda : {lp, lm}) {
      const RatioSet r = lemma2_ratios({lambda, 1.0, 0.0, -1.0, cfg.omega()});
      REQUIRE(r.all_defined());
      CHECK(r.max_spread() < 1e-10);
    }
  }
}

TEST_CASE("lemma2 ratios report singular slots") {
  const CoinConfig cfg(1.0);
  const auto [lp, lm] = lambda_case_iia(cfg);
  (void)lm;
  const RatioSet r = lemma2_ratios({lp, 0.0, 0.0, 1.0, cfg.omega()});
  CHECK_FALSE(r.values[RatioSet::LPlus].has_value());
  CHECK_FALSE(r.all_defined());
}

TEST_CASE("lemma2 ratios disagree off the solution set") {
  std::mt19937_64 rng(23);
  int big = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const EigenParams p{random_on_circle(rng), random_amp(rng), random_amp(rng), random_amp(rng),
                        random_on_circle(rng)};
    const RatioSet r = lemma2_ratios(p);
    if (r.max_spread() > 1e-6) ++big;
  }
  CHECK(big == 50);
}

TEST_CASE("property: mirror symmetry alpha <-> gamma swaps the sides") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const cplx lambda = random_on_circle(rng), w = random_on_circle(rng);
    const cplx a = random_amp(rng), b = random_amp(rng), c = random_amp(rng);
    const RatioSet r1 = lemma2_ratios({lambda, a, b, c, w});
    const RatioSet r2 = lemma2_ratios({lambda, c, b, a, w});
    const std::pair<int, int> pairs[] = {{RatioSet::LPlus, RatioSet::RMinus},
                                         {RatioSet::OPlus, RatioSet::OMinus},
                                         {RatioSet::RPlus, RatioSet::LMinus}};
    for (auto [i, j] : pairs) {
      REQUIRE(r1.values[i].has_value());
      REQUIRE(r2.values[j].has_value());
      CHECK(std::abs(*r1.values[i] - *r2.values[j]) <= 1e-9 * std::max(1.0, std::abs(*r1.values[i])));
    }
  }
}

TEST_CASE("lemma3 residuals vanish on known solutions") {
  SUBCASE("lambda(+/-) family") {
    const CoinConfig cfg(2.0);
    const auto [lp, lm] = lambda_case_iia(cfg);
    for (cplx lambda : {lp, lm}) {
      for (const auto& v : lemma3_residuals({lambda, 1.0, 0.0, -1.0, cfg.omega()}))
        CHECK(std::abs(v) < 1e-12);
    }
  }
  SUBCASE("equal amplitudes, omega = lambda = -1") {
    for (const auto& v : lemma3_residuals({-1.0, 1.0, 1.0, 1.0, -1.0})) CHECK(std::abs(v) < 1e-14);
  }
  SUBCASE("generic data does not solve them") {
    const auto res = lemma3_residuals({cplx(0.6, 0.8), 1.0, 0.5, 0.2, cplx(0.0, 1.0)});
    double worst = 0.0;
    for (const auto& v : res) worst = std::max(worst, std::abs(v));
    CHECK(worst > 1e-3);
  }
}

TEST_CASE("lambda_case_iia examples") {
  const auto [lp, lm] = lambda_case_iia(CoinConfig(kPi));
  const cplx s = cplx(0.0, 2.0 * std::sqrt(6.0));
  CHECK(std::abs(lp - (-1.0 + s) / -5.0) < 1e-12);
  CHECK(std::abs(lm - (-1.0 - s) / -5.0) < 1e-12);

  const auto [sp, sm] = lambda_case_iia(CoinConfig(1e-6));
  CHECK(std::abs(sp - 1.0) < 1e-2);
  CHECK(std::abs(sm - 1.0) < 1e-2);

  CHECK_THROWS_AS(lambda_case_iia(CoinConfig(0.0)), Error);
  try {
    lambda_case_iia(CoinConfig(0.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDefect);
  }

  for (int k = 1; k < 50; ++k) {
    const auto [a, b] = lambda_case_iia(CoinConfig(k * kPi / 25.0));
    CHECK(std::abs(std::abs(a) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(b) - 1.0) < 1e-12);
  }
}

TEST_CASE("quartic is the alpha = gamma condition with (lambda + 1) removed") {
  // With alpha = gamma = 1 and beta fixed by the first residual, the third
  // residual times (3 lambda + omega)^2 is a fixed multiple of
  // (lambda + 1) * quartic(lambda).
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const CoinConfig cfg(std::uniform_real_distribution<double>(0.1, 6.2)(rng));
    const cplx w = cfg.omega();
    const auto q = case_ia_quartic(cfg);
    const std::vector<cplx> qv(q.begin(), q.end());
    std::vector<cplx> ratios;
    for (int j = 0; j < 4; ++j) {
      const cplx lambda = random_amp(rng) * 2.0;
      const cplx beta = 2.0 * w * 2.0 / (3.0 * lambda + w);
      const auto res = lemma3_residuals({lambda, 1.0, beta, 1.0, w});
      CHECK(std::abs(res[0]) < 1e-12);
      CHECK(std::abs(res[1]) < 1e-12);
      const cplx lhs = res[2] * (3.0 * lambda + w) * (3.0 * lambda + w);
      ratios.push_back(lhs / ((lambda + 1.0) * polyval(qv, lambda)));
    }
    for (const auto& r : ratios) CHECK(std::abs(r - ratios.front()) < 1e-9 * std::abs(ratios.front()));
  }
}

TEST_CASE("quintic roots match an independent root finder") {
  for (int k = 1; k < 50; ++k) {
    if (k == 25) continue;  // double root at 1, compared separately below
    const CoinConfig cfg(k * kPi / 25.0);
    const auto roots = case_ia_quintic_roots(cfg);
    REQUIRE(roots.size() == 5);
    CHECK(roots.front() == cplx(-1.0));
    const auto q = case_ia_quartic(cfg);
    const std::vector<cplx> qv(q.begin(), q.end());
    const std::vector<cplx> quartic_roots(roots.begin() + 1, roots.end());
    const auto oracle = durand_kerner(qv);
    CHECK(root_set_distance(quartic_roots, oracle) < 1e-9);
    CHECK(root_set_distance(oracle, quartic_roots) < 1e-9);

    // Vieta: product of roots = c0 / c4.
    cplx prod = 1.0;
    for (const auto& r : quartic_roots) prod *= r;
    const cplx w = cfg.omega();
    const cplx vieta = 3.0 * w * w * w * (1.0 - 2.0 * w) / (3.0 * (w - 2.0));
    CHECK(std::abs(prod - vieta) < 1e-10);
  }
}

TEST_CASE("quartic double root at 1 when theta = pi") {
  const auto roots = case_ia_quintic_roots(CoinConfig(kPi));
  int near_one = 0;
  for (const auto& r : roots)
    if (std::abs(r - 1.0) < 1e-6) ++near_one;
  CHECK(near_one == 2);
  for (const auto& r : roots)
    if (std::abs(r - 1.0) < 1e-6) CHECK(std::abs(r - 1.0) < 1e-7);
}

TEST_CASE("polynomial_roots on simple inputs") {
  const auto r = polynomial_roots({1.0, 0.0, -4.0});
  REQUIRE(r.size() == 2);
  CHECK(root_set_distance(r, {2.0, -2.0}) < 1e-14);
  CHECK(std::abs(polyval({1.0, 2.0, 3.0}, 2.0) - 11.0) < 1e-15);
  CHECK_THROWS_AS(polynomial_roots({0.0, 1.0}), Error);  // constant after stripping
}

TEST_CASE("build_eigenvector_lemma2 produces eigenvectors on the family") {
  const CoinConfig cfg(kPi);
  const auto [lp, lm] = lambda_case_iia(cfg);
  for (cplx lambda : {lp, lm}) {
    const WaveWindow psi = build_eigenvector_lemma2({lambda, 1.0, 0.0, -1.0, cfg.omega()}, 40);
    CHECK(psi.at(0).l == cplx(1.0));
    CHECK(psi.at(0).r == cplx(-1.0));
    CHECK(eigen_residual(psi, lambda, cfg) < 1e-10);
  }
}

TEST_CASE("build_eigenvector_lemma2 rejects inconsistent data") {
  const CoinConfig cfg(1.0);
  try {
    build_eigenvector_lemma2({cplx(0.6, 0.8), 1.0, 0.5, 0.2, cfg.omega()}, 10);
    FAIL("expected RatioMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RatioMismatch);
  }
  CHECK_THROWS_AS(build_eigenvector_lemma2({1.0, 1.0, 0.0, -1.0, cfg.omega()}, 10), Error);
  CHECK_THROWS_AS(build_eigenvector_lemma2({cplx(0.6, 0.8), 0.0, 0.0, 0.0, cfg.omega()}, 10), Error);
}

TEST_CASE("property: quintic roots are closed under lambda -> 1/conj(lambda)") {
  // Roots off the unit circle come in reflected pairs; on-circle roots are
  // fixed by the reflection. Whether every root lies on the circle is left to
  // the acceptance run, which reports the off-circle angles.
  for (int k = 1; k < 50; ++k) {
    if (k == 25) continue;
    const auto roots = case_ia_quintic_roots(CoinConfig(k * kPi / 25.0));
    std::vector<cplx> reflected;
    for (const auto& r : roots) reflected.push_back(1.0 / std::conj(r));
    CHECK(root_set_distance(reflected, roots) < 1e-9);
  }
}
