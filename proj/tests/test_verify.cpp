#include <doctest.h>

#include <cmath>
#include <random>

#include "gwalk/closed_form.hpp"
#include "gwalk/error.hpp"
#include "gwalk/verify.hpp"
#include "test_util.hpp"

using namespace gwalk;
using namespace gwalk::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

std::array<cplx, 3> mat_vec(const Matrix3& a, const std::array<cplx, 3>& v) {
  std::array<cplx, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += a[i][j] * v[j];
  return out;
}

}  // namespace

TEST_CASE("eigen_residual separates eigenvectors from arbitrary states") {
  const CoinConfig cfg(1.7);
  const Thm1Eigen e = thm1_eigenvector(cfg, {BranchSign::Minus, 1.0}, 50);
  REQUIRE(e.decaying);
  CHECK(eigen_residual(e.psi, e.lambda, cfg) < 1e-12);
  CHECK(eigen_residual(e.psi, -e.lambda, cfg) > 1e-2);

  std::mt19937_64 rng(41);
  WaveWindow junk = WaveWindow::centered(6);
  for (std::int64_t x = -6; x <= 6; ++x) junk.at(x) = random_site(rng);
  CHECK(eigen_residual(junk, e.lambda, cfg) > 1e-3);
  CHECK(eigen_residual(WaveWindow::centered(4), e.lambda, cfg) == 0.0);
}

TEST_CASE("stationarity_deviation examples") {
  WaveWindow psi = WaveWindow::centered(5);
  psi.at(0) = {0.0, 1.0, 0.0};
  CHECK(stationarity_deviation(psi, 1, CoinConfig(0.0)) == doctest::Approx(8.0 / 9.0));
  CHECK(stationarity_deviation(psi, 0, CoinConfig(0.0)) == 0.0);
  CHECK(code_of([&] { stationarity_deviation(psi, 6, CoinConfig(0.0)); }) == ErrorCode::WindowExhausted);
  CHECK(code_of([&] { stationarity_deviation(psi, -1, CoinConfig(0.0)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("eigenvector measures are stationary and phase-invariant") {
  for (double theta : {0.4, kPi, 4.0}) {
    const CoinConfig cfg(theta);
    for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
      const Thm1Eigen e = thm1_eigenvector(cfg, {s, 1.0}, 120);
      if (!e.decaying) continue;
      const double d = stationarity_deviation(e.psi, 50, cfg);
      CHECK(d < 1e-9);
      const double dp = stationarity_deviation(e.psi.scaled(std::polar(1.0, 0.77)), 50, cfg);
      CHECK(std::abs(dp - d) < 1e-13);
    }
  }
}

TEST_CASE("generating functions of the closed-form eigenvector satisfy A f = a exactly") {
  // Geometric amplitudes sum in closed form, giving an oracle that avoids
  // truncation altogether.
  for (double theta : {0.6, 2.0, kPi, 5.1}) {
    const CoinConfig cfg(theta);
    for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
      const Thm1Eigen e = thm1_eigenvector(cfg, {s, 1.0}, 4);
      if (!e.decaying) continue;
      const EigenParams p{e.lambda, 1.0, 0.0, -1.0, cfg.omega()};
      const cplx t = e.theta_s;
      // Psi(x) = (-t)^{|x|} v for x != 0; v is read off at |x| = 1.
      const ChiralityAmplitude vp = (-1.0 / t) * e.psi.at(1);
      const ChiralityAmplitude vm = (-1.0 / t) * e.psi.at(-1);
      for (cplx z : {cplx(0.5, 0.2), cplx(-1.1, 0.7), cplx(0.9, -0.9)}) {
        const cplx gp = (-t * z) / (1.0 + t * z);
        const cplx gm = (-t / z) / (1.0 + t / z);
        const Matrix3 a = lemma1_matrix(e.lambda, z);
        const auto lhs_p = mat_vec(a, {gp * vp.l, gp * vp.o, gp * vp.r});
        const auto lhs_m = mat_vec(a, {gm * vm.l, gm * vm.o, gm * vm.r});
        const auto rhs_p = lemma1_rhs(p, z, Side::Plus);
        const auto rhs_m = lemma1_rhs(p, z, Side::Minus);
        for (int i = 0; i < 3; ++i) {
          CHECK(std::abs(lhs_p[i] - rhs_p[i]) < 1e-11);
          CHECK(std::abs(lhs_m[i] - rhs_m[i]) < 1e-11);
        }
      }
    }
  }
}

TEST_CASE("lemma1_check within the convergence region") {
  const CoinConfig cfg(kPi);
  const Thm1Eigen e = thm1_eigenvector(cfg, {BranchSign::Plus, 1.0}, 70);
  const EigenParams p{e.lambda, 1.0, 0.0, -1.0, cfg.omega()};
  for (Side side : {Side::Plus, Side::Minus}) {
    const Lemma1Check c = lemma1_check(e.psi, p, cplx(0.5, 1.0), side, 60);
    CHECK(c.holds());
    CHECK(c.residual < 1e-12);
  }
  // Truncating early leaves a residual that the tail bound still covers.
  const Lemma1Check early = lemma1_check(e.psi, p, cplx(2.0, 1.0), Side::Plus, 5);
  CHECK(early.residual > 1e-6);
  CHECK(early.holds());

  CHECK(code_of([&] { lemma1_check(e.psi, p, cplx(6.0, 0.0), Side::Plus, 60); }) ==
        ErrorCode::TailDivergent);
  CHECK(code_of([&] { lemma1_check(e.psi, p, cplx(0.1, 0.0), Side::Minus, 60); }) ==
        ErrorCode::TailDivergent);
  CHECK(code_of([&] { lemma1_check(e.psi, p, 0.0, Side::Plus, 60); }) == ErrorCode::Domain);
  CHECK(code_of([&] { lemma1_check(e.psi, p, 0.5, Side::Plus, 90); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lemma1_rhs example") {
  // alpha = gamma = 0, beta = 1: a_+ comes only from the stay chirality.
  const EigenParams p{cplx(0.0, 1.0), 0.0, 1.0, 0.0, 1.0};
  const auto a = lemma1_rhs(p, 1.0, Side::Plus);
  const auto b = lemma1_rhs(p, 1.0, Side::Minus);
  CHECK(std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]) > 0.0);
  // Mirror symmetry with alpha = gamma swaps the first and last components.
  CHECK(std::abs(a[0] - b[2]) < 1e-15);
  CHECK(std::abs(a[2] - b[0]) < 1e-15);
}

TEST_CASE("time average over one step equals the one-step measure") {
  WaveWindow psi = WaveWindow::centered(4);
  psi.at(0) = {0.0, 1.0, 0.0};
  const CoinConfig cfg(0.0);
  const TimeAverage t = time_averaged_measure(psi, 1, cfg);
  const Measure one = phi(step(psi, cfg));
  for (std::int64_t x = t.average.x_min(); x <= t.average.x_max(); ++x) {
    CHECK(t.average.at(x) == doctest::Approx(one.at(x)));
    CHECK(t.last.at(x) == doctest::Approx(one.at(x)));
  }
  CHECK(t.average.at(-1) == doctest::Approx(4.0 / 9.0));
  CHECK(code_of([&] { time_averaged_measure(psi, 0, cfg); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { time_averaged_measure(psi, 5, cfg); }) == ErrorCode::WindowExhausted);
}

TEST_CASE("time-averaged homogeneous walk localizes and converges to the limit measure") {
  const double s = 1.0 / std::sqrt(2.0);
  WaveWindow psi = WaveWindow::centered(2100);
  psi.at(0) = {s, 0.0, -s};
  const CoinConfig cfg(0.0);
  const Measure limit = homogeneous_limit_measure(s, 0.0, -s, 20);

  auto deviation = [&](std::int64_t n) {
    const TimeAverage t = time_averaged_measure(psi, n, cfg);
    double worst = 0.0;
    for (std::int64_t x = -20; x <= 20; ++x) worst = std::max(worst, std::abs(t.average.at(x) - limit.at(x)));
    return std::pair{worst, t.average.at(0)};
  };
  const auto [d1000, origin1000] = deviation(1000);
  const auto [d2000, origin2000] = deviation(2000);
  CHECK(origin2000 > 0.15);
  CHECK(origin1000 > 0.15);
  CHECK(d2000 < 2e-3);
  CHECK(d2000 < 0.75 * d1000);
}

TEST_CASE("stationary and limit measures are related by scaling") {
  const VerifyReport r = scaling_relation_check();
  CHECK(r.residual_inf < 1e-12);
}
