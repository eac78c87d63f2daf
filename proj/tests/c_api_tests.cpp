// Exercises the shared library through gwalk.h only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "gwalk/gwalk.h"

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> values_of(const gw_measure* m) {
  int64_t lo = 0, hi = 0;
  REQUIRE(gw_measure_bounds(m, &lo, &hi) == GW_OK);
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1));
  REQUIRE(gw_measure_values(m, v.data(), v.size()) == GW_OK);
  return v;
}

}  // namespace

TEST_CASE("window handles round-trip amplitudes") {
  gw_window* w = nullptr;
  REQUIRE(gw_window_create(-3, 3, &w) == GW_OK);
  const gw_amplitude a{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  CHECK(gw_window_set(w, 0, a) == GW_OK);
  gw_amplitude back{};
  CHECK(gw_window_get(w, 0, &back) == GW_OK);
  CHECK(back.o.re == 1.0);

  int64_t lo, hi, vlo, vhi;
  CHECK(gw_window_bounds(w, &lo, &hi, &vlo, &vhi) == GW_OK);
  CHECK(lo == -3);
  CHECK(vhi == 3);

  gw_window* next = nullptr;
  REQUIRE(gw_step(w, 0.0, &next) == GW_OK);
  CHECK(gw_window_get(next, -1, &back) == GW_OK);
  CHECK(std::abs(back.l.re - 2.0 / 3.0) < 1e-15);
  CHECK(gw_window_bounds(next, &lo, &hi, &vlo, &vhi) == GW_OK);
  CHECK(vlo == -2);

  gw_window* copy = nullptr;
  REQUIRE(gw_window_clone(next, &copy) == GW_OK);
  gw_measure* m = nullptr;
  REQUIRE(gw_phi(copy, &m) == GW_OK);
  const auto v = values_of(m);
  CHECK(v.size() == 7);
  CHECK(std::abs(v[3] - 1.0 / 9.0) < 1e-15);

  double small[2];
  CHECK(gw_measure_values(m, small, 2) == GW_ERR_BUFFER_TOO_SMALL);

  gw_measure_destroy(m);
  gw_window_destroy(copy);
  gw_window_destroy(next);
  gw_window_destroy(w);
  gw_window_destroy(nullptr);
  gw_measure_destroy(nullptr);
}

TEST_CASE("errors map to status codes with a message") {
  gw_window* w = nullptr;
  CHECK(gw_window_create(3, -3, &w) == GW_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(gw_last_error()) > 0);
  CHECK(gw_window_create(0, 1, nullptr) == GW_ERR_INVALID_ARGUMENT);

  REQUIRE(gw_window_create(0, 2, &w) == GW_OK);
  gw_window* out = nullptr;
  CHECK(gw_evolve(w, 3, 0.0, &out) == GW_ERR_WINDOW_EXHAUSTED);
  CHECK(out == nullptr);
  CHECK(gw_step(w, 7.0, &out) == GW_ERR_INVALID_ARGUMENT);
  gw_window_destroy(w);

  gw_complex p, m;
  CHECK(gw_lambda_case_iia(0.0, &p, &m) == GW_ERR_DEGENERATE_DEFECT);
  gw_complex z;
  CHECK(gw_det_a({1.0, 0.0}, {0.0, 0.0}, &z) == GW_ERR_DOMAIN);
  CHECK(std::string(gw_status_name(GW_ERR_RATIO_MISMATCH)) == "ratio mismatch");
  CHECK(std::string(gw_status_name(GW_OK)) == "ok");

  gw_window* psi = nullptr;
  gw_measure* mu = nullptr;
  CHECK(gw_lambda_minus1_family(GW_FAMILY_MINUS1_IIB, 1.0, {1.0, 0.0}, {1.0, 0.0}, 5, &psi, &mu) ==
        GW_ERR_PARAMETER);
  CHECK(gw_lambda_minus1_family(GW_FAMILY_THM1_PLUS, 1.0, {1.0, 0.0}, {1.0, 0.0}, 5, &psi, &mu) ==
        GW_ERR_INVALID_ARGUMENT);
  CHECK(gw_build_eigenvector({0.6, 0.8}, {1.0, 0.0}, {0.5, 0.0}, {0.2, 0.0}, 1.0, 5, &psi) ==
        GW_ERR_RATIO_MISMATCH);
}

TEST_CASE("spectral entry points") {
  gw_complex p, m;
  REQUIRE(gw_lambda_case_iia(kPi, &p, &m) == GW_OK);
  CHECK(std::abs(p.re - 0.2) < 1e-12);
  CHECK(std::abs(std::hypot(m.re, m.im) - 1.0) < 1e-12);

  gw_complex ts, tl;
  REQUIRE(gw_theta_roots({1.0, 0.0}, &ts, &tl) == GW_OK);
  CHECK(std::abs(ts.re - (5.0 - 2.0 * std::sqrt(6.0))) < 1e-14);

  gw_complex roots[5];
  REQUIRE(gw_case_ia_roots(1.0, roots) == GW_OK);
  CHECK(roots[0].re == -1.0);

  gw_complex ratios[6];
  int defined[6];
  REQUIRE(gw_lemma2_ratios(p, {1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}, kPi, ratios, defined) == GW_OK);
  for (int i = 0; i < 6; ++i) {
    CHECK(defined[i] == 1);
    CHECK(std::hypot(ratios[i].re - ratios[0].re, ratios[i].im - ratios[0].im) < 1e-10);
  }

  gw_complex res[4];
  REQUIRE(gw_lemma3_residuals(p, {1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}, kPi, res) == GW_OK);
  for (auto& r : res) CHECK(std::hypot(r.re, r.im) < 1e-12);

  double v;
  int in_range;
  REQUIRE(gw_theta_s_abs2(kPi, GW_PLUS, &v, &in_range) == GW_OK);
  CHECK(std::abs(v - 0.04) < 1e-15);
  CHECK(in_range == 1);

  gw_complex c[9];
  REQUIRE(gw_coin_at(0, kPi, c) == GW_OK);
  CHECK(std::abs(c[0].re - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("closed-form eigenvector and measure through the C API") {
  gw_window* psi = nullptr;
  gw_complex lambda, ts;
  int decaying = 0;
  REQUIRE(gw_thm1_eigenvector(2.0, GW_MINUS, {1.0, 0.0}, 60, &psi, &lambda, &ts, &decaying) == GW_OK);
  double res = 1.0;
  CHECK(gw_eigen_residual(psi, lambda, 2.0, &res) == GW_OK);
  if (decaying) {
    CHECK(res < 1e-10);
    double dev = 1.0;
    CHECK(gw_stationarity_deviation(psi, 20, 2.0, &dev) == GW_OK);
    CHECK(dev < 1e-9);
  }

  gw_measure* mu = nullptr;
  gw_thm1_params prm{};
  REQUIRE(gw_thm1_measure(2.0, GW_MINUS, {1.0, 0.0}, 10, &mu, &prm) == GW_OK);
  const auto vals = values_of(mu);
  CHECK(vals[10] == doctest::Approx(2.0));
  CHECK(std::abs(vals[12] / vals[11] - prm.theta_s_abs2) < 1e-12);
  gw_measure_destroy(mu);
  gw_window_destroy(psi);

  gw_measure* hom = nullptr;
  REQUIRE(gw_homogeneous_limit_measure({1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}, 3, &hom) == GW_OK);
  CHECK(values_of(hom)[3] == doctest::Approx(0.404082).epsilon(1e-6));
  gw_measure_destroy(hom);

  gw_verify_report rep{};
  REQUIRE(gw_scaling_relation_check(&rep) == GW_OK);
  CHECK(rep.residual_inf < 1e-12);
}

TEST_CASE("lambda = -1 family and time average") {
  gw_window* psi = nullptr;
  gw_measure* mu = nullptr;
  REQUIRE(gw_lambda_minus1_family(GW_FAMILY_MINUS1_I, kPi, {1.0, 0.0}, {0.0, 0.0}, 5, &psi, &mu) ==
          GW_OK);
  CHECK(values_of(mu)[5] == doctest::Approx(3.0));

  gw_measure* avg = nullptr;
  gw_measure* band = nullptr;
  REQUIRE(gw_time_averaged_measure(psi, 2, kPi, &avg, &band) == GW_OK);
  // A lambda = -1 eigenvector has a constant measure in time.
  const auto a = values_of(avg);
  int64_t lo, hi;
  REQUIRE(gw_measure_bounds(avg, &lo, &hi) == GW_OK);
  CHECK(a[static_cast<std::size_t>(-lo)] == doctest::Approx(3.0));
  gw_measure_destroy(avg);
  gw_measure_destroy(band);
  gw_measure_destroy(mu);
  gw_window_destroy(psi);
}
