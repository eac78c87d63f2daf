#include "gwalk/gwalk.h"

#include <cstring>
#include <new>
#include <string>

#include "gwalk/closed_form.hpp"
#include "gwalk/error.hpp"
#include "gwalk/lattice.hpp"
#include "gwalk/spectral.hpp"
#include "gwalk/verify.hpp"

struct gw_window {
  gwalk::WaveWindow value;
};

struct gw_measure {
  gwalk::Measure value;
};

namespace {

thread_local std::string g_last_error;

gw_status to_status(gwalk::ErrorCode code) {
  switch (code) {
    case gwalk::ErrorCode::InvalidArgument: return GW_ERR_INVALID_ARGUMENT;
    case gwalk::ErrorCode::WindowExhausted: return GW_ERR_WINDOW_EXHAUSTED;
    case gwalk::ErrorCode::Domain: return GW_ERR_DOMAIN;
    case gwalk::ErrorCode::DegenerateDefect: return GW_ERR_DEGENERATE_DEFECT;
    case gwalk::ErrorCode::RatioMismatch: return GW_ERR_RATIO_MISMATCH;
    case gwalk::ErrorCode::TailDivergent: return GW_ERR_TAIL_DIVERGENT;
    case gwalk::ErrorCode::NoConvergence: return GW_ERR_NO_CONVERGENCE;
    case gwalk::ErrorCode::Parameter: return GW_ERR_PARAMETER;
  }
  return GW_ERR_INTERNAL;
}

template <class F>
gw_status guard(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GW_OK;
  } catch (const gwalk::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GW_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw gwalk::Error(gwalk::ErrorCode::InvalidArgument, what);
}

gwalk::cplx in(gw_complex c) { return {c.re, c.im}; }
gw_complex out(gwalk::cplx c) { return {c.real(), c.imag()}; }

gw_amplitude out(const gwalk::ChiralityAmplitude& a) { return {out(a.l), out(a.o), out(a.r)}; }

gwalk::BranchSign sign_in(gw_sign s) {
  require(s == GW_PLUS || s == GW_MINUS, "sign must be GW_PLUS or GW_MINUS");
  return s == GW_PLUS ? gwalk::BranchSign::Plus : gwalk::BranchSign::Minus;
}

gwalk::EigenParams params(gw_complex lambda, gw_complex a, gw_complex b, gw_complex g, double theta) {
  return {in(lambda), in(a), in(b), in(g), gwalk::CoinConfig(theta).omega()};
}

}  // namespace

extern "C" {

const char* gw_last_error(void) { return g_last_error.c_str(); }

const char* gw_status_name(gw_status status) {
  switch (status) {
    case GW_OK: return "ok";
    case GW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GW_ERR_WINDOW_EXHAUSTED: return "window exhausted";
    case GW_ERR_DOMAIN: return "domain error";
    case GW_ERR_DEGENERATE_DEFECT: return "degenerate defect";
    case GW_ERR_RATIO_MISMATCH: return "ratio mismatch";
    case GW_ERR_TAIL_DIVERGENT: return "tail divergent";
    case GW_ERR_NO_CONVERGENCE: return "no convergence";
    case GW_ERR_PARAMETER: return "parameter error";
    case GW_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case GW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// --- lattice ---------------------------------------------------------------

gw_status gw_window_create(int64_t x_min, int64_t x_max, gw_window** result) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    *result = new gw_window{gwalk::WaveWindow(x_min, x_max)};
  });
}

gw_status gw_window_clone(const gw_window* w, gw_window** result) {
  return guard([&] {
    require(w != nullptr && result != nullptr, "null window or output pointer");
    *result = new gw_window{w->value};
  });
}

void gw_window_destroy(gw_window* w) { delete w; }

gw_status gw_window_bounds(const gw_window* w, int64_t* x_min, int64_t* x_max, int64_t* valid_lo,
                           int64_t* valid_hi) {
  return guard([&] {
    require(w != nullptr, "null window");
    if (x_min) *x_min = w->value.x_min();
    if (x_max) *x_max = w->value.x_max();
    if (valid_lo) *valid_lo = w->value.valid_lo();
    if (valid_hi) *valid_hi = w->value.valid_hi();
  });
}

gw_status gw_window_set(gw_window* w, int64_t x, gw_amplitude amp) {
  return guard([&] {
    require(w != nullptr, "null window");
    gwalk::ChiralityAmplitude a{in(amp.l), in(amp.o), in(amp.r)};
    require(a.finite(), "amplitudes must be finite");
    w->value.at(x) = a;
  });
}

gw_status gw_window_get(const gw_window* w, int64_t x, gw_amplitude* amp) {
  return guard([&] {
    require(w != nullptr && amp != nullptr, "null window or output pointer");
    *amp = out(w->value.at(x));
  });
}

gw_status gw_coin_at(int64_t x, double theta, gw_complex result[9]) {
  return guard([&] {
    require(result != nullptr, "null output buffer");
    const gwalk::Coin c = gwalk::coin_at(x, gwalk::CoinConfig(theta));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) result[3 * i + j] = out(c[i][j]);
  });
}

gw_status gw_step(const gw_window* w, double theta, gw_window** result) {
  return guard([&] {
    require(w != nullptr && result != nullptr, "null window or output pointer");
    *result = new gw_window{gwalk::step(w->value, gwalk::CoinConfig(theta))};
  });
}

gw_status gw_evolve(const gw_window* w, int64_t n, double theta, gw_window** result) {
  return guard([&] {
    require(w != nullptr && result != nullptr, "null window or output pointer");
    *result = new gw_window{gwalk::evolve(w->value, n, gwalk::CoinConfig(theta))};
  });
}

gw_status gw_phi(const gw_window* w, gw_measure** result) {
  return guard([&] {
    require(w != nullptr && result != nullptr, "null window or output pointer");
    *result = new gw_measure{gwalk::phi(w->value)};
  });
}

void gw_measure_destroy(gw_measure* m) { delete m; }

gw_status gw_measure_bounds(const gw_measure* m, int64_t* x_min, int64_t* x_max) {
  return guard([&] {
    require(m != nullptr, "null measure");
    if (x_min) *x_min = m->value.x_min();
    if (x_max) *x_max = m->value.x_max();
  });
}

gw_status gw_measure_values(const gw_measure* m, double* buf, size_t len) {
  try {
    g_last_error.clear();
    require(m != nullptr && buf != nullptr, "null measure or buffer");
  } catch (const gwalk::Error& e) {
    g_last_error = e.what();
    return GW_ERR_INVALID_ARGUMENT;
  }
  const auto& v = m->value.values();
  if (len < v.size()) {
    g_last_error = "buffer holds " + std::to_string(len) + " values, measure has " +
                   std::to_string(v.size());
    return GW_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, v.data(), v.size() * sizeof(double));
  return GW_OK;
}

// --- spectral --------------------------------------------------------------

gw_status gw_det_a(gw_complex lambda, gw_complex z, gw_complex* result) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    *result = out(gwalk::det_a(in(lambda), in(z)));
  });
}

gw_status gw_theta_roots(gw_complex lambda, gw_complex* theta_s, gw_complex* theta_l) {
  return guard([&] {
    const gwalk::ThetaPair t = gwalk::theta_roots(in(lambda));
    if (theta_s) *theta_s = out(t.theta_s);
    if (theta_l) *theta_l = out(t.theta_l);
  });
}

gw_status gw_lemma2_ratios(gw_complex lambda, gw_complex alpha, gw_complex beta, gw_complex gamma,
                           double theta, gw_complex ratios[6], int defined[6]) {
  return guard([&] {
    require(ratios != nullptr && defined != nullptr, "null output buffer");
    const gwalk::RatioSet r = gwalk::lemma2_ratios(params(lambda, alpha, beta, gamma, theta));
    for (int i = 0; i < 6; ++i) {
      defined[i] = r.values[i].has_value() ? 1 : 0;
      ratios[i] = out(r.values[i].value_or(0.0));
    }
  });
}

gw_status gw_lemma3_residuals(gw_complex lambda, gw_complex alpha, gw_complex beta,
                              gw_complex gamma, double theta, gw_complex result[4]) {
  return guard([&] {
    require(result != nullptr, "null output buffer");
    const auto r = gwalk::lemma3_residuals(params(lambda, alpha, beta, gamma, theta));
    for (int i = 0; i < 4; ++i) result[i] = out(r[i]);
  });
}

gw_status gw_lambda_case_iia(double theta, gw_complex* plus, gw_complex* minus) {
  return guard([&] {
    const auto [p, m] = gwalk::lambda_case_iia(gwalk::CoinConfig(theta));
    if (plus) *plus = out(p);
    if (minus) *minus = out(m);
  });
}

gw_status gw_case_ia_roots(double theta, gw_complex result[5]) {
  return guard([&] {
    require(result != nullptr, "null output buffer");
    const auto roots = gwalk::case_ia_quintic_roots(gwalk::CoinConfig(theta));
    require(roots.size() == 5, "unexpected root count");
    for (int i = 0; i < 5; ++i) result[i] = out(roots[i]);
  });
}

gw_status gw_build_eigenvector(gw_complex lambda, gw_complex alpha, gw_complex beta,
                               gw_complex gamma, double theta, int64_t half_width,
                               gw_window** result) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    *result = new gw_window{
        gwalk::build_eigenvector_lemma2(params(lambda, alpha, beta, gamma, theta), half_width)};
  });
}

// --- closed forms ----------------------------------------------------------

gw_status gw_theta_s_abs2(double theta, gw_sign formula_sign, double* value, int* in_range) {
  return guard([&] {
    const gwalk::ThetaSAbs2 t = gwalk::theta_s_abs2(theta, sign_in(formula_sign));
    if (value) *value = t.value;
    if (in_range) *in_range = t.in_range ? 1 : 0;
  });
}

gw_status gw_thm1_eigenvector(double theta, gw_sign sign, gw_complex alpha, int64_t half_width,
                              gw_window** result, gw_complex* lambda, gw_complex* theta_s,
                              int* decaying) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    gwalk::Thm1Eigen e =
        gwalk::thm1_eigenvector(gwalk::CoinConfig(theta), {sign_in(sign), in(alpha)}, half_width);
    if (lambda) *lambda = out(e.lambda);
    if (theta_s) *theta_s = out(e.theta_s);
    if (decaying) *decaying = e.decaying ? 1 : 0;
    *result = new gw_window{std::move(e.psi)};
  });
}

gw_status gw_thm1_measure(double theta, gw_sign sign, gw_complex alpha, int64_t half_width,
                          gw_measure** result, gw_thm1_params* prm) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    const gwalk::CoinConfig cfg(theta);
    const gwalk::Thm1Branch b{sign_in(sign), in(alpha)};
    if (prm) {
      const gwalk::Thm1MeasureParams p = gwalk::resolve_thm1_params(cfg, b);
      prm->formula_sign = p.formula_sign == gwalk::BranchSign::Plus ? GW_PLUS : GW_MINUS;
      prm->theta_s_abs2 = p.theta_s_abs2;
      prm->coefficient = p.coefficient;
      for (int k = 0; k < 3; ++k) {
        prm->m[k] = p.m[k];
        prm->n_bits[k] = p.n_bits[k];
      }
    }
    *result = new gw_measure{gwalk::thm1_measure(cfg, b, half_width)};
  });
}

gw_status gw_lambda_minus1_family(gw_family family, double theta, gw_complex alpha,
                                  gw_complex gamma, int64_t half_width, gw_window** psi,
                                  gw_measure** measure) {
  return guard([&] {
    gwalk::MinusOneCase which{};
    switch (family) {
      case GW_FAMILY_MINUS1_I: which = gwalk::MinusOneCase::I; break;
      case GW_FAMILY_MINUS1_IIA: which = gwalk::MinusOneCase::IIa; break;
      case GW_FAMILY_MINUS1_IIB: which = gwalk::MinusOneCase::IIb; break;
      default: require(false, "family must be one of the GW_FAMILY_MINUS1_* values");
    }
    gwalk::FamilyResult r =
        gwalk::lambda_minus1_family(which, gwalk::CoinConfig(theta), in(alpha), in(gamma), half_width);
    if (psi) *psi = new gw_window{std::move(r.psi)};
    if (measure) *measure = new gw_measure{std::move(r.measure)};
  });
}

gw_status gw_homogeneous_limit_measure(gw_complex a, gw_complex b, gw_complex c,
                                       int64_t half_width, gw_measure** result) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    *result = new gw_measure{gwalk::homogeneous_limit_measure(in(a), in(b), in(c), half_width)};
  });
}

// --- verification ----------------------------------------------------------

gw_status gw_eigen_residual(const gw_window* w, gw_complex lambda, double theta, double* result) {
  return guard([&] {
    require(w != nullptr && result != nullptr, "null window or output pointer");
    *result = gwalk::eigen_residual(w->value, in(lambda), gwalk::CoinConfig(theta));
  });
}

gw_status gw_stationarity_deviation(const gw_window* w, int64_t n, double theta, double* result) {
  return guard([&] {
    require(w != nullptr && result != nullptr, "null window or output pointer");
    *result = gwalk::stationarity_deviation(w->value, n, gwalk::CoinConfig(theta));
  });
}

gw_status gw_time_averaged_measure(const gw_window* w, int64_t big_n, double theta,
                                   gw_measure** average, gw_measure** band) {
  return guard([&] {
    require(w != nullptr && average != nullptr, "null window or output pointer");
    gwalk::TimeAverage t = gwalk::time_averaged_measure(w->value, big_n, gwalk::CoinConfig(theta));
    *average = new gw_measure{std::move(t.average)};
    if (band) *band = new gw_measure{std::move(t.band)};
  });
}

gw_status gw_scaling_relation_check(gw_verify_report* result) {
  return guard([&] {
    require(result != nullptr, "null output pointer");
    const gwalk::VerifyReport r = gwalk::scaling_relation_check();
    result->residual_inf = r.residual_inf;
    result->steps_checked = r.steps_checked;
    result->max_measure_drift = r.max_measure_drift;
  });
}

gw_status gw_run_acceptance(gw_criterion_cb cb, void* user, int* all_passed) {
  return guard([&] {
    bool ok = true;
    for (const auto& c : gwalk::run_acceptance_suite()) {
      ok = ok && c.passed;
      if (cb) cb(user, c.id, c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str());
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
