#pragma once

// Numerical certificates: eigen-residuals, stationarity under evolution, the
// truncated generating-function identity A f = a, time-averaged measures and
// the stationary-vs-limit scaling identity.

#include <string>
#include <vector>

#include "gwalk/closed_form.hpp"
#include "gwalk/lattice.hpp"
#include "gwalk/spectral.hpp"

namespace gwalk {

struct VerifyReport {
  double residual_inf = 0.0;
  std::int64_t steps_checked = 0;
  double max_measure_drift = 0.0;
  std::string notes;
};

/// sup over the stepped valid interior of |(U psi)(x) - lambda psi(x)|.
double eigen_residual(const WaveWindow& psi, cplx lambda, const CoinConfig& config);

/// max over k <= n and surviving interior sites of |phi(U^k psi)(x) - phi(psi)(x)|.
/// Needs valid_hi - valid_lo >= 2n.
double stationarity_deviation(const WaveWindow& psi, std::int64_t n, const CoinConfig& config);

/// Truncated one-sided generating function sum_{1 <= |x| <= x_max} Psi(x) z^x.
struct TruncatedGenFun {
  Side side;
  cplx z;
  std::int64_t x_max;
  std::array<cplx, 3> values;
  double tail_bound;  // bound on the omitted tail, per component
};

/// Throws TailDivergent unless |theta_s z^{+/-1}| < 1. decay_abs is |theta_s|.
TruncatedGenFun truncated_genfun(const WaveWindow& psi, Side side, cplx z, std::int64_t x_max,
                                 double decay_abs);

struct Lemma1Check {
  double residual;    // |A f_trunc - a|
  double tail_bound;  // analytic bound on |A (f - f_trunc)|
  double margin() const { return residual - tail_bound; }
  bool holds(double slack = 1e-12) const { return margin() <= slack; }
};

/// |theta_s| is taken from theta_roots(p.lambda).
Lemma1Check lemma1_check(const WaveWindow& psi, const EigenParams& p, cplx z, Side side,
                         std::int64_t x_max);

struct TimeAverage {
  Measure average;  // (1/N) sum_{n=1}^{N} mu_n on the final valid interior
  Measure last;     // mu_N
  Measure band;     // max - min of mu_n over the last quarter of the steps
};

TimeAverage time_averaged_measure(const WaveWindow& psi0, std::int64_t big_n,
                                  const CoinConfig& config);

/// The lambda(-) stationary measure at the theta -> 0 limit with |alpha|^2 =
/// (2 - sqrt6)^2 against the homogeneous limit measure from (1, 0, -1), over
/// |x| <= 20.
VerifyReport scaling_relation_check();

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs every acceptance criterion; deterministic (fixed seeds).
std::vector<CriterionResult> run_acceptance_suite();

}  // namespace gwalk
