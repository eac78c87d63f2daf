#include "gwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwalk/error.hpp"

namespace gwalk {

double eigen_residual(const WaveWindow& psi, cplx lambda, const CoinConfig& config) {
  const WaveWindow next = step(psi, config);
  double worst = 0.0;
  for (std::int64_t x = next.valid_lo(); x <= next.valid_hi(); ++x) {
    const ChiralityAmplitude d = next.at(x) - lambda * psi.at(x);
    worst = std::max(worst, std::sqrt(d.norm2()));
  }
  return worst;
}

double stationarity_deviation(const WaveWindow& psi, std::int64_t n, const CoinConfig& config) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "step count must be nonnegative");
  if (psi.valid_hi() - psi.valid_lo() < 2 * n) {
    throw Error(ErrorCode::WindowExhausted,
                "window margin too small for " + std::to_string(n) + " stationarity steps");
  }
  const Measure mu0 = phi(psi);
  WaveWindow cur = psi;
  double worst = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    cur = step(cur, config);
    for (std::int64_t x = cur.valid_lo(); x <= cur.valid_hi(); ++x)
      worst = std::max(worst, std::abs(cur.at(x).norm2() - mu0.at(x)));
  }
  return worst;
}

TruncatedGenFun truncated_genfun(const WaveWindow& psi, Side side, cplx z, std::int64_t x_max,
                                 double decay_abs) {
  if (z == 0.0) throw Error(ErrorCode::Domain, "generating function point z must be nonzero");
  if (x_max < 1) throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  if (!psi.contains(x_max) || !psi.contains(-x_max))
    throw Error(ErrorCode::InvalidArgument, "window does not cover the truncation range");
  if (!(decay_abs > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay modulus must be positive");

  const double zmod = side == Side::Plus ? std::abs(z) : 1.0 / std::abs(z);
  const double q = decay_abs * zmod;
  if (!(q < 1.0)) {
    throw Error(ErrorCode::TailDivergent,
                "generating-function tail diverges: |theta_s z^(+/-1)| = " + std::to_string(q));
  }

  const int sgn = side == Side::Plus ? 1 : -1;
  TruncatedGenFun out{side, z, x_max, {0.0, 0.0, 0.0}, 0.0};
  double bound_c = 0.0;
  cplx zp = 1.0;
  const cplx zs = side == Side::Plus ? z : 1.0 / z;
  for (std::int64_t k = 1; k <= x_max; ++k) {
    zp *= zs;
    const ChiralityAmplitude& a = psi.at(sgn * k);
    out.values[0] += a.l * zp;
    out.values[1] += a.o * zp;
    out.values[2] += a.r * zp;
  }
  // Envelope constant |Psi^j(x)| <= C |theta_s|^{|x|}, read off the window.
  const std::int64_t reach = side == Side::Plus ? psi.x_max() : -psi.x_min();
  double dk = 1.0;
  for (std::int64_t k = 1; k <= reach; ++k) {
    dk *= decay_abs;
    const ChiralityAmplitude& a = psi.at(sgn * k);
    const double m = std::max({std::abs(a.l), std::abs(a.o), std::abs(a.r)});
    bound_c = std::max(bound_c, m / dk);
  }
  out.tail_bound = bound_c * std::pow(q, static_cast<double>(x_max + 1)) / (1.0 - q);
  return out;
}

Lemma1Check lemma1_check(const WaveWindow& psi, const EigenParams& p, cplx z, Side side,
                         std::int64_t x_max) {
  const double decay = std::abs(theta_roots(p.lambda).theta_s);
  const TruncatedGenFun f = truncated_genfun(psi, side, z, x_max, decay);
  const Matrix3 a = lemma1_matrix(p.lambda, z);
  const auto rhs = lemma1_rhs(p, z, side);

  double res2 = 0.0;
  double frob2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    cplx row = -rhs[i];
    for (int j = 0; j < 3; ++j) {
      row += a[i][j] * f.values[j];
      frob2 += std::norm(a[i][j]);
    }
    res2 += std::norm(row);
  }
  return {std::sqrt(res2), std::sqrt(frob2) * std::sqrt(3.0) * f.tail_bound};
}

TimeAverage time_averaged_measure(const WaveWindow& psi0, std::int64_t big_n,
                                  const CoinConfig& config) {
  if (big_n < 1) throw Error(ErrorCode::InvalidArgument, "time average needs at least one step");
  if (psi0.valid_hi() - psi0.valid_lo() < 2 * big_n) {
    throw Error(ErrorCode::WindowExhausted,
                "window margin too small for " + std::to_string(big_n) + " averaging steps");
  }
  const std::int64_t lo = psi0.valid_lo() + big_n;
  const std::int64_t hi = psi0.valid_hi() - big_n;
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  const std::int64_t band_from = big_n - std::max<std::int64_t>(1, big_n / 4) + 1;

  std::vector<double> sum(width, 0.0);
  std::vector<double> band_min(width, INFINITY);
  std::vector<double> band_max(width, 0.0);
  WaveWindow cur = psi0;
  for (std::int64_t n = 1; n <= big_n; ++n) {
    cur = step(cur, config);
    for (std::size_t i = 0; i < width; ++i) {
      const double v = cur.at(lo + static_cast<std::int64_t>(i)).norm2();
      sum[i] += v;
      if (n >= band_from) {
        band_min[i] = std::min(band_min[i], v);
        band_max[i] = std::max(band_max[i], v);
      }
    }
  }
  std::vector<double> last(width), band(width);
  for (std::size_t i = 0; i < width; ++i) {
    sum[i] /= static_cast<double>(big_n);
    last[i] = cur.at(lo + static_cast<std::int64_t>(i)).norm2();
    band[i] = band_max[i] - band_min[i];
  }
  return {Measure(lo, std::move(sum)), Measure(lo, std::move(last)), Measure(lo, std::move(band))};
}

VerifyReport scaling_relation_check() {
  const double s6 = std::sqrt(6.0);
  const std::int64_t reach = 20;
  const Measure stationary = thm1_measure_theta0_limit(2.0 - s6, reach);
  const Measure limit = homogeneous_limit_measure(1.0, 0.0, -1.0, reach);

  VerifyReport rep;
  for (std::int64_t x = -reach; x <= reach; ++x) {
    rep.residual_inf = std::max(rep.residual_inf, std::abs(stationary.at(x) - limit.at(x)));
  }
  const double coef_gap = std::abs(12.0 * (10.0 - 4.0 * s6) * (5.0 + 2.0 * s6) - 24.0);
  const double origin_gap = std::abs(2.0 * (10.0 - 4.0 * s6) - 4.0 * (5.0 - 2.0 * s6));
  rep.max_measure_drift = std::max(coef_gap, origin_gap);
  rep.steps_checked = 2 * reach + 1;
  rep.notes = "sites |x| <= 20; coefficient gap " + std::to_string(coef_gap) + ", origin gap " +
              std::to_string(origin_gap);
  return rep;
}

}  // namespace gwalk
