#include "gwalk/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gwalk/error.hpp"

namespace gwalk {

void EigenParams::validate() const {
  if (std::norm(alpha) + std::norm(beta) + std::norm(gamma) <= 0.0)
    throw Error(ErrorCode::Parameter, "origin amplitudes (alpha, beta, gamma) must not all vanish");
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw Error(ErrorCode::Parameter, "eigenvalue must lie on the unit circle");
}

bool RatioSet::all_defined() const {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
}

double RatioSet::max_spread() const {
  double spread = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[j]) spread = std::max(spread, std::abs(*values[i] - *values[j]));
    }
  }
  return spread;
}

std::optional<cplx> RatioSet::common() const {
  cplx sum = 0.0;
  int n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------

cplx det_a(cplx lambda, cplx z) {
  if (z == 0.0) throw Error(ErrorCode::Domain, "det A is undefined at z = 0");
  if (lambda == 0.0) throw Error(ErrorCode::Domain, "det A is undefined at lambda = 0");
  const cplx quad = z * z + 3.0 * (lambda + 4.0 / 3.0 + 1.0 / lambda) * z + 1.0;
  return lambda * (lambda - 1.0) / (3.0 * z) * quad;
}

Matrix3 lemma1_matrix(cplx lambda, cplx z) {
  if (z == 0.0) throw Error(ErrorCode::Domain, "A is undefined at z = 0");
  const cplx iz = 1.0 / z;
  return {{{lambda + iz / 3.0, -2.0 * iz / 3.0, -2.0 * iz / 3.0},
           {-2.0 / 3.0, lambda + 1.0 / 3.0, -2.0 / 3.0},
           {-2.0 * z / 3.0, -2.0 * z / 3.0, lambda + z / 3.0}}};
}

std::array<cplx, 3> lemma1_rhs(const EigenParams& p, cplx z, Side side) {
  if (z == 0.0) throw Error(ErrorCode::Domain, "a(z) is undefined at z = 0");
  if (side == Side::Plus) return {-p.lambda * p.alpha, 0.0, p.omega * z * p.delta_plus() / 3.0};
  return {p.omega * p.delta_minus() / (3.0 * z), 0.0, -p.lambda * p.gamma};
}

cplx det3(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

ThetaPair theta_roots(cplx lambda) {
  if (lambda == 0.0) throw Error(ErrorCode::Domain, "theta roots are undefined at lambda = 0");
  // -theta solves z^2 + b z + 1 = 0, so theta solves t^2 - b t + 1 = 0.
  const cplx b = 3.0 * (lambda + 4.0 / 3.0 + 1.0 / lambda);
  const cplx disc = std::sqrt(b * b - 4.0);
  // Take the larger-modulus root from the cancellation-free combination and
  // recover the other one from the product t1 t2 = 1.
  const cplx big = (std::abs(b + disc) >= std::abs(b - disc)) ? (b + disc) / 2.0 : (b - disc) / 2.0;
  cplx t_large = big;
  cplx t_small = 1.0 / big;
  if (std::abs(t_small) > std::abs(t_large)) std::swap(t_small, t_large);
  return {t_small, t_large};
}

// ---------------------------------------------------------------------------

namespace {

std::optional<cplx> safe_div(cplx num, cplx den, double scale) {
  if (std::abs(den) <= RatioSet::kSingularTol * scale) return std::nullopt;
  return num / den;
}

double amp_scale(const EigenParams& p) {
  return std::max({std::abs(p.alpha), std::abs(p.beta), std::abs(p.gamma), 1e-300});
}

}  // namespace

RatioSet lemma2_ratios(const EigenParams& p) {
  const cplx l = p.lambda;
  const cplx w = p.omega;
  const cplx a = p.alpha;
  const cplx g = p.gamma;
  const cplx dp = p.delta_plus();
  const cplx dm = p.delta_minus();
  const double s = amp_scale(p);

  RatioSet out;
  out.values[RatioSet::LPlus] =
      safe_div(-(2.0 * (l + 1.0) * dp * w - 3.0 * l * l * (3.0 * l + 1.0) * a),
               3.0 * l * (l - 1.0) * a, s);
  out.values[RatioSet::OPlus] = safe_div(dp * w - 3.0 * l * l * a, l * (dp * w - 3.0 * a), s);
  out.values[RatioSet::RPlus] =
      safe_div((l - 1.0) * dp * w, l * ((3.0 * l + 1.0) * dp * w - 6.0 * (l + 1.0) * a), s);
  out.values[RatioSet::LMinus] =
      safe_div((l - 1.0) * dm * w, l * ((3.0 * l + 1.0) * dm * w - 6.0 * (l + 1.0) * g), s);
  out.values[RatioSet::OMinus] = safe_div(dm * w - 3.0 * l * l * g, l * (dm * w - 3.0 * g), s);
  out.values[RatioSet::RMinus] =
      safe_div(-(2.0 * (l + 1.0) * dm * w - 3.0 * l * l * (3.0 * l + 1.0) * g),
               3.0 * l * (l - 1.0) * g, s);
  return out;
}

std::array<cplx, 4> lemma3_residuals(const EigenParams& p) {
  const cplx l = p.lambda;
  const cplx w = p.omega;
  const cplx a = p.alpha;
  const cplx b = p.beta;
  const cplx g = p.gamma;
  const cplx dp = p.delta_plus();
  const cplx dm = p.delta_minus();

  auto side = [&](cplx amp, cplx d) {
    return (l + 1.0) * (9.0 * amp * (w * d - 2.0 * amp) * l * l - 6.0 * amp * w * d * l -
                        w * d * (2.0 * w * d - 9.0 * amp));
  };
  return {b * (3.0 * l + w) - 2.0 * w * (a + g), (a - g) * (a + g - 2.0 * b), side(a, dp),
          side(g, dm)};
}

std::pair<cplx, cplx> lambda_case_iia(const CoinConfig& config) {
  if (config.homogeneous())
    throw Error(ErrorCode::DegenerateDefect, "case (ii-a) eigenvalues need a defect (theta != 0)");
  const cplx w = config.omega();
  const cplx root = std::sqrt(6.0 * w * (w - 1.0) * (w - 1.0));
  const cplx den = 3.0 * w - 2.0;
  return {(w + root) / den, (w - root) / den};
}

std::array<cplx, 5> case_ia_quartic(const CoinConfig& config) {
  const cplx w = config.omega();
  return {3.0 * (w - 2.0), 2.0 * (5.0 * w - 3.0) * w, (3.0 * w * w - 8.0 * w + 3.0) * w,
          2.0 * (5.0 - 3.0 * w) * w * w, 3.0 * w * w * w * (1.0 - 2.0 * w)};
}

// ---------------------------------------------------------------------------

cplx polyval(const std::vector<cplx>& coeffs, cplx x) {
  cplx acc = 0.0;
  for (const cplx& c : coeffs) acc = acc * x + c;
  return acc;
}

namespace {

std::vector<cplx> derivative(const std::vector<cplx>& coeffs) {
  std::vector<cplx> d;
  const std::size_t deg = coeffs.size() - 1;
  for (std::size_t k = 0; k < deg; ++k) d.push_back(coeffs[k] * static_cast<double>(deg - k));
  return d;
}

// Scale for a relative residual: sum |c_k| |x|^k.
double poly_scale(const std::vector<cplx>& coeffs, cplx x) {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (const cplx& c : coeffs) acc = acc * ax + std::abs(c);
  return acc;
}

cplx newton_polish(const std::vector<cplx>& p, const std::vector<cplx>& dp, cplx x) {
  cplx best = x;
  double best_res = std::abs(polyval(p, x));
  for (int it = 0; it < 50 && best_res > 0.0; ++it) {
    const cplx d = polyval(dp, x);
    if (d == 0.0) break;
    const cplx dx = polyval(p, x) / d;
    x -= dx;
    const double res = std::abs(polyval(p, x));
    if (res < best_res) {
      best_res = res;
      best = x;
    } else if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      break;
    }
  }
  return best;
}

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  std::vector<cplx> p = coeffs;
  while (!p.empty() && p.front() == 0.0) p.erase(p.begin());
  if (p.size() < 2) throw Error(ErrorCode::InvalidArgument, "polynomial must have degree >= 1");
  const int deg = static_cast<int>(p.size()) - 1;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int j = 0; j < deg; ++j) companion(0, j) = -p[j + 1] / p[0];
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "companion-matrix eigenvalue iteration did not converge");

  const std::vector<cplx> dp = derivative(p);
  std::vector<cplx> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(newton_polish(p, dp, solver.eigenvalues()(i)));

  // A double root only comes out of the eigen-solve to ~sqrt(eps); refine it
  // as a simple root of p'.
  if (deg >= 2) {
    const std::vector<cplx> ddp = derivative(dp);
    for (int i = 0; i < deg; ++i) {
      for (int j = i + 1; j < deg; ++j) {
        const double sep = std::abs(roots[i] - roots[j]);
        if (sep > 1e-5 * std::max(1.0, std::abs(roots[i]))) continue;
        const cplx c = newton_polish(dp, ddp, 0.5 * (roots[i] + roots[j]));
        const double rc = std::abs(polyval(p, c)) / poly_scale(p, c);
        if (rc <= 1e-14) roots[i] = roots[j] = c;
      }
    }
  }

  for (const cplx& r : roots) {
    const double rel = std::abs(polyval(p, r)) / poly_scale(p, r);
    if (!(rel <= 1e-10)) {
      throw Error(ErrorCode::NoConvergence,
                  "polynomial root did not converge (relative residual " + std::to_string(rel) + ")");
    }
  }
  return roots;
}

std::vector<cplx> case_ia_quintic_roots(const CoinConfig& config) {
  if (config.homogeneous())
    throw Error(ErrorCode::DegenerateDefect, "case (i-a) eigenvalues need a defect (theta != 0)");
  const auto q = case_ia_quartic(config);
  std::vector<cplx> roots{cplx(-1.0, 0.0)};
  for (const cplx& r : polynomial_roots({q.begin(), q.end()})) roots.push_back(r);
  return roots;
}

// ---------------------------------------------------------------------------

WaveWindow build_eigenvector_lemma2(const EigenParams& p, std::int64_t half_width, double tol) {
  const RatioSet ratios = lemma2_ratios(p);
  if (!ratios.all_defined())
    throw Error(ErrorCode::RatioMismatch, "a decay ratio is singular for these parameters");
  const cplx mean = *ratios.common();
  const double spread = ratios.max_spread();
  if (spread > tol * std::max(1.0, std::abs(mean))) {
    throw Error(ErrorCode::RatioMismatch,
                "decay ratios disagree (spread " + std::to_string(spread) +
                    "); the coincidence conditions are not satisfied");
  }

  const cplx l = p.lambda;
  const cplx w = p.omega;
  const cplx dp = p.delta_plus();
  const cplx dm = p.delta_minus();
  const cplx den = 3.0 * (l - 1.0);
  if (std::abs(den) <= RatioSet::kSingularTol)
    throw Error(ErrorCode::Domain, "amplitude prefactors are singular at lambda = 1");

  const cplx o_plus = -2.0 * (dp * w - 3.0 * p.alpha) / den;
  const cplx r_plus = -((3.0 * l + 1.0) * dp * w - 6.0 * (l + 1.0) * p.alpha) / den;
  const cplx l_minus = -((3.0 * l + 1.0) * dm * w - 6.0 * (l + 1.0) * p.gamma) / den;
  const cplx o_minus = -2.0 * (dm * w - 3.0 * p.gamma) / den;

  const auto& v = ratios.values;
  WaveWindow psi = WaveWindow::centered(half_width);
  psi.at(0) = {p.alpha, p.beta, p.gamma};
  cplx pl = 1.0, po = 1.0, pr = 1.0;  // running powers, + side
  cplx ml = 1.0, mo = 1.0, mr = 1.0;  // running powers, - side
  for (std::int64_t x = 1; x <= half_width; ++x) {
    pl *= -*v[RatioSet::LPlus];
    po *= -*v[RatioSet::OPlus];
    pr *= -*v[RatioSet::RPlus];
    ml *= -*v[RatioSet::LMinus];
    mo *= -*v[RatioSet::OMinus];
    mr *= -*v[RatioSet::RMinus];
    psi.at(x) = {p.alpha * pl, o_plus * po, r_plus * pr};
    psi.at(-x) = {l_minus * ml, o_minus * mo, p.gamma * mr};
  }
  return psi;
}

}  // namespace gwalk
