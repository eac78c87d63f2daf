#include "gwalk/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gwalk/error.hpp"

namespace gwalk {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt6 = std::sqrt(6.0);

// Canonical bit pattern per formula sign; it is the unique match away from
// theta = pi, where cos(theta/2) = 0 makes every pattern equivalent.
constexpr std::array<int, 3> kBitsPlus{0, 1, 0};
constexpr std::array<int, 3> kBitsMinus{1, 0, 1};

cplx lambda_for(const CoinConfig& config, BranchSign sign) {
  const auto [plus, minus] = lambda_case_iia(config);
  return sign == BranchSign::Plus ? plus : minus;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

ThetaSAbs2 theta_s_abs2(double theta, BranchSign formula_sign) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > 4.0 * kPi)
    throw Error(ErrorCode::InvalidArgument, "|theta_s|^2 formula takes theta in [0, 4pi]");
  const double c = std::cos(theta);
  const double s = (formula_sign == BranchSign::Plus ? 20.0 : -20.0) * kSqrt6 * std::cos(theta / 2.0);
  const double den = 13.0 - 12.0 * c;
  const double value = (37.0 + 12.0 * c + s) / (den * den);

  const double edge = std::acos(1.0 / 3.0);
  bool in_range = false;
  if (formula_sign == BranchSign::Plus) {
    in_range = theta >= edge && theta <= 4.0 * kPi - edge;
  } else {
    in_range = theta <= 2.0 * kPi - edge || theta >= 2.0 * kPi + edge;
  }
  return {value, in_range};
}

double m_constant(double theta, int n_bit) {
  const double sign = (n_bit % 2 == 0) ? 1.0 : -1.0;
  return 5.0 + sign * 2.0 * kSqrt6 * std::cos(theta / 2.0);
}

double thm1_coefficient(double theta, const std::array<int, 3>& bits) {
  const double m1 = m_constant(theta, bits[0]);
  const double m2 = m_constant(theta, bits[1]);
  const double m3 = m_constant(theta, bits[2]);
  return 1.0 + (13.0 - 12.0 * std::cos(theta)) * (2.0 / m1 + m2 / m3);
}

Thm1Eigen thm1_eigenvector(const CoinConfig& config, const Thm1Branch& branch,
                           std::int64_t half_width) {
  if (branch.alpha == 0.0) throw Error(ErrorCode::Parameter, "alpha must be nonzero");
  const cplx l = lambda_for(config, branch.sign);
  const cplx w = config.omega();

  // theta_s from the defining ratios of the concrete lambda; the pre-simplified
  // lists of constants are ambiguous about which value pairs with which branch.
  const EigenParams p{l, branch.alpha, 0.0, -branch.alpha, w};
  const RatioSet ratios = lemma2_ratios(p);
  if (!ratios.all_defined() || ratios.max_spread() > 1e-8 * std::max(1.0, std::abs(*ratios.common())))
    throw Error(ErrorCode::RatioMismatch, "decay ratios of the lambda(+/-) family do not coincide");
  const cplx theta_s = *ratios.common();

  const cplx o_col = 2.0 * (w - 1.0) / (l - 1.0);
  const cplx c = ((3.0 * l + 1.0) * w - 2.0 * (l + 1.0)) / (l - 1.0);
  const ChiralityAmplitude right{1.0, -o_col, -c};
  const ChiralityAmplitude left{c, o_col, -1.0};

  WaveWindow psi = WaveWindow::centered(half_width);
  psi.at(0) = {branch.alpha, 0.0, -branch.alpha};
  cplx power = branch.alpha;
  for (std::int64_t x = 1; x <= half_width; ++x) {
    power *= -theta_s;
    psi.at(x) = power * right;
    psi.at(-x) = power * left;
  }
  return {std::move(psi), l, theta_s, std::abs(theta_s) <= 1.0 + 1e-12};
}

Thm1MeasureParams resolve_thm1_params(const CoinConfig& config, const Thm1Branch& branch) {
  const Thm1Eigen eig = thm1_eigenvector(config, {branch.sign, 1.0}, 1);
  const double ts2 = std::norm(eig.theta_s);
  const double theta = config.theta();

  const BranchSign own = branch.sign;
  const BranchSign other = own == BranchSign::Plus ? BranchSign::Minus : BranchSign::Plus;
  BranchSign formula_sign;
  if (close_rel(theta_s_abs2(theta, own).value, ts2, 1e-9)) {
    formula_sign = own;
  } else if (close_rel(theta_s_abs2(theta, other).value, ts2, 1e-9)) {
    formula_sign = other;
  } else {
    throw Error(ErrorCode::Parameter,
                "no |theta_s|^2 formula sign reproduces the decay ratio at theta = " +
                    std::to_string(theta));
  }

  // phi(Psi)(1) / (|alpha|^2 |theta_s|^2) is the bracketed coefficient.
  const double target = eig.psi.at(1).norm2() / ts2;
  const auto& canonical = formula_sign == BranchSign::Plus ? kBitsPlus : kBitsMinus;
  std::optional<std::array<int, 3>> found;
  if (close_rel(thm1_coefficient(theta, canonical), target, 1e-10)) {
    found = canonical;
  } else {
    for (int code = 0; code < 8 && !found; ++code) {
      const std::array<int, 3> bits{(code >> 2) & 1, (code >> 1) & 1, code & 1};
      if (close_rel(thm1_coefficient(theta, bits), target, 1e-10)) found = bits;
    }
  }
  if (!found)
    throw Error(ErrorCode::Parameter,
                "no (n1, n2, n3) reproduces the eigenvector measure at theta = " + std::to_string(theta));

  Thm1MeasureParams out{};
  out.formula_sign = formula_sign;
  out.theta_s_abs2 = theta_s_abs2(theta, formula_sign).value;
  out.n_bits = *found;
  for (int k = 0; k < 3; ++k) out.m[k] = m_constant(theta, out.n_bits[k]);
  out.coefficient = thm1_coefficient(theta, out.n_bits);
  return out;
}

Measure thm1_measure(const CoinConfig& config, const Thm1Branch& branch, std::int64_t half_width) {
  if (branch.alpha == 0.0) throw Error(ErrorCode::Parameter, "alpha must be nonzero");
  if (half_width < 0) throw Error(ErrorCode::InvalidArgument, "half width must be nonnegative");
  const Thm1MeasureParams prm = resolve_thm1_params(config, branch);
  const double a2 = std::norm(branch.alpha);
  Measure mu(-half_width, half_width);
  mu.set(0, 2.0 * a2);
  double decay = 1.0;
  for (std::int64_t x = 1; x <= half_width; ++x) {
    decay *= prm.theta_s_abs2;
    mu.set(x, a2 * decay * prm.coefficient);
    mu.set(-x, a2 * decay * prm.coefficient);
  }
  return mu;
}

Measure thm1_measure_theta0_limit(cplx alpha, std::int64_t half_width) {
  if (half_width < 0) throw Error(ErrorCode::InvalidArgument, "half width must be nonnegative");
  const double a2 = std::norm(alpha);
  const double base = theta_s_abs2(0.0, BranchSign::Minus).value;
  const double coef = thm1_coefficient(0.0, kBitsMinus);
  Measure mu(-half_width, half_width);
  mu.set(0, 2.0 * a2);
  double decay = 1.0;
  for (std::int64_t x = 1; x <= half_width; ++x) {
    decay *= base;
    mu.set(x, a2 * coef * decay);
    mu.set(-x, a2 * coef * decay);
  }
  return mu;
}

// ---------------------------------------------------------------------------

FamilyResult lambda_minus1_family(MinusOneCase which, const CoinConfig& config, cplx alpha,
                                  cplx gamma, std::int64_t half_width) {
  const cplx w = config.omega();
  const double c = std::cos(config.theta());
  const double a2 = std::norm(alpha);

  ChiralityAmplitude right, origin, left;
  double mu_right = 0.0, mu_origin = 0.0, mu_left = 0.0;

  switch (which) {
    case MinusOneCase::I: {
      if (alpha == 0.0) throw Error(ErrorCode::Parameter, "alpha must be nonzero");
      const cplx o = alpha * (3.0 * w * w - 2.0 * w + 3.0) / (w - 3.0);
      const cplx edge = alpha * w * (1.0 - 3.0 * w) / (w - 3.0);
      right = {alpha, o, edge};
      origin = {alpha, 4.0 * w * alpha / (w - 3.0), alpha};
      left = {edge, o, alpha};
      mu_right = mu_left = 6.0 * a2 / (5.0 - 3.0 * c) * (3.0 * c * c - 3.0 * c + 2.0);
      // phi of the origin amplitude: 2 + 16/|w - 3|^2 = 6(3 - cos)/(5 - 3cos).
      mu_origin = 6.0 * a2 / (5.0 - 3.0 * c) * (3.0 - c);
      break;
    }
    case MinusOneCase::IIa: {
      if (alpha == 0.0) throw Error(ErrorCode::Parameter, "alpha must be nonzero");
      right = {alpha, alpha * (w - 1.0), -w * alpha};
      origin = {alpha, 0.0, -alpha};
      left = {w * alpha, -alpha * (w - 1.0), -alpha};
      mu_right = mu_left = 2.0 * a2 * (2.0 - c);
      mu_origin = 2.0 * a2;
      break;
    }
    case MinusOneCase::IIb: {
      if (std::abs(config.theta() - kPi) > 1e-12)
        throw Error(ErrorCode::Parameter,
                    "case (ii-b) forces lambda = omega = -1, so theta must equal pi");
      if (alpha == 0.0 && gamma == 0.0)
        throw Error(ErrorCode::Parameter, "alpha and gamma must not both vanish");
      right = {alpha, -2.0 * alpha, alpha};
      origin = {alpha, (alpha + gamma) / 2.0, gamma};
      left = {gamma, -2.0 * gamma, gamma};
      mu_right = 6.0 * a2;
      mu_left = 6.0 * std::norm(gamma);
      mu_origin = 1.25 * (a2 + std::norm(gamma)) + 0.5 * (alpha * std::conj(gamma)).real();
      break;
    }
  }

  WaveWindow psi = WaveWindow::centered(half_width);
  Measure mu(-half_width, half_width);
  psi.at(0) = origin;
  mu.set(0, mu_origin);
  for (std::int64_t x = 1; x <= half_width; ++x) {
    psi.at(x) = right;
    psi.at(-x) = left;
    mu.set(x, mu_right);
    mu.set(-x, mu_left);
  }
  return {std::move(psi), std::move(mu)};
}

Measure homogeneous_limit_measure(cplx a, cplx b, cplx c, std::int64_t half_width) {
  if (half_width < 0) throw Error(ErrorCode::InvalidArgument, "half width must be nonnegative");
  const double p = std::norm(2.0 * a + b);
  const double q = std::norm(b + 2.0 * c);
  const double s = std::norm(a + b + c);
  const double base = 49.0 - 20.0 * kSqrt6;
  // Clamp round-off; the exact coefficients are nonnegative.
  const double right = std::max(0.0, (3.0 + kSqrt6) * p + (3.0 - kSqrt6) * q - 2.0 * s);
  const double left = std::max(0.0, (3.0 - kSqrt6) * p + (3.0 + kSqrt6) * q - 2.0 * s);

  Measure mu(-half_width, half_width);
  mu.set(0, (5.0 - 2.0 * kSqrt6) / 2.0 * (p + q));
  double decay = 1.0;
  for (std::int64_t x = 1; x <= half_width; ++x) {
    decay *= base;
    mu.set(x, right * decay);
    mu.set(-x, left * decay);
  }
  return mu;
}

}  // namespace gwalk
