#pragma once

// Explicit eigenvectors and stationary measures of the defect walk: the
// (lambda(+), lambda(-)) family with alpha = -gamma and beta = 0, the three
// lambda = -1 families, and the known limit measure of the homogeneous walk.

#include <array>

#include "gwalk/lattice.hpp"
#include "gwalk/spectral.hpp"

namespace gwalk {

inline constexpr std::int64_t kDefaultHalfWidth = 64;

enum class BranchSign { Plus, Minus };

/// Branch of the lambda(+/-) family. gamma = -alpha, beta = 0.
struct Thm1Branch {
  BranchSign sign = BranchSign::Plus;
  cplx alpha = 1.0;
};

/// |theta_s|^2 = (37 + 12 cos t +/- 20 sqrt6 cos(t/2)) / (13 - 12 cos t)^2 for
/// t in [0, 4pi]. in_range is false outside the interval where the chosen
/// sign gives a decaying (<= 1) value.
struct ThetaSAbs2 {
  double value;
  bool in_range;
};

ThetaSAbs2 theta_s_abs2(double theta, BranchSign formula_sign);

/// m_k = 5 + (-1)^{n_k} 2 sqrt6 cos(theta/2).
double m_constant(double theta, int n_bit);

/// 1 + (13 - 12 cos theta)(2/m1 + m2/m3).
double thm1_coefficient(double theta, const std::array<int, 3>& bits);

/// Constants of the closed-form measure, resolved for one (theta, branch).
struct Thm1MeasureParams {
  BranchSign formula_sign;  // sign of the |theta_s|^2 formula matching this branch
  double theta_s_abs2;
  std::array<double, 3> m;
  std::array<int, 3> n_bits;
  double coefficient;
};

struct Thm1Eigen {
  WaveWindow psi;
  cplx lambda;
  cplx theta_s;
  bool decaying;  // |theta_s| <= 1
};

/// Eigenvector with Psi(0) = alpha (1, 0, -1) and
///   Psi(x) = alpha (-theta_s)^{|x|} (1, -2(w-1)/(l-1), -c)       x >= 1
///   Psi(x) = alpha (-theta_s)^{|x|} (c, 2(w-1)/(l-1), -1)        x <= -1
/// with c = ((3l+1)w - 2(l+1))/(l-1), l = lambda(sign) and theta_s the common
/// decay ratio computed from l. Throws DegenerateDefect at theta = 0.
Thm1Eigen thm1_eigenvector(const CoinConfig& config, const Thm1Branch& branch,
                           std::int64_t half_width = kDefaultHalfWidth);

/// Matches the formula sign and (n1, n2, n3) against phi of the eigenvector.
/// Throws Parameter if no combination reproduces it.
Thm1MeasureParams resolve_thm1_params(const CoinConfig& config, const Thm1Branch& branch);

/// |alpha|^2 * { |theta_s|^{2|x|} * coefficient (x != 0); 2 (x = 0) }.
Measure thm1_measure(const CoinConfig& config, const Thm1Branch& branch,
                     std::int64_t half_width = kDefaultHalfWidth);

enum class MinusOneCase { I, IIa, IIb };

struct FamilyResult {
  WaveWindow psi;
  Measure measure;
};

/// lambda = -1 families. Case I uses alpha only (gamma = alpha), IIa uses
/// gamma = -alpha, IIb needs theta = pi and takes both alpha and gamma.
FamilyResult lambda_minus1_family(MinusOneCase which, const CoinConfig& config, cplx alpha,
                                  cplx gamma = 0.0, std::int64_t half_width = kDefaultHalfWidth);

/// Limit measure of the homogeneous walk started from (a, b, c) at the origin.
Measure homogeneous_limit_measure(cplx a, cplx b, cplx c,
                                  std::int64_t half_width = kDefaultHalfWidth);

/// Stationary measure of the lambda(-) branch in the theta -> 0 limit:
/// 12|alpha|^2 (5+2sqrt6)(49-20sqrt6)^{|x|}, 2|alpha|^2 at the origin.
Measure thm1_measure_theta0_limit(cplx alpha, std::int64_t half_width = kDefaultHalfWidth);

}  // namespace gwalk
