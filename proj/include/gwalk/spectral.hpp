#pragma once

// Eigenvalue problem U Psi = lambda Psi solved by one-sided generating
// functions: the 3x3 system A f_pm = a_pm, the factorisation of det A, the
// closed-form decay ratios of each chirality on each side, the conditions
// under which those ratios coincide, and the resulting eigenvalue cases.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gwalk/lattice.hpp"

namespace gwalk {

using Matrix3 = std::array<std::array<cplx, 3>, 3>;

enum class Side { Plus, Minus };

/// Eigenvalue, origin amplitudes (alpha, beta, gamma) = Psi(0) and the defect
/// phase factor omega.
struct EigenParams {
  cplx lambda;
  cplx alpha;
  cplx beta;
  cplx gamma;
  cplx omega;

  cplx delta_plus() const { return 2.0 * alpha + 2.0 * beta - gamma; }
  cplx delta_minus() const { return -alpha + 2.0 * beta + 2.0 * gamma; }

  /// Throws Parameter if Psi(0) is zero or |lambda| differs from 1 by more
  /// than 1e-12.
  void validate() const;
};

/// -theta_s and -theta_l are the roots of z^2 + 3(lambda + 4/3 + 1/lambda) z + 1;
/// |theta_s| <= 1 <= |theta_l| and theta_s * theta_l = 1.
struct ThetaPair {
  cplx theta_s;
  cplx theta_l;
};

/// The six per-chirality, per-side decay ratios. An empty slot means the
/// defining denominator vanished.
struct RatioSet {
  enum Index { LPlus, OPlus, RPlus, LMinus, OMinus, RMinus };
  static constexpr double kSingularTol = 1e-13;

  std::array<std::optional<cplx>, 6> values;

  bool all_defined() const;
  /// Largest pairwise |difference| among the defined ratios (0 if fewer than
  /// two are defined).
  double max_spread() const;
  /// Mean of the defined ratios; nullopt if none is defined.
  std::optional<cplx> common() const;
};

/// Factored form lambda(lambda-1)/(3z) * {z^2 + 3(lambda + 4/3 + 1/lambda) z + 1}.
cplx det_a(cplx lambda, cplx z);

/// The matrix A of the generating-function system.
Matrix3 lemma1_matrix(cplx lambda, cplx z);

/// Right-hand side a_+(z) or a_-(z).
std::array<cplx, 3> lemma1_rhs(const EigenParams& p, cplx z, Side side);

/// Direct cofactor determinant of a 3x3 matrix.
cplx det3(const Matrix3& m);

ThetaPair theta_roots(cplx lambda);

RatioSet lemma2_ratios(const EigenParams& p);

/// Denominator-cleared residuals, in order:
///   beta(3 lambda + omega) - 2 omega (alpha + gamma)
///   (alpha - gamma)(alpha + gamma - 2 beta)
///   (lambda+1){9 alpha (w D+ - 2 alpha) lambda^2 - 6 alpha w D+ lambda - w D+ (2 w D+ - 9 alpha)}
///   the mirror of the previous one with gamma, D-.
std::array<cplx, 4> lemma3_residuals(const EigenParams& p);

/// lambda(+/-) = (omega +/- sqrt(6 omega (omega-1)^2)) / (3 omega - 2), principal
/// square root. Throws DegenerateDefect when theta = 0.
std::pair<cplx, cplx> lambda_case_iia(const CoinConfig& config);

/// Coefficients (highest degree first) of the quartic left after factoring
/// (lambda + 1) out of the alpha = gamma condition.
std::array<cplx, 5> case_ia_quartic(const CoinConfig& config);

/// Roots of a complex polynomial (coefficients highest degree first) from the
/// companion-matrix eigenvalues, refined by Newton's method. Throws
/// NoConvergence if a polished root still has a large residual.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

cplx polyval(const std::vector<cplx>& coeffs, cplx x);

/// {-1, lambda_2..lambda_5}: -1 first, then the quartic roots.
std::vector<cplx> case_ia_quintic_roots(const CoinConfig& config);

/// Eigenvector assembled from the closed-form amplitudes on [-half_width,
/// half_width]: Psi(0) = (alpha, beta, gamma), each chirality decaying with
/// its own ratio on each side. Throws RatioMismatch unless all six ratios are
/// defined and agree within tol.
WaveWindow build_eigenvector_lemma2(const EigenParams& p, std::int64_t half_width,
                                    double tol = 1e-8);

}  // namespace gwalk
