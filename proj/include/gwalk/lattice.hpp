#pragma once

// Amplitudes of the three-state walk on a finite window of the integer line,
// the one-step evolution with a single phase defect at the origin, and the
// map from amplitudes to per-site measures.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace gwalk {

using cplx = std::complex<double>;
using Coin = std::array<std::array<cplx, 3>, 3>;

/// Amplitudes (L, O, R) at one site: move left, stay, move right.
struct ChiralityAmplitude {
  cplx l{};
  cplx o{};
  cplx r{};

  double norm2() const { return std::norm(l) + std::norm(o) + std::norm(r); }
  bool finite() const;

  ChiralityAmplitude& operator+=(const ChiralityAmplitude& rhs);
  ChiralityAmplitude& operator-=(const ChiralityAmplitude& rhs);
  ChiralityAmplitude& operator*=(cplx s);
};

ChiralityAmplitude operator+(ChiralityAmplitude a, const ChiralityAmplitude& b);
ChiralityAmplitude operator-(ChiralityAmplitude a, const ChiralityAmplitude& b);
ChiralityAmplitude operator*(cplx s, ChiralityAmplitude a);

/// Defect phase theta in [0, 2pi) and omega = exp(i theta).
class CoinConfig {
 public:
  explicit CoinConfig(double theta);

  double theta() const { return theta_; }
  cplx omega() const { return omega_; }
  bool homogeneous() const { return theta_ == 0.0; }

 private:
  double theta_;
  cplx omega_;
};

/// The Grover coin (1/3)[[-1,2,2],[2,-1,2],[2,2,-1]].
const Coin& grover_coin();

/// omega * U_G at the origin, U_G elsewhere.
Coin coin_at(std::int64_t x, const CoinConfig& config);

/// Per-site nonnegative weights over [x_min, x_max].
class Measure {
 public:
  Measure(std::int64_t x_min, std::int64_t x_max);
  Measure(std::int64_t x_min, std::vector<double> values);

  std::int64_t x_min() const { return x_min_; }
  std::int64_t x_max() const { return x_min_ + static_cast<std::int64_t>(values_.size()) - 1; }
  bool contains(std::int64_t x) const { return x >= x_min() && x <= x_max(); }

  double at(std::int64_t x) const;
  void set(std::int64_t x, double value);
  const std::vector<double>& values() const { return values_; }

  double total() const;
  bool is_zero() const;

 private:
  std::int64_t x_min_;
  std::vector<double> values_;
};

/// Dense amplitudes over [x_min, x_max]. [valid_lo, valid_hi] is the part of
/// the window where the amplitudes equal those of the infinite-lattice
/// evolution; it shrinks by one site on each side per step.
class WaveWindow {
 public:
  WaveWindow(std::int64_t x_min, std::int64_t x_max);

  /// Window over [-half_width, half_width].
  static WaveWindow centered(std::int64_t half_width);

  std::int64_t x_min() const { return x_min_; }
  std::int64_t x_max() const { return x_max_; }
  std::int64_t valid_lo() const { return valid_lo_; }
  std::int64_t valid_hi() const { return valid_hi_; }
  std::size_t size() const { return amps_.size(); }
  bool contains(std::int64_t x) const { return x >= x_min_ && x <= x_max_; }

  const ChiralityAmplitude& at(std::int64_t x) const;
  ChiralityAmplitude& at(std::int64_t x);

  const std::vector<ChiralityAmplitude>& amplitudes() const { return amps_; }

  void set_valid(std::int64_t lo, std::int64_t hi);

  /// Sum of squared moduli over the valid interior.
  double interior_norm2() const;

  WaveWindow scaled(cplx s) const;

 private:
  std::int64_t x_min_;
  std::int64_t x_max_;
  std::int64_t valid_lo_;
  std::int64_t valid_hi_;
  std::vector<ChiralityAmplitude> amps_;
};

/// One application of the walk operator:
///   Psi'(x) = U^L_{x+1} Psi(x+1) + U^O_x Psi(x) + U^R_{x-1} Psi(x-1).
/// Sites outside the window count as zero, so the result is exact only on the
/// shrunken valid interior. Throws WindowExhausted when it would be empty.
WaveWindow step(const WaveWindow& psi, const CoinConfig& config);

/// n-fold step.
WaveWindow evolve(WaveWindow psi, std::int64_t n, const CoinConfig& config);

/// phi(Psi)(x) = |Psi^L(x)|^2 + |Psi^O(x)|^2 + |Psi^R(x)|^2 on the whole window.
Measure phi(const WaveWindow& psi);

}  // namespace gwalk
