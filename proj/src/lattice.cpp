#include "gwalk/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gwalk/error.hpp"

namespace gwalk {

bool ChiralityAmplitude::finite() const {
  auto ok = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  return ok(l) && ok(o) && ok(r);
}

ChiralityAmplitude& ChiralityAmplitude::operator+=(const ChiralityAmplitude& rhs) {
  l += rhs.l;
  o += rhs.o;
  r += rhs.r;
  return *this;
}

ChiralityAmplitude& ChiralityAmplitude::operator-=(const ChiralityAmplitude& rhs) {
  l -= rhs.l;
  o -= rhs.o;
  r -= rhs.r;
  return *this;
}

ChiralityAmplitude& ChiralityAmplitude::operator*=(cplx s) {
  l *= s;
  o *= s;
  r *= s;
  return *this;
}

ChiralityAmplitude operator+(ChiralityAmplitude a, const ChiralityAmplitude& b) { return a += b; }
ChiralityAmplitude operator-(ChiralityAmplitude a, const ChiralityAmplitude& b) { return a -= b; }
ChiralityAmplitude operator*(cplx s, ChiralityAmplitude a) { return a *= s; }

CoinConfig::CoinConfig(double theta) : theta_(theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 2.0 * std::numbers::pi) {
    throw Error(ErrorCode::InvalidArgument,
                "defect phase theta must lie in [0, 2pi), got " + std::to_string(theta));
  }
  omega_ = std::polar(1.0, theta);
}

const Coin& grover_coin() {
  static const Coin g = [] {
    Coin c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c[i][j] = (i == j) ? -1.0 / 3.0 : 2.0 / 3.0;
    return c;
  }();
  return g;
}

Coin coin_at(std::int64_t x, const CoinConfig& config) {
  Coin c = grover_coin();
  if (x == 0) {
    for (auto& row : c)
      for (auto& v : row) v *= config.omega();
  }
  return c;
}

// ---------------------------------------------------------------------------

Measure::Measure(std::int64_t x_min, std::int64_t x_max) : x_min_(x_min) {
  if (x_max < x_min) throw Error(ErrorCode::InvalidArgument, "measure window is empty");
  values_.assign(static_cast<std::size_t>(x_max - x_min + 1), 0.0);
}

Measure::Measure(std::int64_t x_min, std::vector<double> values)
    : x_min_(x_min), values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "measure window is empty");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "measure values must be finite and nonnegative");
  }
}

double Measure::at(std::int64_t x) const {
  if (!contains(x)) throw Error(ErrorCode::InvalidArgument, "site outside measure window");
  return values_[static_cast<std::size_t>(x - x_min_)];
}

void Measure::set(std::int64_t x, double value) {
  if (!contains(x)) throw Error(ErrorCode::InvalidArgument, "site outside measure window");
  if (!(value >= 0.0) || !std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, "measure values must be finite and nonnegative");
  values_[static_cast<std::size_t>(x - x_min_)] = value;
}

double Measure::total() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

bool Measure::is_zero() const {
  for (double v : values_)
    if (v != 0.0) return false;
  return true;
}

// ---------------------------------------------------------------------------

WaveWindow::WaveWindow(std::int64_t x_min, std::int64_t x_max)
    : x_min_(x_min), x_max_(x_max), valid_lo_(x_min), valid_hi_(x_max) {
  if (x_max < x_min) throw Error(ErrorCode::InvalidArgument, "wave window is empty");
  amps_.resize(static_cast<std::size_t>(x_max - x_min + 1));
}

WaveWindow WaveWindow::centered(std::int64_t half_width) {
  if (half_width < 0) throw Error(ErrorCode::InvalidArgument, "half width must be nonnegative");
  return WaveWindow(-half_width, half_width);
}

const ChiralityAmplitude& WaveWindow::at(std::int64_t x) const {
  if (!contains(x)) throw Error(ErrorCode::InvalidArgument, "site outside wave window");
  return amps_[static_cast<std::size_t>(x - x_min_)];
}

ChiralityAmplitude& WaveWindow::at(std::int64_t x) {
  if (!contains(x)) throw Error(ErrorCode::InvalidArgument, "site outside wave window");
  return amps_[static_cast<std::size_t>(x - x_min_)];
}

void WaveWindow::set_valid(std::int64_t lo, std::int64_t hi) {
  if (lo < x_min_ || hi > x_max_ || lo > hi)
    throw Error(ErrorCode::InvalidArgument, "valid interior must satisfy x_min <= lo <= hi <= x_max");
  valid_lo_ = lo;
  valid_hi_ = hi;
}

double WaveWindow::interior_norm2() const {
  double s = 0.0;
  for (std::int64_t x = valid_lo_; x <= valid_hi_; ++x) s += at(x).norm2();
  return s;
}

WaveWindow WaveWindow::scaled(cplx s) const {
  WaveWindow out = *this;
  for (auto& a : out.amps_) a *= s;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

cplx row_dot(const std::array<cplx, 3>& row, const ChiralityAmplitude& a) {
  return row[0] * a.l + row[1] * a.o + row[2] * a.r;
}

}  // namespace

WaveWindow step(const WaveWindow& psi, const CoinConfig& config) {
  if (psi.valid_hi() - psi.valid_lo() < 2) {
    throw Error(ErrorCode::WindowExhausted,
                "window exhausted: valid interior [" + std::to_string(psi.valid_lo()) + ", " +
                    std::to_string(psi.valid_hi()) + "] cannot shrink further");
  }
  const Coin& g = grover_coin();
  const cplx w = config.omega();
  const auto& in = psi.amplitudes();
  const std::size_t n = in.size();
  // Site index of the origin, or n when it is outside the window.
  const std::size_t origin =
      (psi.contains(0)) ? static_cast<std::size_t>(-psi.x_min()) : n;

  WaveWindow out(psi.x_min(), psi.x_max());
  for (std::size_t i = 0; i < n; ++i) {
    ChiralityAmplitude& dst = out.at(psi.x_min() + static_cast<std::int64_t>(i));
    if (i + 1 < n) {
      dst.l = row_dot(g[0], in[i + 1]);
      if (i + 1 == origin) dst.l *= w;
    }
    dst.o = row_dot(g[1], in[i]);
    if (i == origin) dst.o *= w;
    if (i > 0) {
      dst.r = row_dot(g[2], in[i - 1]);
      if (i - 1 == origin) dst.r *= w;
    }
  }
  out.set_valid(psi.valid_lo() + 1, psi.valid_hi() - 1);
  return out;
}

WaveWindow evolve(WaveWindow psi, std::int64_t n, const CoinConfig& config) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "step count must be nonnegative");
  for (std::int64_t k = 0; k < n; ++k) psi = step(psi, config);
  return psi;
}

Measure phi(const WaveWindow& psi) {
  std::vector<double> v;
  v.reserve(psi.size());
  for (const auto& a : psi.amplitudes()) v.push_back(a.norm2());
  return Measure(psi.x_min(), std::move(v));
}

}  // namespace gwalk
