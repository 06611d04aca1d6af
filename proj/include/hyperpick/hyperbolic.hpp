#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "hyperpick/error.hpp"

namespace hyperpick {

template <typename T>
using Complex = std::complex<T>;

/// Points with |z| >= 1 - kDiscMargin are rejected.
template <typename T>
inline constexpr T kDiscMargin = T(1e-15);

/// A complex number strictly inside the unit disc.
template <typename T>
class DiscPoint {
 public:
  DiscPoint() = default;
  explicit DiscPoint(Complex<T> value) : value_(value) {
    if (!(std::abs(value) < T(1) - kDiscMargin<T>)) {
      std::ostringstream os;
      os << "point " << value << " is not strictly inside the unit disc";
      throw InvalidInput(os.str());
    }
  }
  DiscPoint(T re, T im) : DiscPoint(Complex<T>(re, im)) {}

  const Complex<T>& value() const noexcept { return value_; }
  operator const Complex<T>&() const noexcept { return value_; }

 private:
  Complex<T> value_{};
};

template <typename T>
std::vector<DiscPoint<T>> to_disc_points(std::span<const Complex<T>> values) {
  std::vector<DiscPoint<T>> out;
  out.reserve(values.size());
  for (const auto& v : values) out.emplace_back(v);
  return out;
}

template <typename T>
std::vector<Complex<T>> to_complex(std::span<const DiscPoint<T>> points) {
  return {points.begin(), points.end()};
}

/// Complex pseudohyperbolic bracket [z, a] = (a - z) / (1 - conj(a) z).
template <typename T>
Complex<T> mobius_bracket(const Complex<T>& z, const Complex<T>& a) {
  return (a - z) / (T(1) - std::conj(a) * z);
}

/// rho(z, w) = |[z, w]|.
template <typename T>
T pseudo_dist(const Complex<T>& z, const Complex<T>& w) {
  return std::abs(mobius_bracket(z, w));
}

/// beta(z, w) = log((1 + rho) / (1 - rho)).
template <typename T>
T hyp_dist(const Complex<T>& z, const Complex<T>& w) {
  const T rho = pseudo_dist(z, w);
  return std::log1p(rho) - std::log1p(-rho);
}

/// Inverse of rho -> beta.
template <typename T>
T rho_from_beta(T beta) {
  return std::tanh(beta / T(2));
}

/// Disc automorphism u -> rotation * (u + center) / (1 + conj(center) u); sends 0 to rotation * center.
template <typename T>
struct Automorphism {
  Complex<T> center{};
  Complex<T> rotation{T(1), T(0)};

  Complex<T> operator()(const Complex<T>& u) const {
    return rotation * (u + center) / (T(1) + std::conj(center) * u);
  }
  Complex<T> derivative(const Complex<T>& u) const {
    const Complex<T> d = T(1) + std::conj(center) * u;
    return rotation * (T(1) - std::norm(center)) / (d * d);
  }
  Automorphism inverse() const {
    // Solve rotation * (u + c) / (1 + conj(c) u) = v for u.
    return Automorphism{-rotation * center, std::conj(rotation)};
  }
};

/// Polyline approximation of a curve in the disc.
template <typename T>
class HyperbolicPath {
 public:
  explicit HyperbolicPath(std::vector<DiscPoint<T>> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw InvalidInput("a path needs at least 2 samples");
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      if (samples_[i].value() == samples_[i - 1].value())
        throw InvalidInput("consecutive path samples must be distinct");
    }
  }

  const std::vector<DiscPoint<T>>& samples() const noexcept { return samples_; }

 private:
  std::vector<DiscPoint<T>> samples_;
};

/// Integral of |dz| / (1 - |z|^2) along the path, midpoint rule per segment.
///
/// With this density a geodesic from z to w has length beta(z, w) / 2, since
/// beta = 2 atanh(rho).
template <typename T>
T hyp_length(const HyperbolicPath<T>& path) {
  const auto& s = path.samples();
  T total = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const Complex<T> a = s[i - 1], b = s[i];
    const Complex<T> mid = (a + b) / T(2);
    total += std::abs(b - a) / (T(1) - std::norm(mid));
  }
  return total;
}

/// Samples of the geodesic from z to w, including both endpoints.
template <typename T>
std::vector<DiscPoint<T>> geodesic_samples(const Complex<T>& z, const Complex<T>& w,
                                           std::size_t count) {
  const Automorphism<T> from_origin{z, Complex<T>(1)};
  const Complex<T> end = from_origin.inverse()(w);
  std::vector<DiscPoint<T>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const T t = T(i) / T(count - 1);
    out.emplace_back(from_origin(t * end));
  }
  return out;
}

/// Polar lattice covering the hyperbolic disc of beta-radius `radius` about the
/// origin: rings every `step` in beta, each ring sampled with arc spacing at
/// most `step` in beta. The outermost ring sits at exactly `radius`.
template <typename T>
std::vector<Complex<T>> hyperbolic_lattice(T radius, T step) {
  if (!(step > 0) || radius < 0) throw InvalidInput("lattice needs step > 0 and radius >= 0");
  std::vector<Complex<T>> out{Complex<T>(0)};
  const auto rings = static_cast<std::size_t>(std::ceil(radius / step - T(1e-9)));
  for (std::size_t r = 1; r <= rings; ++r) {
    const T s = std::min(radius, T(r) * step);
    const T euclid = std::tanh(s / T(2));
    // Circumference of a beta-circle of radius s is 2 pi sinh(s).
    const auto count = static_cast<std::size_t>(
        std::max<T>(T(3), std::ceil(T(2) * std::numbers::pi_v<T> * std::sinh(s) / step)));
    for (std::size_t k = 0; k < count; ++k) {
      const T theta = T(2) * std::numbers::pi_v<T> * T(k) / T(count);
      out.push_back(std::polar(euclid, theta));
    }
  }
  return out;
}

}  // namespace hyperpick
