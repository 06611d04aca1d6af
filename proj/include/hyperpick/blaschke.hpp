#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"
#include "hyperpick/self_map.hpp"

namespace hyperpick {

/// rotation * scale * prod_j (|a_j| / a_j) (a_j - z) / (1 - conj(a_j) z).
///
/// A zero at the origin contributes the plain factor z.
template <typename T>
class ScaledBlaschke {
 public:
  ScaledBlaschke() = default;
  ScaledBlaschke(Complex<T> rotation, Complex<T> scale, std::vector<DiscPoint<T>> zeros)
      : rotation_(rotation), scale_(scale), zeros_(std::move(zeros)) {
    if (std::abs(std::abs(rotation_) - T(1)) > T(1e-14))
      throw InvalidInput("Blaschke rotation must be unimodular");
    if (std::abs(scale_) > T(1)) throw InvalidInput("Blaschke scale must have modulus <= 1");
  }

  /// Product of the listed zeros with unit scale and rotation.
  static ScaledBlaschke from_zeros(std::vector<DiscPoint<T>> zeros) {
    return ScaledBlaschke(Complex<T>(1), Complex<T>(1), std::move(zeros));
  }

  const Complex<T>& rotation() const noexcept { return rotation_; }
  const Complex<T>& scale() const noexcept { return scale_; }
  const std::vector<DiscPoint<T>>& zeros() const noexcept { return zeros_; }
  std::size_t degree() const noexcept { return zeros_.size(); }

  Complex<T> operator()(const Complex<T>& z) const {
    Complex<T> acc = rotation_ * scale_;
    for (const auto& a : zeros_) acc *= factor(a, z);
    return acc;
  }

  /// Closed-form derivative: f' = f * sum_j b_j' / b_j, computed without
  /// dividing by b_j so that it stays finite at the zeros.
  Complex<T> derivative(const Complex<T>& z) const {
    const std::size_t n = zeros_.size();
    Complex<T> total{};
    for (std::size_t i = 0; i < n; ++i) {
      Complex<T> term = factor_derivative(zeros_[i], z);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) term *= factor(zeros_[j], z);
      total += term;
    }
    return rotation_ * scale_ * total;
  }

  SelfMap<T> as_map() const {
    const auto self = *this;
    std::ostringstream os;
    os << "scaled Blaschke of degree " << degree();
    return {[self](const Complex<T>& z) { return self(z); },
            [self](const Complex<T>& z) { return self.derivative(z); }, os.str()};
  }

 private:
  static Complex<T> normalizer(const Complex<T>& a) {
    return a == Complex<T>(0) ? Complex<T>(-1) : std::abs(a) / a;
  }
  // For a = 0 the normalized factor (|a|/a)(a - z)/(1 - conj(a) z) is taken as z.
  static Complex<T> factor(const Complex<T>& a, const Complex<T>& z) {
    return normalizer(a) * (a - z) / (T(1) - std::conj(a) * z);
  }
  static Complex<T> factor_derivative(const Complex<T>& a, const Complex<T>& z) {
    const Complex<T> d = T(1) - std::conj(a) * z;
    return normalizer(a) * (std::norm(a) - T(1)) / (d * d);
  }

  Complex<T> rotation_{T(1), T(0)};
  Complex<T> scale_{T(1), T(0)};
  std::vector<DiscPoint<T>> zeros_;
};

template <typename T>
Complex<T> blaschke_eval(const ScaledBlaschke<T>& f, const Complex<T>& z) {
  return f(z);
}

template <typename T>
Complex<T> blaschke_deriv(const ScaledBlaschke<T>& f, const Complex<T>& z) {
  return f.derivative(z);
}

/// |f(z)| >= 1 - kBoundaryTolerance counts as touching the boundary.
template <typename T>
inline constexpr T kBoundaryTolerance = T(1e-12);

/// f^h(z) = (1 - |z|^2) f'(z) / (1 - |f(z)|^2).
template <typename T>
Complex<T> hyp_deriv(const SelfMap<T>& f, const Complex<T>& z) {
  const Complex<T> fz = f(z);
  const T denom = T(1) - std::norm(fz);
  if (!(std::abs(fz) < T(1) - kBoundaryTolerance<T>)) {
    std::ostringstream os;
    os << "|f(z)| = " << std::abs(fz) << " at z = " << z << "; hyperbolic derivative undefined";
    throw DegenerateBoundary(os.str());
  }
  return (T(1) - std::norm(z)) * f.deriv(z) / denom;
}

template <typename T>
Complex<T> hyp_deriv(const ScaledBlaschke<T>& f, const Complex<T>& z) {
  return hyp_deriv(f.as_map(), z);
}

/// Positive boundary weight w(theta) sampled on a uniform grid of `node_count`
/// angles; samples below `floor` are clipped to it.
template <typename T>
struct BoundaryModulus {
  std::function<T(T)> sampler;
  std::size_t node_count = 4096;
  T floor = T(1e-12);

  /// log of the clipped samples at theta_k = 2 pi k / node_count.
  std::vector<T> log_samples() const {
    if (node_count == 0) throw InvalidBoundaryData("boundary quadrature needs at least one node");
    std::vector<T> out(node_count);
    for (std::size_t k = 0; k < node_count; ++k) {
      const T theta = T(2) * std::numbers::pi_v<T> * T(k) / T(node_count);
      T w = sampler(theta);
      if (std::isnan(w)) throw InvalidBoundaryData("boundary weight is NaN");
      if (w < floor && w > T(0)) w = floor;
      if (!(w > T(0))) {
        std::ostringstream os;
        os << "boundary weight " << w << " at theta = " << theta << " is not positive";
        throw InvalidBoundaryData(os.str());
      }
      out[k] = std::log(w);
    }
    return out;
  }
};

/// Boundary weight 1 - |f(e^{i theta})|, the modulus data of the outer factor
/// paired with f in the solution assembly.
template <typename T>
BoundaryModulus<T> one_minus_modulus(const SelfMap<T>& f, std::size_t node_count = 4096) {
  return {[f](T theta) { return T(1) - std::abs(f(std::polar(T(1), theta))); }, node_count};
}

/// Outer function with boundary modulus w, evaluated by the composite
/// trapezoid rule on the Herglotz integral. Precomputes log w once.
template <typename T>
class OuterFunction {
 public:
  explicit OuterFunction(const BoundaryModulus<T>& m, T margin = T(1e-2))
      : logs_(m.log_samples()), margin_(margin) {
    const std::size_t n = logs_.size();
    nodes_.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      nodes_.push_back(std::polar(T(1), T(2) * std::numbers::pi_v<T> * T(k) / T(n)));
  }

  Complex<T> operator()(const Complex<T>& z) const {
    if (std::abs(z) > T(1) - margin_) {
      std::ostringstream os;
      os << "outer function evaluated at |z| = " << std::abs(z) << " beyond the quadrature margin";
      throw InvalidInput(os.str());
    }
    Complex<T> acc{};
    for (std::size_t k = 0; k < nodes_.size(); ++k)
      acc += (nodes_[k] + z) / (nodes_[k] - z) * logs_[k];
    return std::exp(acc / T(nodes_.size()));
  }

  SelfMap<T> as_map() const {
    const auto self = *this;
    return {[self](const Complex<T>& z) { return self(z); }, {}, "outer function"};
  }

 private:
  std::vector<T> logs_;
  std::vector<Complex<T>> nodes_;
  T margin_;
};

template <typename T>
Complex<T> outer_eval(const BoundaryModulus<T>& m, const Complex<T>& z, T margin = T(1e-2)) {
  return OuterFunction<T>(m, margin)(z);
}

}  // namespace hyperpick
