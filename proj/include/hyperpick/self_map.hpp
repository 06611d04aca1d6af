#pragma once

#include <algorithm>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include "hyperpick/hyperbolic.hpp"

namespace hyperpick {

/// An evaluable analytic map of the disc into its closure.
///
/// `derivative` may be left empty; f' is then recovered from a 32-point
/// Cauchy integral on a circle of radius min(1e-2, (1 - |z|) / 4), which is
/// spectrally accurate for maps analytic on a neighbourhood of that circle.
template <typename T>
struct SelfMap {
  using Fn = std::function<Complex<T>(const Complex<T>&)>;

  Fn value;
  Fn derivative;
  std::string label;

  Complex<T> operator()(const Complex<T>& z) const { return value(z); }

  Complex<T> deriv(const Complex<T>& z) const {
    if (derivative) return derivative(z);
    constexpr int kNodes = 32;
    const T radius = std::min(T(1e-2), (T(1) - std::abs(z)) / T(4));
    Complex<T> acc{};
    for (int k = 0; k < kNodes; ++k) {
      const Complex<T> e = std::polar(T(1), T(2) * std::numbers::pi_v<T> * T(k) / T(kNodes));
      acc += value(z + radius * e) / e;
    }
    return acc / (T(kNodes) * radius);
  }
};

template <typename T>
SelfMap<T> constant_map(Complex<T> c) {
  return {[c](const Complex<T>&) { return c; }, [](const Complex<T>&) { return Complex<T>(0); },
          "constant"};
}

/// z -> c z.
template <typename T>
SelfMap<T> scaled_identity(Complex<T> c) {
  return {[c](const Complex<T>& z) { return c * z; }, [c](const Complex<T>&) { return c; },
          "scaled identity"};
}

template <typename T>
SelfMap<T> automorphism_map(Automorphism<T> phi) {
  return {[phi](const Complex<T>& z) { return phi(z); },
          [phi](const Complex<T>& z) { return phi.derivative(z); }, "automorphism"};
}

/// f o phi, with the chain rule for the derivative.
template <typename T>
SelfMap<T> compose(SelfMap<T> f, Automorphism<T> phi) {
  return {[f, phi](const Complex<T>& z) { return f(phi(z)); },
          [f, phi](const Complex<T>& z) { return f.deriv(phi(z)) * phi.derivative(z); },
          f.label + " o automorphism"};
}

}  // namespace hyperpick
