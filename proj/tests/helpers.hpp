#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hyperpick/blaschke.hpp"
#include "hyperpick/random.hpp"

namespace test {

using cplx = std::complex<double>;
using hyperpick::Rng;

/// Uniform in the Euclidean disc of the given radius.
inline cplx random_point(Rng& rng, double radius = 0.9) {
  const double r = radius * std::sqrt(rng.uniform());
  return std::polar(r, 2 * std::numbers::pi * rng.uniform());
}

/// n points in the disc of the given radius, pairwise pseudohyperbolic distance >= min_rho.
inline std::vector<cplx> random_nodes(Rng& rng, std::size_t n, double radius = 0.9,
                                      double min_rho = 0.05) {
  std::vector<cplx> out;
  while (out.size() < n) {
    const cplx z = random_point(rng, radius);
    bool ok = true;
    for (const cplx& w : out) ok = ok && hyperpick::pseudo_dist(z, w) >= min_rho;
    if (ok) out.push_back(z);
  }
  return out;
}

inline hyperpick::ScaledBlaschke<double> random_blaschke(Rng& rng, std::size_t degree,
                                                         double scale_lo = 0.3,
                                                         double scale_hi = 1.0) {
  std::vector<hyperpick::DiscPoint<double>> zeros;
  for (std::size_t d = 0; d < degree; ++d) zeros.emplace_back(random_point(rng, 0.9));
  const cplx scale = std::polar(rng.uniform(scale_lo, scale_hi), 2 * std::numbers::pi * rng.uniform());
  const cplx rot = std::polar(1.0, 2 * std::numbers::pi * rng.uniform());
  return {rot, scale, std::move(zeros)};
}

inline hyperpick::Automorphism<double> random_automorphism(Rng& rng) {
  return {random_point(rng, 0.8), std::polar(1.0, 2 * std::numbers::pi * rng.uniform())};
}

/// Central difference f'(z) ~ (f(z + h) - f(z - h)) / 2h.
template <typename F>
cplx central_difference(const F& f, cplx z, double h = 1e-6) {
  return (f(z + h) - f(z - h)) / (2 * h);
}

/// Triangle entry straight from the recursion, in long double, with no storage.
inline std::complex<long double> brute_entry(const std::vector<cplx>& z, const std::vector<cplx>& w,
                                             std::size_t k, std::size_t j) {
  using L = std::complex<long double>;
  const auto br = [](L a, L b) { return (b - a) / (1.0L - std::conj(b) * a); };
  if (k == 0) return L(w[j]);
  const L num = br(brute_entry(z, w, k - 1, j), brute_entry(z, w, k - 1, k - 1));
  return num / br(L(z[j]), L(z[k - 1]));
}

/// f evaluated at each node.
inline std::vector<cplx> sample_values(const hyperpick::ScaledBlaschke<double>& f,
                                       const std::vector<cplx>& nodes) {
  std::vector<cplx> out;
  for (const cplx& z : nodes) out.push_back(f(z));
  return out;
}

/// z_k = 1 - 2^{-k}, k = 1..count.
inline std::vector<cplx> radial_sequence(int count) {
  std::vector<cplx> out;
  for (int k = 1; k <= count; ++k) out.emplace_back(1 - std::ldexp(1.0, -k));
  return out;
}

/// ceil(2^{exponent m}) points in layer m = 1..depth of the Carleson square
/// centred at angle 0 with side 2 pi / 8, spread evenly over half its width.
inline std::vector<cplx> layered_population(std::size_t depth, double exponent) {
  const double side = std::numbers::pi / 4;
  std::vector<cplx> out;
  for (std::size_t m = 1; m <= depth; ++m) {
    const double gap = 0.75 * std::ldexp(side, -static_cast<int>(m));
    const auto count = static_cast<std::size_t>(std::ceil(std::exp2(exponent * double(m))));
    for (std::size_t i = 0; i < count; ++i) {
      const double theta = side * ((double(i) + 0.5) / double(count) - 0.5);
      out.push_back(std::polar(1 - gap, theta));
    }
  }
  return out;
}

}  // namespace test
