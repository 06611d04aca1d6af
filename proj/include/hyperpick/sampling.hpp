#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperpick/blaschke.hpp"
#include "hyperpick/self_map.hpp"

namespace hyperpick {

using cplx = std::complex<double>;

struct CapacityOptions {
  double grid_radius = 8.0;  ///< beta-radius of the lattice about 0
  double grid_step = 0.05;
};

/// Grid estimate of N(f) = sup |f^h|. The true supremum is global, so the
/// value is a lower bound tied to the lattice it was computed on.
struct CapacityEstimate {
  double value = 0;
  cplx argmax{};
  std::size_t grid_points = 0;
  CapacityOptions grid;
};

CapacityEstimate capacity(const SelfMap<double>& f, const CapacityOptions& opt = {});

struct SamplingRatio {
  double sup_ratio = 0;
  std::pair<std::size_t, std::size_t> witness{0, 1};
};

/// max over i != j of beta(f(z_i), f(z_j)) / beta(z_i, z_j), exact over all pairs.
SamplingRatio sampling_ratio(std::span<const cplx> points, const SelfMap<double>& f);

struct FamilyMember {
  std::size_t index = 0;
  std::string label;
  double capacity = 0;
  double sup_ratio = 0;
  std::pair<std::size_t, std::size_t> witness{0, 1};
  bool excluded = false;
};

/// Best sampling constant over a finite family. Because only the family is
/// tested, c_estimate is an upper bound on the constant the definition asks
/// for over the whole unit ball.
struct SamplingReport {
  double n_of_f = 0;     ///< capacity of the minimizing member
  double sup_ratio = 0;  ///< its sampling ratio
  std::pair<std::size_t, std::size_t> ratio_witness{0, 1};
  double c_estimate = 1;
  std::size_t minimizer = 0;
  std::size_t family_size = 0;
  std::vector<FamilyMember> members;
  std::vector<std::string> warnings;
  CapacityOptions grid;
};

/// Members with capacity below this are excluded.
inline constexpr double kCapacityFloor = 1e-6;

SamplingReport sampling_constant(std::span<const cplx> points,
                                 std::span<const SelfMap<double>> family,
                                 const CapacityOptions& opt = {});

/// Seeded scaled Blaschke products: degree uniform in 0..max_degree, zeros
/// uniform for hyperbolic area in the beta-disc of radius 3, scale modulus
/// uniform in [0.3, 1], uniform rotation and scale argument.
std::vector<ScaledBlaschke<double>> make_test_family(std::uint64_t seed, std::size_t count,
                                                     std::size_t max_degree);

}  // namespace hyperpick
