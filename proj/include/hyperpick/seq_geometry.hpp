#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperpick {

using cplx = std::complex<double>;

/// Angle difference a - b reduced into (-pi, pi].
double angle_difference(double a, double b);

/// Q = { r e^{i theta} : 0 < 1 - r < side, |theta - theta0| < side }.
struct CarlesonSquare {
  double theta0 = 0;
  double side = 1;

  bool contains(cplx z) const;
};

/// inf over i != j of beta(z_i, z_j). Needs at least two points.
double separation_constant(std::span<const cplx> points);

struct SeparatedDecomposition {
  std::vector<std::vector<std::size_t>> parts;  ///< indices into the input
  std::size_t part_count = 0;
  /// Size of a set of points that are pairwise closer than the target,
  /// hence a lower bound on the number of parts any valid split needs.
  std::size_t clique_lower_bound = 0;
};

/// First-fit split into parts with separation >= eta_target, visiting points
/// by increasing |z| (decreasing 1 - |z|), ties by index.
SeparatedDecomposition decompose_separated(std::span<const cplx> points, double eta_target);

struct LayerCounts {
  /// counts[m - 1] = #{ z in Q : 2^{-m-1} side < 1 - |z| <= 2^{-m} side }, m = 1..m_max.
  std::vector<std::size_t> counts;
  std::size_t shallow = 0;  ///< points of Q with 1 - |z| > side / 2 (layer 0)
  std::size_t deep = 0;     ///< points of Q below layer m_max
  std::size_t in_square = 0;
};

LayerCounts carleson_layer_counts(std::span<const cplx> points, const CarlesonSquare& q,
                                  std::size_t m_max);

/// Dyadic squares theta0 = 2 pi j 2^{-l}, side = 2 pi 2^{-l} for 0 <= l <= depth,
/// followed by squares of the same sides centred at each point's argument.
std::vector<CarlesonSquare> audit_squares(std::span<const cplx> points, std::size_t depth);

struct DensityFit {
  double M = 0;
  double alpha = 0;
  /// False when no grid value passed; M and alpha then refer to the largest grid value.
  bool admissible = false;
  std::vector<double> alpha_grid;
  std::vector<double> M_by_alpha;
  std::vector<bool> admissible_by_alpha;
  std::size_t squares_audited = 0;
  std::size_t depth = 0;
};

/// Default alpha grid {0.05, 0.10, ..., 0.95}.
std::vector<double> default_alpha_grid();

/// For each grid alpha, M(alpha) = max over audited squares and layers m <= depth
/// of count_m 2^{-alpha m}. A value alpha is admissible when this maximum is
/// already reached on the shallow layers m <= ceil(depth / 2), i.e. the bound
/// is not being driven by the deepest layers. Returns the smallest admissible
/// alpha.
DensityFit fit_density(std::span<const cplx> points, std::size_t depth,
                       std::span<const double> alpha_grid);

struct DensityRadius {
  double R = 0;
  double probe_radius = 0;
  double grid_step = 0;
  std::size_t probes = 0;
  cplx worst_probe{};
};

/// sup over a hyperbolic polar probe lattice of radius probe_radius_beta about 0
/// of the beta-distance to the nearest point.
DensityRadius r_density(std::span<const cplx> points, double probe_radius_beta,
                        double grid_step_beta);

enum class AuditVerdict { Pass, Fail, Inconclusive };
std::string to_string(AuditVerdict v);

struct SequenceReport {
  double separation_eta = 0;
  std::vector<std::vector<std::size_t>> parts;
  std::size_t part_count = 0;
  std::size_t clique_lower_bound = 0;
  AuditVerdict separation_condition = AuditVerdict::Inconclusive;  ///< at most n separated parts
  double carleson_M = 0;
  double carleson_alpha = 0;
  AuditVerdict density_condition = AuditVerdict::Inconclusive;  ///< some alpha < 1 admissible
  DensityFit fit;
  std::optional<DensityRadius> density;
};

struct OrderCheckOptions {
  std::size_t n = 2;
  double eta_target = 0.5;
  std::size_t depth = 8;
  std::vector<double> alpha_grid = default_alpha_grid();
  std::optional<double> probe_radius;  ///< run r_density when set
  double probe_step = 0.25;
};

SequenceReport order_check(std::span<const cplx> points, const OrderCheckOptions& opt);

}  // namespace hyperpick
