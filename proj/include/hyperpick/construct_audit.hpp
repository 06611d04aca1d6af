#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hyperpick/blaschke.hpp"
#include "hyperpick/self_map.hpp"

namespace hyperpick {

using cplx = std::complex<double>;

/// Pieces of the solution f = f1 - B1 E1 f_tilde.
struct AssemblyInputs {
  SelfMap<double> f1;           ///< interpolates the first separated subsequence
  ScaledBlaschke<double> b1;    ///< zeros = that subsequence
  SelfMap<double> e1;           ///< outer factor, typically built from 1 - |f1| on the circle
  SelfMap<double> f_tilde;
};

/// Index of the nearest zero of B1 (in beta) for each node; ties go to the lowest index.
std::vector<std::size_t> nearest_pairing(std::span<const cplx> nodes,
                                         std::span<const DiscPoint<double>> zeros);

struct AuxiliaryValues {
  std::vector<cplx> w_tilde;  ///< (f1(z) - w) / (B1(z) E1(z))
  std::vector<cplx> h_part;   ///< 2 (f1(z) - f1(z_i)) / (B1(z) E1(z))
  std::vector<cplx> t_part;   ///< 2 (w_i - w) / (B1(z) E1(z)), with w_i = f1(z_i)
  std::vector<std::size_t> pairing;
};

/// Nodes closer than this (in beta) to a zero of B1 raise PoleError.
inline constexpr double kPoleDistance = 1e-9;

AuxiliaryValues auxiliary_values(const AssemblyInputs& in, std::span<const cplx> nodes,
                                 std::span<const cplx> values,
                                 std::span<const std::size_t> pairing);

/// f(z) = f1(z) - B1(z) E1(z) f_tilde(z).
SelfMap<double> assemble_solution(const AssemblyInputs& in);

struct F1AuditOptions {
  double grid_radius = 4.0;  ///< beta-radius of the prop1 lattice about 0
  double grid_step = 0.1;
  double local_step = 0.05;  ///< lattice step inside each beta-disc of radius eta1
  std::size_t boundary_nodes = 4096;
  double outer_margin = 1e-2;
};

struct F1Audit {
  double prop1_constant = 0;  ///< min |E1(z)| / (1 - |f1(z)|)
  cplx prop1_argmin{};
  double prop2_constant = 0;  ///< max beta(f1(z), f1(z_i)) / (eps beta(z, z_i))
  cplx prop2_argmax{};
  std::size_t prop1_points = 0;
  std::size_t prop2_points = 0;
  std::size_t excluded_points = 0;  ///< 1 - |f1| < 1e-9 or beyond the outer margin
};

/// Audits, on grids, the two properties the assembly relies on:
/// |E1| >= C (1 - |f1|) and beta(f1(z), f1(z_i)) <= C eps beta(z, z_i) near each z_i.
F1Audit audit_f1_properties(const SelfMap<double>& f1, std::span<const cplx> z1, double eta1,
                            double eps, const F1AuditOptions& opt = {});

struct StressCase {
  std::vector<cplx> values;        ///< in input order
  std::vector<std::size_t> order;  ///< order[r] = input index of the point labelled r + 1
  std::size_t special = 0;         ///< input index carrying the nonzero value
  std::size_t excluded = 0;        ///< input index left out of the product
  cplx x{};
  double product_bound = 0;  ///< min over dropped points of prod_{i != dropped} rho(z_i, special)
};

/// Values forcing an order-(n-1) interpolation problem on n + 1 clustered
/// points to fail: zero everywhere except eps * x at the point nearest to
/// cluster[0], with x = C * prod [z_special, z_j] over all other points but the
/// one farthest from the special point.
StressCase necessity_stress(std::span<const cplx> cluster, double eps, double C);

}  // namespace hyperpick
