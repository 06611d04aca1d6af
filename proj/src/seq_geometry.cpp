#include "hyperpick/seq_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"

namespace hyperpick {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

bool in_layer(double depth_from_boundary, double side, std::size_t m) {
  const double upper = std::ldexp(side, -static_cast<int>(m));
  const double lower = std::ldexp(side, -static_cast<int>(m) - 1);
  return lower < depth_from_boundary && depth_from_boundary <= upper;
}

}  // namespace

double angle_difference(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);  // in [-pi, pi]
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

bool CarlesonSquare::contains(cplx z) const {
  const double gap = 1 - std::abs(z);
  if (!(0 < gap && gap < side)) return false;
  return std::abs(angle_difference(std::arg(z), theta0)) < side;
}

double separation_constant(std::span<const cplx> points) {
  if (points.size() < 2) throw InvalidInput("separation needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::min(best, hyp_dist(points[i], points[j]));
  return best;
}

SeparatedDecomposition decompose_separated(std::span<const cplx> points, double eta_target) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(points[a]) < std::abs(points[b]);
  });

  SeparatedDecomposition out;
  for (const std::size_t idx : order) {
    bool placed = false;
    for (auto& part : out.parts) {
      const bool fits = std::all_of(part.begin(), part.end(), [&](std::size_t other) {
        return hyp_dist(points[idx], points[other]) >= eta_target;
      });
      if (fits) {
        part.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) out.parts.push_back({idx});
  }
  out.part_count = out.parts.size();

  // Greedy clique in the "closer than eta_target" graph, grown from each point
  // by nearest neighbours first.
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      const double d = hyp_dist(points[i], points[j]);
      if (d < eta_target) near.emplace_back(d, j);
    }
    std::sort(near.begin(), near.end());
    std::vector<std::size_t> clique{i};
    for (const auto& [d, j] : near) {
      const bool ok = std::all_of(clique.begin(), clique.end(), [&](std::size_t c) {
        return hyp_dist(points[j], points[c]) < eta_target;
      });
      if (ok) clique.push_back(j);
    }
    out.clique_lower_bound = std::max(out.clique_lower_bound, clique.size());
  }
  return out;
}

LayerCounts carleson_layer_counts(std::span<const cplx> points, const CarlesonSquare& q,
                                  std::size_t m_max) {
  if (m_max < 1) throw InvalidInput("layer count needs m_max >= 1");
  LayerCounts out;
  out.counts.assign(m_max, 0);
  for (const cplx& z : points) {
    if (!q.contains(z)) continue;
    ++out.in_square;
    const double gap = 1 - std::abs(z);
    if (gap > q.side / 2) {
      ++out.shallow;
      continue;
    }
    // Start from the logarithmic estimate, then settle the half-open
    // convention with exact power-of-two comparisons.
    const double est = std::floor(std::log2(q.side / gap));
    std::size_t m = est < 1 ? 1 : static_cast<std::size_t>(est);
    while (m > 1 && gap > std::ldexp(q.side, -static_cast<int>(m))) --m;
    while (!in_layer(gap, q.side, m) && m <= m_max) ++m;
    if (m <= m_max)
      ++out.counts[m - 1];
    else
      ++out.deep;
  }
  return out;
}

std::vector<CarlesonSquare> audit_squares(std::span<const cplx> points, std::size_t depth) {
  std::vector<CarlesonSquare> out;
  for (std::size_t l = 0; l <= depth; ++l) {
    const double side = std::ldexp(kTwoPi, -static_cast<int>(l));
    const std::size_t count = std::size_t{1} << l;
    for (std::size_t j = 0; j < count; ++j) out.push_back({side * double(j), side});
  }
  for (const cplx& z : points)
    for (std::size_t l = 0; l <= depth; ++l)
      out.push_back({std::arg(z), std::ldexp(kTwoPi, -static_cast<int>(l))});
  return out;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  return grid;
}

DensityFit fit_density(std::span<const cplx> points, std::size_t depth,
                       std::span<const double> alpha_grid) {
  if (depth < 1) throw InvalidInput("density fit needs depth >= 1");
  if (alpha_grid.empty()) throw InvalidInput("alpha grid is empty");
  for (const double a : alpha_grid)
    if (!(a > 0 && a < 1)) throw InvalidInput("alpha grid values must lie in (0, 1)");

  std::vector<double> grid(alpha_grid.begin(), alpha_grid.end());
  std::sort(grid.begin(), grid.end());

  const auto squares = audit_squares(points, depth);
  std::vector<std::vector<std::size_t>> layer_table;
  layer_table.reserve(squares.size());
  for (const auto& q : squares) layer_table.push_back(carleson_layer_counts(points, q, depth).counts);

  const std::size_t shallow_limit = (depth + 1) / 2;
  DensityFit fit;
  fit.alpha_grid = grid;
  fit.squares_audited = squares.size();
  fit.depth = depth;
  for (const double alpha : grid) {
    double full = 0, shallow = 0;
    for (const auto& counts : layer_table)
      for (std::size_t m = 1; m <= depth; ++m) {
        const double r = double(counts[m - 1]) * std::exp2(-alpha * double(m));
        full = std::max(full, r);
        if (m <= shallow_limit) shallow = std::max(shallow, r);
      }
    fit.M_by_alpha.push_back(full);
    fit.admissible_by_alpha.push_back(full <= shallow * (1 + 1e-12));
  }
  std::size_t pick = grid.size() - 1;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (fit.admissible_by_alpha[i]) {
      pick = i;
      fit.admissible = true;
      break;
    }
  fit.alpha = grid[pick];
  fit.M = fit.M_by_alpha[pick];
  return fit;
}

DensityRadius r_density(std::span<const cplx> points, double probe_radius_beta,
                        double grid_step_beta) {
  if (points.empty()) throw InvalidInput("density radius needs a nonempty sequence");
  const auto probes = hyperbolic_lattice(probe_radius_beta, grid_step_beta);
  DensityRadius out{0, probe_radius_beta, grid_step_beta, probes.size(), {}};
  for (const cplx& p : probes) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const cplx& z : points) nearest = std::min(nearest, hyp_dist(p, z));
    if (nearest > out.R) {
      out.R = nearest;
      out.worst_probe = p;
    }
  }
  return out;
}

std::string to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Pass: return "pass";
    case AuditVerdict::Fail: return "fail";
    case AuditVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SequenceReport order_check(std::span<const cplx> points, const OrderCheckOptions& opt) {
  SequenceReport rep;
  rep.separation_eta = points.size() >= 2 ? separation_constant(points)
                                          : std::numeric_limits<double>::infinity();
  auto dec = decompose_separated(points, opt.eta_target);
  rep.parts = std::move(dec.parts);
  rep.part_count = dec.part_count;
  rep.clique_lower_bound = dec.clique_lower_bound;
  if (rep.part_count <= opt.n)
    rep.separation_condition = AuditVerdict::Pass;
  else if (rep.clique_lower_bound > opt.n)
    rep.separation_condition = AuditVerdict::Fail;
  else
    rep.separation_condition = AuditVerdict::Inconclusive;

  rep.fit = fit_density(points, opt.depth, opt.alpha_grid);
  rep.carleson_M = rep.fit.M;
  rep.carleson_alpha = rep.fit.alpha;
  rep.density_condition = rep.fit.admissible ? AuditVerdict::Pass : AuditVerdict::Fail;
  if (opt.probe_radius) rep.density = r_density(points, *opt.probe_radius, opt.probe_step);
  return rep;
}

}  // namespace hyperpick
