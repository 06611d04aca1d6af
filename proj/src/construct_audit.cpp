#include "hyperpick/construct_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"
#include "hyperpick/quotients.hpp"

namespace hyperpick {

std::vector<std::size_t> nearest_pairing(std::span<const cplx> nodes,
                                         std::span<const DiscPoint<double>> zeros) {
  if (zeros.empty()) throw InvalidInput("pairing needs at least one zero");
  std::vector<std::size_t> out;
  out.reserve(nodes.size());
  for (const cplx& z : nodes) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      const double d = hyp_dist(z, zeros[i].value());
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    out.push_back(best);
  }
  return out;
}

AuxiliaryValues auxiliary_values(const AssemblyInputs& in, std::span<const cplx> nodes,
                                 std::span<const cplx> values,
                                 std::span<const std::size_t> pairing) {
  if (nodes.size() != values.size() || nodes.size() != pairing.size())
    throw InvalidInput("nodes, values and pairing differ in length");
  const auto& zeros = in.b1.zeros();
  AuxiliaryValues out;
  out.pairing.assign(pairing.begin(), pairing.end());
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    const cplx z = nodes[m];
    if (pairing[m] >= zeros.size()) throw InvalidInput("pairing index out of range");
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (hyp_dist(z, zeros[i].value()) < kPoleDistance) {
        std::ostringstream os;
        os << "node " << m << " sits on zero " << i << " of B1";
        throw PoleError(os.str());
      }
    }
    const cplx denom = in.b1(z) * in.e1(z);
    const cplx f1z = in.f1(z);
    const cplx anchor = in.f1(zeros[pairing[m]].value());
    out.w_tilde.push_back((f1z - values[m]) / denom);
    out.h_part.push_back(2.0 * (f1z - anchor) / denom);
    out.t_part.push_back(2.0 * (anchor - values[m]) / denom);
  }
  return out;
}

SelfMap<double> assemble_solution(const AssemblyInputs& in) {
  return {[in](const cplx& z) { return in.f1(z) - in.b1(z) * in.e1(z) * in.f_tilde(z); }, {},
          "assembled solution"};
}

F1Audit audit_f1_properties(const SelfMap<double>& f1, std::span<const cplx> z1, double eta1,
                            double eps, const F1AuditOptions& opt) {
  if (!(eps > 0)) throw InvalidInput("eps must be positive");
  const OuterFunction<double> e1(one_minus_modulus(f1, opt.boundary_nodes), opt.outer_margin);
  F1Audit out;

  out.prop1_constant = std::numeric_limits<double>::infinity();
  for (const cplx& z : hyperbolic_lattice(opt.grid_radius, opt.grid_step)) {
    const double gap = 1 - std::abs(f1(z));
    if (gap < 1e-9 || std::abs(z) > 1 - opt.outer_margin) {
      ++out.excluded_points;
      continue;
    }
    ++out.prop1_points;
    const double c = std::abs(e1(z)) / gap;
    if (c < out.prop1_constant) {
      out.prop1_constant = c;
      out.prop1_argmin = z;
    }
  }

  const auto local = hyperbolic_lattice(eta1, opt.local_step);
  for (const cplx& center : z1) {
    const Automorphism<double> to_center{center, cplx(1)};
    const cplx fc = f1(center);
    for (const cplx& u : local) {
      if (u == cplx(0)) continue;
      const cplx z = to_center(u);
      const double bz = hyp_dist(z, center);
      if (!(bz > 0) || bz > eta1 * (1 + 1e-12)) continue;
      ++out.prop2_points;
      const double r = hyp_dist(f1(z), fc) / (eps * bz);
      if (r > out.prop2_constant) {
        out.prop2_constant = r;
        out.prop2_argmax = z;
      }
    }
  }
  return out;
}

StressCase necessity_stress(std::span<const cplx> cluster, double eps, double C) {
  const std::size_t total = cluster.size();
  if (total < 2) throw InvalidInput("stress case needs at least two points");
  if (!(C > 0 && C < 1)) throw InvalidInput("stress constant C must lie in (0, 1)");
  detail::require_distinct<double>(cluster);

  StressCase out;
  // Nearest point to cluster[0] carries the value.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < total; ++j) {
    const double r = pseudo_dist(cluster[0], cluster[j]);
    if (r < best) {
      best = r;
      out.special = j;
    }
  }
  // Farthest point from the special one is left out of the product.
  double worst = -1;
  for (std::size_t j = 0; j < total; ++j) {
    if (j == out.special) continue;
    const double r = pseudo_dist(cluster[j], cluster[out.special]);
    if (r > worst) {
      worst = r;
      out.excluded = j;
    }
  }

  const cplx zs = cluster[out.special];
  cplx prod = 1;
  double rho_all = 1;
  for (std::size_t j = 0; j < total; ++j) {
    if (j == out.special) continue;
    rho_all *= pseudo_dist(cluster[j], zs);
    if (j == out.excluded) continue;
    out.order.push_back(j);
    prod *= mobius_bracket(zs, cluster[j]);
  }
  out.order.push_back(out.excluded);
  out.order.push_back(out.special);
  out.x = C * prod;
  out.product_bound = rho_all / worst;

  out.values.assign(total, cplx(0));
  out.values[out.special] = eps * out.x;
  return out;
}

}  // namespace hyperpick
