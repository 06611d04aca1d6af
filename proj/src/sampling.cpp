#include "hyperpick/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"
#include "hyperpick/random.hpp"

namespace hyperpick {

namespace {

CapacityEstimate capacity_on(const SelfMap<double>& f, std::span<const cplx> lattice,
                             const CapacityOptions& opt) {
  CapacityEstimate est;
  est.grid = opt;
  est.grid_points = lattice.size();
  for (const cplx& z : lattice) {
    const double h = std::abs(hyp_deriv(f, z));
    if (h > est.value) {
      est.value = h;
      est.argmax = z;
    }
  }
  return est;
}

// |[a, b]|^2 without the division.
struct RhoSquared {
  double num, den;
};

inline RhoSquared rho_squared(cplx a, double na, cplx b, double nb) {
  const double dx = a.real() - b.real(), dy = a.imag() - b.imag();
  const double re = a.real() * b.real() + a.imag() * b.imag();
  return {dx * dx + dy * dy, 1 - 2 * re + na * nb};
}

}  // namespace

CapacityEstimate capacity(const SelfMap<double>& f, const CapacityOptions& opt) {
  const auto lattice = hyperbolic_lattice(opt.grid_radius, opt.grid_step);
  return capacity_on(f, lattice, opt);
}

SamplingRatio sampling_ratio(std::span<const cplx> points, const SelfMap<double>& f) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidInput("sampling ratio needs at least two points");
  std::vector<cplx> img(n);
  std::vector<double> nz(n), nf(n);
  for (std::size_t i = 0; i < n; ++i) {
    img[i] = f(points[i]);
    nz[i] = std::norm(points[i]);
    nf[i] = std::norm(img[i]);
  }

  // beta_f / beta_z <= rho_f / rho_z whenever rho_f <= rho_z, because
  // atanh(x) / x increases; pairs failing the screen are skipped.
  SamplingRatio out;
  bool have = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const RhoSquared z2 = rho_squared(points[i], nz[i], points[j], nz[j]);
      const RhoSquared f2 = rho_squared(img[i], nf[i], img[j], nf[j]);
      const double rz2 = z2.num / z2.den;
      const double rf2 = f2.num / f2.den;
      if (have && rf2 < rz2 && rf2 < out.sup_ratio * out.sup_ratio * rz2 * (1 - 1e-9)) continue;
      const double bz = hyp_dist(points[i], points[j]);
      if (!(bz > 0)) throw DegenerateNodes("sampling ratio needs pairwise distinct points");
      const double r = hyp_dist(img[i], img[j]) / bz;
      if (!have || r > out.sup_ratio) {
        out.sup_ratio = r;
        out.witness = {i, j};
        have = true;
      }
    }
  return out;
}

SamplingReport sampling_constant(std::span<const cplx> points,
                                 std::span<const SelfMap<double>> family,
                                 const CapacityOptions& opt) {
  SamplingReport rep;
  rep.family_size = family.size();
  rep.grid = opt;
  const auto lattice = hyperbolic_lattice(opt.grid_radius, opt.grid_step);
  bool have = false;
  for (std::size_t idx = 0; idx < family.size(); ++idx) {
    FamilyMember m;
    m.index = idx;
    m.label = family[idx].label;
    m.capacity = capacity_on(family[idx], lattice, opt).value;
    if (m.capacity < kCapacityFloor) {
      m.excluded = true;
      std::ostringstream os;
      os << "member " << idx << " (" << m.label << ") excluded: capacity " << m.capacity
         << " below " << kCapacityFloor;
      rep.warnings.push_back(os.str());
      rep.members.push_back(std::move(m));
      continue;
    }
    const auto ratio = sampling_ratio(points, family[idx]);
    m.sup_ratio = ratio.sup_ratio;
    m.witness = ratio.witness;
    // The grid capacity can undershoot N(f), so the quotient is capped at 1.
    const double c = std::min(1.0, m.sup_ratio / m.capacity);
    if (!have || c < rep.c_estimate) {
      have = true;
      rep.c_estimate = c;
      rep.minimizer = idx;
      rep.n_of_f = m.capacity;
      rep.sup_ratio = m.sup_ratio;
      rep.ratio_witness = m.witness;
    }
    rep.members.push_back(std::move(m));
  }
  if (!have) rep.warnings.push_back("every family member was excluded; c_estimate is vacuous");
  return rep;
}

std::vector<ScaledBlaschke<double>> make_test_family(std::uint64_t seed, std::size_t count,
                                                     std::size_t max_degree) {
  if (count < 1) throw InvalidInput("test family needs count >= 1");
  constexpr double kZeroRadius = 3.0;
  constexpr double kTwoPi = 2 * std::numbers::pi;
  Rng rng(seed);
  std::vector<ScaledBlaschke<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto degree = static_cast<std::size_t>(rng.below(max_degree + 1));
    std::vector<DiscPoint<double>> zeros;
    for (std::size_t d = 0; d < degree; ++d) {
      // Hyperbolic area inside beta-radius s grows like cosh(s) - 1.
      const double s = std::acosh(1 + rng.uniform() * (std::cosh(kZeroRadius) - 1));
      zeros.emplace_back(std::polar(std::tanh(s / 2), kTwoPi * rng.uniform()));
    }
    const double modulus = rng.uniform(0.3, 1.0);
    const cplx scale = std::polar(modulus, kTwoPi * rng.uniform());
    const cplx rotation = std::polar(1.0, kTwoPi * rng.uniform());
    out.emplace_back(rotation, scale, std::move(zeros));
  }
  return out;
}

}  // namespace hyperpick
