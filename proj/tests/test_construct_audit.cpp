#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "hyperpick/construct_audit.hpp"
#include "hyperpick/np_solver.hpp"
#include "hyperpick/quotients.hpp"

using namespace hyperpick;
using test::cplx;

namespace {

AssemblyInputs random_inputs(Rng& rng) {
  const auto f1 = test::random_blaschke(rng, 2, 0.3, 0.6).as_map();
  std::vector<DiscPoint<double>> zeros;
  for (int i = 0; i < 3; ++i) zeros.emplace_back(test::random_point(rng, 0.8));
  const OuterFunction<double> e1(one_minus_modulus(f1, 1024));
  return {f1, ScaledBlaschke<double>::from_zeros(zeros), e1.as_map(),
          test::random_blaschke(rng, 2, 0.3, 0.9).as_map()};
}

// Points of a small beta-disc about `center`.
std::vector<cplx> cluster(Rng& rng, cplx center, std::size_t count, double beta_radius) {
  const Automorphism<double> to_center{center, cplx(1)};
  std::vector<cplx> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(to_center(test::random_point(rng, std::tanh(beta_radius / 2))));
  return out;
}

// max |Delta^k_j - Delta^k_i| / (eps rho(z_i, z_j)) over k >= 1 for data whose
// chain parameters all have modulus <= eps.
double chain_compat_constant(std::uint64_t seed, double eps) {
  Rng rng(seed);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto z = cluster(rng, test::random_point(rng, 0.9), 4, 0.1);
    std::vector<cplx> diag;
    for (int k = 0; k < 4; ++k) diag.push_back(test::random_point(rng, eps));
    const SchurChain<double> chain(z, diag);
    std::vector<cplx> w;
    for (const cplx& p : z) w.push_back(chain(p));
    const auto tri = build_triangle<double>(z, w);
    for (std::size_t k = 1; k < 4; ++k)
      for (std::size_t i = k; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
          worst = std::max(worst, std::abs(tri.entry(k, j) - tri.entry(k, i)) / (eps * pseudo_dist(z[i], z[j])));
  }
  return worst;
}

}  // namespace

TEST_CASE("auxiliary values examples") {
  Rng rng(71);
  const auto in = random_inputs(rng);
  const std::vector<cplx> nodes{cplx(0.1, 0.2), cplx(-0.3, 0.1)};
  const auto pairing = nearest_pairing(nodes, in.b1.zeros());

  std::vector<cplx> on_f1;
  for (const cplx& z : nodes) on_f1.push_back(in.f1(z));
  for (const cplx& v : auxiliary_values(in, nodes, on_f1, pairing).w_tilde) CHECK(std::abs(v) < 1e-15);

  AssemblyInputs zero = in;
  zero.f1 = constant_map(cplx(0));
  const std::vector<cplx> w{cplx(0.3), cplx(0, -0.2)};
  const auto aux = auxiliary_values(zero, nodes, w, pairing);
  for (std::size_t m = 0; m < nodes.size(); ++m)
    CHECK(std::abs(aux.w_tilde[m] + w[m] / (in.b1(nodes[m]) * in.e1(nodes[m]))) < 1e-12);
}

TEST_CASE("auxiliary split identity") {
  Rng rng(72);
  for (int t = 0; t < 50; ++t) {
    const auto in = random_inputs(rng);
    std::vector<cplx> nodes, w;
    for (int i = 0; i < 6; ++i) {
      nodes.push_back(test::random_point(rng, 0.85));
      w.push_back(test::random_point(rng, 0.9));
    }
    const auto pairing = nearest_pairing(nodes, in.b1.zeros());
    const auto aux = auxiliary_values(in, nodes, w, pairing);
    CHECK(aux.pairing == pairing);
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      const cplx denom = in.b1(nodes[m]) * in.e1(nodes[m]);
      const cplx anchor = in.f1(in.b1.zeros()[pairing[m]].value());
      CHECK(std::abs(aux.w_tilde[m] - (in.f1(nodes[m]) - w[m]) / denom) < 1e-12 * std::max(1.0, std::abs(aux.w_tilde[m])));
      CHECK(std::abs(aux.w_tilde[m] - (aux.h_part[m] + aux.t_part[m]) / 2.0) <= 1e-12 * std::max(1.0, std::abs(aux.w_tilde[m])));
      CHECK(std::abs(aux.t_part[m] - 2.0 * (anchor - w[m]) / denom) < 1e-12 * std::max(1.0, std::abs(aux.t_part[m])));
    }
  }
}

TEST_CASE("auxiliary values refuse nodes on a zero of B1") {
  Rng rng(73);
  const auto in = random_inputs(rng);
  const std::vector<cplx> nodes{in.b1.zeros()[1].value()};
  const std::vector<cplx> w{0.1};
  const std::vector<std::size_t> pairing{1};
  CHECK_THROWS_AS(auxiliary_values(in, nodes, w, pairing), PoleError);
  CHECK_THROWS_AS(auxiliary_values(in, nodes, std::vector<cplx>{}, pairing), InvalidInput);
}

TEST_CASE("nearest pairing breaks ties by index") {
  const std::vector<DiscPoint<double>> zeros{DiscPoint<double>(cplx(0.5)), DiscPoint<double>(cplx(-0.5))};
  const std::vector<cplx> nodes{0, 0.4, -0.6};
  CHECK(nearest_pairing(nodes, zeros) == std::vector<std::size_t>{0, 0, 1});
  CHECK_THROWS_AS(nearest_pairing(nodes, {}), InvalidInput);
}

TEST_CASE("assembled solution") {
  Rng rng(74);
  for (int t = 0; t < 20; ++t) {
    auto in = random_inputs(rng);
    const auto f = assemble_solution(in);
    for (const auto& a : in.b1.zeros()) CHECK(std::abs(f(a.value()) - in.f1(a.value())) < 1e-14);

    // f_tilde interpolating w_tilde at z* makes f hit the target there.
    const cplx zs = test::random_point(rng, 0.8), target = test::random_point(rng, 0.9);
    const std::vector<cplx> nodes{zs}, w{target};
    const auto aux = auxiliary_values(in, nodes, w, nearest_pairing(nodes, in.b1.zeros()));
    in.f_tilde = constant_map(aux.w_tilde[0]);
    CHECK(std::abs(assemble_solution(in)(zs) - target) < 1e-9);

    in.f_tilde = constant_map(cplx(0));
    const cplx p = test::random_point(rng, 0.9);
    CHECK(assemble_solution(in)(p) == in.f1(p));
  }
}

TEST_CASE("f1 audit: constant-modulus case") {
  const auto b = ScaledBlaschke<double>(cplx(1), cplx(0.6), {DiscPoint<double>(cplx(0.2)), DiscPoint<double>(cplx(0, -0.5))});
  const std::vector<cplx> z1{cplx(0.2)};
  F1AuditOptions opt;
  opt.grid_radius = 3;
  opt.grid_step = 0.2;
  opt.boundary_nodes = 1024;
  const auto audit = audit_f1_properties(b.as_map(), z1, 0.5, 0.1, opt);
  CHECK(audit.prop1_constant >= 0.4 - 1e-12);
  CHECK(audit.prop1_points > 0);
  CHECK(audit.prop2_points > 0);
}

TEST_CASE("f1 audit: constant map has no spread") {
  const std::vector<cplx> z1{cplx(0.1), cplx(-0.4, 0.2)};
  F1AuditOptions opt;
  opt.grid_radius = 2;
  opt.grid_step = 0.25;
  opt.boundary_nodes = 256;
  const auto audit = audit_f1_properties(constant_map(cplx(0.3)), z1, 0.5, 0.1, opt);
  CHECK(audit.prop2_constant == 0.0);
  CHECK(audit.prop1_constant == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("f1 audit: z/2 about the origin") {
  const std::vector<cplx> z1{cplx(0)};
  F1AuditOptions opt;
  opt.grid_radius = 2;
  opt.grid_step = 0.25;
  opt.local_step = 0.1;
  opt.boundary_nodes = 256;
  const auto audit = audit_f1_properties(scaled_identity(cplx(0.5)), z1, 1.0, 1.0, opt);
  // beta(z/2, 0) / beta(z, 0) depends only on r = |z| and decreases in r.
  double want = 0;
  for (const cplx& u : hyperbolic_lattice(1.0, 0.1)) {
    if (u == cplx(0)) continue;
    want = std::max(want, std::atanh(std::abs(u) / 2) / std::atanh(std::abs(u)));
  }
  CHECK(audit.prop2_constant == doctest::Approx(want).epsilon(1e-12));
  CHECK(audit.prop2_constant <= 1);
  CHECK_THROWS_AS(audit_f1_properties(scaled_identity(cplx(0.5)), z1, 1.0, 0.0, opt), InvalidInput);
}

TEST_CASE("necessity stress examples") {
  const std::vector<cplx> two{0, 0.01};
  const auto s = necessity_stress(two, 0.1, 0.5);
  CHECK(s.special == 1);
  CHECK(s.excluded == 0);
  CHECK(s.values == std::vector<cplx>{0, 0.05});
  CHECK(s.x == cplx(0.5));
  CHECK(s.order == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(necessity_stress(std::vector<cplx>{0.1}, 0.1, 0.5), InvalidInput);
  CHECK_THROWS_AS(necessity_stress(two, 0.1, 1.0), InvalidInput);
  CHECK_THROWS_AS(necessity_stress(std::vector<cplx>{0.1, 0.1}, 0.1, 0.5), DegenerateNodes);
}

TEST_CASE("stressed data: subsets compatible, full problem not strictly solvable") {
  Rng rng(75);
  const double eps = 0.1, C = 0.25;
  for (int t = 0; t < 100; ++t) {
    const auto pts = cluster(rng, test::random_point(rng, 0.9), 4, 0.025);
    const auto s = necessity_stress(pts, eps, C);
    CHECK(std::abs(s.x) <= s.product_bound * C * (1 + 1e-12));

    std::vector<cplx> z, w;
    for (const std::size_t i : s.order) {
      z.push_back(pts[i]);
      w.push_back(s.values[i]);
    }
    SweepOptions sub;
    sub.subset_size = 3;
    CHECK(epsilon_of<double>(pts, s.values, sub).epsilon_min <= C * eps);
    CHECK(solvability<double>(z, w).status != Solvability::InfinitelyMany);
  }
}

TEST_CASE("chain data with small parameters have a stable compatibility constant") {
  const double eps = 0.01;
  const double a = chain_compat_constant(81, eps), b = chain_compat_constant(82, eps);
  CHECK(std::isfinite(a));
  CHECK(a > 0);
  CHECK(std::max(a, b) <= 2 * std::min(a, b));
}
