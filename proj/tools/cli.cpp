#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hyperpick/construct_audit.hpp"
#include "hyperpick/np_solver.hpp"
#include "hyperpick/quotients.hpp"
#include "hyperpick/sampling.hpp"
#include "hyperpick/seq_geometry.hpp"
#include "report.hpp"

namespace hyperpick::cli {

namespace {

struct Settings {
  std::string command;
  std::string problem_path;
  std::string out_path;
  std::string csv_path;
  std::uint64_t seed = 0;
  bool has_seed = false;
  double grid_radius = 0;
  bool has_grid_radius = false;
  double grid_step = 0;
  bool has_grid_step = false;
  std::vector<double> alpha_grid;
  std::size_t depth = 8;
  std::string permutations;
  double eps = 0.1;
  double C = 0.25;
  std::size_t order = 2;
  double eta = 0.5;
  double eta1 = 0.5;
  std::size_t count = 100;
  std::size_t max_degree = 4;
};

// Raised when the requested mathematics has no answer for these data.
struct Refused {
  std::string verdict;
  std::string message;
};

const char* state_name(EntryState s) {
  switch (s) {
    case EntryState::Ok: return "ok";
    case EntryState::Saturated: return "saturated";
    case EntryState::Poisoned: return "poisoned";
  }
  return "?";
}

const std::vector<cplx>& require_values(const Problem& p, const std::string& command) {
  if (!p.values) throw InvalidInput("field values: required by " + command);
  return *p.values;
}

std::uint64_t require_seed(const Settings& s, const std::string& why) {
  if (!s.has_seed) throw InvalidInput("--seed is required: " + why);
  return s.seed;
}

json triangle_json(const QuotientTriangle<double>& tri) {
  json entries = json::array(), states = json::array();
  for (std::size_t j = 0; j < tri.size(); ++j) {
    json row = json::array(), srow = json::array();
    for (std::size_t k = 0; k <= j; ++k) {
      row.push_back(complex_json(tri.entry(k, j)));
      srow.push_back(state_name(tri.state(k, j)));
    }
    entries.push_back(std::move(row));
    states.push_back(std::move(srow));
  }
  return {{"entries", std::move(entries)}, {"states", std::move(states)}};
}

json witness_json(const std::optional<CompatibilityWitness>& w) {
  if (!w) return nullptr;
  return {{"order", w->order},
          {"row_i", w->row_i},
          {"row_j", w->row_j},
          {"permutation_id", w->permutation_id},
          {"nodes", w->nodes}};
}

json verdict_json(const SolvabilityVerdict<double>& v) {
  json r;
  r["status"] = to_string(v.status);
  r["diagonal_strict"] = v.diagonal_strict;
  r["all_entries_strict"] = v.all_entries_strict;
  r["pick_psd"] = v.pick_psd;
  put_real(r, "margin", v.margin);
  put_real(r, "max_modulus", v.max_modulus);
  put_real(r, "pick_min_eigenvalue", v.pick_min_eigenvalue);
  return r;
}

json fit_json(const DensityFit& fit) {
  json r;
  put_real(r, "M", fit.M);
  r["alpha"] = fit.alpha;
  r["admissible"] = fit.admissible;
  r["depth"] = fit.depth;
  r["squares_audited"] = fit.squares_audited;
  r["alpha_grid"] = fit.alpha_grid;
  r["M_by_alpha"] = fit.M_by_alpha;
  r["admissible_by_alpha"] = fit.admissible_by_alpha;
  return r;
}

std::vector<double> alpha_grid_of(const Settings& s) {
  return s.alpha_grid.empty() ? default_alpha_grid() : s.alpha_grid;
}

// Permutation budget for --permutations: "" means the given order only.
std::size_t permutation_budget(const Settings& s, std::size_t n, bool& sampled) {
  sampled = false;
  if (s.permutations.empty()) return 1;
  double factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) factorial *= double(i);
  if (s.permutations == "all") {
    if (n > 8) throw InvalidInput("--permutations all: refused for more than 8 nodes, pass a count");
    return static_cast<std::size_t>(factorial);
  }
  std::size_t budget = 0;
  try {
    std::size_t used = 0;
    budget = std::stoul(s.permutations, &used);
    if (used != s.permutations.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw InvalidInput("--permutations: expected 'all' or a positive count");
  }
  if (budget == 0) throw InvalidInput("--permutations: expected 'all' or a positive count");
  sampled = factorial > double(budget);
  return budget;
}

json cmd_triangle(const Settings& s, const Problem& p, json&) {
  const auto& w = require_values(p, "triangle");
  bool sampled = false;
  const std::size_t budget = permutation_budget(s, p.nodes.size(), sampled);
  const std::uint64_t seed = sampled ? require_seed(s, "sampled permutations are random") : 0;

  json r;
  r["nodes"] = complex_list(p.nodes);
  r["values"] = complex_list(w);
  r["triangle"] = triangle_json(build_triangle<double>(p.nodes, w));

  if (!s.permutations.empty()) {
    json list = json::array();
    std::vector<cplx> zs(p.nodes.size()), ws(p.nodes.size());
    for_each_permutation(p.nodes.size(), budget, seed, [&](const std::vector<std::size_t>& perm, std::size_t) {
      for (std::size_t r2 = 0; r2 < perm.size(); ++r2) {
        zs[r2] = p.nodes[perm[r2]];
        ws[r2] = w[perm[r2]];
      }
      json t = triangle_json(QuotientTriangle<double>(zs, ws));
      t["permutation"] = perm;
      list.push_back(std::move(t));
      return true;
    });
    r["triangles"] = std::move(list);
  }

  SweepOptions opt;
  opt.permutation_budget = budget;
  opt.seed = seed;
  json sweep;
  if (p.nodes.size() >= 2) {
    const auto rep = epsilon_of<double>(p.nodes, w, opt);
    put_real(sweep, "epsilon_min", rep.epsilon_min);
    sweep["witness"] = witness_json(rep.worst_witness);
    sweep["permutations_checked"] = rep.permutations_checked;
    sweep["exhaustive"] = rep.exhaustive;
  } else {
    sweep["epsilon_min"] = 0.0;
    sweep["witness"] = nullptr;
    sweep["permutations_checked"] = 0;
    sweep["exhaustive"] = true;
  }
  r["sweep"] = std::move(sweep);
  return r;
}

json cmd_solvable(const Settings&, const Problem& p, json&) {
  return verdict_json(solvability<double>(p.nodes, require_values(p, "solvable")));
}

json cmd_solve(const Settings& s, const Problem& p, json&) {
  const auto& w = require_values(p, "solve");
  const auto verdict = solvability<double>(p.nodes, w);
  if (verdict.status != Solvability::InfinitelyMany)
    throw Refused{to_string(verdict.status), "data are not strictly solvable"};
  const auto chain = schur_solve<double>(p.nodes, w);

  double residual = 0;
  for (std::size_t j = 0; j < p.nodes.size(); ++j) residual = std::max(residual, std::abs(chain(p.nodes[j]) - w[j]));
  const double radius = s.has_grid_radius ? s.grid_radius : 4.0;
  const double step = s.has_grid_step ? s.grid_step : 0.1;
  const auto grid = hyperbolic_lattice(radius, step);
  double top = 0;
  for (const cplx& z : grid) top = std::max(top, std::abs(chain(z)));

  json r;
  r["verdict"] = verdict_json(verdict);
  r["chain"] = {{"nodes", complex_list(chain.nodes())},
                {"diagonal", complex_list(chain.diagonal())},
                {"g0", complex_json(chain.initial_constant())}};
  put_real(r, "residual", residual);
  json check;
  check["radius"] = radius;
  check["step"] = step;
  check["points"] = grid.size();
  put_real(check, "max_modulus", top);
  put_real(check, "max_intermediate_level", max_intermediate_level<double>(chain, grid));
  check["within_unit_disc"] = top <= 1 + 1e-12;
  r["grid_check"] = std::move(check);
  return r;
}

json cmd_denjoy(const Settings&, const Problem& p, json&) {
  const auto res = denjoy_sum<double>(p.nodes, require_values(p, "denjoy"));
  json r;
  r["partial_sums"] = res.partial_sums;
  r["saturated"] = res.saturated;
  r["saturated_at"] = res.saturated_at;
  return r;
}

json cmd_density(const Settings& s, const Problem& p, json&) {
  return fit_json(fit_density(p.nodes, s.depth, alpha_grid_of(s)));
}

json cmd_analyze(const Settings& s, const Problem& p, json&) {
  OrderCheckOptions opt;
  opt.n = s.order;
  opt.eta_target = s.eta;
  opt.depth = s.depth;
  opt.alpha_grid = alpha_grid_of(s);
  if (s.has_grid_radius) opt.probe_radius = s.grid_radius;
  if (s.has_grid_step) opt.probe_step = s.grid_step;
  const auto rep = order_check(p.nodes, opt);

  json r;
  r["order"] = s.order;
  r["eta_target"] = s.eta;
  put_real(r, "separation_eta", rep.separation_eta);
  r["parts"] = rep.parts;
  r["part_count"] = rep.part_count;
  r["clique_lower_bound"] = rep.clique_lower_bound;
  r["separation_condition"] = to_string(rep.separation_condition);
  put_real(r, "carleson_M", rep.carleson_M);
  r["carleson_alpha"] = rep.carleson_alpha;
  r["density_condition"] = to_string(rep.density_condition);
  r["fit"] = fit_json(rep.fit);
  if (rep.density) {
    json d;
    put_real(d, "R", rep.density->R);
    d["probe_radius"] = rep.density->probe_radius;
    d["grid_step"] = rep.density->grid_step;
    d["probes"] = rep.density->probes;
    d["worst_probe"] = complex_json(rep.density->worst_probe);
    r["density"] = std::move(d);
  } else {
    r["density"] = nullptr;
  }
  return r;
}

json cmd_sampling(const Settings& s, const Problem& p, json& report) {
  const std::uint64_t seed = require_seed(s, "the test family is random");
  if (s.count < 1) throw InvalidInput("--count must be at least 1");
  const auto family = make_test_family(seed, s.count, s.max_degree);
  std::vector<SelfMap<double>> maps;
  maps.reserve(family.size());
  for (const auto& f : family) maps.push_back(f.as_map());
  CapacityOptions grid;
  if (s.has_grid_radius) grid.grid_radius = s.grid_radius;
  if (s.has_grid_step) grid.grid_step = s.grid_step;
  const auto rep = sampling_constant(p.nodes, maps, grid);

  json r;
  put_real(r, "c_estimate", rep.c_estimate);
  put_real(r, "n_of_f", rep.n_of_f);
  put_real(r, "sup_ratio", rep.sup_ratio);
  r["ratio_witness"] = {rep.ratio_witness.first, rep.ratio_witness.second};
  r["minimizer"] = rep.minimizer;
  r["family_size"] = rep.family_size;
  r["family"] = {{"seed", seed}, {"count", s.count}, {"max_degree", s.max_degree}};
  r["grid"] = {{"radius", rep.grid.grid_radius}, {"step", rep.grid.grid_step}};
  json members = json::array();
  for (const auto& m : rep.members) {
    json e;
    e["index"] = m.index;
    e["label"] = m.label;
    put_real(e, "capacity", m.capacity);
    put_real(e, "sup_ratio", m.sup_ratio);
    e["witness"] = {m.witness.first, m.witness.second};
    e["excluded"] = m.excluded;
    members.push_back(std::move(e));
  }
  r["members"] = std::move(members);
  for (const auto& wmsg : rep.warnings) report["warnings"].push_back(wmsg);
  return r;
}

json cmd_stress(const Settings& s, const Problem& p, json&) {
  const auto st = necessity_stress(p.nodes, s.eps, s.C);
  const std::size_t n = p.nodes.size() - 1;

  json r;
  r["eps"] = s.eps;
  r["C"] = s.C;
  r["values"] = complex_list(st.values);
  r["order"] = st.order;
  r["special"] = st.special;
  r["excluded"] = st.excluded;
  r["x"] = complex_json(st.x);
  put_real(r, "product_bound", st.product_bound);

  SweepOptions opt;
  opt.subset_size = n;
  json sub;
  sub["subset_size"] = n;
  sub["bound"] = s.C * s.eps;
  if (n >= 2) {
    const auto rep = epsilon_of<double>(p.nodes, st.values, opt);
    put_real(sub, "epsilon_min", rep.epsilon_min);
    sub["witness"] = witness_json(rep.worst_witness);
    sub["subsets_checked"] = rep.subsets_checked;
    sub["permutations_checked"] = rep.permutations_checked;
    sub["exhaustive"] = rep.exhaustive;
    sub["passes"] = rep.epsilon_min <= s.C * s.eps;
  } else {
    sub["epsilon_min"] = 0.0;
    sub["witness"] = nullptr;
    sub["subsets_checked"] = p.nodes.size();
    sub["permutations_checked"] = p.nodes.size();
    sub["exhaustive"] = true;
    sub["passes"] = true;
  }
  r["subsets"] = std::move(sub);

  std::vector<cplx> zs, ws;
  for (const std::size_t i : st.order) {
    zs.push_back(p.nodes[i]);
    ws.push_back(st.values[i]);
  }
  r["full_problem"] = verdict_json(solvability<double>(zs, ws));
  return r;
}

json cmd_audit(const Settings& s, const Problem& p, json&) {
  const auto& w = require_values(p, "audit");
  const auto verdict = solvability<double>(p.nodes, w);
  if (verdict.status != Solvability::InfinitelyMany)
    throw Refused{to_string(verdict.status), "f1 is built by the Schur recursion, which needs strictly solvable data"};
  const auto chain = schur_solve<double>(p.nodes, w);
  F1AuditOptions opt;
  if (s.has_grid_radius) opt.grid_radius = s.grid_radius;
  if (s.has_grid_step) opt.grid_step = s.grid_step;
  const auto a = audit_f1_properties(chain.as_map(), p.nodes, s.eta1, s.eps, opt);

  json r;
  r["f1"] = {{"kind", "schur_chain"}, {"diagonal", complex_list(chain.diagonal())}};
  r["eta1"] = s.eta1;
  r["eps"] = s.eps;
  put_real(r, "prop1_constant", a.prop1_constant);
  r["prop1_argmin"] = complex_json(a.prop1_argmin);
  put_real(r, "prop2_constant", a.prop2_constant);
  r["prop2_argmax"] = complex_json(a.prop2_argmax);
  r["prop1_points"] = a.prop1_points;
  r["prop2_points"] = a.prop2_points;
  r["excluded_points"] = a.excluded_points;
  r["grid"] = {{"radius", opt.grid_radius}, {"step", opt.grid_step}, {"local_step", opt.local_step}};
  return r;
}

void write_csv(const std::string& path, const std::string& command, const json& results) {
  std::ostringstream os;
  if (command == "density" || command == "analyze") {
    const json& fit = command == "density" ? results : results["fit"];
    os << "alpha,M,admissible\n";
    for (std::size_t i = 0; i < fit["alpha_grid"].size(); ++i)
      os << fit["alpha_grid"][i].dump() << ',' << fit["M_by_alpha"][i].dump() << ','
         << (fit["admissible_by_alpha"][i].get<bool>() ? 1 : 0) << '\n';
  } else if (command == "sampling") {
    os << "index,capacity,sup_ratio,excluded\n";
    for (const auto& m : results["members"])
      os << m["index"].dump() << ',' << m["capacity"].dump() << ',' << m["sup_ratio"].dump() << ','
         << (m["excluded"].get<bool>() ? 1 : 0) << '\n';
  } else if (command == "denjoy") {
    os << "n,partial_sum\n";
    for (std::size_t i = 0; i < results["partial_sums"].size(); ++i)
      os << i + 1 << ',' << results["partial_sums"][i].dump() << '\n';
  } else {
    throw InvalidInput("--csv: no plot data for command " + command);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("--csv: cannot open " + path);
  f << os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open problem file " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// Flags that only choose where output goes do not enter the digest.
std::string digest_input(const std::string& file, const std::vector<std::string>& args) {
  std::string canon = file;
  canon.push_back('\0');
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--out" || a == "--csv") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--csv=", 0) == 0) continue;
    canon += a;
    canon.push_back('\0');
  }
  return fnv1a_hex(canon);
}

void emit(const Settings& s, const json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out_path, std::ios::binary);
  if (!f) throw InvalidInput("--out: cannot open " + s.out_path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Hyperbolic Nevanlinna-Pick interpolation toolkit", "hyperpick"};
  app.require_subcommand(1);
  app.add_option("--out", s.out_path, "Write the report here instead of standard output");
  app.add_option("--csv", s.csv_path, "Write plot data as CSV");
  auto* seed = app.add_option("--seed", s.seed, "Seed for randomized commands");
  auto* radius = app.add_option("--grid-radius", s.grid_radius, "Hyperbolic radius of audit grids")
                     ->check(CLI::PositiveNumber);
  auto* step = app.add_option("--grid-step", s.grid_step, "Hyperbolic spacing of audit grids")
                   ->check(CLI::PositiveNumber);
  app.add_option("--alpha-grid", s.alpha_grid, "Comma-separated density exponents")->delimiter(',');
  app.add_option("--depth", s.depth, "Carleson layer depth")->check(CLI::PositiveNumber);
  app.add_option("--permutations", s.permutations, "all, or a number of sampled orderings");
  app.add_option("--eps", s.eps, "Interpolation constant")->check(CLI::PositiveNumber);
  app.add_option("--C", s.C, "Stress constant in (0, 1)");
  app.add_option("--order", s.order, "Number of separated parts allowed")->check(CLI::PositiveNumber);
  app.add_option("--eta", s.eta, "Target separation of each part")->check(CLI::PositiveNumber);
  app.add_option("--eta1", s.eta1, "Radius of the local audit discs")->check(CLI::PositiveNumber);
  app.add_option("--count", s.count, "Size of the sampling test family");
  app.add_option("--max-degree", s.max_degree, "Largest degree in the sampling test family");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"triangle", "Triangle of hyperbolic difference quotients and compatibility sweep"},
      {"solve", "Schur-chain interpolant for strictly solvable data"},
      {"solvable", "Solvability verdict from the triangle and the Pick matrix"},
      {"denjoy", "Partial sums of the Denjoy series"},
      {"analyze", "Separation and density audit of a node sequence"},
      {"density", "Carleson layer density fit"},
      {"sampling", "Sampling constant against a seeded test family"},
      {"stress", "Necessity stress case on a small cluster"},
      {"audit", "Audit of the assembly properties of a Schur-chain f1"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("problem", s.problem_path, "Problem file (JSON)")->required();
    sub->callback([&s, n = std::string(name)] { s.command = n; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  s.has_seed = seed->count() > 0;
  s.has_grid_radius = radius->count() > 0;
  s.has_grid_step = step->count() > 0;

  try {
    const std::string text = read_file(s.problem_path);
    const Problem problem = parse_problem(text);
    json report = make_report(s.command, digest_input(text, args));
    json results;
    try {
      if (s.command == "triangle") results = cmd_triangle(s, problem, report);
      else if (s.command == "solve") results = cmd_solve(s, problem, report);
      else if (s.command == "solvable") results = cmd_solvable(s, problem, report);
      else if (s.command == "denjoy") results = cmd_denjoy(s, problem, report);
      else if (s.command == "analyze") results = cmd_analyze(s, problem, report);
      else if (s.command == "density") results = cmd_density(s, problem, report);
      else if (s.command == "sampling") results = cmd_sampling(s, problem, report);
      else if (s.command == "stress") results = cmd_stress(s, problem, report);
      else results = cmd_audit(s, problem, report);
    } catch (const Refused& r) {
      report["results"] = {{"refused", true}, {"verdict", r.verdict}, {"message", r.message}};
      emit(s, report, out);
      err << "refused: " << r.message << " (" << r.verdict << ")\n";
      return kRefused;
    } catch (const InvalidInput&) {
      throw;
    } catch (const Error& e) {
      report["results"] = {{"refused", true}, {"verdict", "numerical"}, {"message", e.what()}};
      emit(s, report, out);
      err << "refused: " << e.what() << "\n";
      return kRefused;
    }
    report["results"] = std::move(results);
    if (!s.csv_path.empty()) write_csv(s.csv_path, s.command, report["results"]);
    emit(s, report, out);
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace hyperpick::cli
