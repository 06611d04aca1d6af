#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"
#include "hyperpick/quotients.hpp"
#include "hyperpick/self_map.hpp"

namespace hyperpick {

/// Half-width of the band around modulus 1 that is classified Boundary.
template <typename T>
inline constexpr T kDegeneracyBand = T(1e-6);

/// Smallest Pick eigenvalue still accepted as positive semidefinite.
template <typename T>
inline constexpr T kPickTolerance = T(-1e-10);

enum class Solvability { InfinitelyMany, Boundary, Unsolvable };

inline std::string to_string(Solvability s) {
  switch (s) {
    case Solvability::InfinitelyMany: return "InfinitelyMany";
    case Solvability::Boundary: return "Boundary";
    case Solvability::Unsolvable: return "Unsolvable";
  }
  return "?";
}

template <typename T>
struct PickResult {
  bool is_psd = false;
  T min_eigenvalue = 0;
};

/// Pick matrix ((1 - w_i conj(w_j)) / (1 - z_i conj(z_j))).
template <typename T>
Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic> pick_matrix(
    std::span<const Complex<T>> nodes, std::span<const Complex<T>> values) {
  detail::require_distinct<T>(nodes);
  detail::require_values<T>(nodes, values);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic> p(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      p(i, j) = (T(1) - values[i] * std::conj(values[j])) / (T(1) - nodes[i] * std::conj(nodes[j]));
  return p;
}

template <typename T>
PickResult<T> pick_psd(std::span<const Complex<T>> nodes, std::span<const Complex<T>> values) {
  const auto p = pick_matrix(nodes, values);
  if (p.rows() == 0) return {true, T(0)};
  Eigen::SelfAdjointEigenSolver<std::decay_t<decltype(p)>> solver(p, Eigen::EigenvaluesOnly);
  const T lambda = solver.eigenvalues().minCoeff();
  return {lambda >= kPickTolerance<T>, lambda};
}

template <typename T>
struct SolvabilityVerdict {
  Solvability status = Solvability::Unsolvable;
  bool diagonal_strict = false;     ///< |Delta^k_{k+1}| < 1 for every k >= 1
  bool all_entries_strict = false;  ///< |Delta^k_j| < 1 for every k >= 1
  bool pick_psd = false;
  T margin = 0;                     ///< min over computed entries of 1 - |entry|
  T max_modulus = 0;                ///< max over computed entries, orders 0..n-1
  T pick_min_eigenvalue = 0;
};

/// Classifies a finite problem by the triangle, cross-checked against the
/// diagonal criterion and the Pick matrix.
template <typename T>
SolvabilityVerdict<T> solvability(std::span<const Complex<T>> nodes,
                                  std::span<const Complex<T>> values) {
  const auto tri = build_triangle<T>(nodes, values);
  SolvabilityVerdict<T> v;
  const std::size_t n = tri.size();
  v.diagonal_strict = true;
  v.all_entries_strict = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k; j < n; ++j) {
      const EntryState s = tri.state(k, j);
      if (k >= 1 && s != EntryState::Ok) {
        v.all_entries_strict = false;
        if (j == k) v.diagonal_strict = false;
      }
      if (s != EntryState::Poisoned) v.max_modulus = std::max(v.max_modulus, std::abs(tri.entry(k, j)));
    }
  v.margin = T(1) - v.max_modulus;
  const auto pick = pick_psd(nodes, values);
  v.pick_psd = pick.is_psd;
  v.pick_min_eigenvalue = pick.min_eigenvalue;
  if (v.max_modulus < T(1) - kDegeneracyBand<T>)
    v.status = Solvability::InfinitelyMany;
  else if (v.max_modulus <= T(1) + kDegeneracyBand<T>)
    v.status = Solvability::Boundary;
  else
    v.status = Solvability::Unsolvable;
  return v;
}

/// Interpolant produced by the Schur recursion
///   g_k(z) = [[z, z_{n+1-k}] g_{k-1}(z), Delta^{n-k}_{n+1-k}],  k = 1..n,
/// started from the constant g_0. Nodes and diagonal are stored in problem
/// order; evaluation walks them from the last node back to the first.
template <typename T>
class SchurChain {
 public:
  SchurChain(std::vector<Complex<T>> nodes, std::vector<Complex<T>> diagonal, Complex<T> g0 = {})
      : nodes_(std::move(nodes)), diagonal_(std::move(diagonal)), g0_(g0) {
    if (nodes_.size() != diagonal_.size())
      throw InvalidInput("chain needs one diagonal parameter per node");
    if (std::abs(g0_) > T(1)) throw InvalidInput("initial function must map into the disc");
  }

  const std::vector<Complex<T>>& nodes() const noexcept { return nodes_; }
  /// diagonal()[k] is the order-k quotient of row k (zero-based).
  const std::vector<Complex<T>>& diagonal() const noexcept { return diagonal_; }
  const Complex<T>& initial_constant() const noexcept { return g0_; }
  std::string initial_tag() const {
    std::ostringstream os;
    os << "constant " << g0_;
    return os.str();
  }

  Complex<T> operator()(const Complex<T>& z) const {
    Complex<T> g = g0_;
    for (std::size_t level = nodes_.size(); level-- > 0;)
      g = mobius_bracket(mobius_bracket(z, nodes_[level]) * g, diagonal_[level]);
    return g;
  }

  /// g_0(z), g_1(z), ..., g_n(z); g_{n-k} equals Delta^k g(z).
  std::vector<Complex<T>> levels(const Complex<T>& z) const {
    std::vector<Complex<T>> out{g0_};
    Complex<T> g = g0_;
    for (std::size_t level = nodes_.size(); level-- > 0;) {
      g = mobius_bracket(mobius_bracket(z, nodes_[level]) * g, diagonal_[level]);
      out.push_back(g);
    }
    return out;
  }

  /// Forward-mode derivative of the recursion.
  Complex<T> derivative(const Complex<T>& z) const {
    Complex<T> g = g0_, dg{};
    for (std::size_t level = nodes_.size(); level-- > 0;) {
      const Complex<T>& a = nodes_[level];
      const Complex<T>& d = diagonal_[level];
      const Complex<T> den_a = T(1) - std::conj(a) * z;
      const Complex<T> b = (a - z) / den_a;
      const Complex<T> db = (std::norm(a) - T(1)) / (den_a * den_a);
      const Complex<T> u = b * g;
      const Complex<T> du = db * g + b * dg;
      const Complex<T> den_d = T(1) - std::conj(d) * u;
      g = (d - u) / den_d;
      dg = du * (std::norm(d) - T(1)) / (den_d * den_d);
    }
    return dg;
  }

  SelfMap<T> as_map() const {
    const auto self = *this;
    return {[self](const Complex<T>& z) { return self(z); },
            [self](const Complex<T>& z) { return self.derivative(z); }, "Schur chain"};
  }

 private:
  std::vector<Complex<T>> nodes_;
  std::vector<Complex<T>> diagonal_;
  Complex<T> g0_;
};

template <typename T>
Complex<T> eval_chain(const SchurChain<T>& chain, const Complex<T>& z) {
  return chain(z);
}

/// Builds the Schur chain for strictly solvable data; refuses otherwise.
template <typename T>
SchurChain<T> schur_solve(std::span<const Complex<T>> nodes, std::span<const Complex<T>> values,
                          Complex<T> g0 = {}) {
  const auto verdict = solvability(nodes, values);
  if (verdict.status != Solvability::InfinitelyMany) {
    std::ostringstream os;
    os << "data are not strictly solvable (verdict " << to_string(verdict.status)
       << ", max quotient modulus " << verdict.max_modulus << ")";
    throw Refusal(os.str(), to_string(verdict.status));
  }
  const auto tri = build_triangle<T>(nodes, values);
  return SchurChain<T>({nodes.begin(), nodes.end()}, tri.diagonal(), g0);
}

/// Largest |g_k(z)| over 1 <= k <= n-1 and the given points.
template <typename T>
T max_intermediate_level(const SchurChain<T>& chain, std::span<const Complex<T>> points) {
  T best = 0;
  for (const auto& z : points) {
    const auto lv = chain.levels(z);
    for (std::size_t k = 1; k + 1 < lv.size(); ++k) best = std::max(best, std::abs(lv[k]));
  }
  return best;
}

template <typename T>
struct DenjoyResult {
  std::vector<T> partial_sums;  ///< partial_sums[m-1] = sum over the first m terms
  bool saturated = false;
  std::size_t saturated_at = 0;  ///< one-based index of the first saturated term, 0 if none
};

/// Partial sums of sum_n (1 - |z_n|) / (1 - |Delta^{n-1}_n|), stopping at the
/// first diagonal quotient of modulus >= 1 - 1e-12.
template <typename T>
DenjoyResult<T> denjoy_sum(std::span<const Complex<T>> nodes, std::span<const Complex<T>> values) {
  if (nodes.size() < 2) throw InvalidInput("the Denjoy sum needs at least 2 nodes");
  const auto tri = build_triangle<T>(nodes, values);
  DenjoyResult<T> out;
  T sum = 0;
  for (std::size_t m = 0; m < tri.size(); ++m) {
    if (tri.state(m, m) != EntryState::Ok) {
      out.saturated = true;
      out.saturated_at = m + 1;
      break;
    }
    sum += (T(1) - std::abs(nodes[m])) / (T(1) - std::abs(tri.entry(m, m)));
    out.partial_sums.push_back(sum);
  }
  return out;
}

}  // namespace hyperpick
