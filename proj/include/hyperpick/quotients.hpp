#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"
#include "hyperpick/random.hpp"
#include "hyperpick/self_map.hpp"

namespace hyperpick {

/// Entries with modulus >= 1 - kSaturation are flagged saturated.
template <typename T>
inline constexpr T kSaturation = T(1e-12);

enum class EntryState : unsigned char {
  Ok,         ///< computed, modulus < 1 - kSaturation
  Saturated,  ///< computed, modulus >= 1 - kSaturation
  Poisoned,   ///< not computed: a parent is saturated or poisoned, or a bracket blew up
};

namespace detail {

template <typename T>
void require_distinct(std::span<const Complex<T>> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(std::abs(nodes[i]) < T(1) - kDiscMargin<T>)) {
      std::ostringstream os;
      os << "node " << i << " = " << nodes[i] << " is not strictly inside the unit disc";
      throw InvalidInput(os.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (pseudo_dist(nodes[i], nodes[j]) <= T(8) * std::numeric_limits<T>::epsilon()) {
        std::ostringstream os;
        os << "nodes " << j << " and " << i << " coincide";
        throw DegenerateNodes(os.str());
      }
    }
  }
}

template <typename T>
void require_values(std::span<const Complex<T>> nodes, std::span<const Complex<T>> values) {
  if (nodes.size() != values.size()) throw InvalidInput("nodes and values differ in length");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(std::abs(values[i]) <= T(1) + kSaturation<T>)) {
      std::ostringstream os;
      os << "value " << i << " = " << values[i] << " lies outside the closed unit disc";
      throw InvalidInput(os.str());
    }
  }
}

}  // namespace detail

/// Triangle of hyperbolic difference quotients for an ordered node/value list.
///
/// Indexing is zero-based: entry(k, j) is defined for 0 <= k <= j < n, with
/// entry(0, j) = w_j and
///   entry(k, j) = [entry(k-1, j), entry(k-1, k-1)] / [z_j, z_{k-1}].
/// In one-based notation entry(k, j) is the quotient of order k in row j + 1,
/// and the diagonal entry(k, k) is the order-k quotient of row k + 1.
template <typename T>
class QuotientTriangle {
 public:
  using Scalar = Complex<T>;

  QuotientTriangle(std::vector<Scalar> nodes, std::vector<Scalar> values)
      : nodes_(std::move(nodes)) {
    detail::require_distinct<T>(nodes_);
    detail::require_values<T>(nodes_, values);
    const auto n = static_cast<Eigen::Index>(nodes_.size());
    entries_ = Matrix::Zero(n, n);
    states_.assign(nodes_.size() * nodes_.size(), EntryState::Poisoned);
    for (Eigen::Index j = 0; j < n; ++j) set(0, j, values[j]);
    for (Eigen::Index k = 1; k < n; ++k) {
      const std::size_t pivot = k - 1;
      for (Eigen::Index j = k; j < n; ++j) {
        if (state(k - 1, j) != EntryState::Ok || state(k - 1, pivot) != EntryState::Ok) continue;
        const Scalar a = entries_(j, k - 1), b = entries_(pivot, k - 1);
        const Scalar num_den = T(1) - std::conj(b) * a;
        if (std::abs(num_den) <= std::numeric_limits<T>::min()) continue;
        set(k, j, mobius_bracket(a, b) / mobius_bracket(nodes_[j], nodes_[pivot]));
      }
    }
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Scalar>& nodes() const noexcept { return nodes_; }

  Scalar entry(std::size_t k, std::size_t j) const {
    check(k, j);
    if (states_[index(k, j)] == EntryState::Poisoned)
      return Scalar(std::numeric_limits<T>::quiet_NaN(), std::numeric_limits<T>::quiet_NaN());
    return entries_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }
  EntryState state(std::size_t k, std::size_t j) const {
    check(k, j);
    return states_[index(k, j)];
  }
  bool saturated(std::size_t k, std::size_t j) const { return state(k, j) != EntryState::Ok; }

  /// entry(k, k) for k = 0..n-1; NaN where poisoned.
  std::vector<Scalar> diagonal() const {
    std::vector<Scalar> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back(entry(k, k));
    return out;
  }

  /// Largest modulus over computed entries of order >= 1 (0 when n < 2).
  T max_modulus() const {
    T best = 0;
    for (std::size_t k = 1; k < size(); ++k)
      for (std::size_t j = k; j < size(); ++j)
        if (state(k, j) != EntryState::Poisoned) best = std::max(best, std::abs(entry(k, j)));
    return best;
  }

  /// True when some entry of order >= 1 is not strictly inside the disc.
  bool any_saturated(std::size_t min_order = 1) const {
    for (std::size_t k = min_order; k < size(); ++k)
      for (std::size_t j = k; j < size(); ++j)
        if (state(k, j) != EntryState::Ok) return true;
    return false;
  }

  /// Lower-triangular matrix of entries: row j, column k holds entry(k, j).
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix& raw() const noexcept { return entries_; }

 private:
  std::size_t index(std::size_t k, std::size_t j) const { return j * nodes_.size() + k; }
  void check(std::size_t k, std::size_t j) const {
    if (!(k <= j && j < nodes_.size())) throw std::out_of_range("triangle index out of range");
  }
  void set(Eigen::Index k, Eigen::Index j, const Scalar& v) {
    entries_(j, k) = v;
    states_[index(k, j)] = std::abs(v) >= T(1) - kSaturation<T> ? EntryState::Saturated
                                                               : EntryState::Ok;
  }

  std::vector<Scalar> nodes_;
  Matrix entries_;
  std::vector<EntryState> states_;
};

template <typename T>
QuotientTriangle<T> build_triangle(std::span<const Complex<T>> nodes,
                                   std::span<const Complex<T>> values) {
  return QuotientTriangle<T>({nodes.begin(), nodes.end()}, {values.begin(), values.end()});
}

/// Quotients of order 0..k of a function over fixed base nodes.
///
/// Precomputes the anchors Delta^m f(z_{m+1}; z_1..z_m) once, after which
/// each evaluation costs k brackets. At a base node the quotient is a limit,
/// obtained by Richardson extrapolation along z + h u, h = 1e-3, 1e-4, 1e-5.
template <typename T>
class FunctionQuotients {
 public:
  /// Points closer than this to a base node take the limit branch.
  static constexpr T kDiagonalTolerance = T(1e-9);

  FunctionQuotients(SelfMap<T> f, std::vector<Complex<T>> base)
      : f_(std::move(f)), base_(std::move(base)) {
    detail::require_distinct<T>(base_);
    anchors_.reserve(base_.size());
    for (std::size_t m = 0; m < base_.size(); ++m) anchors_.push_back(evaluate(base_[m], m));
  }

  const std::vector<Complex<T>>& base() const noexcept { return base_; }

  /// Delta^k f(z; z_1, ..., z_k), k <= base().size().
  Complex<T> operator()(const Complex<T>& z, std::size_t k) const {
    if (k > base_.size()) throw InvalidInput("quotient order exceeds the number of base nodes");
    return evaluate(z, k);
  }

 private:
  Complex<T> evaluate(const Complex<T>& z, std::size_t k) const {
    Complex<T> a = f_(z);
    for (std::size_t m = 0; m < k; ++m) {
      if (std::abs(z - base_[m]) < kDiagonalTolerance)
        a = diagonal_limit(m);
      else
        a = mobius_bracket(a, anchors_[m]) / mobius_bracket(z, base_[m]);
    }
    return a;
  }

  // lim_{u -> z_m} [Delta^m f(u), anchor_m] / [u, z_m].
  Complex<T> diagonal_limit(std::size_t m) const {
    const Complex<T> node = base_[m];
    const Complex<T> dir = std::abs(node) > T(0.5) ? -node / std::abs(node) : Complex<T>(1);
    std::array<Complex<T>, 3> q;
    T h = T(1e-3);
    for (auto& qi : q) {
      const Complex<T> u = node + h * dir;
      qi = mobius_bracket(evaluate(u, m), anchors_[m]) / mobius_bracket(u, node);
      h /= T(10);
    }
    const Complex<T> r10 = (T(10) * q[1] - q[0]) / T(9);
    const Complex<T> r11 = (T(10) * q[2] - q[1]) / T(9);
    const Complex<T> r2 = (T(100) * r11 - r10) / T(99);
    if (!(std::abs(r2 - r11) <= T(1e-6) * std::max(T(1), std::abs(r2)))) {
      std::ostringstream os;
      os << "diagonal limit at base node " << m << " did not converge (" << r11 << " vs " << r2
         << ")";
      throw LimitDivergence(os.str());
    }
    return r2;
  }

  SelfMap<T> f_;
  std::vector<Complex<T>> base_;
  std::vector<Complex<T>> anchors_;
};

template <typename T>
Complex<T> delta_k_of_function(const SelfMap<T>& f, std::span<const Complex<T>> base_nodes,
                               const Complex<T>& z, std::size_t k) {
  if (k > base_nodes.size()) throw InvalidInput("quotient order exceeds the number of base nodes");
  return FunctionQuotients<T>(f, {base_nodes.begin(), base_nodes.begin() + k})(z, k);
}

/// max over computed triangle entries of |entry(k, j) - Delta^k f(z_j; z_1..z_k)|
/// for the data w_j = f(z_j).
template <typename T>
T verify_estab(const SelfMap<T>& f, std::span<const Complex<T>> nodes) {
  std::vector<Complex<T>> values;
  for (const auto& z : nodes) values.push_back(f(z));
  const auto tri = build_triangle<T>(nodes, values);
  const FunctionQuotients<T> fq(f, {nodes.begin(), nodes.end()});
  T worst = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (std::size_t j = k; j < nodes.size(); ++j) {
      if (tri.state(k, j) == EntryState::Poisoned) continue;
      worst = std::max(worst, std::abs(tri.entry(k, j) - fq(nodes[j], k)));
    }
  return worst;
}

/// Visits permutations of 0..n-1: all n! in lexicographic order when n! <= budget,
/// otherwise `budget` seeded uniform draws (the first one is the identity).
/// Returns true when the sweep was exhaustive.
template <typename Visitor>
bool for_each_permutation(std::size_t n, std::size_t budget, std::uint64_t seed, Visitor&& visit) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) factorial *= double(i);
  if (factorial <= double(budget)) {
    std::size_t id = 0;
    do {
      if (!visit(perm, id++)) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  }
  Rng rng(seed);
  for (std::size_t id = 0; id < budget; ++id) {
    if (id > 0) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    if (!visit(perm, id)) break;
  }
  return false;
}

/// Witness of the largest compatibility ratio.
struct CompatibilityWitness {
  std::size_t order = 0;          ///< k
  std::size_t row_i = 0;          ///< zero-based rows within the permuted subset
  std::size_t row_j = 0;
  std::size_t permutation_id = 0;
  std::vector<std::size_t> nodes;  ///< original node indices, in permuted order
};

template <typename T>
struct CompatibilityReport {
  T epsilon_min = 0;  ///< +inf when a saturated entry entered a ratio
  std::optional<CompatibilityWitness> worst_witness;
  std::size_t permutations_checked = 0;
  std::size_t subsets_checked = 0;
  bool exhaustive = true;
};

struct SweepOptions {
  std::size_t subset_size = 0;  ///< 0 means all nodes
  std::size_t permutation_budget = 10000;
  std::uint64_t seed = 0x5eedULL;
};

namespace detail {

/// Calls visit(indices) for every size-m subset of 0..n-1 in lexicographic order.
template <typename Visitor>
void for_each_subset(std::size_t n, std::size_t m, Visitor&& visit) {
  if (m > n) return;
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    visit(std::as_const(idx));
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Largest ratio beta(entry(k, i), entry(k, j)) / beta(z_i, z_j) over orders
/// k = 0..m-2 and rows k <= i < j < m, for every size-m subset and the swept
/// permutations of it.
template <typename T>
CompatibilityReport<T> epsilon_of(std::span<const Complex<T>> nodes,
                                  std::span<const Complex<T>> values, SweepOptions opt = {}) {
  detail::require_distinct<T>(nodes);
  detail::require_values<T>(nodes, values);
  const std::size_t m = opt.subset_size == 0 ? nodes.size() : opt.subset_size;
  if (m > nodes.size()) throw InvalidInput("subset size exceeds the number of nodes");
  CompatibilityReport<T> report;
  std::vector<Complex<T>> zs(m), ws(m);
  detail::for_each_subset(nodes.size(), m, [&](const std::vector<std::size_t>& subset) {
    ++report.subsets_checked;
    const bool exhaustive = for_each_permutation(
        m, opt.permutation_budget, opt.seed, [&](const std::vector<std::size_t>& perm, std::size_t id) {
          ++report.permutations_checked;
          for (std::size_t r = 0; r < m; ++r) {
            zs[r] = nodes[subset[perm[r]]];
            ws[r] = values[subset[perm[r]]];
          }
          const QuotientTriangle<T> tri(zs, ws);
          for (std::size_t k = 0; k + 2 <= m; ++k)
            for (std::size_t i = k; i < m; ++i)
              for (std::size_t j = i + 1; j < m; ++j) {
                T ratio;
                if (tri.saturated(k, i) || tri.saturated(k, j))
                  ratio = std::numeric_limits<T>::infinity();
                else
                  ratio = hyp_dist(tri.entry(k, i), tri.entry(k, j)) / hyp_dist(zs[i], zs[j]);
                if (ratio > report.epsilon_min || !report.worst_witness) {
                  report.epsilon_min = std::max(report.epsilon_min, ratio);
                  std::vector<std::size_t> order(m);
                  for (std::size_t r = 0; r < m; ++r) order[r] = subset[perm[r]];
                  report.worst_witness = CompatibilityWitness{k, i, j, id, std::move(order)};
                }
              }
          return true;
        });
    report.exhaustive = report.exhaustive && exhaustive;
  });
  return report;
}

template <typename T>
struct ColumnCheck {
  bool passes = true;
  T worst_modulus = 0;  ///< largest |entry| of order >= 1 seen; inf if poisoned
  std::optional<CompatibilityWitness> witness;  ///< first failing entry
  std::size_t permutations_checked = 0;
  bool exhaustive = true;
};

/// True iff |entry(k, j)| <= eps for every k >= 1 in every swept permutation.
/// With opt.permutation_budget == 1 only the given order is checked.
template <typename T>
ColumnCheck<T> column_condition_check(std::span<const Complex<T>> nodes,
                                      std::span<const Complex<T>> values, T eps,
                                      SweepOptions opt = {}) {
  detail::require_distinct<T>(nodes);
  detail::require_values<T>(nodes, values);
  const std::size_t m = opt.subset_size == 0 ? nodes.size() : opt.subset_size;
  if (m > nodes.size()) throw InvalidInput("subset size exceeds the number of nodes");
  ColumnCheck<T> out;
  std::vector<Complex<T>> zs(m), ws(m);
  detail::for_each_subset(nodes.size(), m, [&](const std::vector<std::size_t>& subset) {
    const auto sweep = [&](const std::vector<std::size_t>& perm, std::size_t id) {
      ++out.permutations_checked;
      for (std::size_t r = 0; r < m; ++r) {
        zs[r] = nodes[subset[perm[r]]];
        ws[r] = values[subset[perm[r]]];
      }
      const QuotientTriangle<T> tri(zs, ws);
      for (std::size_t k = 1; k < m; ++k)
        for (std::size_t j = k; j < m; ++j) {
          const T mod = tri.state(k, j) == EntryState::Poisoned
                            ? std::numeric_limits<T>::infinity()
                            : std::abs(tri.entry(k, j));
          out.worst_modulus = std::max(out.worst_modulus, mod);
          if (!(mod <= eps) && out.passes) {
            out.passes = false;
            std::vector<std::size_t> order(m);
            for (std::size_t r = 0; r < m; ++r) order[r] = subset[perm[r]];
            out.witness = CompatibilityWitness{k, k, j, id, std::move(order)};
          }
        }
      return true;
    };
    if (opt.permutation_budget <= 1) {
      std::vector<std::size_t> identity(m);
      std::iota(identity.begin(), identity.end(), std::size_t{0});
      sweep(identity, 0);
      out.exhaustive = out.exhaustive && m <= 1;
    } else {
      out.exhaustive = for_each_permutation(m, opt.permutation_budget, opt.seed, sweep) &&
                       out.exhaustive;
    }
  });
  return out;
}

}  // namespace hyperpick
