#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "costone/base.hpp"

namespace costone {

enum class Kind { bounded_lattice, residuated_lattice };

/// Square table of element indices, row-major.
struct OpTable {
  int n = 0;
  std::vector<int> cells;

  OpTable() = default;
  explicit OpTable(int size, int fill = 0)
      : n(size), cells(static_cast<std::size_t>(size) * size, fill) {}

  int operator()(int a, int b) const {
    return cells[static_cast<std::size_t>(a) * n + b];
  }
  int& at(int a, int b) { return cells[static_cast<std::size_t>(a) * n + b]; }
  bool empty() const { return n == 0; }
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A finite bounded lattice (kind == bounded_lattice) or a finite commutative
/// residuated lattice (kind == residuated_lattice) on carrier 0..n-1.
///
/// Instances are immutable after construction and only ever handed out behind
/// shared_ptr<const Algebra>; every operation in the kit is a pure function,
/// so algebras can be shared freely across threads.
class Algebra {
 public:
  Kind kind = Kind::bounded_lattice;
  int n = 0;
  std::string name;                 // display only
  std::vector<std::string> labels;  // display only, never used in semantics
  OpTable join_table, meet_table;
  OpTable times_table, implies_table;  // empty for bounded_lattice kind
  int bottom = 0, top = 0;
  bool distributive = false;  // verified at construction
  std::vector<uint8_t> leq_table;  // derived from join

  bool is_residuated() const { return kind == Kind::residuated_lattice; }

  bool leq(int a, int b) const {
    return leq_table[static_cast<std::size_t>(a) * n + b] != 0;
  }
  int join(int a, int b) const { return join_table(a, b); }
  int meet(int a, int b) const { return meet_table(a, b); }
  int times(int a, int b) const { return times_table(a, b); }
  int implies(int a, int b) const { return implies_table(a, b); }
  int neg(int a) const { return implies(a, bottom); }
  int biimp(int a, int b) const {
    return meet(implies(a, b), implies(b, a));
  }

  /// a^k with a^0 = top. Powers of any element are decreasing, so they
  /// stabilize within n steps.
  int power(int a, int k) const {
    int v = top;
    for (int i = 0; i < k; ++i) {
      int next = times(v, a);
      if (next == v) return v;
      v = next;
    }
    return v;
  }

  /// Least k >= 1 with a^(k+1) = a^k.
  int stabilization_index(int a) const {
    int v = a, k = 1;
    while (true) {
      int next = times(v, a);
      if (next == v) return k;
      v = next;
      ++k;
    }
  }

  /// The eventual (least) value of the power sequence of a.
  int stable_power(int a) const { return power(a, n); }

  const std::string& label(int a) const { return labels[a]; }

  std::string set_label(const IndexSet& s) const {
    std::string out = "{";
    bool first = true;
    for (int i : set_indices(s)) {
      if (!first) out += ",";
      out += labels[i];
      first = false;
    }
    return out + "}";
  }
};

namespace detail {

inline std::string triple_str(const Algebra& A, int a, int b, int c) {
  return "(" + A.label(a) + "," + A.label(b) + "," + A.label(c) + ")";
}

inline std::string pair_str(const Algebra& A, int a, int b) {
  return "(" + A.label(a) + "," + A.label(b) + ")";
}

inline void check_table_shape(const OpTable& t, int n, const char* op) {
  if (t.n != n || t.cells.size() != static_cast<std::size_t>(n) * n)
    throw Error(Errc::validation_error,
                std::string(op) + " table is not " + std::to_string(n) + "x" +
                    std::to_string(n));
  for (int v : t.cells)
    if (v < 0 || v >= n)
      throw Error(Errc::validation_error,
                  std::string(op) + " table entry " + std::to_string(v) +
                      " out of range 0.." + std::to_string(n - 1));
}

// Commutativity, associativity and (for join/meet) idempotence of one table.
inline void check_semilattice(const Algebra& A, const OpTable& t,
                              const char* op, Errc errc, bool idempotent) {
  const int n = A.n;
  for (int a = 0; a < n; ++a) {
    if (idempotent && t(a, a) != a)
      throw Error(errc, std::string(op) + " not idempotent at " + A.label(a));
    for (int b = 0; b < n; ++b) {
      if (t(a, b) != t(b, a))
        throw Error(errc, std::string(op) + " not commutative at " +
                              pair_str(A, a, b));
      for (int c = 0; c < n; ++c)
        if (t(t(a, b), c) != t(a, t(b, c)))
          throw Error(errc, std::string(op) + " not associative at " +
                                triple_str(A, a, b, c));
    }
  }
}

inline bool compute_distributive(const Algebra& A, std::string* witness) {
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b)
      for (int c = 0; c < A.n; ++c)
        if (A.meet(a, A.join(b, c)) != A.join(A.meet(a, b), A.meet(a, c))) {
          if (witness) *witness = triple_str(A, a, b, c);
          return false;
        }
  return true;
}

/// Shared validation for both kinds. Check order is part of the contract:
/// table shape, lattice axioms, join/meet order consistency, bounds, then
/// (residuated only) the residuation law and finally the monoid axioms.
inline void validate_core(Algebra& A, bool full) {
  const int n = A.n;
  if (n < 1) throw Error(Errc::invalid_size, "carrier must be nonempty");
  if (static_cast<int>(A.labels.size()) != n)
    throw Error(Errc::validation_error, "label count != carrier size");
  check_table_shape(A.join_table, n, "join");
  check_table_shape(A.meet_table, n, "meet");
  if (A.is_residuated()) {
    check_table_shape(A.times_table, n, "times");
    check_table_shape(A.implies_table, n, "implies");
  }

  if (full) {
    check_semilattice(A, A.join_table, "join", Errc::lattice_axiom_violation,
                      true);
    check_semilattice(A, A.meet_table, "meet", Errc::lattice_axiom_violation,
                      true);
  }

  // Order derived from join; meet disagreement is reported as its own error
  // rather than silently preferring one side.
  A.leq_table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool by_join = A.join(a, b) == b;
      if (full && (A.meet(a, b) == a) != by_join)
        throw Error(Errc::order_inconsistency,
                    "join-order and meet-order disagree at " + pair_str(A, a, b));
      A.leq_table[static_cast<std::size_t>(a) * n + b] = by_join ? 1 : 0;
    }

  if (full) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (A.join(a, A.meet(a, b)) != a)
          throw Error(Errc::lattice_axiom_violation,
                      "absorption a|(a&b) fails at " + pair_str(A, a, b));
        if (A.meet(a, A.join(a, b)) != a)
          throw Error(Errc::lattice_axiom_violation,
                      "absorption a&(a|b) fails at " + pair_str(A, a, b));
      }
    for (int a = 0; a < n; ++a) {
      if (A.join(a, A.bottom) != a)
        throw Error(Errc::lattice_axiom_violation,
                    "bottom not neutral for join at " + A.label(a));
      if (A.meet(a, A.top) != a)
        throw Error(Errc::lattice_axiom_violation,
                    "top not neutral for meet at " + A.label(a));
    }
  }

  if (A.is_residuated() && full) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (A.leq(a, A.implies(b, c)) != A.leq(A.times(a, b), c))
            throw Error(Errc::residuation_violation,
                        "residuation fails at " + triple_str(A, a, b, c));
    check_semilattice(A, A.times_table, "times", Errc::monoid_axiom_violation,
                      false);
    for (int a = 0; a < n; ++a)
      if (A.times(a, A.top) != a)
        throw Error(Errc::monoid_axiom_violation,
                    "top not neutral for times at " + A.label(a));
  }

  // Distributivity is recorded, not required; downstream invariants assert
  // on the flag where the theory demands it.
  A.distributive = full && compute_distributive(A, nullptr);
}

// Full n^3 checks are skipped above this size; structure is still derived.
constexpr int kFullValidationMax = 512;

inline AlgebraPtr finish(Algebra&& A) {
  bool full = A.n <= kFullValidationMax;
  validate_core(A, full);
  return std::make_shared<Algebra>(std::move(A));
}

}  // namespace detail

inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

/// Locate bottom/top as the join/meet-neutral elements; fails when absent.
namespace detail {
inline std::pair<int, int> find_bounds(int n, const OpTable& join,
                                       const OpTable& meet) {
  int bottom = -1, top = -1;
  for (int c = 0; c < n; ++c) {
    bool is_bottom = true, is_top = true;
    for (int a = 0; a < n; ++a) {
      if (join(a, c) != a) is_bottom = false;
      if (meet(a, c) != a) is_top = false;
    }
    if (is_bottom && bottom < 0) bottom = c;
    if (is_top && top < 0) top = c;
  }
  if (bottom < 0)
    throw Error(Errc::lattice_axiom_violation, "no bottom element");
  if (top < 0) throw Error(Errc::lattice_axiom_violation, "no top element");
  return {bottom, top};
}
}  // namespace detail

inline AlgebraPtr make_residuated_lattice(std::string name,
                                          std::vector<std::string> labels,
                                          OpTable join, OpTable meet,
                                          OpTable times, OpTable implies) {
  Algebra A;
  A.kind = Kind::residuated_lattice;
  A.n = join.n;
  A.name = std::move(name);
  A.labels = labels.empty() ? default_labels(A.n) : std::move(labels);
  detail::check_table_shape(join, A.n, "join");
  detail::check_table_shape(meet, A.n, "meet");
  auto [b, t] = detail::find_bounds(A.n, join, meet);
  A.bottom = b;
  A.top = t;
  A.join_table = std::move(join);
  A.meet_table = std::move(meet);
  A.times_table = std::move(times);
  A.implies_table = std::move(implies);
  return detail::finish(std::move(A));
}

inline AlgebraPtr make_bounded_lattice(std::string name,
                                       std::vector<std::string> labels,
                                       OpTable join, OpTable meet) {
  Algebra A;
  A.kind = Kind::bounded_lattice;
  A.n = join.n;
  A.name = std::move(name);
  A.labels = labels.empty() ? default_labels(A.n) : std::move(labels);
  detail::check_table_shape(join, A.n, "join");
  detail::check_table_shape(meet, A.n, "meet");
  auto [b, t] = detail::find_bounds(A.n, join, meet);
  A.bottom = b;
  A.top = t;
  A.join_table = std::move(join);
  A.meet_table = std::move(meet);
  return detail::finish(std::move(A));
}

/// The bounded-lattice reduct of a residuated lattice (drops times/implies).
inline AlgebraPtr lattice_reduct(const AlgebraPtr& A) {
  if (!A->is_residuated()) return A;
  return make_bounded_lattice(A->name + "-lattice", A->labels, A->join_table,
                              A->meet_table);
}

/// Cover relation of the derived order: pairs (lo, hi) with lo < hi and no
/// element strictly between.
inline std::vector<std::pair<int, int>> cover_relation(const Algebra& A) {
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b) {
      if (a == b || !A.leq(a, b)) continue;
      bool covered = true;
      for (int m = 0; m < A.n; ++m)
        if (m != a && m != b && A.leq(a, m) && A.leq(m, b)) {
          covered = false;
          break;
        }
      if (covered) covers.emplace_back(a, b);
    }
  return covers;
}

}  // namespace costone
