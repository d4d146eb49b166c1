#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "costone/morphism.hpp"

namespace costone {

/// Upward-closed subset closed under times (residuated hosts) or meet
/// (lattice hosts). Members are a bit-vector over the host carrier.
struct Filter {
  AlgebraPtr host;
  IndexSet members;

  bool contains(int a) const { return members.test(a); }
  int count() const { return static_cast<int>(members.count()); }
  std::vector<int> indices() const { return set_indices(members); }
  bool is_proper() const { return members.count() < static_cast<std::size_t>(host->n); }
  std::string str() const { return host->set_label(members); }
};

inline bool filter_axioms_hold(const Algebra& A, const IndexSet& s,
                               std::string* why = nullptr) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (!s.test(A.top)) return fail("top missing");
  auto xs = set_indices(s);
  for (int a : xs) {
    for (int b = 0; b < A.n; ++b)
      if (A.leq(a, b) && !s.test(b))
        return fail("not upward closed at " + detail::pair_str(A, a, b));
    for (int b : xs) {
      int p = A.is_residuated() ? A.times(a, b) : A.meet(a, b);
      if (!s.test(p))
        return fail("not product closed at " + detail::pair_str(A, a, b));
    }
  }
  return true;
}

inline Filter make_filter(AlgebraPtr host, IndexSet members) {
  std::string why;
  if (!filter_axioms_hold(*host, members, &why))
    throw Error(Errc::validation_error, "not a filter: " + why);
  return Filter{std::move(host), std::move(members)};
}

/// <a> = everything above some power of a; for lattice hosts the power
/// sequence is constant, so this is the up-set of a.
inline Filter principal_filter(const AlgebraPtr& A, int a) {
  int floor = A->is_residuated() ? A->stable_power(a) : a;
  IndexSet s(A->n);
  for (int b = 0; b < A->n; ++b)
    if (A->leq(floor, b)) s.set(b);
  return Filter{A, std::move(s)};
}

/// Least filter containing X: close under products, then upward, to fixpoint.
inline Filter generated_filter(const AlgebraPtr& A,
                               const std::vector<int>& xs) {
  IndexSet s(A->n);
  s.set(A->top);
  for (int x : xs) s.set(x);
  bool changed = true;
  while (changed) {
    changed = false;
    auto cur = set_indices(s);
    for (int a : cur)
      for (int b : cur) {
        int p = A->is_residuated() ? A->times(a, b) : A->meet(a, b);
        if (!s.test(p)) {
          s.set(p);
          changed = true;
        }
      }
    for (int a : set_indices(s))
      for (int b = 0; b < A->n; ++b)
        if (A->leq(a, b) && !s.test(b)) {
          s.set(b);
          changed = true;
        }
  }
  return Filter{A, std::move(s)};
}

inline Filter generated_filter(const Filter& f) {
  return generated_filter(f.host, f.indices());
}

namespace detail {
inline void require_same_host(const Filter& F, const Filter& G) {
  if (F.host.get() != G.host.get())
    throw Error(Errc::host_mismatch, "filters live on different hosts");
}
}  // namespace detail

/// Meet in the filter lattice: plain intersection.
inline Filter filter_meet(const Filter& F, const Filter& G) {
  detail::require_same_host(F, G);
  return Filter{F.host, F.members & G.members};
}

/// Join in the filter lattice: the filter generated by the union.
inline Filter filter_join(const Filter& F, const Filter& G) {
  detail::require_same_host(F, G);
  auto u = F.members | G.members;
  return generated_filter(F.host, set_indices(u));
}

inline bool is_prime(const Filter& P) {
  const Algebra& A = *P.host;
  if (!P.is_proper()) return false;
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b)
      if (P.contains(A.join(a, b)) && !P.contains(a) && !P.contains(b))
        return false;
  return true;
}

/// All filters of A, carried as a bounded distributive lattice ordered by
/// inclusion (meet = intersection, join = generated union).
struct FilterLattice {
  AlgebraPtr host;
  std::vector<Filter> carrier;  // canonical order
  AlgebraPtr lattice;

  int index_of(const IndexSet& members) const {
    for (std::size_t i = 0; i < carrier.size(); ++i)
      if (carrier[i].members == members) return static_cast<int>(i);
    return -1;
  }
};

/// Exhaustive subset sweep, feasible up to the enumeration cap. Carriers
/// beyond it would need generation from antichains of up-sets instead; the
/// default cap keeps the exhaustive mode.
inline FilterLattice enumerate_filters(const AlgebraPtr& A,
                                       const Caps& caps = {}) {
  if (A->n > caps.filter_enum_max)
    throw Error(Errc::cap_exceeded,
                "carrier exceeds filter enumeration cap " +
                    std::to_string(caps.filter_enum_max));
  FilterLattice FL;
  FL.host = A;
  const int n = A->n;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    if (!(mask >> A->top & 1)) continue;
    IndexSet s(n);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.set(i);
    if (filter_axioms_hold(*A, s)) FL.carrier.push_back(Filter{A, std::move(s)});
  }
  std::sort(FL.carrier.begin(), FL.carrier.end(),
            [](const Filter& a, const Filter& b) {
              return canonical_set_less(a.members, b.members);
            });

  const int m = static_cast<int>(FL.carrier.size());
  OpTable join(m), meet(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      meet.at(i, j) = FL.index_of(FL.carrier[i].members & FL.carrier[j].members);
      join.at(i, j) = FL.index_of(filter_join(FL.carrier[i], FL.carrier[j]).members);
      if (meet(i, j) < 0 || join(i, j) < 0)
        throw Error(Errc::validation_error,
                    "filter lattice not closed under its operations");
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = FL.carrier[i].str();
  FL.lattice = make_bounded_lattice("filters." + A->name, labels,
                                    std::move(join), std::move(meet));

  // Spot-check <a> cap <b> = <a v b> while the full carrier is at hand.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto lhs = principal_filter(A, a).members & principal_filter(A, b).members;
      if (lhs != principal_filter(A, A->join(a, b)).members)
        throw Error(Errc::validation_error,
                    "principal filter identity fails at " +
                        detail::pair_str(*A, a, b));
    }
  return FL;
}

inline std::vector<Filter> enumerate_prime_filters(const AlgebraPtr& A,
                                                   const Caps& caps = {}) {
  auto FL = enumerate_filters(A, caps);
  std::vector<Filter> primes;
  for (const auto& F : FL.carrier)
    if (is_prime(F)) primes.push_back(F);
  return primes;  // carrier order is canonical already
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// Quotient algebra together with the projection, the class map and the
/// (least-index) class representatives.
struct Quotient {
  AlgebraPtr algebra;
  Morphism projection;
  std::vector<int> class_of;        // host element -> class index
  std::vector<int> representative;  // class index -> least host element
  Filter by;
};

/// A/F for either signature. Residuated hosts use a == b iff a<->b in F;
/// lattice hosts use a == b iff a^e = b^e for some e in F. Both relations
/// are verified to be congruences before tables are read off representatives.
inline Quotient quotient_by(const AlgebraPtr& A, const Filter& F) {
  if (F.host.get() != A.get())
    throw Error(Errc::host_mismatch, "filter does not live on this algebra");
  {
    std::string why;
    if (!filter_axioms_hold(*A, F.members, &why))
      throw Error(Errc::congruence_failure, "not a filter: " + why);
  }
  const int n = A->n;
  auto congruent = [&](int a, int b) {
    if (A->is_residuated()) return F.contains(A->biimp(a, b));
    for (int e : F.indices())
      if (A->meet(a, e) == A->meet(b, e)) return true;
    return false;
  };

  // Union-find over the relation, then an explicit transitivity check: every
  // pair inside one class must be directly congruent.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (congruent(a, b)) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }

  std::vector<int> class_of(n, -1), reps;
  for (int a = 0; a < n; ++a) {
    int r = find(a);
    if (class_of[r] < 0) {
      class_of[r] = static_cast<int>(reps.size());
      reps.push_back(r);
    }
    class_of[a] = class_of[r];
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if ((class_of[a] == class_of[b]) != congruent(a, b))
        throw Error(Errc::congruence_failure,
                    "relation not transitive at " + detail::pair_str(*A, a, b));

  // Compatibility with every operation (both argument positions).
  auto compatible = [&](auto op, const char* opname) {
    for (int a = 0; a < n; ++a)
      for (int a2 = 0; a2 < n; ++a2) {
        if (class_of[a] != class_of[a2]) continue;
        for (int c = 0; c < n; ++c)
          if (class_of[op(a, c)] != class_of[op(a2, c)] ||
              class_of[op(c, a)] != class_of[op(c, a2)])
            throw Error(Errc::congruence_failure,
                        std::string(opname) + " not compatible at " +
                            detail::triple_str(*A, a, a2, c));
      }
  };
  compatible([&](int x, int y) { return A->join(x, y); }, "join");
  compatible([&](int x, int y) { return A->meet(x, y); }, "meet");
  if (A->is_residuated()) {
    compatible([&](int x, int y) { return A->times(x, y); }, "times");
    compatible([&](int x, int y) { return A->implies(x, y); }, "implies");
  }

  const int m = static_cast<int>(reps.size());
  auto tabulate = [&](auto op) {
    OpTable t(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) t.at(i, j) = class_of[op(reps[i], reps[j])];
    return t;
  };
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = "[" + A->label(reps[i]) + "]";
  std::string qname = A->name + "/" + F.str();

  Quotient Q;
  Q.class_of = class_of;
  Q.representative = reps;
  Q.by = F;
  OpTable join = tabulate([&](int x, int y) { return A->join(x, y); });
  OpTable meet = tabulate([&](int x, int y) { return A->meet(x, y); });
  if (A->is_residuated()) {
    OpTable times = tabulate([&](int x, int y) { return A->times(x, y); });
    OpTable implies = tabulate([&](int x, int y) { return A->implies(x, y); });
    Q.algebra = make_residuated_lattice(qname, labels, std::move(join),
                                        std::move(meet), std::move(times),
                                        std::move(implies));
  } else {
    Q.algebra = make_bounded_lattice(qname, labels, std::move(join),
                                     std::move(meet));
  }

  Q.projection = Morphism{A, Q.algebra, class_of, morph_kind_of(*A)};
  require_morphism(Q.projection);
  if (!is_surjective(Q.projection))
    throw Error(Errc::congruence_failure, "projection not surjective");

  // a/F = 1/F iff a in F; and (residuated) a/F <= b/F iff a->b in F.
  for (int a = 0; a < n; ++a) {
    if ((class_of[a] == class_of[A->top]) != F.contains(a))
      throw Error(Errc::congruence_failure,
                  "class of top mismatches filter membership at " + A->label(a));
    if (A->is_residuated())
      for (int b = 0; b < n; ++b)
        if (Q.algebra->leq(class_of[a], class_of[b]) !=
            F.contains(A->implies(a, b)))
          throw Error(Errc::congruence_failure,
                      "quotient order mismatches implies membership at " +
                          detail::pair_str(*A, a, b));
  }
  return Q;
}

}  // namespace costone
