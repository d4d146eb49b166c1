#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "costone/morphism.hpp"

namespace costone {

/// A finite directed poset of same-kind algebras with one transition morphism
/// per comparable pair.
struct InductiveSystem {
  std::vector<AlgebraPtr> objects;
  std::vector<std::vector<uint8_t>> leq;  // index poset
  std::map<std::pair<int, int>, Morphism> transitions;

  int size() const { return static_cast<int>(objects.size()); }
  bool index_leq(int i, int j) const { return leq[i][j] != 0; }
  const Morphism& transition(int i, int j) const {
    auto it = transitions.find({i, j});
    if (it == transitions.end())
      throw Error(Errc::validation_error,
                  "missing transition " + std::to_string(i) + "->" +
                      std::to_string(j));
    return it->second;
  }
};

inline void validate_system(const InductiveSystem& S) {
  const int m = S.size();
  if (m == 0) throw Error(Errc::invalid_size, "system needs an object");
  for (int i = 0; i < m; ++i) {
    if (!S.index_leq(i, i))
      throw Error(Errc::validation_error, "index order not reflexive");
    for (int j = 0; j < m; ++j) {
      if (i != j && S.index_leq(i, j) && S.index_leq(j, i))
        throw Error(Errc::validation_error, "index order not antisymmetric");
      for (int k = 0; k < m; ++k)
        if (S.index_leq(i, j) && S.index_leq(j, k) && !S.index_leq(i, k))
          throw Error(Errc::validation_error, "index order not transitive");
    }
    if (S.objects[i]->kind != S.objects[0]->kind)
      throw Error(Errc::validation_error, "objects of mixed kind");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (S.index_leq(i, j)) {
        const Morphism& f = S.transition(i, j);
        if (f.source.get() != S.objects[i].get() ||
            f.target.get() != S.objects[j].get())
          throw Error(Errc::validation_error, "transition endpoints wrong");
        require_morphism(f);
        if (i == j)
          for (int a = 0; a < S.objects[i]->n; ++a)
            if (f.map[a] != a)
              throw Error(Errc::validation_error,
                          "identity transition expected at index " +
                              std::to_string(i));
        for (int k = 0; k < m; ++k)
          if (S.index_leq(j, k)) {
            const Morphism& g = S.transition(j, k);
            const Morphism& h = S.transition(i, k);
            for (int a = 0; a < S.objects[i]->n; ++a)
              if (g.map[f.map[a]] != h.map[a])
                throw Error(Errc::validation_error,
                            "transitions do not compose at " +
                                std::to_string(i) + "<=" + std::to_string(j) +
                                "<=" + std::to_string(k));
          }
      }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool bounded = false;
      for (int k = 0; k < m && !bounded; ++k)
        bounded = S.index_leq(i, k) && S.index_leq(j, k);
      if (!bounded)
        throw Error(Errc::not_directed, "indices " + std::to_string(i) +
                                            "," + std::to_string(j) +
                                            " have no upper bound");
    }
}

/// A finite directed poset has a greatest element.
inline int poset_maximum(const InductiveSystem& S) {
  for (int k = 0; k < S.size(); ++k) {
    bool greatest = true;
    for (int i = 0; i < S.size() && greatest; ++i) greatest = S.index_leq(i, k);
    if (greatest) return k;
  }
  throw Error(Errc::not_directed, "directed poset without maximum");
}

struct LimitResult {
  AlgebraPtr limit;
  std::vector<Morphism> injections;  // one per index
  int max_index = -1;
  Morphism iso_to_max;  // limit -> object at the poset maximum, verified
};

/// Inductive limit by the disjoint-union-mod-equivalence construction:
/// (i,a) ~ (j,b) iff some k above i and j has the transitions agree,
/// operations are computed at a common upper index, and the order relation
/// (existential over upper bounds) is checked against the table-derived
/// order, which verifies its antisymmetry explicitly.
inline LimitResult inductive_limit(const InductiveSystem& S,
                                   const Caps& caps = {}) {
  validate_system(S);
  const int m = S.size();
  const bool residuated = S.objects[0]->is_residuated();

  long long total = 0;
  for (const auto& obj : S.objects) total += obj->n;
  if (total > caps.product_max)
    throw Error(Errc::cap_exceeded, "disjoint union exceeds cap");

  std::vector<std::pair<int, int>> items;  // (index, element)
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < S.objects[i]->n; ++a) items.emplace_back(i, a);
  const int t = static_cast<int>(items.size());

  auto related = [&](int u, int v) {
    auto [i, a] = items[u];
    auto [j, b] = items[v];
    for (int k = 0; k < m; ++k)
      if (S.index_leq(i, k) && S.index_leq(j, k) &&
          S.transition(i, k).map[a] == S.transition(j, k).map[b])
        return true;
    return false;
  };

  std::vector<int> cls(t, -1);
  std::vector<int> rep;  // class -> first item
  for (int u = 0; u < t; ++u) {
    if (cls[u] >= 0) continue;
    cls[u] = static_cast<int>(rep.size());
    rep.push_back(u);
    for (int v = u + 1; v < t; ++v)
      if (cls[v] < 0 && related(u, v)) cls[v] = cls[u];
  }
  // ~ must be an equivalence; transitivity is not syntactically obvious, so
  // check the computed classes against the relation.
  for (int u = 0; u < t; ++u)
    for (int v = 0; v < t; ++v)
      if ((cls[u] == cls[v]) != related(u, v))
        throw Error(Errc::validation_error,
                    "limit relation failed to be an equivalence");

  const int n = static_cast<int>(rep.size());
  auto common_upper = [&](int i, int j) {
    for (int k = 0; k < m; ++k)
      if (S.index_leq(i, k) && S.index_leq(j, k)) return k;
    throw Error(Errc::not_directed, "no common upper bound");
  };
  auto item_class = [&](int idx, int elem) {
    for (int u = 0; u < t; ++u)
      if (items[u] == std::make_pair(idx, elem)) return cls[u];
    throw Error(Errc::validation_error, "item lookup failed");
  };

  auto tabulate = [&](auto op) {
    OpTable tab(n);
    for (int x = 0; x < n; ++x) {
      auto [i, a] = items[rep[x]];
      for (int y = 0; y < n; ++y) {
        auto [j, b] = items[rep[y]];
        int k = common_upper(i, j);
        int va = S.transition(i, k).map[a];
        int vb = S.transition(j, k).map[b];
        tab.at(x, y) = item_class(k, op(*S.objects[k], va, vb));
      }
    }
    return tab;
  };

  OpTable join = tabulate([](const Algebra& A, int a, int b) { return A.join(a, b); });
  OpTable meet = tabulate([](const Algebra& A, int a, int b) { return A.meet(a, b); });
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    auto [i, a] = items[rep[x]];
    labels[x] = "[" + S.objects[i]->label(a) + "@" + std::to_string(i) + "]";
  }

  LimitResult R;
  if (residuated) {
    OpTable times = tabulate([](const Algebra& A, int a, int b) { return A.times(a, b); });
    OpTable implies = tabulate([](const Algebra& A, int a, int b) { return A.implies(a, b); });
    R.limit = make_residuated_lattice("limit", labels, std::move(join),
                                      std::move(meet), std::move(times),
                                      std::move(implies));
  } else {
    R.limit = make_bounded_lattice("limit", labels, std::move(join), std::move(meet));
  }

  // The stated order ([a] <= [b] iff the transitions compare somewhere above)
  // must agree with the order derived from the limit tables.
  for (int x = 0; x < n; ++x) {
    auto [i, a] = items[rep[x]];
    for (int y = 0; y < n; ++y) {
      auto [j, b] = items[rep[y]];
      bool exists = false;
      for (int k = 0; k < m && !exists; ++k)
        exists = S.index_leq(i, k) && S.index_leq(j, k) &&
                 S.objects[k]->leq(S.transition(i, k).map[a],
                                   S.transition(j, k).map[b]);
      if (exists != R.limit->leq(x, y))
        throw Error(Errc::validation_error,
                    "limit order disagrees with table order");
    }
  }

  for (int i = 0; i < m; ++i) {
    Morphism phi{S.objects[i], R.limit, std::vector<int>(S.objects[i]->n),
                 morph_kind_of(*R.limit)};
    for (int a = 0; a < S.objects[i]->n; ++a) phi.map[a] = item_class(i, a);
    require_morphism(phi);
    R.injections.push_back(std::move(phi));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (S.index_leq(i, j))
        for (int a = 0; a < S.objects[i]->n; ++a)
          if (R.injections[j].map[S.transition(i, j).map[a]] !=
              R.injections[i].map[a])
            throw Error(Errc::validation_error, "limit cone does not commute");

  // The object at the poset maximum absorbs everything, so the limit must be
  // isomorphic to it; record the canonical isomorphism.
  R.max_index = poset_maximum(S);
  Morphism iso{R.limit, S.objects[R.max_index], std::vector<int>(n),
               morph_kind_of(*R.limit)};
  for (int x = 0; x < n; ++x) {
    auto [i, a] = items[rep[x]];
    iso.map[x] = S.transition(i, R.max_index).map[a];
  }
  require_morphism(iso);
  if (!is_injective(iso) || !is_surjective(iso))
    throw Error(Errc::validation_error, "limit is not isomorphic to the top object");
  R.iso_to_max = std::move(iso);
  return R;
}

}  // namespace costone
