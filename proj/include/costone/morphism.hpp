#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "costone/algebra.hpp"

namespace costone {

/// Which signature a map is claimed to preserve.
enum class MorphKind { bounded_lattice, residuated_lattice, boolean_algebra };

inline MorphKind morph_kind_of(const Algebra& A) {
  return A.is_residuated() ? MorphKind::residuated_lattice
                           : MorphKind::bounded_lattice;
}

/// Total map between two algebras together with the signature it preserves.
/// Hosts are held by shared pointer, so a morphism keeps its endpoints alive.
struct Morphism {
  AlgebraPtr source, target;
  std::vector<int> map;
  MorphKind kind = MorphKind::bounded_lattice;

  int operator()(int a) const { return map[a]; }
};

inline Morphism identity_morphism(const AlgebraPtr& A) {
  Morphism f{A, A, std::vector<int>(A->n), morph_kind_of(*A)};
  std::iota(f.map.begin(), f.map.end(), 0);
  return f;
}

/// g after f.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target.get() != g.source.get())
    throw Error(Errc::host_mismatch, "composition endpoints do not match");
  Morphism h{f.source, g.target, std::vector<int>(f.map.size()), f.kind};
  for (std::size_t a = 0; a < f.map.size(); ++a) h.map[a] = g.map[f.map[a]];
  return h;
}

namespace detail {

// Complement table of a bounded lattice; -1 where no complement exists.
inline std::vector<int> complement_table(const Algebra& A) {
  std::vector<int> comp(A.n, -1);
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b)
      if (A.join(a, b) == A.top && A.meet(a, b) == A.bottom) {
        comp[a] = b;
        break;
      }
  return comp;
}

}  // namespace detail

inline bool check_morphism(const Morphism& f, std::string* witness = nullptr) {
  const Algebra& A = *f.source;
  const Algebra& B = *f.target;
  auto fail = [&](const std::string& w) {
    if (witness) *witness = w;
    return false;
  };
  if (static_cast<int>(f.map.size()) != A.n) return fail("map not total");
  for (int v : f.map)
    if (v < 0 || v >= B.n) return fail("image out of range");
  if (f.map[A.bottom] != B.bottom) return fail("bottom not preserved");
  if (f.map[A.top] != B.top) return fail("top not preserved");
  bool need_times = f.kind == MorphKind::residuated_lattice;
  if (need_times && (!A.is_residuated() || !B.is_residuated()))
    return fail("residuated kind on lattice algebra");
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b) {
      if (f.map[A.join(a, b)] != B.join(f.map[a], f.map[b]))
        return fail("join not preserved at " + detail::pair_str(A, a, b));
      if (f.map[A.meet(a, b)] != B.meet(f.map[a], f.map[b]))
        return fail("meet not preserved at " + detail::pair_str(A, a, b));
      if (need_times) {
        if (f.map[A.times(a, b)] != B.times(f.map[a], f.map[b]))
          return fail("times not preserved at " + detail::pair_str(A, a, b));
        if (f.map[A.implies(a, b)] != B.implies(f.map[a], f.map[b]))
          return fail("implies not preserved at " + detail::pair_str(A, a, b));
      }
    }
  if (f.kind == MorphKind::boolean_algebra) {
    auto ca = detail::complement_table(A), cb = detail::complement_table(B);
    for (int a = 0; a < A.n; ++a) {
      if (ca[a] < 0) return fail("source element without complement: " + A.label(a));
      if (cb[f.map[a]] < 0 || f.map[ca[a]] != cb[f.map[a]])
        return fail("complement not preserved at " + A.label(a));
    }
  }
  return true;
}

inline void require_morphism(const Morphism& f) {
  std::string w;
  if (!check_morphism(f, &w)) throw Error(Errc::not_a_morphism, w);
}

inline bool is_injective(const Morphism& f) {
  std::vector<char> seen(f.target->n, 0);
  for (int v : f.map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline bool is_surjective(const Morphism& f) {
  std::vector<char> seen(f.target->n, 0);
  for (int v : f.map) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

inline bool is_isomorphism(const Morphism& f) {
  return f.source->n == f.target->n && is_injective(f) && check_morphism(f);
}

inline Morphism inverse(const Morphism& f) {
  Morphism g{f.target, f.source, std::vector<int>(f.target->n, -1), f.kind};
  for (int a = 0; a < f.source->n; ++a) g.map[f.map[a]] = a;
  for (int v : g.map)
    if (v < 0) throw Error(Errc::not_a_morphism, "map is not a bijection");
  return g;
}

namespace detail {

// Order-theoretic fingerprint used to prune the isomorphism search. Any
// invariant of the full signature is fair game; these are cheap and sharp
// enough at the sizes we search.
inline std::vector<uint64_t> iso_fingerprints(const Algebra& A) {
  std::vector<uint64_t> key(A.n);
  for (int a = 0; a < A.n; ++a) {
    uint64_t down = 0, up = 0;
    for (int b = 0; b < A.n; ++b) {
      if (A.leq(b, a)) ++down;
      if (A.leq(a, b)) ++up;
    }
    uint64_t k = down * 131 + up;
    k = k * 131 + (a == A.bottom ? 1 : 0);
    k = k * 131 + (a == A.top ? 2 : 0);
    if (A.is_residuated()) {
      k = k * 131 + (A.times(a, a) == a ? 1 : 0);
      k = k * 131 + static_cast<uint64_t>(A.stabilization_index(a));
      uint64_t negdown = 0;
      for (int b = 0; b < A.n; ++b)
        if (A.leq(b, A.neg(a))) ++negdown;
      k = k * 131 + negdown;
    }
    key[a] = k;
  }
  // One refinement round: fold in the multiset of neighbour keys under join.
  std::vector<uint64_t> refined(A.n);
  for (int a = 0; a < A.n; ++a) {
    std::vector<uint64_t> row;
    row.reserve(A.n);
    for (int b = 0; b < A.n; ++b) row.push_back(key[A.join(a, b)] ^ key[b]);
    std::sort(row.begin(), row.end());
    uint64_t k = key[a];
    for (uint64_t v : row) k = k * 1000003 + v;
    refined[a] = k;
  }
  return refined;
}

inline bool iso_full_check(const Algebra& A, const Algebra& B,
                           const std::vector<int>& map) {
  if (map[A.bottom] != B.bottom || map[A.top] != B.top) return false;
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b) {
      if (map[A.join(a, b)] != B.join(map[a], map[b])) return false;
      if (map[A.meet(a, b)] != B.meet(map[a], map[b])) return false;
      if (A.is_residuated()) {
        if (map[A.times(a, b)] != B.times(map[a], map[b])) return false;
        if (map[A.implies(a, b)] != B.implies(map[a], map[b])) return false;
      }
    }
  return true;
}

inline bool iso_extend(const Algebra& A, const Algebra& B,
                       const std::vector<uint64_t>& ka,
                       const std::vector<uint64_t>& kb, std::vector<int>& map,
                       std::vector<char>& used, int next) {
  // The stepwise pruning below can only compare cells whose value is already
  // assigned, so completed candidates get one full table check.
  if (next == A.n) return iso_full_check(A, B, map);
  for (int img = 0; img < B.n; ++img) {
    if (used[img] || ka[next] != kb[img]) continue;
    map[next] = img;
    used[img] = 1;
    // Partial consistency: compare every cell whose operands and value are
    // already assigned. Commutative ops need one direction only.
    auto consistent = [&](int sv, int tv) {
      return map[sv] == -2 || map[sv] == tv;
    };
    bool ok = true;
    for (int prev = 0; prev <= next && ok; ++prev) {
      int p = map[prev];
      ok = consistent(A.join(next, prev), B.join(img, p)) &&
           consistent(A.meet(next, prev), B.meet(img, p));
      if (ok && A.is_residuated())
        ok = consistent(A.times(next, prev), B.times(img, p)) &&
             consistent(A.implies(next, prev), B.implies(img, p)) &&
             consistent(A.implies(prev, next), B.implies(p, img));
    }
    if (ok && iso_extend(A, B, ka, kb, map, used, next + 1)) return true;
    map[next] = -2;
    used[img] = 0;
  }
  return false;
}

}  // namespace detail

/// Deterministic exact search for a full-signature isomorphism: elements are
/// assigned in index order and images tried in index order, so the first
/// isomorphism found is stable across runs.
inline std::optional<Morphism> find_isomorphism(const AlgebraPtr& A,
                                                const AlgebraPtr& B,
                                                const Caps& caps = {}) {
  if (A->kind != B->kind)
    throw Error(Errc::validation_error,
                "isomorphism search requires same-kind algebras");
  if (A->n > caps.iso_search_max || B->n > caps.iso_search_max)
    throw Error(Errc::search_cap_exceeded,
                "carrier exceeds isomorphism search cap " +
                    std::to_string(caps.iso_search_max));
  if (A->n != B->n) return std::nullopt;
  auto ka = detail::iso_fingerprints(*A);
  auto kb = detail::iso_fingerprints(*B);
  {
    auto sa = ka, sb = kb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> map(A->n, -2);
  std::vector<char> used(B->n, 0);
  if (!detail::iso_extend(*A, *B, ka, kb, map, used, 0)) return std::nullopt;
  Morphism f{A, B, map, morph_kind_of(*A)};
  if (!check_morphism(f) || !is_injective(f))
    throw Error(Errc::validation_error, "isomorphism search produced a non-isomorphism");
  return f;
}

// ---------------------------------------------------------------------------
// Direct products
// ---------------------------------------------------------------------------

struct Product {
  AlgebraPtr algebra;
  std::vector<Morphism> projections;  // product -> factor, per coordinate
  std::vector<int> radices;           // factor sizes, first factor most significant

  int encode(const std::vector<int>& coords) const {
    int idx = 0;
    for (std::size_t i = 0; i < radices.size(); ++i)
      idx = idx * radices[i] + coords[i];
    return idx;
  }
  std::vector<int> decode(int idx) const {
    std::vector<int> coords(radices.size());
    for (std::size_t i = radices.size(); i-- > 0;) {
      coords[i] = idx % radices[i];
      idx /= radices[i];
    }
    return coords;
  }
};

/// Componentwise product of >= 1 same-kind algebras.
inline Product direct_product(const std::vector<AlgebraPtr>& factors,
                              const Caps& caps = {}) {
  if (factors.empty())
    throw Error(Errc::invalid_size, "product needs at least one factor");
  long long size = 1;
  for (const auto& f : factors) {
    if (f->kind != factors[0]->kind)
      throw Error(Errc::validation_error, "product factors must share a kind");
    size *= f->n;
    if (size > caps.product_max)
      throw Error(Errc::product_too_large,
                  "product size exceeds cap " + std::to_string(caps.product_max));
  }
  Product P;
  for (const auto& f : factors) P.radices.push_back(f->n);
  const int n = static_cast<int>(size);
  const std::size_t k = factors.size();
  const bool residuated = factors[0]->is_residuated();

  std::vector<std::string> labels(n);
  for (int idx = 0; idx < n; ++idx) {
    auto coords = P.decode(idx);
    std::string l = "(";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) l += ",";
      l += factors[i]->label(coords[i]);
    }
    labels[idx] = l + ")";
  }

  auto tabulate = [&](auto op) {
    OpTable t(n);
    for (int x = 0; x < n; ++x) {
      auto cx = P.decode(x);
      for (int y = 0; y < n; ++y) {
        auto cy = P.decode(y);
        std::vector<int> cz(k);
        for (std::size_t i = 0; i < k; ++i) cz[i] = op(*factors[i], cx[i], cy[i]);
        t.at(x, y) = P.encode(cz);
      }
    }
    return t;
  };

  OpTable join = tabulate([](const Algebra& A, int a, int b) { return A.join(a, b); });
  OpTable meet = tabulate([](const Algebra& A, int a, int b) { return A.meet(a, b); });
  std::string name = "prod";
  for (const auto& f : factors) name += "." + (f->name.empty() ? "?" : f->name);
  if (residuated) {
    OpTable times = tabulate([](const Algebra& A, int a, int b) { return A.times(a, b); });
    OpTable implies = tabulate([](const Algebra& A, int a, int b) { return A.implies(a, b); });
    P.algebra = make_residuated_lattice(name, labels, std::move(join),
                                        std::move(meet), std::move(times),
                                        std::move(implies));
  } else {
    P.algebra = make_bounded_lattice(name, labels, std::move(join), std::move(meet));
  }

  for (std::size_t i = 0; i < k; ++i) {
    Morphism pr{P.algebra, factors[i], std::vector<int>(n),
                morph_kind_of(*factors[i])};
    for (int idx = 0; idx < n; ++idx) pr.map[idx] = P.decode(idx)[i];
    require_morphism(pr);
    P.projections.push_back(std::move(pr));
  }
  return P;
}

// ---------------------------------------------------------------------------
// Stock algebras
// ---------------------------------------------------------------------------

/// Linear order 0 < 1 < ... < n-1 with times = meet (so every element is
/// idempotent) and implies(a,b) = top when a <= b, else b.
inline AlgebraPtr make_chain(int n) {
  if (n < 1) throw Error(Errc::invalid_size, "chain size must be >= 1");
  OpTable join(n), meet(n), times(n), implies(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      join.at(a, b) = std::max(a, b);
      meet.at(a, b) = std::min(a, b);
      times.at(a, b) = std::min(a, b);
      implies.at(a, b) = a <= b ? n - 1 : b;
    }
  std::vector<std::string> labels(n);
  if (n == 1) {
    labels[0] = "1";
  } else {
    labels[0] = "0";
    labels[n - 1] = "1";
    for (int i = 1; i + 1 < n; ++i) labels[i] = "c" + std::to_string(i);
  }
  return make_residuated_lattice("chain" + std::to_string(n), labels,
                                 std::move(join), std::move(meet),
                                 std::move(times), std::move(implies));
}

inline AlgebraPtr trivial_algebra() { return make_chain(1); }

/// Powerset algebra on k atoms (n = 2^k) with times = meet and
/// implies(a,b) = complement(a) | b.
inline AlgebraPtr make_boolean(int n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw Error(Errc::invalid_size, "boolean algebra size must be a power of 2");
  int k = 0;
  while ((1 << k) < n) ++k;
  OpTable join(n), meet(n), times(n), implies(n);
  const int full = n - 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      join.at(a, b) = a | b;
      meet.at(a, b) = a & b;
      times.at(a, b) = a & b;
      implies.at(a, b) = (~a & full) | b;
    }
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    if (a == 0)
      labels[a] = "0";
    else if (a == full)
      labels[a] = "1";
    else {
      std::string l;
      for (int i = 0; i < k; ++i)
        if (a & (1 << i)) l += static_cast<char>('p' + i);
      labels[a] = l;
    }
  }
  return make_residuated_lattice("boolean" + std::to_string(n), labels,
                                 std::move(join), std::move(meet),
                                 std::move(times), std::move(implies));
}

}  // namespace costone
