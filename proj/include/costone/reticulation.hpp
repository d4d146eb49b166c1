#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "costone/filters.hpp"
#include "costone/inductive.hpp"

namespace costone {

/// A bounded distributive lattice L together with a map from a residuated
/// lattice onto it satisfying:
///   1) map(a*b)  = map(a) ^ map(b)
///   2) map(a v b) = map(a) v map(b)
///   3) map(0) = 0 and map(1) = 1
///   4) map surjective
///   5) map(a) <= map(b) iff some power of a lies below b
struct Reticulation {
  AlgebraPtr source;
  AlgebraPtr lattice;
  std::vector<int> map;
  std::vector<Filter> carrier;  // canonical construction: principal filters

  int operator()(int a) const { return map[a]; }
};

/// Canonical reticulation: carrier = the distinct principal filters ordered
/// by (size, lexicographic index pattern), order = reverse inclusion. Under
/// that order intersection is the join and the generated union is the meet;
/// bottom is <0> = the whole carrier and top is <1> = {1}.
inline Reticulation reticulate(const AlgebraPtr& A) {
  if (!A->is_residuated())
    throw Error(Errc::validation_error, "reticulation expects a residuated lattice");
  std::vector<Filter> carrier;
  std::vector<int> lam(A->n, -1);
  for (int a = 0; a < A->n; ++a) {
    Filter f = principal_filter(A, a);
    int idx = -1;
    for (std::size_t i = 0; i < carrier.size(); ++i)
      if (carrier[i].members == f.members) {
        idx = static_cast<int>(i);
        break;
      }
    if (idx < 0) {
      carrier.push_back(std::move(f));
    }
  }
  std::sort(carrier.begin(), carrier.end(),
            [](const Filter& x, const Filter& y) {
              return canonical_set_less(x.members, y.members);
            });
  auto index_of = [&](const IndexSet& s) {
    for (std::size_t i = 0; i < carrier.size(); ++i)
      if (carrier[i].members == s) return static_cast<int>(i);
    return -1;
  };
  for (int a = 0; a < A->n; ++a)
    lam[a] = index_of(principal_filter(A, a).members);

  const int m = static_cast<int>(carrier.size());
  OpTable join(m), meet(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      join.at(i, j) = index_of(carrier[i].members & carrier[j].members);
      meet.at(i, j) = index_of(filter_join(carrier[i], carrier[j]).members);
      if (join(i, j) < 0 || meet(i, j) < 0)
        throw Error(Errc::validation_error,
                    "principal filters not closed under lattice operations");
    }
  // Label each class by its least generator.
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < A->n; ++a)
      if (lam[a] == i) {
        labels[i] = "<" + A->label(a) + ">";
        break;
      }
  Reticulation R;
  R.source = A;
  R.lattice = make_bounded_lattice("L(" + A->name + ")", labels,
                                   std::move(join), std::move(meet));
  R.map = std::move(lam);
  R.carrier = std::move(carrier);
  if (!R.lattice->distributive)
    throw Error(Errc::not_a_reticulation,
                "principal filter lattice failed distributivity");
  return R;
}

/// Axioms 1-5 plus the derived properties: order preservation, meet
/// preservation and invariance under powers. Report-valued; each failing item
/// carries its first witness in index order.
inline Report verify_reticulation(const AlgebraPtr& A, const Reticulation& R) {
  Report report;
  const Algebra& L = *R.lattice;
  const auto& lam = R.map;

  bool shape = static_cast<int>(lam.size()) == A->n;
  for (int v : lam)
    if (v < 0 || v >= L.n) shape = false;
  report.add("lambda total", shape);
  if (!shape) return report;
  report.add("target bounded distributive lattice", L.distributive);

  {
    CheckItem it{"1) lambda(a*b) = lambda(a)^lambda(b)", true, ""};
    for (int a = 0; a < A->n && it.pass; ++a)
      for (int b = 0; b < A->n && it.pass; ++b)
        if (lam[A->times(a, b)] != L.meet(lam[a], lam[b])) {
          it.pass = false;
          it.witness = detail::pair_str(*A, a, b);
        }
    report.items.push_back(it);
  }
  {
    CheckItem it{"2) lambda(a v b) = lambda(a) v lambda(b)", true, ""};
    for (int a = 0; a < A->n && it.pass; ++a)
      for (int b = 0; b < A->n && it.pass; ++b)
        if (lam[A->join(a, b)] != L.join(lam[a], lam[b])) {
          it.pass = false;
          it.witness = detail::pair_str(*A, a, b);
        }
    report.items.push_back(it);
  }
  report.add("3) lambda preserves 0 and 1",
             lam[A->bottom] == L.bottom && lam[A->top] == L.top);
  {
    std::vector<char> hit(L.n, 0);
    for (int v : lam) hit[v] = 1;
    report.add("4) lambda surjective",
               std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }));
  }
  {
    CheckItem it{"5) lambda(a)<=lambda(b) iff a^n<=b for some n", true, ""};
    for (int a = 0; a < A->n && it.pass; ++a)
      for (int b = 0; b < A->n && it.pass; ++b) {
        bool lhs = L.leq(lam[a], lam[b]);
        bool rhs = A->leq(A->stable_power(a), b);
        if (lhs != rhs) {
          it.pass = false;
          it.witness = detail::pair_str(*A, a, b);
        }
      }
    report.items.push_back(it);
  }
  {
    CheckItem it{"a) lambda order-preserving", true, ""};
    for (int a = 0; a < A->n && it.pass; ++a)
      for (int b = 0; b < A->n && it.pass; ++b)
        if (A->leq(a, b) && !L.leq(lam[a], lam[b])) {
          it.pass = false;
          it.witness = detail::pair_str(*A, a, b);
        }
    report.items.push_back(it);
  }
  {
    CheckItem it{"b) lambda(a^b) = lambda(a)^lambda(b)", true, ""};
    for (int a = 0; a < A->n && it.pass; ++a)
      for (int b = 0; b < A->n && it.pass; ++b)
        if (lam[A->meet(a, b)] != L.meet(lam[a], lam[b])) {
          it.pass = false;
          it.witness = detail::pair_str(*A, a, b);
        }
    report.items.push_back(it);
  }
  {
    CheckItem it{"c) lambda(a^n) = lambda(a)", true, ""};
    for (int a = 0; a < A->n && it.pass; ++a)
      for (int k = 1; k <= A->n && it.pass; ++k)
        if (lam[A->power(a, k)] != lam[a]) {
          it.pass = false;
          it.witness = "(" + A->label(a) + ", n=" + std::to_string(k) + ")";
        }
    report.items.push_back(it);
  }
  return report;
}

namespace detail {
inline void require_reticulation(const AlgebraPtr& A, const Reticulation& R,
                                 const char* which) {
  auto rep = verify_reticulation(A, R);
  if (!rep.all_pass()) {
    for (const auto& it : rep.items)
      if (!it.pass)
        throw Error(Errc::not_a_reticulation, std::string(which) + ": " +
                                                   it.name + " at " + it.witness);
  }
}
}  // namespace detail

/// The unique bounded-lattice isomorphism f with f(map1(a)) = map2(a); its
/// well-definedness is exactly axiom 5 transported between the candidates.
inline Morphism reticulation_iso(const AlgebraPtr& A, const Reticulation& R1,
                                 const Reticulation& R2) {
  detail::require_reticulation(A, R1, "first candidate");
  detail::require_reticulation(A, R2, "second candidate");
  std::vector<int> f(R1.lattice->n, -1);
  for (int a = 0; a < A->n; ++a) {
    int from = R1.map[a], to = R2.map[a];
    if (f[from] >= 0 && f[from] != to)
      throw Error(Errc::not_a_reticulation,
                  "transport map ill-defined at " + A->label(a));
    f[from] = to;
  }
  for (int v : f)
    if (v < 0)
      throw Error(Errc::not_a_reticulation, "first candidate not surjective");
  Morphism iso{R1.lattice, R2.lattice, std::move(f), MorphKind::bounded_lattice};
  require_morphism(iso);
  if (!is_injective(iso) || !is_surjective(iso))
    throw Error(Errc::not_a_reticulation, "transport map is not a bijection");
  return iso;
}

/// Functor action on arrows: the unique bounded-lattice morphism h with
/// h(map_A(a)) = map_B(f(a)).
inline Morphism reticulate_morphism(const Morphism& f, const Reticulation& RA,
                                    const Reticulation& RB) {
  if (f.kind != MorphKind::residuated_lattice)
    throw Error(Errc::not_a_morphism, "functor expects a residuated-lattice morphism");
  require_morphism(f);
  if (f.source.get() != RA.source.get() || f.target.get() != RB.source.get())
    throw Error(Errc::host_mismatch, "reticulations do not match the morphism");
  std::vector<int> h(RA.lattice->n, -1);
  for (int a = 0; a < f.source->n; ++a) {
    int from = RA.map[a], to = RB.map[f.map[a]];
    if (h[from] >= 0 && h[from] != to)
      throw Error(Errc::not_a_morphism,
                  "induced lattice map ill-defined at " + f.source->label(a));
    h[from] = to;
  }
  for (int v : h)
    if (v < 0) throw Error(Errc::not_a_morphism, "lambda not surjective");
  Morphism L{RA.lattice, RB.lattice, std::move(h), MorphKind::bounded_lattice};
  require_morphism(L);
  return L;
}

// ---------------------------------------------------------------------------
// Filter transfer
// ---------------------------------------------------------------------------

/// Image of a filter of A under the reticulation map, as a subset of L.
inline IndexSet lambda_image(const Reticulation& R, const IndexSet& members) {
  IndexSet out(R.lattice->n);
  for (int a : set_indices(members)) out.set(R.map[a]);
  return out;
}

struct FilterTransfer {
  FilterLattice source_filters;   // F(A)
  FilterLattice lattice_filters;  // F(L(A))
  Morphism iso;                   // mu, on the two filter lattices
  Report checks;
};

/// mu(F) = lambda(F): a bounded-lattice isomorphism between the filter
/// lattices, checked pointwise (filter images, injectivity, surjectivity,
/// order preservation both ways, and mu(<a>) = <lambda(a)>).
inline FilterTransfer filter_transfer(const AlgebraPtr& A,
                                      const Reticulation& R,
                                      const Caps& caps = {}) {
  FilterTransfer T;
  T.source_filters = enumerate_filters(A, caps);
  T.lattice_filters = enumerate_filters(R.lattice, caps);
  const auto& FA = T.source_filters;
  const auto& FL = T.lattice_filters;

  bool images_are_filters = true;
  std::string w;
  std::vector<int> map(FA.carrier.size(), -1);
  for (std::size_t i = 0; i < FA.carrier.size(); ++i) {
    IndexSet img = lambda_image(R, FA.carrier[i].members);
    std::string why;
    if (!filter_axioms_hold(*R.lattice, img, &why)) {
      images_are_filters = false;
      w = FA.carrier[i].str() + ": " + why;
      break;
    }
    map[i] = FL.index_of(img);
  }
  T.checks.add("lambda(F) is a filter of L", images_are_filters, w);
  if (!images_are_filters) return T;

  bool total = std::none_of(map.begin(), map.end(), [](int v) { return v < 0; });
  T.checks.add("mu lands in F(L)", total);
  if (!total) return T;

  T.iso = Morphism{FA.lattice, FL.lattice, map, MorphKind::bounded_lattice};
  std::string why;
  bool morph = check_morphism(T.iso, &why);
  T.checks.add("mu is a bounded-lattice morphism", morph, why);
  bool inj = is_injective(T.iso);
  T.checks.add("mu injective (lambda(F)=lambda(G) iff F=G)", inj);
  bool sur = is_surjective(T.iso);
  T.checks.add("mu surjective", sur);

  bool order_both = true;
  std::string ow;
  for (std::size_t i = 0; i < FA.carrier.size() && order_both; ++i)
    for (std::size_t j = 0; j < FA.carrier.size() && order_both; ++j) {
      bool src = FA.lattice->leq(static_cast<int>(i), static_cast<int>(j));
      bool dst = FL.lattice->leq(map[i], map[j]);
      if (src != dst) {
        order_both = false;
        ow = FA.carrier[i].str() + " vs " + FA.carrier[j].str();
      }
    }
  T.checks.add("mu order-preserving both ways", order_both, ow);

  bool gen = true;
  std::string gw;
  for (int a = 0; a < A->n && gen; ++a) {
    IndexSet img = lambda_image(R, principal_filter(A, a).members);
    if (img != principal_filter(R.lattice, R.map[a]).members) {
      gen = false;
      gw = A->label(a);
    }
  }
  T.checks.add("lambda(<a>) = <lambda(a)>", gen, gw);
  return T;
}

struct SpectrumPairing {
  std::vector<Filter> lattice_primes;  // primes of L(A)
  std::vector<Filter> source_primes;   // primes of A
  std::vector<int> pair;               // lattice prime -> source prime index
  Report checks;
};

/// P -> lambda^{-1}(P) restricted to the prime spectrum of L(A): a bijection
/// onto the prime spectrum of A preserving inclusion both ways.
inline SpectrumPairing spectrum_bijection(const AlgebraPtr& A,
                                          const Reticulation& R,
                                          const Caps& caps = {}) {
  SpectrumPairing S;
  S.lattice_primes = enumerate_prime_filters(R.lattice, caps);
  S.source_primes = enumerate_prime_filters(A, caps);

  bool lands = true, bij = true;
  std::string w;
  std::vector<char> hit(S.source_primes.size(), 0);
  for (const auto& P : S.lattice_primes) {
    IndexSet pre(A->n);
    for (int a = 0; a < A->n; ++a)
      if (P.contains(R.map[a])) pre.set(a);
    Filter f{A, pre};
    int idx = -1;
    for (std::size_t i = 0; i < S.source_primes.size(); ++i)
      if (S.source_primes[i].members == pre) idx = static_cast<int>(i);
    if (!filter_axioms_hold(*A, pre) || !is_prime(f) || idx < 0) {
      lands = false;
      w = P.str();
      idx = -1;
    } else {
      if (hit[idx]) bij = false;
      hit[idx] = 1;
    }
    S.pair.push_back(idx);
  }
  S.checks.add("preimages of primes are primes", lands, w);
  bij = bij && std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }) &&
        S.lattice_primes.size() == S.source_primes.size();
  S.checks.add("pairing is a bijection", bij);

  bool incl = true;
  std::string iw;
  for (std::size_t i = 0; i < S.lattice_primes.size() && incl; ++i)
    for (std::size_t j = 0; j < S.lattice_primes.size() && incl; ++j) {
      if (S.pair[i] < 0 || S.pair[j] < 0) continue;
      bool up = S.lattice_primes[i].members.is_subset_of(S.lattice_primes[j].members);
      bool down = S.source_primes[S.pair[i]].members.is_subset_of(
          S.source_primes[S.pair[j]].members);
      if (up != down) {
        incl = false;
        iw = S.lattice_primes[i].str() + " vs " + S.lattice_primes[j].str();
      }
    }
  S.checks.add("pairing preserves inclusion both ways", incl, iw);
  return S;
}

// ---------------------------------------------------------------------------
// Preservation checks
// ---------------------------------------------------------------------------

/// The componentwise map into the product of the factor reticulations must
/// itself satisfy the reticulation axioms for the product algebra.
inline Report product_preservation(const std::vector<AlgebraPtr>& factors,
                                   const Caps& caps = {}) {
  Product P = direct_product(factors, caps);
  std::vector<Reticulation> rs;
  std::vector<AlgebraPtr> lats;
  for (const auto& f : factors) {
    rs.push_back(reticulate(f));
    lats.push_back(rs.back().lattice);
  }
  Product LP = direct_product(lats, caps);
  Reticulation cand;
  cand.source = P.algebra;
  cand.lattice = LP.algebra;
  cand.map.resize(P.algebra->n);
  for (int x = 0; x < P.algebra->n; ++x) {
    auto coords = P.decode(x);
    std::vector<int> lc(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) lc[i] = rs[i].map[coords[i]];
    cand.map[x] = LP.encode(lc);
  }
  Report rep = verify_reticulation(P.algebra, cand);
  Report out;
  out.add("product reticulation axioms",
          rep.all_pass(), rep.all_pass() ? "" : "see axiom report");
  out.merge(rep);
  return out;
}

/// h(lambda(a)/lambda(F)) = lambda_1(a/F) must be a well-defined bounded
/// lattice isomorphism L(A)/lambda(F) -> L(A/F).
inline Report quotient_preservation(const AlgebraPtr& A, const Filter& F,
                                    const Caps& caps = {}) {
  (void)caps;
  Report out;
  Reticulation RA = reticulate(A);
  Quotient Q = quotient_by(A, F);
  Reticulation RQ = reticulate(Q.algebra);
  Filter lamF = make_filter(RA.lattice, lambda_image(RA, F.members));
  Quotient LQ = quotient_by(RA.lattice, lamF);

  std::vector<int> h(LQ.algebra->n, -1);
  bool well = true;
  std::string w;
  for (int a = 0; a < A->n; ++a) {
    int from = LQ.class_of[RA.map[a]];
    int to = RQ.map[Q.class_of[a]];
    if (h[from] >= 0 && h[from] != to) {
      well = false;
      w = A->label(a);
      break;
    }
    h[from] = to;
  }
  well = well && std::none_of(h.begin(), h.end(), [](int v) { return v < 0; });
  out.add("h well-defined and total", well, w);
  if (!well) return out;
  Morphism iso{LQ.algebra, RQ.lattice, std::move(h), MorphKind::bounded_lattice};
  std::string why;
  bool morph = check_morphism(iso, &why);
  out.add("h is a bounded-lattice morphism", morph, why);
  out.add("h bijective", is_injective(iso) && is_surjective(iso));
  return out;
}

/// All bounded-lattice morphisms src -> tgt, deterministically ordered.
/// Morphisms are determined by monotone images of the join-irreducibles;
/// candidates are extended by joins and then fully checked.
inline std::vector<Morphism> enumerate_lattice_morphisms(const AlgebraPtr& src,
                                                         const AlgebraPtr& tgt) {
  std::vector<int> jirr;
  for (int x = 0; x < src->n; ++x) {
    if (x == src->bottom) continue;
    int lower_covers = 0;
    for (auto [lo, hi] : cover_relation(*src))
      if (hi == x) ++lower_covers;
    if (lower_covers == 1) jirr.push_back(x);
  }
  std::sort(jirr.begin(), jirr.end(), [&](int x, int y) {
    int dx = 0, dy = 0;
    for (int z = 0; z < src->n; ++z) {
      if (src->leq(z, x)) ++dx;
      if (src->leq(z, y)) ++dy;
    }
    return dx != dy ? dx < dy : x < y;
  });

  std::vector<Morphism> found;
  std::vector<int> img(jirr.size(), -1);
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (next == jirr.size()) {
      std::vector<int> map(src->n);
      for (int x = 0; x < src->n; ++x) {
        int v = tgt->bottom;
        for (std::size_t i = 0; i < jirr.size(); ++i)
          if (src->leq(jirr[i], x)) v = tgt->join(v, img[i]);
        map[x] = v;
      }
      Morphism f{src, tgt, std::move(map), MorphKind::bounded_lattice};
      if (check_morphism(f)) found.push_back(std::move(f));
      return;
    }
    for (int q = 0; q < tgt->n; ++q) {
      bool monotone = true;
      for (std::size_t i = 0; i < next && monotone; ++i) {
        if (src->leq(jirr[i], jirr[next]) && !tgt->leq(img[i], q)) monotone = false;
        if (src->leq(jirr[next], jirr[i]) && !tgt->leq(q, img[i])) monotone = false;
      }
      if (!monotone) continue;
      img[next] = q;
      rec(next + 1);
      img[next] = -1;
    }
  };
  rec(0);
  return found;
}

/// (L(limit), L(phi_i)) must be an inductive limit of the reticulated system:
/// the cone commutes, the generic limit of the image system is isomorphic
/// over the canonical comparison, and the universal property holds against
/// every compatible cone into the desk-scale targets.
inline Report limit_preservation(const InductiveSystem& S, const Caps& caps = {}) {
  Report out;
  LimitResult lim = inductive_limit(S, caps);
  Reticulation RL = reticulate(lim.limit);
  const int m = S.size();
  std::vector<Reticulation> rs;
  for (int i = 0; i < m; ++i) rs.push_back(reticulate(S.objects[i]));

  InductiveSystem image;
  for (int i = 0; i < m; ++i) image.objects.push_back(rs[i].lattice);
  image.leq = S.leq;
  for (const auto& [key, f] : S.transitions)
    image.transitions.emplace(key,
                              reticulate_morphism(f, rs[key.first], rs[key.second]));
  validate_system(image);
  out.add("image system valid", true);

  std::vector<Morphism> cone;
  for (int i = 0; i < m; ++i)
    cone.push_back(reticulate_morphism(lim.injections[i], rs[i], RL));
  bool commutes = true;
  for (int i = 0; i < m && commutes; ++i)
    for (int j = 0; j < m && commutes; ++j)
      if (S.index_leq(i, j))
        for (int a = 0; a < rs[i].lattice->n && commutes; ++a)
          commutes = cone[j].map[image.transition(i, j).map[a]] == cone[i].map[a];
  out.add("L(cone) commutes", commutes);

  LimitResult glim = inductive_limit(image, caps);
  std::vector<int> g(glim.limit->n, -1);
  bool well = true;
  for (int i = 0; i < m && well; ++i)
    for (int a = 0; a < rs[i].lattice->n && well; ++a) {
      int from = glim.injections[i].map[a];
      int to = cone[i].map[a];
      if (g[from] >= 0 && g[from] != to) well = false;
      g[from] = to;
    }
  well = well && std::none_of(g.begin(), g.end(), [](int v) { return v < 0; });
  bool compare = false;
  if (well) {
    Morphism cmp{glim.limit, RL.lattice, g, MorphKind::bounded_lattice};
    compare = check_morphism(cmp) && is_injective(cmp) && is_surjective(cmp);
  }
  out.add("canonical comparison with generic limit is an isomorphism",
          well && compare);

  // Universal property against all compatible cones. The index poset has a
  // maximum M, so a compatible family is determined by its component at M.
  int M = poset_maximum(S);
  std::vector<AlgebraPtr> targets;
  for (int i = 0; i < m; ++i) targets.push_back(rs[i].lattice);
  targets.push_back(glim.limit);
  bool universal = true;
  std::string uw;
  for (const auto& B : targets) {
    if (B->n > caps.limit_check_max) continue;
    auto tops = enumerate_lattice_morphisms(rs[M].lattice, B);
    auto hs = enumerate_lattice_morphisms(RL.lattice, B);
    for (const auto& fM : tops) {
      std::vector<std::vector<int>> family(m);
      for (int i = 0; i < m; ++i) {
        family[i].resize(rs[i].lattice->n);
        for (int a = 0; a < rs[i].lattice->n; ++a)
          family[i][a] = fM.map[image.transition(i, M).map[a]];
      }
      int matches = 0;
      for (const auto& h : hs) {
        bool fits = true;
        for (int i = 0; i < m && fits; ++i)
          for (int a = 0; a < rs[i].lattice->n && fits; ++a)
            fits = h.map[cone[i].map[a]] == family[i][a];
        if (fits) ++matches;
      }
      if (matches != 1) {
        universal = false;
        uw = "target " + B->name + ": " + std::to_string(matches) +
             " mediating morphisms";
        break;
      }
    }
    if (!universal) break;
  }
  out.add("universal property (exhaustive cones at desk scale)", universal, uw);
  return out;
}

}  // namespace costone
