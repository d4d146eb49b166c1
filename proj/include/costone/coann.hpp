#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "costone/reticulation.hpp"

namespace costone {

/// Complemented elements with their complements. For residuated hosts
/// membership is the identity a v neg(a) = 1; for lattice hosts it is a
/// direct complement search.
struct BooleanCenter {
  AlgebraPtr host;
  std::vector<int> members;     // ascending
  std::vector<int> complement;  // per element, -1 outside the center

  bool contains(int a) const { return complement[a] >= 0; }
};

inline BooleanCenter boolean_center(const AlgebraPtr& A) {
  BooleanCenter B;
  B.host = A;
  B.complement.assign(A->n, -1);
  for (int a = 0; a < A->n; ++a) {
    if (A->is_residuated()) {
      if (A->join(a, A->neg(a)) == A->top) B.complement[a] = A->neg(a);
    } else {
      for (int b = 0; b < A->n; ++b)
        if (A->join(a, b) == A->top && A->meet(a, b) == A->bottom) {
          if (B.complement[a] >= 0 && A->distributive)
            throw Error(Errc::validation_error,
                        "distributive lattice with two complements at " +
                            A->label(a));
          if (B.complement[a] < 0) B.complement[a] = b;
        }
    }
    if (B.complement[a] >= 0) B.members.push_back(a);
  }
  // Center sanity on residuated hosts: members are idempotent, satisfy
  // neg(e)->a = e v a, and the center is closed under the signature.
  if (A->is_residuated()) {
    for (int e : B.members) {
      if (A->times(e, e) != e)
        throw Error(Errc::validation_error,
                    "center element not idempotent: " + A->label(e));
      for (int a = 0; a < A->n; ++a)
        if (A->implies(A->neg(e), a) != A->join(e, a))
          throw Error(Errc::validation_error,
                      "center law neg(e)->a = e v a fails at " +
                          detail::pair_str(*A, e, a));
      for (int f : B.members) {
        if (A->times(e, f) != A->meet(e, f) || !B.contains(A->meet(e, f)) ||
            !B.contains(A->implies(e, f)) || !B.contains(A->biimp(e, f)))
          throw Error(Errc::validation_error,
                      "center not closed at " + detail::pair_str(*A, e, f));
      }
    }
  }
  return B;
}

/// X^T = everything joining every member of X to the top; always a filter.
inline Filter coannihilator(const AlgebraPtr& A, const std::vector<int>& X) {
  if (X.empty()) throw Error(Errc::empty_set, "co-annihilator of empty set");
  IndexSet s(A->n);
  for (int a = 0; a < A->n; ++a) {
    bool all = true;
    for (int x : X)
      if (A->join(a, x) != A->top) {
        all = false;
        break;
      }
    if (all) s.set(a);
  }
  std::string why;
  if (!filter_axioms_hold(*A, s, &why))
    throw Error(Errc::validation_error, "co-annihilator is not a filter: " + why);
  return Filter{A, std::move(s)};
}

inline Filter coannihilator_of(const AlgebraPtr& A, int x) {
  return coannihilator(A, std::vector<int>{x});
}

inline Filter coannihilator(const Filter& F) {
  return coannihilator(F.host, F.indices());
}

/// CoAnn(A): all co-annihilators under intersection, the top-join
/// F vT G = (F^T cap G^T)^T and complement ^T. Since X^T is the intersection
/// of the single-element co-annihilators over X, the carrier is the
/// intersection closure of those.
struct CoannAlgebra {
  AlgebraPtr host;
  std::vector<Filter> carrier;  // canonical order
  AlgebraPtr lattice;           // Boolean lattice over the carrier
  std::vector<int> complement;  // per carrier index: index of ^T
  std::vector<int> atoms;       // carrier indices of the atoms
  std::vector<int> coann_of_element;  // x -> index of x^T

  int index_of(const IndexSet& members) const {
    for (std::size_t i = 0; i < carrier.size(); ++i)
      if (carrier[i].members == members) return static_cast<int>(i);
    return -1;
  }
  int bottom() const { return lattice->bottom; }
  int top() const { return lattice->top; }
  int size() const { return static_cast<int>(carrier.size()); }
};

inline CoannAlgebra coann_algebra(const AlgebraPtr& A, const Caps& caps = {}) {
  CoannAlgebra C;
  C.host = A;
  std::vector<IndexSet> sets;
  auto add = [&](const IndexSet& s) {
    for (const auto& t : sets)
      if (t == s) return false;
    sets.push_back(s);
    return true;
  };
  for (int x = 0; x < A->n; ++x) add(coannihilator_of(A, x).members);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j)
        if (add(sets[i] & sets[j])) grew = true;
  }
  if (static_cast<int>(sets.size()) > caps.filter_enum_max * 4)
    throw Error(Errc::cap_exceeded, "co-annihilator carrier too large");
  std::sort(sets.begin(), sets.end(), canonical_set_less);
  for (auto& s : sets) C.carrier.push_back(Filter{A, s});

  const int m = C.size();
  auto coann_of_set = [&](const IndexSet& s) {
    return coannihilator(A, set_indices(s)).members;
  };
  C.complement.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    C.complement[i] = C.index_of(coann_of_set(C.carrier[i].members));
    if (C.complement[i] < 0)
      throw Error(Errc::validation_error, "carrier not closed under ^T");
  }
  OpTable join(m), meet(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      meet.at(i, j) = C.index_of(C.carrier[i].members & C.carrier[j].members);
      // F vT G = (F^T cap G^T)^T
      IndexSet tj = coann_of_set(C.carrier[C.complement[i]].members &
                                 C.carrier[C.complement[j]].members);
      join.at(i, j) = C.index_of(tj);
      if (meet(i, j) < 0 || join(i, j) < 0)
        throw Error(Errc::validation_error,
                    "carrier not closed under its operations");
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = C.carrier[i].str();
  C.lattice = make_bounded_lattice("coann." + A->name, labels, std::move(join),
                                   std::move(meet));

  // Boolean algebra laws: bounded distributive plus complementation by ^T,
  // and ^T is an involution and antitone.
  if (!C.lattice->distributive)
    throw Error(Errc::validation_error, "co-annihilator lattice not distributive");
  for (int i = 0; i < m; ++i) {
    int c = C.complement[i];
    if (C.lattice->meet(i, c) != C.lattice->bottom ||
        C.lattice->join(i, c) != C.lattice->top)
      throw Error(Errc::validation_error,
                  "^T is not a complement at " + labels[i]);
    if (C.complement[c] != i)
      throw Error(Errc::validation_error, "^T not involutive at " + labels[i]);
    for (int j = 0; j < m; ++j)
      if (C.carrier[i].members.is_subset_of(C.carrier[j].members) &&
          !C.carrier[C.complement[j]].members.is_subset_of(
              C.carrier[C.complement[i]].members))
        throw Error(Errc::validation_error, "^T not antitone");
  }
  for (int i = 0; i < m; ++i) {
    if (i == C.lattice->bottom) continue;
    bool atom = true;
    for (int j = 0; j < m && atom; ++j)
      if (j != i && j != C.lattice->bottom &&
          C.carrier[j].members.is_subset_of(C.carrier[i].members))
        atom = false;
    if (atom) C.atoms.push_back(i);
  }
  C.coann_of_element.resize(A->n);
  for (int x = 0; x < A->n; ++x)
    C.coann_of_element[x] = C.index_of(coannihilator_of(A, x).members);
  return C;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct MCondReport {
  std::array<bool, 5> holds{};
  std::array<std::string, 5> witness{};
  bool used_exhaustive_subsets = false;

  bool all() const {
    return holds[0] && holds[1] && holds[2] && holds[3] && holds[4];
  }
  bool agree() const {
    return holds[0] == holds[1] && holds[1] == holds[2] &&
           holds[2] == holds[3] && holds[3] == holds[4];
  }
};

namespace detail {

/// e in B(A) with F = <e>, or -1.
inline int principal_center_generator(const AlgebraPtr& A,
                                      const BooleanCenter& B, const IndexSet& F) {
  for (int e : B.members)
    if (principal_filter(A, e).members == F) return e;
  return -1;
}

}  // namespace detail

/// The five conditions of the finite-scale m-co-Stone characterization, each
/// evaluated independently from its own definition. At finite scale every
/// infinite cardinal m dominates |A|, so the m-quantification ranges over all
/// nonempty subsets; these are canonicalized through the CoAnn carrier
/// (X^T is an intersection of single-element co-annihilators). The optional
/// exhaustive mode re-quantifies over all nonempty subsets directly.
inline MCondReport m_condition_report(const AlgebraPtr& A, const Caps& caps = {},
                                      bool exhaustive_subsets = false) {
  MCondReport R;
  BooleanCenter B = boolean_center(A);
  CoannAlgebra C = coann_algebra(A, caps);

  // (I) every X^T is a principal filter generated in B(A).
  R.holds[0] = true;
  for (const auto& F : C.carrier)
    if (detail::principal_center_generator(A, B, F.members) < 0) {
      R.holds[0] = false;
      R.witness[0] = "X^T = " + F.str() + " has no center generator";
      break;
    }

  // (II) co-Stone and B(A) m-complete. A finite Boolean algebra is complete,
  // so the second half is vacuous here and the condition reduces to the
  // pointwise co-Stone check.
  R.holds[1] = true;
  for (int x = 0; x < A->n; ++x) {
    IndexSet xt = coannihilator_of(A, x).members;
    if (detail::principal_center_generator(A, B, xt) < 0) {
      R.holds[1] = false;
      R.witness[1] = A->label(x) + "^T = " + A->set_label(xt) +
                     " has no center generator";
      break;
    }
  }

  // (III) {a^TT} is a Boolean sublattice of the filter lattice.
  {
    std::vector<int> att;  // carrier indices, deduped
    for (int a = 0; a < A->n; ++a) {
      int idx = C.complement[C.coann_of_element[a]];
      if (std::find(att.begin(), att.end(), idx) == att.end()) att.push_back(idx);
    }
    auto in_att = [&](const IndexSet& s) {
      for (int i : att)
        if (C.carrier[i].members == s) return true;
      return false;
    };
    R.holds[2] = true;
    for (int i : att) {
      for (int j : att) {
        if (!in_att(C.carrier[i].members & C.carrier[j].members)) {
          R.holds[2] = false;
          R.witness[2] = "not meet-closed at " + C.carrier[i].str() + "," +
                         C.carrier[j].str();
        }
        if (!in_att(filter_join(C.carrier[i], C.carrier[j]).members)) {
          R.holds[2] = false;
          R.witness[2] = "not join-closed at " + C.carrier[i].str() + "," +
                         C.carrier[j].str();
        }
        if (!R.holds[2]) break;
      }
      if (!R.holds[2]) break;
      bool complemented = false;
      for (int j : att) {
        bool meets_bottom =
            (C.carrier[i].members & C.carrier[j].members).count() == 1;
        bool joins_top = filter_join(C.carrier[i], C.carrier[j]).members.count() ==
                         static_cast<std::size_t>(A->n);
        if (meets_bottom && joins_top) complemented = true;
      }
      if (!complemented) {
        R.holds[2] = false;
        R.witness[2] = "no complement for " + C.carrier[i].str();
        break;
      }
    }
  }

  // (IV) (a v b)^T = a^T v b^T, and every X^TT is a single-element
  // co-annihilator.
  {
    R.holds[3] = true;
    for (int a = 0; a < A->n && R.holds[3]; ++a)
      for (int b = 0; b < A->n && R.holds[3]; ++b) {
        IndexSet lhs = coannihilator_of(A, A->join(a, b)).members;
        IndexSet rhs = filter_join(coannihilator_of(A, a), coannihilator_of(A, b)).members;
        if (lhs != rhs) {
          R.holds[3] = false;
          R.witness[3] = "(" + A->label(a) + " v " + A->label(b) + ")^T = " +
                         A->set_label(lhs) + " but join of co-annihilators is " +
                         A->set_label(rhs);
        }
      }
    for (int i = 0; i < C.size() && R.holds[3]; ++i) {
      int xtt = C.complement[i];  // ranges over the carrier as i does
      bool single = false;
      for (int x = 0; x < A->n && !single; ++x)
        single = C.coann_of_element[x] == xtt;
      if (!single) {
        R.holds[3] = false;
        R.witness[3] = "X^TT = " + C.carrier[xtt].str() +
                       " is not a single-element co-annihilator";
      }
    }
  }

  // (V) X^T v X^TT is the whole algebra.
  {
    R.holds[4] = true;
    for (int i = 0; i < C.size(); ++i) {
      IndexSet j = filter_join(C.carrier[i], C.carrier[C.complement[i]]).members;
      if (j.count() != static_cast<std::size_t>(A->n)) {
        R.holds[4] = false;
        R.witness[4] = C.carrier[i].str() + " v " + C.carrier[C.complement[i]].str() +
                       " = " + A->set_label(j);
        break;
      }
    }
  }

  if (exhaustive_subsets) {
    if (A->n > 10)
      throw Error(Errc::cap_exceeded, "exhaustive subset mode needs n <= 10");
    R.used_exhaustive_subsets = true;
    bool i_all = true, v_all = true, iv_all = true;
    for (uint64_t mask = 1; mask < (uint64_t(1) << A->n); ++mask) {
      std::vector<int> X;
      for (int x = 0; x < A->n; ++x)
        if (mask >> x & 1) X.push_back(x);
      Filter xt = coannihilator(A, X);
      if (C.index_of(xt.members) < 0)
        throw Error(Errc::validation_error,
                    "X^T missed by the canonical carrier at " + A->set_label(xt.members));
      if (detail::principal_center_generator(A, B, xt.members) < 0) i_all = false;
      Filter xtt = coannihilator(xt);
      bool single = false;
      for (int x = 0; x < A->n && !single; ++x)
        single = coannihilator_of(A, x).members == xtt.members;
      if (!single) iv_all = false;
      if (filter_join(xt, xtt).members.count() != static_cast<std::size_t>(A->n))
        v_all = false;
    }
    if (i_all != R.holds[0] || v_all != R.holds[4] ||
        (R.holds[3] && !iv_all))
      throw Error(Errc::validation_error,
                  "exhaustive subset mode disagrees with canonicalized conditions");
  }
  return R;
}

/// Pseudocomplements on a lattice: l* = greatest m with l ^ m = 0, when it
/// exists. Used for the rival identity l* v l** = 1 on reticulations.
struct PseudocomplementReport {
  bool pseudocomplemented = true;
  std::vector<int> star;  // -1 where no pseudocomplement exists
  bool star_identity = false;
  int counterexample = -1;
};

inline PseudocomplementReport pseudocomplement_identity(const AlgebraPtr& L) {
  PseudocomplementReport R;
  R.star.assign(L->n, -1);
  for (int l = 0; l < L->n; ++l) {
    int best = -1;
    bool unique_max = true;
    for (int m = 0; m < L->n; ++m)
      if (L->meet(l, m) == L->bottom) {
        if (best < 0 || L->leq(best, m))
          best = m;
      }
    // best must dominate every annihilating element to be the pseudocomplement
    for (int m = 0; m < L->n && best >= 0; ++m)
      if (L->meet(l, m) == L->bottom && !L->leq(m, best)) unique_max = false;
    if (best < 0 || !unique_max)
      R.pseudocomplemented = false;
    else
      R.star[l] = best;
  }
  if (R.pseudocomplemented) {
    R.star_identity = true;
    for (int l = 0; l < L->n; ++l)
      if (L->join(R.star[l], R.star[R.star[l]]) != L->top) {
        R.star_identity = false;
        R.counterexample = l;
        break;
      }
  }
  return R;
}

/// Full classification: pointwise co-Stone with center witnesses, strongly
/// co-Stone over the canonical subsets, the rival double-negation identity,
/// and the five m-conditions. Inside one report the five condition flags must
/// agree (they are provably equivalent); a mismatch aborts.
struct StoneReport {
  bool co_stone = false;
  std::vector<int> generator_of;  // per element x: e with x^T = <e>, else -1
  int co_stone_counterexample = -1;
  bool strongly_co_stone = false;
  std::vector<int> coann_generator;  // per CoAnn carrier member
  int strongly_counterexample = -1;  // carrier index
  bool stone_identity = false;
  int stone_identity_counterexample = -1;
  int stone_identity_value = -1;
  MCondReport mcond;
  std::string note;
};

inline StoneReport classify_stone(const AlgebraPtr& A, const Caps& caps = {},
                                  bool exhaustive_subsets = false) {
  StoneReport R;
  BooleanCenter B = boolean_center(A);
  CoannAlgebra C = coann_algebra(A, caps);

  R.co_stone = true;
  R.generator_of.assign(A->n, -1);
  for (int x = 0; x < A->n; ++x) {
    R.generator_of[x] = detail::principal_center_generator(
        A, B, C.carrier[C.coann_of_element[x]].members);
    if (R.generator_of[x] < 0 && R.co_stone) {
      R.co_stone = false;
      R.co_stone_counterexample = x;
    }
  }

  R.strongly_co_stone = true;
  R.coann_generator.assign(C.size(), -1);
  for (int i = 0; i < C.size(); ++i) {
    R.coann_generator[i] =
        detail::principal_center_generator(A, B, C.carrier[i].members);
    if (R.coann_generator[i] < 0 && R.strongly_co_stone) {
      R.strongly_co_stone = false;
      R.strongly_counterexample = i;
    }
  }

  if (A->is_residuated()) {
    R.stone_identity = true;
    for (int a = 0; a < A->n; ++a) {
      int v = A->join(A->neg(a), A->neg(A->neg(a)));
      if (v != A->top) {
        R.stone_identity = false;
        R.stone_identity_counterexample = a;
        R.stone_identity_value = v;
        break;
      }
    }
  }

  R.mcond = m_condition_report(A, caps, exhaustive_subsets);
  if (!R.mcond.agree())
    throw Error(Errc::validation_error,
                "the five m-co-Stone conditions disagree on " + A->name);
  if (R.strongly_co_stone && !R.co_stone)
    throw Error(Errc::validation_error, "strongly co-Stone without co-Stone");
  R.note = "finite scale: B(A) is complete, so condition (II) reduces to the "
           "co-Stone flag and the m-quantifier ranges over all subsets";
  return R;
}

/// CoAnn(A) and CoAnn(L(A)) are isomorphic Boolean algebras via F -> lambda(F).
struct CoannTransfer {
  CoannAlgebra source_side, lattice_side;
  Morphism iso;  // on the two carrier lattices
  Report checks;
};

inline CoannTransfer coann_transfer(const AlgebraPtr& A, const Reticulation& R,
                                    const Caps& caps = {}) {
  CoannTransfer T;
  T.source_side = coann_algebra(A, caps);
  T.lattice_side = coann_algebra(R.lattice, caps);
  const auto& S = T.source_side;
  const auto& L = T.lattice_side;

  std::vector<int> map(S.size(), -1);
  bool total = true;
  std::string w;
  for (int i = 0; i < S.size(); ++i) {
    map[i] = L.index_of(lambda_image(R, S.carrier[i].members));
    if (map[i] < 0) {
      total = false;
      w = S.carrier[i].str();
      break;
    }
  }
  T.checks.add("lambda images are co-annihilators", total, w);
  if (!total) return T;
  T.iso = Morphism{S.lattice, L.lattice, map, MorphKind::bounded_lattice};
  std::string why;
  T.checks.add("mu is a bounded-lattice morphism", check_morphism(T.iso, &why), why);
  T.checks.add("mu bijective", is_injective(T.iso) && is_surjective(T.iso));
  bool comp = true;
  std::string cw;
  for (int i = 0; i < S.size() && comp; ++i)
    if (map[S.complement[i]] != L.complement[map[i]]) {
      comp = false;
      cw = S.carrier[i].str();
    }
  T.checks.add("mu commutes with ^T", comp, cw);
  return T;
}

}  // namespace costone
