#pragma once

#include <string>
#include <vector>

#include "costone/corpus.hpp"
#include "costone/hull.hpp"

namespace costone {

// Composite verification runs over a list of corpus keys. Each item name is
// prefixed with the algebra it was checked on; the CLI `verify` subcommand
// and the acceptance suite are thin wrappers over these.

inline std::vector<std::string> default_suite_keys() {
  std::vector<std::string> keys = corpus_keys();
  for (int n = 2; n <= 8; ++n) keys.push_back("chain:" + std::to_string(n));
  for (int n : {2, 4, 8}) keys.push_back("boolean:" + std::to_string(n));
  return keys;
}

inline Report suite_reticulation_axioms(const std::vector<std::string>& keys) {
  Report out;
  for (const auto& key : keys) {
    AlgebraPtr A = corpus_get(key);
    Reticulation R = reticulate(A);
    Report rep = verify_reticulation(A, R);
    out.add(key + ": reticulation axioms 1-5 and a-c", rep.all_pass());
    for (const auto& it : rep.items)
      if (!it.pass) out.add(key + ":   " + it.name, false, it.witness);
    // Functor identity law.
    Morphism lid = reticulate_morphism(identity_morphism(A), R, R);
    bool idlaw = true;
    for (int l = 0; l < R.lattice->n; ++l) idlaw = idlaw && lid.map[l] == l;
    out.add(key + ": functor preserves identities", idlaw);
  }
  return out;
}

namespace detail {

/// lambda restricted to the Boolean centers must be a Boolean isomorphism.
inline bool center_transfer_ok(const AlgebraPtr& A, const Reticulation& R,
                               std::string* witness) {
  BooleanCenter BA = boolean_center(A);
  BooleanCenter BL = boolean_center(R.lattice);
  std::vector<int> image;
  for (int e : BA.members) {
    if (!BL.contains(R.map[e])) {
      if (witness) *witness = "lambda(" + A->label(e) + ") not complemented";
      return false;
    }
    image.push_back(R.map[e]);
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (image.size() != BA.members.size() || image != BL.members) {
    if (witness) *witness = "center images not a bijection";
    return false;
  }
  for (int e : BA.members) {
    for (int f : BA.members) {
      if (R.map[A->join(e, f)] != R.lattice->join(R.map[e], R.map[f]) ||
          R.map[A->meet(e, f)] != R.lattice->meet(R.map[e], R.map[f])) {
        if (witness) *witness = "center operation not preserved";
        return false;
      }
    }
    if (R.map[BA.complement[e]] != BL.complement[R.map[e]]) {
      if (witness) *witness = "complement not preserved at " + A->label(e);
      return false;
    }
  }
  return R.map[A->bottom] == R.lattice->bottom &&
         R.map[A->top] == R.lattice->top;
}

/// lambda(X^T) = lambda(X)^T for every nonempty subset (exhaustive to n=16).
inline bool coann_image_law_ok(const AlgebraPtr& A, const Reticulation& R,
                               std::string* witness) {
  if (A->n > 16) return true;
  for (uint64_t mask = 1; mask < (uint64_t(1) << A->n); ++mask) {
    std::vector<int> X;
    for (int x = 0; x < A->n; ++x)
      if (mask >> x & 1) X.push_back(x);
    IndexSet lhs = lambda_image(R, coannihilator(A, X).members);
    std::vector<int> lamX;
    for (int x : X) lamX.push_back(R.map[x]);
    IndexSet rhs = coannihilator(R.lattice, lamX).members;
    if (lhs != rhs) {
      if (witness) *witness = "X = " + A->set_label(coannihilator(A, X).members);
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline Report suite_transfer(const std::vector<std::string>& keys,
                             const Caps& caps = {}) {
  Report out;
  for (const auto& key : keys) {
    AlgebraPtr A = corpus_get(key);
    Reticulation R = reticulate(A);
    StoneReport SA = classify_stone(A, caps);
    StoneReport SL = classify_stone(R.lattice, caps);
    out.add(key + ": co-Stone transfers", SA.co_stone == SL.co_stone);
    out.add(key + ": strongly co-Stone transfers",
            SA.strongly_co_stone == SL.strongly_co_stone);
    bool mcond = true;
    for (int i = 0; i < 5; ++i)
      mcond = mcond && SA.mcond.holds[i] == SL.mcond.holds[i];
    out.add(key + ": five m-conditions agree with the lattice side", mcond);
    out.add(key + ": five m-conditions mutually equivalent",
            SA.mcond.agree() && SL.mcond.agree());

    std::string w;
    out.add(key + ": lambda is a Boolean isomorphism on the centers",
            detail::center_transfer_ok(A, R, &w), w);
    FilterTransfer FT = filter_transfer(A, R, caps);
    out.add(key + ": mu filter-lattice isomorphism", FT.checks.all_pass());
    CoannTransfer CT = coann_transfer(A, R, caps);
    out.add(key + ": CoAnn Boolean isomorphism", CT.checks.all_pass());
    out.add(key + ": lambda(X^T) = lambda(X)^T",
            detail::coann_image_law_ok(A, R, &w), w);
    SpectrumPairing SP = spectrum_bijection(A, R, caps);
    out.add(key + ": prime spectrum bijection", SP.checks.all_pass());

    bool unu = true;
    for (int a = 0; a < A->n && unu; ++a) {
      unu = (R.map[a] == R.lattice->top) == (a == A->top) &&
            (R.map[a] == R.lattice->bottom) == (A->stable_power(a) == A->bottom);
    }
    out.add(key + ": lambda(a)=1 iff a=1; lambda(a)=0 iff a^n=0", unu);

    BooleanCenter BA = boolean_center(A);
    BooleanCenter BL = boolean_center(R.lattice);
    bool noua = true;
    for (int a = 0; a < A->n && noua; ++a) {
      if (BA.contains(a) && !BL.contains(R.map[a])) noua = false;
      bool pow_in_center = false;
      for (int k = 1; k <= A->n && !pow_in_center; ++k)
        pow_in_center = BA.contains(A->power(a, k));
      if (BL.contains(R.map[a]) != pow_in_center) noua = false;
    }
    out.add(key + ": center membership transfers along powers", noua);
  }
  return out;
}

inline Report suite_hull_lemmas(const std::vector<std::string>& keys,
                                const Caps& caps = {}) {
  Report out;
  for (const auto& key : keys) {
    Report rep = hull_lemma_suite(corpus_get(key), caps);
    out.add(key + ": hull lemma suite", rep.all_pass());
    for (const auto& it : rep.items)
      if (!it.pass) out.add(key + ":   " + it.name, false, it.witness);
  }
  return out;
}

inline Report suite_preservation(const std::vector<std::string>& keys,
                                 const Caps& caps = {}) {
  Report out;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i; j < keys.size(); ++j) {
      Report rep =
          product_preservation({corpus_get(keys[i]), corpus_get(keys[j])}, caps);
      out.add(keys[i] + " x " + keys[j] + ": product preservation",
              rep.items[0].pass);
    }
  for (const auto& key : keys) {
    AlgebraPtr A = corpus_get(key);
    FilterLattice FL = enumerate_filters(A, caps);
    bool all = true;
    std::string w;
    for (const auto& F : FL.carrier) {
      Report rep = quotient_preservation(A, F, caps);
      if (!rep.all_pass()) {
        all = false;
        w = F.str();
      }
    }
    out.add(key + ": quotient preservation over all filters", all, w);
  }
  for (std::string key : {"lrex0", "lrex0_5", "chain:3"}) {
    Report rep = hull_preservation_check(corpus_get(key), caps);
    out.add(key + ": hull preservation", rep.all_pass());
    for (const auto& it : rep.items)
      if (!it.pass) out.add(key + ":   " + it.name, false, it.witness);
  }
  return out;
}

/// The partition system of an algebra as an inductive system (used by the
/// limit-preservation checks and the reference hull path in tests).
inline InductiveSystem partition_system(const AlgebraPtr& A, const Caps& caps = {}) {
  auto C = std::make_shared<CoannAlgebra>(coann_algebra(A, caps));
  PartitionPoset P = enumerate_partitions(C, caps);
  std::vector<PartitionProduct> prods;
  for (const auto& p : P.items) prods.push_back(partition_product(A, *C, p, caps));
  InductiveSystem S;
  for (const auto& pp : prods) S.objects.push_back(pp.algebra);
  S.leq = P.leq;
  const int m = static_cast<int>(P.items.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (P.leq[i][j])
        S.transitions.emplace(std::make_pair(i, j),
                              transition_morphism(A, *C, P.items[i], P.items[j],
                                                  prods[i], prods[j]));
  return S;
}

inline Report suite_all(const Caps& caps = {}) {
  Report out;
  out.merge(suite_reticulation_axioms(default_suite_keys()));
  out.merge(suite_transfer(default_suite_keys(), caps));
  out.merge(suite_hull_lemmas(corpus_keys(), caps));
  out.merge(suite_preservation(corpus_keys(), caps));
  Report lim = limit_preservation(partition_system(corpus_get("lrex0_5")), caps);
  out.add("lrex0_5 partition system: limit preservation", lim.all_pass());
  return out;
}

}  // namespace costone
