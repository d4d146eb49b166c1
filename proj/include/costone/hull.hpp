#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "costone/coann.hpp"

namespace costone {

/// Finite partition of the CoAnn Boolean algebra: nonbottom members, pairwise
/// meets at the bottom, joining to the top. Blocks are carrier indices in
/// ascending order. The bottom member never appears as a block; for the
/// trivial algebra (where top = bottom) the only partition is the empty one
/// and its product is the one-element algebra.
struct Partition {
  std::vector<int> blocks;

  bool operator==(const Partition& o) const { return blocks == o.blocks; }
};

struct PartitionPoset {
  std::shared_ptr<const CoannAlgebra> base;
  std::vector<Partition> items;            // canonical order
  std::vector<std::vector<uint8_t>> leq;   // leq[p][q]: q refines p
  int coarsest = -1, finest = -1;
};

inline void validate_partition(const CoannAlgebra& C, const Partition& p) {
  const AlgebraPtr& L = C.lattice;
  if (p.blocks.empty()) {
    if (L->bottom != L->top)
      throw Error(Errc::validation_error, "empty partition on a nontrivial base");
    return;
  }
  int join = L->bottom;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (p.blocks[i] == L->bottom)
      throw Error(Errc::validation_error, "partition block is the bottom");
    for (std::size_t j = i + 1; j < p.blocks.size(); ++j)
      if (L->meet(p.blocks[i], p.blocks[j]) != L->bottom)
        throw Error(Errc::validation_error, "partition blocks not disjoint");
    join = L->join(join, p.blocks[i]);
  }
  if (join != L->top)
    throw Error(Errc::validation_error, "partition blocks do not join to the top");
}

/// Every partition of a finite Boolean algebra is the image of a set
/// partition of its atoms (each block is the join of the atoms below it), so
/// enumeration walks the set partitions of the atom list.
inline PartitionPoset enumerate_partitions(std::shared_ptr<const CoannAlgebra> base,
                                           const Caps& caps = {}) {
  const CoannAlgebra& C = *base;
  PartitionPoset P;
  P.base = std::move(base);
  if (C.lattice->bottom == C.lattice->top) {
    P.items.push_back(Partition{});
    P.leq = {{1}};
    P.coarsest = P.finest = 0;
    return P;
  }
  const auto& atoms = C.atoms;
  if (static_cast<int>(atoms.size()) > caps.partition_atom_max)
    throw Error(Errc::cap_exceeded,
                "atom count exceeds partition cap " +
                    std::to_string(caps.partition_atom_max));

  std::vector<std::vector<std::vector<int>>> groupings;
  std::vector<std::vector<int>> current;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == atoms.size()) {
      groupings.push_back(current);
      return;
    }
    // Index-based: the nested call may reallocate `current`.
    for (std::size_t gi = 0; gi < current.size(); ++gi) {
      current[gi].push_back(atoms[i]);
      rec(i + 1);
      current[gi].pop_back();
    }
    current.push_back({atoms[i]});
    rec(i + 1);
    current.pop_back();
  };
  rec(0);

  for (const auto& g : groupings) {
    Partition p;
    for (const auto& group : g) {
      int blk = C.lattice->bottom;
      for (int atom : group) blk = C.lattice->join(blk, atom);
      p.blocks.push_back(blk);
    }
    std::sort(p.blocks.begin(), p.blocks.end());
    validate_partition(C, p);
    P.items.push_back(std::move(p));
  }
  std::sort(P.items.begin(), P.items.end(),
            [](const Partition& a, const Partition& b) {
              if (a.blocks.size() != b.blocks.size())
                return a.blocks.size() < b.blocks.size();
              return a.blocks < b.blocks;
            });
  P.items.erase(std::unique(P.items.begin(), P.items.end()), P.items.end());

  const int m = static_cast<int>(P.items.size());
  P.leq.assign(m, std::vector<uint8_t>(m, 0));
  auto block_set = [&](int idx) { return C.carrier[idx].members; };
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      bool refines = true;
      for (int bq : P.items[q].blocks) {
        bool inside = false;
        for (int bp : P.items[p].blocks)
          if (block_set(bq).is_subset_of(block_set(bp))) {
            inside = true;
            break;
          }
        if (!inside) {
          refines = false;
          break;
        }
      }
      P.leq[p][q] = refines ? 1 : 0;
    }
  for (int p = 0; p < m; ++p) {
    if (P.items[p].blocks.size() == 1) P.coarsest = p;
    if (P.items[p].blocks.size() == atoms.size()) P.finest = p;
  }
  // The atom partition refines everything: the poset is directed with a
  // maximum.
  for (int p = 0; p < m; ++p)
    if (!P.leq[p][P.finest])
      throw Error(Errc::validation_error, "atom partition is not the maximum");
  return P;
}

/// k_pq: each block of the finer partition q lies inside exactly one block
/// of p; returns that assignment as q-position -> p-position.
inline std::vector<int> refinement_block_map(const CoannAlgebra& C,
                                             const Partition& p,
                                             const Partition& q) {
  std::vector<int> k(q.blocks.size(), -1);
  for (std::size_t jq = 0; jq < q.blocks.size(); ++jq) {
    for (std::size_t jp = 0; jp < p.blocks.size(); ++jp)
      if (C.carrier[q.blocks[jq]].members.is_subset_of(
              C.carrier[p.blocks[jp]].members)) {
        if (k[jq] >= 0)
          throw Error(Errc::validation_error, "refinement block not unique");
        k[jq] = static_cast<int>(jp);
      }
    if (k[jq] < 0)
      throw Error(Errc::not_refinement, "block without a containing block");
  }
  return k;
}

/// A_C = product over blocks C of A/(C^T), blocks in canonical carrier order.
struct PartitionProduct {
  Partition partition;
  AlgebraPtr algebra;
  std::vector<Quotient> factors;  // one per block
  std::vector<int> radices;

  int encode(const std::vector<int>& coords) const {
    int idx = 0;
    for (std::size_t i = 0; i < radices.size(); ++i)
      idx = idx * radices[i] + coords[i];
    return idx;
  }
  std::vector<int> decode(int idx) const {
    std::vector<int> out(radices.size());
    for (std::size_t i = radices.size(); i-- > 0;) {
      out[i] = idx % radices[i];
      idx /= radices[i];
    }
    return out;
  }
};

inline PartitionProduct partition_product(const AlgebraPtr& A,
                                          const CoannAlgebra& C,
                                          const Partition& p,
                                          const Caps& caps = {}) {
  validate_partition(C, p);
  PartitionProduct PP;
  PP.partition = p;
  if (p.blocks.empty()) {
    // Empty product: the one-element algebra of the matching kind.
    OpTable one(1, 0);
    PP.algebra = A->is_residuated()
                     ? make_residuated_lattice(A->name + ".hull", {"1"}, one,
                                               one, one, one)
                     : make_bounded_lattice(A->name + ".hull", {"1"}, one, one);
    return PP;
  }
  std::vector<AlgebraPtr> fs;
  for (int blk : p.blocks) {
    Filter blk_coann = coannihilator(C.carrier[blk]);
    PP.factors.push_back(quotient_by(A, blk_coann));
    fs.push_back(PP.factors.back().algebra);
    PP.radices.push_back(fs.back()->n);
  }
  Product prod = direct_product(fs, caps);
  PP.algebra = prod.algebra;
  return PP;
}

/// Transition A_p -> A_q for p <= q: the coordinate at a q-block copies the
/// coordinate of the unique containing p-block, re-quotiented (valid because
/// D inside C gives C^T inside D^T). Verified injective.
inline Morphism transition_morphism(const AlgebraPtr& A, const CoannAlgebra& C,
                                    const Partition& p, const Partition& q,
                                    const PartitionProduct& Ap,
                                    const PartitionProduct& Aq) {
  std::vector<int> k;
  try {
    k = refinement_block_map(C, p, q);
  } catch (const Error&) {
    throw Error(Errc::not_refinement, "partitions are not comparable");
  }
  Morphism f{Ap.algebra, Aq.algebra, std::vector<int>(Ap.algebra->n),
             morph_kind_of(*A)};
  for (int x = 0; x < Ap.algebra->n; ++x) {
    auto cp = Ap.decode(x);
    std::vector<int> cq(q.blocks.size());
    for (std::size_t jq = 0; jq < q.blocks.size(); ++jq) {
      int rep = p.blocks.empty()
                    ? A->top
                    : Ap.factors[k[jq]].representative[cp[k[jq]]];
      cq[jq] = Aq.factors[jq].class_of[rep];
    }
    f.map[x] = Aq.encode(cq);
  }
  require_morphism(f);
  if (!is_injective(f))
    throw Error(Errc::validation_error, "transition morphism not injective");
  return f;
}

/// The strongly co-Stone hull: the inductive limit of the partition products
/// over the refinement poset. The poset is finite and directed with the atom
/// partition as maximum, so the product at the atom partition is the limit;
/// that is the fast path. At desk scale the generic disjoint-union limit is
/// also built and the canonical isomorphism between the two is verified.
struct Hull {
  AlgebraPtr source;
  std::shared_ptr<const CoannAlgebra> coann;
  PartitionPoset partitions;
  std::vector<PartitionProduct> products;  // per partition
  AlgebraPtr algebra;                      // the hull (finest product)
  Morphism embedding;                      // injective morphism source -> hull
  bool reference_path_ran = false;
};

inline Hull build_hull(const AlgebraPtr& A, const Caps& caps = {}) {
  Hull H;
  H.source = A;
  H.coann = std::make_shared<CoannAlgebra>(coann_algebra(A, caps));
  H.partitions = enumerate_partitions(H.coann, caps);
  for (const auto& p : H.partitions.items)
    H.products.push_back(partition_product(A, *H.coann, p, caps));
  const PartitionProduct& fine = H.products[H.partitions.finest];
  H.algebra = fine.algebra;

  H.embedding = Morphism{A, H.algebra, std::vector<int>(A->n), morph_kind_of(*A)};
  for (int a = 0; a < A->n; ++a) {
    std::vector<int> coords(fine.partition.blocks.size());
    for (std::size_t j = 0; j < coords.size(); ++j)
      coords[j] = fine.factors[j].class_of[a];
    H.embedding.map[a] = fine.encode(coords);
  }
  require_morphism(H.embedding);
  if (!is_injective(H.embedding))
    throw Error(Errc::validation_error, "hull embedding not injective");

  // Reference path: the generic inductive limit of the whole partition
  // system must agree with the finest product.
  long long total = 0;
  for (const auto& p : H.products) total += p.algebra->n;
  if (static_cast<int>(H.partitions.items.size()) <= caps.limit_reference_max &&
      total <= caps.product_max) {
    InductiveSystem S;
    for (const auto& p : H.products) S.objects.push_back(p.algebra);
    S.leq = H.partitions.leq;
    const int m = static_cast<int>(H.partitions.items.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (S.leq[i][j])
          S.transitions.emplace(std::make_pair(i, j),
                                transition_morphism(A, *H.coann,
                                                    H.partitions.items[i],
                                                    H.partitions.items[j],
                                                    H.products[i], H.products[j]));
    LimitResult lim = inductive_limit(S, caps);
    if (lim.max_index != H.partitions.finest)
      throw Error(Errc::validation_error, "partition poset maximum mismatch");
    // The recorded limit iso lands in the finest product; the embedding must
    // factor through it: iso(limit-class of eps(a)) = eps(a).
    for (int a = 0; a < A->n; ++a)
      if (lim.iso_to_max.map[lim.injections[H.partitions.finest]
                                 .map[H.embedding.map[a]]] != H.embedding.map[a])
        throw Error(Errc::validation_error,
                    "reference-path embedding disagrees with fast path");
    H.reference_path_ran = true;
  }
  return H;
}

/// The element [(0/C^T, 1/C)] of the hull: class of 0 on every atom below C,
/// class of 1 on every atom below C^T.
inline int hull_block_indicator(const Hull& H, int carrier_index) {
  const PartitionProduct& fine = H.products[H.partitions.finest];
  const CoannAlgebra& C = *H.coann;
  const IndexSet& block = C.carrier[carrier_index].members;
  std::vector<int> coords(fine.partition.blocks.size());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    bool below = C.carrier[fine.partition.blocks[j]].members.is_subset_of(block);
    coords[j] = fine.factors[j].class_of[below ? H.source->bottom : H.source->top];
  }
  return fine.encode(coords);
}

/// eps(a)^star = [(0/a^TT, 1/a^T)], the Boolean-center generator of the
/// co-annihilator of eps(a) inside the hull; both facts are verified.
inline int embedded_coann_generator(const Hull& H, int a) {
  const AlgebraPtr& A = H.source;
  int at = H.coann->coann_of_element[a];
  int e = hull_block_indicator(H, at);

  const AlgebraPtr& T = H.algebra;
  if (T->is_residuated()) {
    if (T->join(e, T->neg(e)) != T->top)
      throw Error(Errc::validation_error,
                  "eps(a)^star outside the Boolean center at " + A->label(a));
  } else {
    bool complemented = false;
    for (int z = 0; z < T->n && !complemented; ++z)
      complemented = T->join(e, z) == T->top && T->meet(e, z) == T->bottom;
    if (!complemented)
      throw Error(Errc::validation_error,
                  "eps(a)^star is not complemented at " + A->label(a));
  }
  IndexSet coann(T->n);
  for (int z = 0; z < T->n; ++z)
    if (T->join(z, H.embedding.map[a]) == T->top) coann.set(z);
  if (principal_filter(T, e).members != coann)
    throw Error(Errc::validation_error,
                "eps(a)^T is not generated by eps(a)^star at " + A->label(a));
  return e;
}

/// x = meet over blocks of (eps(a_i) v e_i) with e_i the block indicators:
/// a_i is the least representative of the i-th coordinate class.
struct HullDecomposition {
  std::vector<std::pair<int, int>> parts;  // (a_i in source, e_i in hull)
};

inline HullDecomposition decompose(const Hull& H, int x) {
  const PartitionProduct& fine = H.products[H.partitions.finest];
  const AlgebraPtr& T = H.algebra;
  HullDecomposition D;
  auto coords = fine.decode(x);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    int a = fine.factors[j].representative[coords[j]];
    int e = hull_block_indicator(H, fine.partition.blocks[j]);
    D.parts.emplace_back(a, e);
  }
  for (std::size_t i = 0; i < D.parts.size(); ++i)
    for (std::size_t j = i + 1; j < D.parts.size(); ++j)
      if (T->join(D.parts[i].second, D.parts[j].second) != T->top)
        throw Error(Errc::validation_error, "indicator pair does not join to 1");
  int all = T->top;
  for (auto [a, e] : D.parts) all = T->meet(all, e);
  if (!D.parts.empty() && all != T->bottom)
    throw Error(Errc::validation_error, "indicators do not meet to 0");
  int rebuilt = T->top;
  for (auto [a, e] : D.parts)
    rebuilt = T->meet(rebuilt, T->join(H.embedding.map[a], e));
  if (rebuilt != x)
    throw Error(Errc::validation_error,
                "decomposition does not reproduce the element");
  return D;
}

/// Every non-top hull element lies below some eps(y) < 1.
struct CodensityReport {
  bool ok = true;
  std::vector<int> witness;  // per hull element: the y, or -1
  int counterexample = -1;
};

inline CodensityReport codensity_check(const Hull& H) {
  const AlgebraPtr& T = H.algebra;
  CodensityReport R;
  R.witness.assign(T->n, -1);
  for (int x = 0; x < T->n; ++x) {
    if (x == T->top) continue;
    for (int y = 0; y < H.source->n; ++y) {
      int ey = H.embedding.map[y];
      if (ey != T->top && T->leq(x, ey)) {
        R.witness[x] = y;
        break;
      }
    }
    if (R.witness[x] < 0) {
      R.ok = false;
      R.counterexample = x;
    }
  }
  return R;
}

// ---------------------------------------------------------------------------
// Hull lemma suite
// ---------------------------------------------------------------------------

/// The identities the hull construction must satisfy on one algebra:
/// injectivity of the embedding, the indicator join/meet identities, the
/// generator law for every embedded co-annihilator, the full decomposition,
/// co-density, and the co-Stone verdicts for the hull itself.
inline Report hull_lemma_suite(const AlgebraPtr& A, const Caps& caps = {}) {
  Report out;
  Hull H = build_hull(A, caps);
  const AlgebraPtr& T = H.algebra;
  const CoannAlgebra& C = *H.coann;

  out.add("embedding is an injective morphism",
          check_morphism(H.embedding) && is_injective(H.embedding));

  // {C, C^T} is a partition (after dropping bottom blocks) and C^TT = C.
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < C.size() && ok; ++i) {
      if (C.complement[C.complement[i]] != i) {
        ok = false;
        w = C.carrier[i].str();
        break;
      }
      std::vector<int> blocks;
      if (i != C.lattice->bottom) blocks.push_back(i);
      if (C.complement[i] != C.lattice->bottom) blocks.push_back(C.complement[i]);
      std::sort(blocks.begin(), blocks.end());
      try {
        validate_partition(C, Partition{blocks});
      } catch (const Error& e) {
        ok = false;
        w = C.carrier[i].str() + ": " + e.what();
      }
    }
    out.add("{C, C^T} is a partition and C^TT = C", ok, w);
  }

  // Indicator join law: ind(C) v ind(D) = ind(C cap D).
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < C.size() && ok; ++i)
      for (int j = 0; j < C.size() && ok; ++j) {
        int meet_idx = C.index_of(C.carrier[i].members & C.carrier[j].members);
        if (T->join(hull_block_indicator(H, i), hull_block_indicator(H, j)) !=
            hull_block_indicator(H, meet_idx)) {
          ok = false;
          w = C.carrier[i].str() + "," + C.carrier[j].str();
        }
      }
    out.add("indicator join identity over CoAnn pairs", ok, w);
  }

  // Indicator intersection law over all nonempty carrier subsets.
  {
    bool ok = true;
    std::string w;
    const int m = C.size();
    if (m > 16)
      throw Error(Errc::cap_exceeded,
                  "co-annihilator carrier too large for the subset sweep");
    for (uint64_t mask = 1; mask < (uint64_t(1) << m) && ok; ++mask) {
      IndexSet inter(A->n);
      inter.set();
      IndexSet expected(T->n);
      bool first = true;
      for (int i = 0; i < m; ++i) {
        if (!(mask >> i & 1)) continue;
        inter &= C.carrier[i].members;
        auto pf = principal_filter(T, hull_block_indicator(H, i)).members;
        expected = first ? pf : (expected & pf);
        first = false;
      }
      int idx = C.index_of(inter);
      if (idx < 0 ||
          principal_filter(T, hull_block_indicator(H, idx)).members != expected) {
        ok = false;
        w = "subset mask " + std::to_string(mask);
      }
    }
    out.add("indicator intersection identity over CoAnn subsets", ok, w);
  }

  // eps(a)^T = <eps(a)^star> with the generator in the center.
  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < A->n && ok; ++a) {
      try {
        embedded_coann_generator(H, a);
      } catch (const Error& e) {
        ok = false;
        w = e.what();
      }
    }
    out.add("embedded co-annihilator generators", ok, w);
  }

  // Every hull element decomposes and reproduces.
  {
    bool ok = true;
    std::string w;
    for (int x = 0; x < T->n && ok; ++x) {
      try {
        decompose(H, x);
      } catch (const Error& e) {
        ok = false;
        w = T->label(x) + ": " + e.what();
      }
    }
    out.add("hull element decomposition", ok, w);
  }

  {
    auto cd = codensity_check(H);
    out.add("source co-dense in hull", cd.ok,
            cd.ok ? "" : T->label(cd.counterexample));
  }

  {
    StoneReport S = classify_stone(T, caps);
    out.add("hull co-Stone", S.co_stone);
    out.add("hull strongly co-Stone", S.strongly_co_stone);
  }

  out.add("fast path agrees with generic inductive limit", H.reference_path_ran);
  return out;
}

/// The reticulation of the hull against the hull of the reticulation: the
/// per-block quotient isomorphisms assemble into a bounded-lattice
/// isomorphism, cross-validated by the generic isomorphism search.
inline Report hull_preservation_check(const AlgebraPtr& A, const Caps& caps = {}) {
  Report out;
  Hull H = build_hull(A, caps);
  Reticulation RT = reticulate(H.algebra);  // L(hull)
  Reticulation RA = reticulate(A);
  Hull HL = build_hull(RA.lattice, caps);   // hull of L(A), lattice signature

  // Match lattice-side blocks with source-side blocks through mu = lambda(-).
  const PartitionProduct& fineA = H.products[H.partitions.finest];
  const PartitionProduct& fineL = HL.products[HL.partitions.finest];
  const std::size_t k = fineA.partition.blocks.size();
  bool blocks_match = fineL.partition.blocks.size() == k;
  std::vector<int> l_to_a(k, -1);  // L-side block position -> A-side position
  if (blocks_match)
    for (std::size_t jl = 0; jl < k; ++jl) {
      const IndexSet& lblk =
          HL.coann->carrier[fineL.partition.blocks[jl]].members;
      for (std::size_t ja = 0; ja < k; ++ja)
        if (lambda_image(RA, H.coann->carrier[fineA.partition.blocks[ja]].members) ==
            lblk) {
          l_to_a[jl] = static_cast<int>(ja);
          break;
        }
      if (l_to_a[jl] < 0) blocks_match = false;
    }
  if (blocks_match) {
    auto perm = l_to_a;
    std::sort(perm.begin(), perm.end());
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i)) blocks_match = false;
  }
  out.add("mu matches the finest partitions", blocks_match);
  if (!blocks_match) return out;

  // phi(xi): pick a source element a with lambda(a) in the coordinate class
  // at each block, assemble (a_C/C^T) in the hull, then reticulate. Checked
  // independent of every representative choice.
  std::vector<int> phi(fineL.algebra->n, -1);
  bool well = true;
  std::string w;
  for (int xi = 0; xi < fineL.algebra->n && well; ++xi) {
    auto lcoords = fineL.decode(xi);
    std::vector<std::vector<int>> choices(k);
    for (std::size_t jl = 0; jl < k && well; ++jl) {
      const Quotient& LQ = fineL.factors[jl];
      for (int a = 0; a < A->n; ++a)
        if (LQ.class_of[RA.map[a]] == lcoords[jl]) choices[jl].push_back(a);
      if (choices[jl].empty()) {
        well = false;
        w = "no source representative";
      }
    }
    if (!well) break;
    // First choice defines phi; all other choices must agree.
    std::vector<std::size_t> pick(k, 0);
    auto image_of = [&](const std::vector<std::size_t>& sel) {
      std::vector<int> acoords(k);
      for (std::size_t jl = 0; jl < k; ++jl) {
        int a = choices[jl][sel[jl]];
        acoords[l_to_a[jl]] = fineA.factors[l_to_a[jl]].class_of[a];
      }
      return RT.map[fineA.encode(acoords)];
    };
    phi[xi] = image_of(pick);
    for (std::size_t jl = 0; jl < k && well; ++jl)
      for (std::size_t c = 1; c < choices[jl].size() && well; ++c) {
        auto sel = pick;
        sel[jl] = c;
        if (image_of(sel) != phi[xi]) {
          well = false;
          w = "representative choice changes the image at " +
              fineL.algebra->label(xi);
        }
      }
  }
  out.add("blockwise map well-defined", well, w);
  if (!well) return out;

  Morphism iso{fineL.algebra, RT.lattice, phi, MorphKind::bounded_lattice};
  std::string why;
  out.add("blockwise map is a bounded-lattice morphism", check_morphism(iso, &why), why);
  out.add("blockwise map bijective", is_injective(iso) && is_surjective(iso));
  auto search = find_isomorphism(HL.algebra, RT.lattice, caps);
  out.add("isomorphism search cross-validation", search.has_value());
  return out;
}

}  // namespace costone
