#include <catch2/catch_amalgamated.hpp>

#include "costone/corpus.hpp"
#include "costone/hull.hpp"
#include "costone/suites.hpp"
#include "helpers.hpp"

using namespace costone;
using namespace costone::test;

namespace {

// Hull elements of lrex0_5 as grid coordinates: first coordinate is the class
// in A/b^T (quotient by {c,1}), second the class in A/c^T (quotient by {b,1});
// coordinate values 0 < a < 1 encode as 0,1,2. Index = 3*i + j.
int grid(const std::string& name) {
  auto enc = [](char c) { return c == '0' ? 0 : (c == 'a' ? 1 : 2); };
  if (name == "0") return 0;
  if (name == "1") return 8;
  return 3 * enc(name[1]) + enc(name[2]);
}

}  // namespace

TEST_CASE("partition enumeration") {
  SECTION("lrex0_5 has exactly the coarse and the atomic partition") {
    auto C = std::make_shared<CoannAlgebra>(coann_algebra(corpus_get("lrex0_5")));
    PartitionPoset P = enumerate_partitions(C);
    REQUIRE(P.items.size() == 2);
    CHECK(P.items[P.coarsest].blocks.size() == 1);
    CHECK(P.items[P.finest].blocks.size() == 2);
    CHECK(P.leq[P.coarsest][P.finest]);
    CHECK_FALSE(P.leq[P.finest][P.coarsest]);
  }
  SECTION("a two-element base has the single one-block partition") {
    auto C = std::make_shared<CoannAlgebra>(coann_algebra(corpus_get("lrex0")));
    CHECK(enumerate_partitions(C).items.size() == 1);
  }
  SECTION("a three-atom base has Bell(3) = 5 partitions") {
    auto C = std::make_shared<CoannAlgebra>(coann_algebra(make_boolean(8)));
    REQUIRE(C->atoms.size() == 3);
    PartitionPoset P = enumerate_partitions(C);
    CHECK(P.items.size() == 5);
    // Oracle: the five set partitions of {t1,t2,t3} listed by hand.
    // {all}, {t1|t2 t3}, {t2|t1 t3}, {t3|t1 t2}, {t1|t2|t3}
    std::set<std::size_t> block_counts;
    int pairs = 0;
    for (const auto& p : P.items) {
      block_counts.insert(p.blocks.size());
      if (p.blocks.size() == 2) ++pairs;
    }
    CHECK(block_counts == std::set<std::size_t>{1, 2, 3});
    CHECK(pairs == 3);
  }
  SECTION("the trivial base yields the empty partition") {
    auto C = std::make_shared<CoannAlgebra>(coann_algebra(trivial_algebra()));
    PartitionPoset P = enumerate_partitions(C);
    REQUIRE(P.items.size() == 1);
    CHECK(P.items[0].blocks.empty());
  }
  SECTION("the atom cap is enforced") {
    Caps caps;
    caps.partition_atom_max = 2;
    auto C = std::make_shared<CoannAlgebra>(coann_algebra(make_boolean(8)));
    CHECK_THROWS_MATCHES(enumerate_partitions(C, caps), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::cap_exceeded;
                         }));
  }
}

TEST_CASE("partition products") {
  AlgebraPtr A = corpus_get("lrex0_5");
  CoannAlgebra C = coann_algebra(A);
  auto P = enumerate_partitions(std::make_shared<CoannAlgebra>(C));
  SECTION("the atomic partition gives the nine-element grid") {
    PartitionProduct PP = partition_product(A, C, P.items[P.finest]);
    CHECK(PP.algebra->n == 9);
    REQUIRE(PP.factors.size() == 2);
    CHECK(PP.factors[0].algebra->n == 3);
    CHECK(PP.factors[1].algebra->n == 3);
    // First factor is the quotient by {c,1}: classes {0}, {a,b}, {c,1}.
    CHECK(label_set(A, PP.factors[0].by.members) ==
          std::set<std::string>{"c", "1"});
    CHECK(PP.factors[0].class_of[el(A, "a")] ==
          PP.factors[0].class_of[el(A, "b")]);
  }
  SECTION("the coarse partition is the identity quotient") {
    PartitionProduct PP = partition_product(A, C, P.items[P.coarsest]);
    CHECK(PP.algebra->n == A->n);
    CHECK(find_isomorphism(PP.algebra, A).has_value());
  }
  SECTION("lrex0's only partition reproduces lrex0") {
    AlgebraPtr A0 = corpus_get("lrex0");
    CoannAlgebra C0 = coann_algebra(A0);
    auto P0 = enumerate_partitions(std::make_shared<CoannAlgebra>(C0));
    PartitionProduct PP = partition_product(A0, C0, P0.items[0]);
    CHECK(find_isomorphism(PP.algebra, A0).has_value());
  }
}

TEST_CASE("transition morphisms") {
  AlgebraPtr A = corpus_get("lrex0_5");
  CoannAlgebra C = coann_algebra(A);
  auto P = enumerate_partitions(std::make_shared<CoannAlgebra>(C));
  PartitionProduct coarse = partition_product(A, C, P.items[P.coarsest]);
  PartitionProduct fine = partition_product(A, C, P.items[P.finest]);

  SECTION("coarse to fine re-quotients both coordinates") {
    Morphism t = transition_morphism(A, C, P.items[P.coarsest],
                                     P.items[P.finest], coarse, fine);
    CHECK(is_injective(t));
    for (int a = 0; a < A->n; ++a) {
      // The coarse product is A/{1}; its classes are singletons in the same
      // element order, so index a is the class of a.
      std::vector<int> expect = {fine.factors[0].class_of[a],
                                 fine.factors[1].class_of[a]};
      CHECK(t.map[a] == fine.encode(expect));
    }
  }
  SECTION("identity transition") {
    Morphism t = transition_morphism(A, C, P.items[P.finest], P.items[P.finest],
                                     fine, fine);
    for (int x = 0; x < fine.algebra->n; ++x) CHECK(t.map[x] == x);
  }
  SECTION("distinct elements stay distinct across every transition") {
    Morphism t = transition_morphism(A, C, P.items[P.coarsest],
                                     P.items[P.finest], coarse, fine);
    for (int x = 0; x < coarse.algebra->n; ++x)
      for (int y = x + 1; y < coarse.algebra->n; ++y)
        CHECK(t.map[x] != t.map[y]);
  }
  SECTION("incomparable partitions are rejected") {
    AlgebraPtr B8 = make_boolean(8);
    CoannAlgebra C8 = coann_algebra(B8);
    auto P8 = enumerate_partitions(std::make_shared<CoannAlgebra>(C8));
    std::vector<int> two_block;
    for (std::size_t i = 0; i < P8.items.size(); ++i)
      if (P8.items[i].blocks.size() == 2) two_block.push_back(static_cast<int>(i));
    REQUIRE(two_block.size() == 3);
    PartitionProduct p1 = partition_product(B8, C8, P8.items[two_block[0]]);
    PartitionProduct p2 = partition_product(B8, C8, P8.items[two_block[1]]);
    CHECK_THROWS_MATCHES(
        transition_morphism(B8, C8, P8.items[two_block[0]],
                            P8.items[two_block[1]], p1, p2),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::not_refinement;
        }));
  }
  SECTION("transitions compose functorially over a three-level poset") {
    AlgebraPtr B8 = make_boolean(8);
    CoannAlgebra C8 = coann_algebra(B8);
    auto P8 = enumerate_partitions(std::make_shared<CoannAlgebra>(C8));
    std::vector<PartitionProduct> prods;
    for (const auto& p : P8.items) prods.push_back(partition_product(B8, C8, p));
    for (std::size_t i = 0; i < P8.items.size(); ++i)
      for (std::size_t j = 0; j < P8.items.size(); ++j)
        for (std::size_t k = 0; k < P8.items.size(); ++k) {
          if (!P8.leq[i][j] || !P8.leq[j][k]) continue;
          Morphism ij = transition_morphism(B8, C8, P8.items[i], P8.items[j],
                                            prods[i], prods[j]);
          Morphism jk = transition_morphism(B8, C8, P8.items[j], P8.items[k],
                                            prods[j], prods[k]);
          Morphism ik = transition_morphism(B8, C8, P8.items[i], P8.items[k],
                                            prods[i], prods[k]);
          CHECK(compose(jk, ij).map == ik.map);
        }
  }
}

TEST_CASE("the hull of lrex0_5 matches the worked nine-element example") {
  AlgebraPtr A = corpus_get("lrex0_5");
  Hull H = build_hull(A);
  const AlgebraPtr& T = H.algebra;
  REQUIRE(T->n == 9);
  CHECK(H.coann->size() == 4);
  CHECK(H.partitions.items.size() == 2);
  CHECK(H.reference_path_ran);

  SECTION("the monoid operation is the meet and the order is the 3x3 grid") {
    CHECK(T->times_table.cells == T->meet_table.cells);
    auto covers = cover_relation(*T);
    CHECK(covers.size() == 12);  // 3x3 grid cover count
  }

  SECTION("the implication table is forced by residuation") {
    // Independent oracle: with times = meet, x->y is the greatest z with
    // z ^ x <= y, computable from the order alone.
    for (int x = 0; x < 9; ++x)
      for (int y = 0; y < 9; ++y) {
        int best = -1;
        for (int z = 0; z < 9; ++z)
          if (T->leq(T->meet(z, x), y) && (best < 0 || T->leq(best, z)))
            best = z;
        for (int z = 0; z < 9; ++z)
          if (T->leq(T->meet(z, x), y)) REQUIRE(T->leq(z, best));
        CHECK(T->implies(x, y) == best);
      }
  }

  SECTION("the full implication table, frozen") {
    // Rows/columns in the order 0, x0a, x01, xa0, xaa, xa1, x10, x1a, 1.
    // The negations of x0a, x01, xa0, x10 are the cells most easily
    // miscopied as 0; residuation forbids that (x10 ^ x01 = 0 forces
    // x10 <= neg(x01)), so they are x10, x10, x01, x01 respectively.
    const char* names[9] = {"0", "x0a", "x01", "xa0", "xaa",
                            "xa1", "x10", "x1a", "1"};
    const char* table[9][9] = {
        {"1", "1", "1", "1", "1", "1", "1", "1", "1"},
        {"x10", "1", "1", "x10", "1", "1", "x10", "1", "1"},
        {"x10", "x1a", "1", "x10", "x1a", "1", "x10", "x1a", "1"},
        {"x01", "x01", "x01", "1", "1", "1", "1", "1", "1"},
        {"0", "x01", "x01", "x10", "1", "1", "x10", "1", "1"},
        {"0", "x0a", "x01", "x10", "x1a", "1", "x10", "x1a", "1"},
        {"x01", "x01", "x01", "xa1", "xa1", "xa1", "1", "1", "1"},
        {"0", "x01", "x01", "xa0", "xa1", "xa1", "x10", "1", "1"},
        {"0", "x0a", "x01", "xa0", "xaa", "xa1", "x10", "x1a", "1"}};
    for (int r = 0; r < 9; ++r)
      for (int c = 0; c < 9; ++c)
        CHECK(T->implies(grid(names[r]), grid(names[c])) == grid(table[r][c]));
  }

  SECTION("embedding values") {
    CHECK(H.embedding.map[el(A, "0")] == grid("0"));
    CHECK(H.embedding.map[el(A, "a")] == grid("xaa"));
    CHECK(H.embedding.map[el(A, "b")] == grid("xa1"));
    CHECK(H.embedding.map[el(A, "c")] == grid("x1a"));
    CHECK(H.embedding.map[el(A, "1")] == grid("1"));
  }
}

TEST_CASE("hulls of already strongly co-Stone algebras collapse") {
  for (std::string key : {"lrex0", "chain:4", "lrex4"}) {
    AlgebraPtr A = corpus_get(key);
    Hull H = build_hull(A);
    CHECK(H.algebra->n == A->n);
    CHECK(find_isomorphism(H.algebra, A).has_value());
  }
}

TEST_CASE("embedded co-annihilator generators") {
  AlgebraPtr A = corpus_get("lrex0_5");
  Hull H = build_hull(A);
  const AlgebraPtr& T = H.algebra;

  SECTION("the generator for b is x10 and generates the brute-forced co-annihilator") {
    int e = embedded_coann_generator(H, el(A, "b"));
    CHECK(e == grid("x10"));
    IndexSet coann(T->n);
    for (int z = 0; z < T->n; ++z)
      if (T->join(z, H.embedding.map[el(A, "b")]) == T->top) coann.set(z);
    CHECK(principal_filter(T, e).members == coann);
    CHECK(coann.count() == 3);  // {x10, x1a, 1}
  }
  SECTION("elements with trivial co-annihilator get the top generator") {
    CHECK(embedded_coann_generator(H, el(A, "a")) == T->top);
  }
  SECTION("the top element gets the bottom generator") {
    int e = embedded_coann_generator(H, el(A, "1"));
    CHECK(e == T->bottom);
    CHECK(principal_filter(T, e).count() == T->n);
  }
}

TEST_CASE("hull element decomposition on the worked example") {
  AlgebraPtr A = corpus_get("lrex0_5");
  Hull H = build_hull(A);
  SECTION("xa0 splits into (a, x01) and (0, x10)") {
    HullDecomposition D = decompose(H, grid("xa0"));
    REQUIRE(D.parts.size() == 2);
    CHECK(A->labels[D.parts[0].first] == "a");
    CHECK(D.parts[0].second == grid("x01"));
    CHECK(A->labels[D.parts[1].first] == "0");
    CHECK(D.parts[1].second == grid("x10"));
  }
  SECTION("every hull element decomposes and reproduces itself") {
    for (int x = 0; x < H.algebra->n; ++x) CHECK_NOTHROW(decompose(H, x));
  }
}

TEST_CASE("co-density of the source in its hull") {
  SECTION("lrex0_5 witnesses") {
    AlgebraPtr A = corpus_get("lrex0_5");
    Hull H = build_hull(A);
    CodensityReport R = codensity_check(H);
    CHECK(R.ok);
    CHECK(A->labels[R.witness[grid("x1a")]] == "c");  // eps(c) = x1a < 1
    CHECK(A->labels[R.witness[H.embedding.map[el(A, "a")]]] == "a");
  }
  SECTION("collapsing hulls witness themselves") {
    AlgebraPtr A = corpus_get("lrex0");
    Hull H = build_hull(A);
    CodensityReport R = codensity_check(H);
    CHECK(R.ok);
    for (int x = 0; x < H.algebra->n; ++x)
      if (x != H.algebra->top)
        CHECK(H.algebra->leq(x, H.embedding.map[R.witness[x]]));
  }
}

TEST_CASE("hull lemma suites pass on the whole corpus") {
  for (const auto& key : corpus_keys())
    CHECK(hull_lemma_suite(corpus_get(key)).all_pass());
  CHECK(hull_lemma_suite(corpus_get("chain:3")).all_pass());
  CHECK(hull_lemma_suite(corpus_get("boolean:8")).all_pass());
  CHECK(hull_lemma_suite(trivial_algebra()).all_pass());
}

TEST_CASE("a product hull runs the full fifteen-partition system") {
  // lrex0_5 x lrex3 has a sixteen-member CoAnn with four atoms, so the
  // partition poset is Bell(4) = 15 deep and the reference-path limit
  // quotients a disjoint union across all of it.
  Product P = direct_product({corpus_get("lrex0_5"), corpus_get("lrex3")});
  Hull H = build_hull(P.algebra);
  CHECK(H.algebra->n == 54);
  CHECK(H.partitions.items.size() == 15);
  CHECK(H.coann->atoms.size() == 4);
  CHECK(H.reference_path_ran);
  CHECK(hull_lemma_suite(P.algebra).all_pass());
}

TEST_CASE("the reticulation functor preserves the hull") {
  for (std::string key :
       {"lrex0", "lrex0_5", "chain:3", "lrex3", "lrex4", "boolean:8"}) {
    Report rep = hull_preservation_check(corpus_get(key));
    INFO(key);
    CHECK(rep.all_pass());
  }
  SECTION("including a limit-preservation pass over a deeper system") {
    CHECK(limit_preservation(partition_system(corpus_get("boolean:8"))).all_pass());
  }
  SECTION("both routes land on the 3x3 grid for lrex0_5") {
    Hull H = build_hull(corpus_get("lrex0_5"));
    Reticulation RT = reticulate(H.algebra);
    Product grid33 = direct_product({make_chain(3), make_chain(3)});
    CHECK(find_isomorphism(RT.lattice, lattice_reduct(grid33.algebra)).has_value());
  }
}
