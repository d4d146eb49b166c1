#include <catch2/catch_amalgamated.hpp>

#include "costone/coann.hpp"
#include "costone/corpus.hpp"
#include "helpers.hpp"

using namespace costone;
using namespace costone::test;

namespace {

// Oracle: complemented elements by direct pair search over the lattice order.
std::set<std::string> oracle_center(const AlgebraPtr& A) {
  std::set<std::string> out;
  for (int a = 0; a < A->n; ++a)
    for (int b = 0; b < A->n; ++b)
      if (A->join(a, b) == A->top && A->meet(a, b) == A->bottom)
        out.insert(A->labels[a]);
  return out;
}

}  // namespace

TEST_CASE("Boolean centers") {
  SECTION("lrex0 has only the bounds") {
    AlgebraPtr A = corpus_get("lrex0");
    BooleanCenter B = boolean_center(A);
    std::set<std::string> got;
    for (int e : B.members) got.insert(A->labels[e]);
    CHECK(got == std::set<std::string>{"0", "1"});
  }

  SECTION("lrex3 against the complement-search oracle") {
    AlgebraPtr A = corpus_get("lrex3");
    BooleanCenter B = boolean_center(A);
    std::set<std::string> got;
    for (int e : B.members) got.insert(A->labels[e]);
    CHECK(got == std::set<std::string>{"0", "a", "d", "1"});
    CHECK(got == oracle_center(A));
    CHECK(B.complement[el(A, "a")] == el(A, "d"));
    CHECK(B.complement[B.complement[el(A, "a")]] == el(A, "a"));
  }

  SECTION("every element of a Boolean algebra is central") {
    AlgebraPtr B8 = make_boolean(8);
    CHECK(boolean_center(B8).members.size() == 8);
  }

  SECTION("lrex4 has a four-element center") {
    AlgebraPtr A = corpus_get("lrex4");
    BooleanCenter B = boolean_center(A);
    std::set<std::string> got;
    for (int e : B.members) got.insert(A->labels[e]);
    CHECK(got == std::set<std::string>{"0", "b", "f", "1"});
    CHECK(got == oracle_center(A));
  }
}

TEST_CASE("co-annihilators") {
  SECTION("worked values") {
    AlgebraPtr A8 = corpus_get("lrex8");
    CHECK(label_set(A8, coannihilator_of(A8, el(A8, "c")).members) ==
          std::set<std::string>{"d", "1"});
    AlgebraPtr A5 = corpus_get("lrex0_5");
    CHECK(label_set(A5, coannihilator_of(A5, el(A5, "b")).members) ==
          std::set<std::string>{"c", "1"});
    for (const auto& key : corpus_keys()) {
      AlgebraPtr A = corpus_get(key);
      CHECK(coannihilator_of(A, A->top).count() == A->n);
      CHECK(coannihilator_of(A, A->bottom).count() == 1);
    }
  }
  SECTION("the empty set is rejected") {
    CHECK_THROWS_MATCHES(coannihilator(corpus_get("lrex3"), {}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::empty_set;
                         }));
  }
  SECTION("antitone over all subset pairs of a small algebra") {
    AlgebraPtr A = corpus_get("lrex0_5");
    for (uint64_t x = 1; x < (1u << A->n); ++x)
      for (uint64_t y = 1; y < (1u << A->n); ++y) {
        if ((x & y) != x) continue;  // X subset of Y
        std::vector<int> X, Y;
        for (int i = 0; i < A->n; ++i) {
          if (x >> i & 1) X.push_back(i);
          if (y >> i & 1) Y.push_back(i);
        }
        CHECK(coannihilator(A, Y).members.is_subset_of(
            coannihilator(A, X).members));
      }
  }
}

TEST_CASE("the co-annihilator Boolean algebra") {
  SECTION("lrex0_5 has four members") {
    AlgebraPtr A = corpus_get("lrex0_5");
    CoannAlgebra C = coann_algebra(A);
    REQUIRE(C.size() == 4);
    CHECK(label_set(A, C.carrier[0].members) == std::set<std::string>{"1"});
    CHECK(label_set(A, C.carrier[1].members) == std::set<std::string>{"b", "1"});
    CHECK(label_set(A, C.carrier[2].members) == std::set<std::string>{"c", "1"});
    CHECK(C.carrier[3].count() == A->n);
    CHECK(C.atoms.size() == 2);
  }
  SECTION("lrex0 collapses to the two-element Boolean algebra") {
    CoannAlgebra C = coann_algebra(corpus_get("lrex0"));
    CHECK(C.size() == 2);
  }
  SECTION("the trivial algebra has a one-element CoAnn") {
    CHECK(coann_algebra(trivial_algebra()).size() == 1);
  }
  SECTION("double complement is the identity on every corpus algebra") {
    for (const auto& key : corpus_keys()) {
      CoannAlgebra C = coann_algebra(corpus_get(key));
      for (int i = 0; i < C.size(); ++i)
        CHECK(C.complement[C.complement[i]] == i);
    }
  }
  SECTION("boolean(8) has a full carrier of principal up-sets") {
    CHECK(coann_algebra(make_boolean(8)).size() == 8);
  }
}

TEST_CASE("co-Stone classification on the worked examples") {
  SECTION("lrex0: co-Stone and strongly co-Stone but the double-negation identity fails") {
    AlgebraPtr A = corpus_get("lrex0");
    StoneReport S = classify_stone(A);
    CHECK(S.co_stone);
    CHECK(S.strongly_co_stone);
    CHECK_FALSE(S.stone_identity);
    CHECK(A->labels[S.stone_identity_counterexample] == "a");
    CHECK(A->labels[S.stone_identity_value] == "c");
    for (bool h : S.mcond.holds) CHECK(h);
  }
  SECTION("lrex8: the double-negation identity holds but co-Stone fails at c") {
    AlgebraPtr A = corpus_get("lrex8");
    StoneReport S = classify_stone(A);
    CHECK_FALSE(S.co_stone);
    CHECK(S.stone_identity);
    CHECK(A->labels[S.co_stone_counterexample] == "c");
    CHECK(label_set(A, coannihilator_of(A, S.co_stone_counterexample).members) ==
          std::set<std::string>{"d", "1"});
    for (bool h : S.mcond.holds) CHECK_FALSE(h);
  }
  SECTION("lrex0_5: fails at b since its co-annihilator is generated outside the center") {
    AlgebraPtr A = corpus_get("lrex0_5");
    StoneReport S = classify_stone(A);
    CHECK_FALSE(S.co_stone);
    CHECK(A->labels[S.co_stone_counterexample] == "b");
    CHECK(label_set(A, coannihilator_of(A, el(A, "b")).members) ==
          std::set<std::string>{"c", "1"});
    CHECK_FALSE(boolean_center(A).contains(el(A, "c")));
  }
  SECTION("the trivial algebra satisfies everything") {
    StoneReport S = classify_stone(trivial_algebra());
    CHECK(S.co_stone);
    CHECK(S.strongly_co_stone);
    CHECK(S.stone_identity);
    for (bool h : S.mcond.holds) CHECK(h);
  }
}

TEST_CASE("five-condition reports") {
  SECTION("all five flags agree per algebra, witnesses when failing") {
    MCondReport R = m_condition_report(corpus_get("lrex0_5"));
    CHECK(R.agree());
    CHECK_FALSE(R.all());
    CHECK(R.witness[3].find("(b v c)^T") != std::string::npos);
  }
  SECTION("exhaustive subset mode agrees with the canonical carrier") {
    for (std::string key : {"lrex0", "lrex0_5", "lrex3", "lrex4"}) {
      MCondReport R = m_condition_report(corpus_get(key), {}, true);
      CHECK(R.used_exhaustive_subsets);
      CHECK(R.agree());
    }
    CHECK_THROWS_MATCHES(m_condition_report(corpus_get("lrex8"), {}, true),
                         Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::cap_exceeded;
                         }));
  }
}

TEST_CASE("chains are strongly co-Stone") {
  for (int n = 1; n <= 8; ++n) {
    StoneReport S = classify_stone(make_chain(n));
    CHECK(S.co_stone);
    CHECK(S.strongly_co_stone);
  }
}

TEST_CASE("the double-negation identity does not transfer along lambda") {
  AlgebraPtr A = corpus_get("lrex3");
  StoneReport S = classify_stone(A);
  CHECK_FALSE(S.stone_identity);
  CHECK(A->labels[S.stone_identity_counterexample] == "b");
  // neg b v neg neg b = c v b = c
  CHECK(A->labels[S.stone_identity_value] == "c");
  Reticulation R = reticulate(A);
  PseudocomplementReport P = pseudocomplement_identity(R.lattice);
  CHECK(P.pseudocomplemented);
  CHECK(P.star_identity);
}

TEST_CASE("pseudocomplements can be absent") {
  // The diamond with three incomparable midpoints: annihilators of one
  // midpoint have two maximal elements, so no pseudocomplement exists.
  OpTable join(5), meet(5);  // 0 = bottom, 1..3 midpoints, 4 = top
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      if (a == b) { join.at(a, b) = a; meet.at(a, b) = a; continue; }
      int lo = std::min(a, b), hi = std::max(a, b);
      if (lo == 0) { join.at(a, b) = hi; meet.at(a, b) = 0; }
      else if (hi == 4) { join.at(a, b) = 4; meet.at(a, b) = lo; }
      else { join.at(a, b) = 4; meet.at(a, b) = 0; }
    }
  AlgebraPtr M = make_bounded_lattice("m3", {"0", "x", "y", "z", "1"}, join, meet);
  CHECK_FALSE(M->distributive);
  PseudocomplementReport P = pseudocomplement_identity(M);
  CHECK_FALSE(P.pseudocomplemented);
}

TEST_CASE("CoAnn transfers to the reticulation side") {
  SECTION("lrex0_5: four members on each side") {
    CoannTransfer T =
        coann_transfer(corpus_get("lrex0_5"), reticulate(corpus_get("lrex0_5")));
    CHECK(T.checks.all_pass());
    CHECK(T.source_side.size() == 4);
    CHECK(T.lattice_side.size() == 4);
  }
  SECTION("lrex0 and the trivial algebra") {
    CoannTransfer T0 =
        coann_transfer(corpus_get("lrex0"), reticulate(corpus_get("lrex0")));
    CHECK(T0.checks.all_pass());
    CHECK(T0.source_side.size() == 2);
    CoannTransfer Tt = coann_transfer(trivial_algebra(), reticulate(trivial_algebra()));
    CHECK(Tt.checks.all_pass());
    CHECK(Tt.source_side.size() == 1);
  }
}
