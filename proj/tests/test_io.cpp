#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "costone/cli.hpp"
#include "costone/corpus.hpp"
#include "costone/hull.hpp"
#include "costone/io.hpp"
#include "helpers.hpp"

using namespace costone;
using namespace costone::test;

TEST_CASE("serialization round-trips every corpus algebra") {
  for (const auto& key : corpus_keys()) {
    AlgebraPtr A = corpus_get(key);
    AlgebraPtr B = parse_algebra_text(serialize_algebra(*A));
    CHECK(B->labels == A->labels);
    CHECK(B->join_table.cells == A->join_table.cells);
    CHECK(B->meet_table.cells == A->meet_table.cells);
    CHECK(B->times_table.cells == A->times_table.cells);
    CHECK(B->implies_table.cells == A->implies_table.cells);
    // And the serialization itself is stable.
    CHECK(serialize_algebra(*B) == serialize_algebra(*A));
  }
}

TEST_CASE("parser diagnostics") {
  SECTION("malformed JSON") {
    CHECK_THROWS_MATCHES(parse_algebra_text("{oops"), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::parse_error;
                         }));
  }
  SECTION("unknown label in a matrix") {
    CHECK_THROWS_MATCHES(
        parse_algebra_text(R"({"labels":["0","1"],
          "covers":[["0","1"]], "times":"meet",
          "implies":[["1","1"],["z","1"]]})"),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::parse_error;
        }));
  }
  SECTION("missing implies") {
    CHECK_THROWS_MATCHES(
        parse_algebra_text(R"({"labels":["0","1"],
          "covers":[["0","1"]], "times":"meet"})"),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::parse_error;
        }));
  }
  SECTION("covers with two maximal elements do not form a lattice") {
    CHECK_THROWS_MATCHES(
        parse_algebra_text(R"({"labels":["0","a","b"],
          "covers":[["0","a"],["0","b"]], "times":"meet",
          "implies":[["a","a","a"],["a","a","a"],["a","a","a"]]})"),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::validation_error;
        }));
  }
  SECTION("cyclic covers") {
    CHECK_THROWS_MATCHES(
        parse_algebra_text(R"({"labels":["0","1"],
          "covers":[["0","1"],["1","0"]], "times":"meet",
          "implies":[["1","1"],["0","1"]]})"),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::validation_error;
        }));
  }
  SECTION("explicit tables must agree with covers") {
    CHECK_THROWS_MATCHES(
        parse_algebra_text(R"({"labels":["0","1"],
          "covers":[["0","1"]],
          "join":[["0","0"],["0","0"]], "meet":[["0","0"],["0","1"]],
          "times":"meet", "implies":[["1","1"],["0","1"]]})"),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::validation_error;
        }));
  }
  SECTION("tables without covers are accepted") {
    AlgebraPtr A = parse_algebra_text(R"({"labels":["0","1"],
      "join":[["0","1"],["1","1"]], "meet":[["0","0"],["0","1"]],
      "times":"meet", "implies":[["1","1"],["0","1"]]})");
    CHECK(A->n == 2);
  }
}

TEST_CASE("rendering") {
  SECTION("Hasse DOT of lrex3 has 6 nodes and 7 edges") {
    AlgebraPtr A = corpus_get("lrex3");
    // Oracle: covers recomputed from the order directly.
    std::set<std::pair<std::string, std::string>> expected;
    for (int a = 0; a < A->n; ++a)
      for (int b = 0; b < A->n; ++b) {
        if (a == b || !A->leq(a, b)) continue;
        bool mid = false;
        for (int m = 0; m < A->n && !mid; ++m)
          mid = m != a && m != b && A->leq(a, m) && A->leq(m, b);
        if (!mid) expected.insert({A->labels[a], A->labels[b]});
      }
    CHECK(expected == std::set<std::pair<std::string, std::string>>{
                          {"0", "a"}, {"0", "b"}, {"a", "c"}, {"b", "c"},
                          {"b", "d"}, {"c", "1"}, {"d", "1"}});
    std::string dot = render_hasse_dot(*A);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    std::size_t edges = 0, from = 0;
    while ((from = dot.find("->", from)) != std::string::npos) {
      ++edges;
      from += 2;
    }
    CHECK(edges == 7);
    for (const auto& [lo, hi] : expected)
      CHECK(dot.find("\"" + lo + "\" -> \"" + hi + "\"") != std::string::npos);
  }
  SECTION("operation table of the trivial algebra") {
    std::string t = render_op_table(*trivial_algebra(), OpName::times);
    CHECK(t.find("1") != std::string::npos);
    CHECK(std::count(t.begin(), t.end(), '\n') == 3);  // header, rule, one row
  }
  SECTION("lattice reducts have no times table to render") {
    CHECK_THROWS_AS(render_op_table(*lattice_reduct(corpus_get("lrex0")),
                                    OpName::times),
                    Error);
  }
  SECTION("the hull implication table renders one row per element") {
    Hull H = build_hull(corpus_get("lrex0_5"));
    std::string t = render_op_table(*H.algebra, OpName::implies);
    CHECK(std::count(t.begin(), t.end(), '\n') == 2 + 9);
    for (const auto& l : H.algebra->labels)
      CHECK(t.find(l) != std::string::npos);
  }
}

TEST_CASE("command line surface") {
  SECTION("check a corpus algebra") {
    CliResult r = run_cli({"check", "corpus:lrex0"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("valid residuated lattice (5 elements)") != std::string::npos);
  }
  SECTION("classification summary") {
    CliResult r = run_cli({"classify", "corpus:lrex8"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("co-Stone: false") != std::string::npos);
    CHECK(r.out.find("{d,1}") != std::string::npos);
    CHECK(r.out.find("Stone identity: true") != std::string::npos);
  }
  SECTION("hull summary") {
    CliResult r = run_cli({"hull", "corpus:lrex0_5"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("9 elements") != std::string::npos);
    CHECK(r.out.find("strongly co-Stone: true") != std::string::npos);
  }
  SECTION("reticulate prints the carrier and the axiom report") {
    CliResult r = run_cli({"reticulate", "corpus:lrex3"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("4 elements") != std::string::npos);
    CHECK(r.out.find("[pass]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
  }
  SECTION("classify with the exhaustive subset cross-check") {
    CliResult r = run_cli({"classify", "corpus:lrex0_5", "--exhaustive-subsets"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("co-Stone: false") != std::string::npos);
  }
  SECTION("unknown corpus key is a usage error") {
    CliResult r = run_cli({"check", "corpus:nope"});
    CHECK(r.exit_code == 2);
  }
  SECTION("sizes above --max-size are refused") {
    CliResult r = run_cli({"hull", "corpus:lrex8", "--max-size", "4"});
    CHECK(r.exit_code == 2);
  }
  SECTION("a broken algebra file fails with the witness printed") {
    std::string path = "costone_test_broken.json";
    {
      AlgebraPtr A = corpus_get("lrex3");
      OpTable times = A->times_table;
      times.at(el(A, "b"), el(A, "d")) = A->bottom;
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(serialize_algebra(*A));
      j["times"][el(A, "b")][el(A, "d")] = "0";
      std::ofstream f(path);
      f << j.dump(2);
    }
    CliResult r = run_cli({"check", path});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("ResiduationViolation") != std::string::npos);
    std::remove(path.c_str());
  }
  SECTION("corpus listing and display") {
    CliResult r = run_cli({"corpus", "list"});
    CHECK(r.exit_code == 0);
    for (const auto& key : corpus_keys())
      CHECK(r.out.find(key) != std::string::npos);
    CliResult s = run_cli({"corpus", "show", "lrex0"});
    CHECK(s.exit_code == 0);
    CHECK_NOTHROW(parse_algebra_text(s.out));
  }
  SECTION("json reports are schema-stable and byte-identical across runs") {
    CliResult a = run_cli({"classify", "corpus:lrex0", "--json"});
    CliResult b = run_cli({"classify", "corpus:lrex0", "--json"});
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    REQUIRE(j.contains("algebra"));
    REQUIRE(j.contains("checks"));
    REQUIRE(j.contains("witnesses"));
    CHECK(j["algebra"]["size"] == 5);
  }
  SECTION("dot output file") {
    std::string path = "costone_test_hasse.dot";
    CliResult r = run_cli({"check", "corpus:lrex3", "--dot", path});
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str().find("digraph") != std::string::npos);
    std::remove(path.c_str());
  }
}
