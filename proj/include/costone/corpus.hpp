#pragma once

#include <map>
#include <string>
#include <vector>

#include "costone/io.hpp"
#include "costone/morphism.hpp"

namespace costone {

// Bundled example algebras. Each entry is an ordinary algebra file; parsing
// runs the full axiom verification, so a transcription slip in any table is
// caught immediately (the residuation law pins every cell against the order).

namespace corpus_detail {

inline const char* lrex0 = R"json({
  "name": "lrex0",
  "labels": ["0", "a", "b", "c", "1"],
  "covers": [["0","a"], ["0","b"], ["a","c"], ["b","c"], ["c","1"]],
  "times": "meet",
  "implies": [
    ["1","1","1","1","1"],
    ["b","1","b","1","1"],
    ["a","a","1","1","1"],
    ["0","a","b","1","1"],
    ["0","a","b","c","1"]
  ],
  "source": "bundled corpus: five elements, diamond below an extra top, times = meet"
})json";

inline const char* lrex0_5 = R"json({
  "name": "lrex0_5",
  "labels": ["0", "a", "b", "c", "1"],
  "covers": [["0","a"], ["a","b"], ["a","c"], ["b","1"], ["c","1"]],
  "times": "meet",
  "implies": [
    ["1","1","1","1","1"],
    ["0","1","1","1","1"],
    ["0","c","1","c","1"],
    ["0","b","b","1","1"],
    ["0","a","b","c","1"]
  ],
  "source": "bundled corpus: five elements, diamond above an extra bottom, times = meet"
})json";

inline const char* lrex3 = R"json({
  "name": "lrex3",
  "labels": ["0", "a", "b", "c", "d", "1"],
  "covers": [["0","a"], ["0","b"], ["a","c"], ["b","c"], ["b","d"], ["c","1"], ["d","1"]],
  "times": [
    ["0","0","0","0","0","0"],
    ["0","a","0","a","0","a"],
    ["0","0","0","0","b","b"],
    ["0","a","0","a","b","c"],
    ["0","0","b","b","d","d"],
    ["0","a","b","c","d","1"]
  ],
  "implies": [
    ["1","1","1","1","1","1"],
    ["d","1","d","1","d","1"],
    ["c","c","1","1","1","1"],
    ["b","c","d","1","d","1"],
    ["a","a","c","c","1","1"],
    ["0","a","b","c","d","1"]
  ],
  "source": "bundled corpus: six elements with a nilpotent atom"
})json";

inline const char* lrex4 = R"json({
  "name": "lrex4",
  "labels": ["0", "a", "b", "c", "d", "e", "f", "g", "1"],
  "covers": [["0","a"], ["0","c"], ["a","b"], ["a","d"], ["c","d"], ["c","f"],
             ["b","e"], ["d","e"], ["d","g"], ["f","g"], ["e","1"], ["g","1"]],
  "times": [
    ["0","0","0","0","0","0","0","0","0"],
    ["0","0","a","0","0","a","0","0","a"],
    ["0","a","b","0","a","b","0","a","b"],
    ["0","0","0","0","0","0","c","c","c"],
    ["0","0","a","0","0","a","c","c","d"],
    ["0","a","b","0","a","b","c","d","e"],
    ["0","0","0","c","c","c","f","f","f"],
    ["0","0","a","c","c","d","f","f","g"],
    ["0","a","b","c","d","e","f","g","1"]
  ],
  "implies": [
    ["1","1","1","1","1","1","1","1","1"],
    ["g","1","1","g","1","1","g","1","1"],
    ["f","g","1","f","g","1","f","g","1"],
    ["e","e","e","1","1","1","1","1","1"],
    ["d","e","e","g","1","1","g","1","1"],
    ["c","d","e","f","g","1","f","g","1"],
    ["b","b","b","e","e","e","1","1","1"],
    ["a","b","b","d","e","e","g","1","1"],
    ["0","a","b","c","d","e","f","g","1"]
  ],
  "source": "bundled corpus: nine elements on the 3x3 grid order"
})json";

inline const char* lrex8 = R"json({
  "name": "lrex8",
  "labels": ["0", "n", "a", "b", "i", "f", "g", "h", "j", "c", "d", "1"],
  "covers": [["0","n"], ["n","a"], ["n","b"], ["a","i"], ["b","i"], ["i","f"],
             ["f","g"], ["g","h"], ["h","j"], ["j","c"], ["j","d"], ["c","1"], ["d","1"]],
  "times": [
    ["0","0","0","0","0","0","0","0","0","0","0","0"],
    ["0","n","n","n","n","n","n","n","n","n","n","n"],
    ["0","n","n","n","n","n","n","n","n","a","n","a"],
    ["0","n","n","n","n","n","n","n","n","n","b","b"],
    ["0","n","n","n","n","n","n","n","n","a","b","i"],
    ["0","n","n","n","n","n","n","n","f","f","f","f"],
    ["0","n","n","n","n","n","n","f","g","g","g","g"],
    ["0","n","n","n","n","n","f","f","h","h","h","h"],
    ["0","n","n","n","n","f","g","h","j","j","j","j"],
    ["0","n","a","n","a","f","g","h","j","c","j","c"],
    ["0","n","n","b","b","f","g","h","j","j","d","d"],
    ["0","n","a","b","i","f","g","h","j","c","d","1"]
  ],
  "implies": [
    ["1","1","1","1","1","1","1","1","1","1","1","1"],
    ["0","1","1","1","1","1","1","1","1","1","1","1"],
    ["0","d","1","d","1","1","1","1","1","1","1","1"],
    ["0","c","c","1","1","1","1","1","1","1","1","1"],
    ["0","j","c","d","1","1","1","1","1","1","1","1"],
    ["0","h","h","h","h","1","1","1","1","1","1","1"],
    ["0","g","g","g","g","h","1","1","1","1","1","1"],
    ["0","f","f","f","f","h","h","1","1","1","1","1"],
    ["0","i","i","i","i","f","g","h","1","1","1","1"],
    ["0","b","i","b","i","f","g","h","d","1","d","1"],
    ["0","a","a","i","i","f","g","h","c","c","1","1"],
    ["0","n","a","b","i","f","g","h","j","c","d","1"]
  ],
  "source": "bundled corpus: twelve elements, two diamonds joined by a chain"
})json";

}  // namespace corpus_detail

inline const std::vector<std::string>& corpus_keys() {
  static const std::vector<std::string> keys = {"lrex0", "lrex0_5", "lrex3",
                                                "lrex4", "lrex8"};
  return keys;
}

inline const char* corpus_text(const std::string& key) {
  if (key == "lrex0") return corpus_detail::lrex0;
  if (key == "lrex0_5") return corpus_detail::lrex0_5;
  if (key == "lrex3") return corpus_detail::lrex3;
  if (key == "lrex4") return corpus_detail::lrex4;
  if (key == "lrex8") return corpus_detail::lrex8;
  return nullptr;
}

/// Fetch a validated corpus algebra. Besides the bundled entries, the keys
/// "chain:<n>" and "boolean:<n>" generate stock algebras on demand.
inline AlgebraPtr corpus_get(const std::string& key) {
  static std::map<std::string, AlgebraPtr> cache;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  AlgebraPtr A;
  if (const char* text = corpus_text(key)) {
    A = parse_algebra_text(text);
  } else if (key.rfind("chain:", 0) == 0) {
    A = make_chain(std::stoi(key.substr(6)));
  } else if (key.rfind("boolean:", 0) == 0) {
    A = make_boolean(std::stoi(key.substr(8)));
  } else {
    throw Error(Errc::unknown_key, "no corpus entry '" + key + "'");
  }
  cache[key] = A;
  return A;
}

}  // namespace costone
