#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "costone/algebra.hpp"

namespace costone {

// Algebra file format: one JSON document with keys
//   name     - display name (optional)
//   labels   - array of element labels, fixing the carrier order
//   covers   - array of [lo, hi] label pairs (optional; join/meet synthesized)
//   join     - row-major label matrix (optional when covers given)
//   meet     - row-major label matrix (optional when covers given)
//   times    - label matrix, or the string "meet"
//   implies  - label matrix
//   source   - free-form provenance note (optional)
// Matrices are indexed in label-list order. When both covers and explicit
// join/meet are present they must agree.

namespace detail {

inline int label_index(const std::map<std::string, int>& by_label,
                       const std::string& l, const char* where) {
  auto it = by_label.find(l);
  if (it == by_label.end())
    throw Error(Errc::parse_error,
                std::string(where) + ": unknown label '" + l + "'");
  return it->second;
}

inline OpTable parse_matrix(const nlohmann::json& j, int n,
                            const std::map<std::string, int>& by_label,
                            const char* where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw Error(Errc::parse_error,
                std::string(where) + ": expected " + std::to_string(n) + " rows");
  OpTable t(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(Errc::parse_error, std::string(where) + ": row " +
                                         std::to_string(r) + " malformed");
    for (int c = 0; c < n; ++c)
      t.at(r, c) = label_index(by_label, row[c].get<std::string>(), where);
  }
  return t;
}

/// Join/meet synthesis from a cover list: reflexive-transitive closure, then
/// unique least-upper/greatest-lower bounds. Missing or ambiguous bounds are
/// validation errors (the covers do not describe a lattice).
inline std::pair<OpTable, OpTable> tables_from_covers(
    int n, const std::vector<std::pair<int, int>>& covers,
    const std::vector<std::string>& labels) {
  std::vector<uint8_t> le(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) le[static_cast<std::size_t>(i) * n + i] = 1;
  for (auto [lo, hi] : covers) le[static_cast<std::size_t>(lo) * n + hi] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[static_cast<std::size_t>(i) * n + k] &&
            le[static_cast<std::size_t>(k) * n + j])
          le[static_cast<std::size_t>(i) * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (le[static_cast<std::size_t>(i) * n + j] &&
          le[static_cast<std::size_t>(j) * n + i])
        throw Error(Errc::validation_error,
                    "covers contain a cycle through " + labels[i]);

  auto leq = [&](int a, int b) {
    return le[static_cast<std::size_t>(a) * n + b] != 0;
  };
  OpTable join(n), meet(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int lub = -1, glb = -1;
      for (int c = 0; c < n; ++c) {
        if (leq(a, c) && leq(b, c) && (lub < 0 || leq(c, lub))) lub = c;
        if (leq(c, a) && leq(c, b) && (glb < 0 || leq(glb, c))) glb = c;
      }
      if (lub < 0 || glb < 0)
        throw Error(Errc::validation_error,
                    "covers do not form a lattice: no bound for (" + labels[a] +
                        "," + labels[b] + ")");
      for (int c = 0; c < n; ++c) {
        if (leq(a, c) && leq(b, c) && !leq(lub, c))
          throw Error(Errc::validation_error,
                      "covers do not form a lattice: joins ambiguous at (" +
                          labels[a] + "," + labels[b] + ")");
        if (leq(c, a) && leq(c, b) && !leq(c, glb))
          throw Error(Errc::validation_error,
                      "covers do not form a lattice: meets ambiguous at (" +
                          labels[a] + "," + labels[b] + ")");
      }
      join.at(a, b) = lub;
      meet.at(a, b) = glb;
    }
  return {join, meet};
}

}  // namespace detail

inline AlgebraPtr parse_algebra_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  try {
    if (!j.contains("labels") || !j["labels"].is_array())
      throw Error(Errc::parse_error, "missing labels array");
    std::vector<std::string> labels = j["labels"].get<std::vector<std::string>>();
    const int n = static_cast<int>(labels.size());
    std::map<std::string, int> by_label;
    for (int i = 0; i < n; ++i) {
      if (by_label.count(labels[i]))
        throw Error(Errc::parse_error, "duplicate label '" + labels[i] + "'");
      by_label[labels[i]] = i;
    }
    std::string name = j.value("name", std::string("algebra"));

    OpTable join, meet;
    bool have_tables = j.contains("join") || j.contains("meet");
    if (have_tables) {
      if (!j.contains("join") || !j.contains("meet"))
        throw Error(Errc::parse_error, "join and meet must come together");
      join = detail::parse_matrix(j["join"], n, by_label, "join");
      meet = detail::parse_matrix(j["meet"], n, by_label, "meet");
    }
    if (j.contains("covers")) {
      std::vector<std::pair<int, int>> covers;
      for (const auto& e : j["covers"]) {
        if (!e.is_array() || e.size() != 2)
          throw Error(Errc::parse_error, "cover entries are [lo, hi] pairs");
        covers.emplace_back(
            detail::label_index(by_label, e[0].get<std::string>(), "covers"),
            detail::label_index(by_label, e[1].get<std::string>(), "covers"));
      }
      auto [cj, cm] = detail::tables_from_covers(n, covers, labels);
      if (have_tables) {
        if (cj.cells != join.cells || cm.cells != meet.cells)
          throw Error(Errc::validation_error,
                      "explicit join/meet disagree with covers");
      } else {
        join = std::move(cj);
        meet = std::move(cm);
      }
    } else if (!have_tables) {
      throw Error(Errc::parse_error, "need covers or join/meet tables");
    }

    if (!j.contains("implies"))
      throw Error(Errc::parse_error, "missing implies table");
    OpTable implies = detail::parse_matrix(j["implies"], n, by_label, "implies");
    OpTable times;
    if (!j.contains("times"))
      throw Error(Errc::parse_error, "missing times table");
    if (j["times"].is_string()) {
      if (j["times"].get<std::string>() != "meet")
        throw Error(Errc::parse_error, "times shorthand must be \"meet\"");
      times = meet;
    } else {
      times = detail::parse_matrix(j["times"], n, by_label, "times");
    }
    return make_residuated_lattice(name, labels, std::move(join),
                                   std::move(meet), std::move(times),
                                   std::move(implies));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline AlgebraPtr parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_algebra_text(buf.str());
}

inline std::string serialize_algebra(const Algebra& A) {
  nlohmann::ordered_json j;
  j["name"] = A.name;
  j["labels"] = A.labels;
  auto matrix = [&](const OpTable& t) {
    nlohmann::ordered_json m = nlohmann::ordered_json::array();
    for (int r = 0; r < A.n; ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < A.n; ++c) row.push_back(A.labels[t(r, c)]);
      m.push_back(row);
    }
    return m;
  };
  j["join"] = matrix(A.join_table);
  j["meet"] = matrix(A.meet_table);
  if (A.is_residuated()) {
    j["times"] = matrix(A.times_table);
    j["implies"] = matrix(A.implies_table);
  }
  j["source"] = "serialized";
  return j.dump(2) + "\n";
}

/// DOT digraph of the cover relation, drawn bottom-to-top.
inline std::string render_hasse_dot(const Algebra& A) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (int i = 0; i < A.n; ++i) out << "  \"" << A.label(i) << "\";\n";
  for (auto [lo, hi] : cover_relation(A))
    out << "  \"" << A.label(lo) << "\" -> \"" << A.label(hi) << "\";\n";
  out << "}\n";
  return out.str();
}

enum class OpName { join, meet, times, implies };

inline const OpTable& op_table(const Algebra& A, OpName op) {
  switch (op) {
    case OpName::join: return A.join_table;
    case OpName::meet: return A.meet_table;
    case OpName::times: return A.times_table;
    case OpName::implies: return A.implies_table;
  }
  throw Error(Errc::validation_error, "bad op name");
}

inline const char* op_symbol(OpName op) {
  switch (op) {
    case OpName::join: return "v";
    case OpName::meet: return "^";
    case OpName::times: return "*";
    case OpName::implies: return "->";
  }
  return "?";
}

/// Aligned text table of one operation, labels on both axes.
inline std::string render_op_table(const Algebra& A, OpName op) {
  const OpTable& t = op_table(A, op);
  if (t.empty())
    throw Error(Errc::validation_error, "operation absent for this kind");
  std::size_t w = 2;
  for (const auto& l : A.labels) w = std::max(w, l.size());
  w = std::max(w, std::string(op_symbol(op)).size());
  auto pad = [&](const std::string& s) {
    return s + std::string(w - s.size() + 1, ' ');
  };
  std::ostringstream out;
  out << pad(op_symbol(op)) << "|";
  for (int c = 0; c < A.n; ++c) out << " " << pad(A.label(c));
  out << "\n" << std::string(w + 1, '-') << "+" << std::string((w + 2) * A.n, '-')
      << "\n";
  for (int r = 0; r < A.n; ++r) {
    out << pad(A.label(r)) << "|";
    for (int c = 0; c < A.n; ++c) out << " " << pad(A.label(t(r, c)));
    out << "\n";
  }
  return out.str();
}

}  // namespace costone
