#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "costone/suites.hpp"

namespace costone {

struct CliResult {
  int exit_code = 0;
  std::string out, err;
};

namespace cli_detail {

inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::parse_error:
    case Errc::unknown_key:
    case Errc::cap_exceeded:
    case Errc::product_too_large:
    case Errc::search_cap_exceeded:
    case Errc::invalid_size:
    case Errc::empty_set:
    case Errc::host_mismatch:
      return 2;  // usage / input problems
    default:
      return 1;  // a verified mathematical property failed
  }
}

inline AlgebraPtr resolve_subject(const std::string& subject) {
  if (subject.rfind("corpus:", 0) == 0) return corpus_get(subject.substr(7));
  return parse_algebra_file(subject);
}

inline nlohmann::ordered_json algebra_json(const Algebra& A) {
  nlohmann::ordered_json j;
  j["name"] = A.name;
  j["size"] = A.n;
  j["kind"] = A.is_residuated() ? "residuated_lattice" : "bounded_lattice";
  return j;
}

inline nlohmann::ordered_json checks_json(const Report& rep) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& it : rep.items) {
    nlohmann::ordered_json c;
    c["name"] = it.name;
    c["pass"] = it.pass;
    c["witness"] = it.witness;
    arr.push_back(c);
  }
  return arr;
}

inline void print_report(std::ostream& os, const Report& rep) {
  for (const auto& it : rep.items) {
    os << (it.pass ? "[pass] " : "[FAIL] ") << it.name;
    if (!it.witness.empty()) os << " (" << it.witness << ")";
    os << "\n";
  }
}

inline std::string stone_summary(const AlgebraPtr& A, const StoneReport& S) {
  std::ostringstream os;
  os << "co-Stone: " << (S.co_stone ? "true" : "false");
  if (!S.co_stone)
    os << " (witness " << A->label(S.co_stone_counterexample) << "^T="
       << coannihilator_of(A, S.co_stone_counterexample).str() << ")";
  os << "\nstrongly co-Stone: " << (S.strongly_co_stone ? "true" : "false");
  if (A->is_residuated()) {
    os << "\nStone identity: " << (S.stone_identity ? "true" : "false");
    if (!S.stone_identity)
      os << " (neg(" << A->label(S.stone_identity_counterexample)
         << ") v neg(neg(" << A->label(S.stone_identity_counterexample)
         << ")) = " << A->label(S.stone_identity_value) << ")";
  }
  os << "\nm-conditions (I)-(V):";
  for (bool h : S.mcond.holds) os << " " << (h ? "true" : "false");
  os << "\n";
  return os.str();
}

}  // namespace cli_detail

/// The whole command surface, callable in-process. Exit codes: 0 all checks
/// pass, 1 a verified mathematical property failed (witness printed),
/// 2 usage or I/O error.
inline CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  std::ostringstream out, err;

  CLI::App app{"finite residuated lattice toolkit: reticulations, co-Stone "
               "classification, strongly co-Stone hulls"};
  app.require_subcommand(1);
  std::string subject, dot_path, suite_name, corpus_key;
  bool as_json = false, exhaustive = false;
  int max_size = 0;

  auto add_common = [&](CLI::App* cmd, bool with_subject = true) {
    if (with_subject)
      cmd->add_option("subject", subject, "algebra file or corpus:<key>")
          ->required();
    cmd->add_flag("--json", as_json, "machine-readable report");
    cmd->add_option("--dot", dot_path, "write a Hasse diagram in DOT form");
    cmd->add_option("--max-size", max_size, "cap processed carrier sizes");
  };

  CLI::App* c_check = app.add_subcommand("check", "verify the axioms of an algebra");
  add_common(c_check);
  CLI::App* c_ret = app.add_subcommand("reticulate", "compute the reticulation");
  add_common(c_ret);
  CLI::App* c_cls = app.add_subcommand("classify", "co-Stone classification");
  add_common(c_cls);
  c_cls->add_flag("--exhaustive-subsets", exhaustive,
                  "cross-check the canonical subsets against all subsets");
  CLI::App* c_hull = app.add_subcommand("hull", "build the strongly co-Stone hull");
  add_common(c_hull);
  CLI::App* c_ver = app.add_subcommand("verify", "run a verification suite");
  c_ver->add_option("suite", suite_name,
                    "reticulation-axioms | transfer | hull-lemmas | all")
      ->required();
  c_ver->add_flag("--json", as_json, "machine-readable report");
  c_ver->add_option("--max-size", max_size, "cap processed carrier sizes");
  CLI::App* c_corp = app.add_subcommand("corpus", "bundled example algebras");
  CLI::App* c_list = c_corp->add_subcommand("list", "list corpus keys");
  CLI::App* c_show = c_corp->add_subcommand("show", "print one corpus algebra");
  c_show->add_option("key", corpus_key, "corpus key")->required();
  c_corp->require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("costone");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    res.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
    res.out = out.str();
    res.err = err.str();
    return res;
  }

  Caps caps;
  if (max_size > 0) {
    caps.product_max = max_size;
    caps.filter_enum_max = max_size;
    caps.iso_search_max = max_size;
  }

  try {
    nlohmann::ordered_json doc;
    Report checks;
    AlgebraPtr A;
    AlgebraPtr dot_target;
    // Classification verdicts are results, not failures; subcommands that
    // only report set this so a negative verdict keeps exit code 0.
    bool verdicts_only = false;

    if (*c_check) {
      A = cli_detail::resolve_subject(subject);
      dot_target = A;
      checks.add("axioms", true);
      out << "valid " << (A->is_residuated() ? "residuated lattice" : "bounded lattice")
          << " (" << A->n << " elements)\n";
    } else if (*c_ret) {
      A = cli_detail::resolve_subject(subject);
      Reticulation R = reticulate(A);
      dot_target = R.lattice;
      checks = verify_reticulation(A, R);
      out << "reticulation of " << A->name << ": " << R.lattice->n
          << " elements\ncarrier:";
      for (std::size_t i = 0; i < R.carrier.size(); ++i)
        out << " " << R.lattice->label(static_cast<int>(i)) << "="
            << R.carrier[i].str();
      out << "\nlambda:";
      for (int a = 0; a < A->n; ++a)
        out << " " << A->label(a) << "->" << R.lattice->label(R.map[a]);
      out << "\n";
      cli_detail::print_report(out, checks);
      doc["witnesses"]["lambda"] = nlohmann::ordered_json::object();
      for (int a = 0; a < A->n; ++a)
        doc["witnesses"]["lambda"][A->label(a)] = R.lattice->label(R.map[a]);
    } else if (*c_cls) {
      A = cli_detail::resolve_subject(subject);
      dot_target = A;
      StoneReport S = classify_stone(A, caps, exhaustive);
      out << cli_detail::stone_summary(A, S);
      if (A->is_residuated()) {
        PseudocomplementReport P = pseudocomplement_identity(reticulate(A).lattice);
        out << "reticulation star identity: "
            << (P.pseudocomplemented && P.star_identity ? "true" : "false")
            << "\n";
        checks.add("reticulation star identity",
                   P.pseudocomplemented && P.star_identity);
      }
      checks.add("co-Stone", S.co_stone,
                 S.co_stone ? ""
                            : A->label(S.co_stone_counterexample) + "^T=" +
                                  coannihilator_of(A, S.co_stone_counterexample).str());
      checks.add("strongly co-Stone", S.strongly_co_stone);
      if (A->is_residuated()) checks.add("Stone identity", S.stone_identity);
      const char* names[5] = {"(I)", "(II)", "(III)", "(IV)", "(V)"};
      for (int i = 0; i < 5; ++i)
        checks.add(std::string("m-condition ") + names[i], S.mcond.holds[i],
                   S.mcond.witness[i]);
      nlohmann::ordered_json gens = nlohmann::ordered_json::object();
      for (int x = 0; x < A->n; ++x)
        gens[A->label(x)] =
            S.generator_of[x] >= 0 ? A->label(S.generator_of[x]) : "";
      doc["witnesses"]["co_stone_generators"] = gens;
      doc["witnesses"]["note"] = S.note;
      verdicts_only = true;
    } else if (*c_hull) {
      A = cli_detail::resolve_subject(subject);
      Hull H = build_hull(A, caps);
      dot_target = H.algebra;
      out << "hull of " << A->name << ": " << H.algebra->n << " elements over "
          << H.partitions.items.size() << " partitions\nepsilon:";
      for (int a = 0; a < A->n; ++a)
        out << " " << A->label(a) << "->" << H.algebra->label(H.embedding.map[a]);
      out << "\n";
      checks = hull_lemma_suite(A, caps);
      StoneReport S = classify_stone(H.algebra, caps);
      out << "co-dense: " << (codensity_check(H).ok ? "true" : "false") << "\n";
      out << "co-Stone: " << (S.co_stone ? "true" : "false") << "\n";
      out << "strongly co-Stone: " << (S.strongly_co_stone ? "true" : "false")
          << "\n";
      doc["witnesses"]["epsilon"] = nlohmann::ordered_json::object();
      for (int a = 0; a < A->n; ++a)
        doc["witnesses"]["epsilon"][A->label(a)] =
            H.algebra->label(H.embedding.map[a]);
    } else if (*c_ver) {
      if (suite_name == "reticulation-axioms")
        checks = suite_reticulation_axioms(default_suite_keys());
      else if (suite_name == "transfer")
        checks = suite_transfer(default_suite_keys(), caps);
      else if (suite_name == "hull-lemmas")
        checks = suite_hull_lemmas(corpus_keys(), caps);
      else if (suite_name == "all")
        checks = suite_all(caps);
      else
        throw Error(Errc::unknown_key, "no suite '" + suite_name + "'");
      cli_detail::print_report(out, checks);
      int failures = 0;
      for (const auto& it : checks.items)
        if (!it.pass) ++failures;
      out << "suite " << suite_name << ": " << checks.items.size()
          << " checks, " << failures << " failures\n";
    } else if (*c_corp) {
      if (*c_list) {
        for (const auto& k : corpus_keys()) out << k << "\n";
        out << "chain:<n>\nboolean:<2^k>\n";
      } else if (*c_show) {
        out << serialize_algebra(*corpus_get(corpus_key));
      }
    }

    if (!dot_path.empty() && dot_target) {
      std::ofstream f(dot_path);
      if (!f) throw Error(Errc::parse_error, "cannot write " + dot_path);
      f << render_hasse_dot(*dot_target);
      out << "wrote " << dot_path << "\n";
    }

    if (as_json) {
      nlohmann::ordered_json j;
      j["algebra"] = A ? cli_detail::algebra_json(*A)
                       : nlohmann::ordered_json::object();
      j["checks"] = cli_detail::checks_json(checks);
      j["witnesses"] = doc.contains("witnesses")
                           ? doc["witnesses"]
                           : nlohmann::ordered_json::object();
      out.str("");
      out << j.dump(2) << "\n";
    }

    res.exit_code = (verdicts_only || checks.all_pass()) ? 0 : 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    res.exit_code = cli_detail::exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    res.exit_code = 2;
  }
  res.out = out.str();
  res.err = err.str();
  return res;
}

}  // namespace costone
