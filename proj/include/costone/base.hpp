#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace costone {

/// Error categories raised by the kit. Every throw carries a witness in the
/// message (the first violated law and the elements that violate it).
enum class Errc {
  lattice_axiom_violation,
  monoid_axiom_violation,
  residuation_violation,
  order_inconsistency,
  product_too_large,
  search_cap_exceeded,
  not_directed,
  cap_exceeded,
  invalid_size,
  congruence_failure,
  host_mismatch,
  not_refinement,
  not_a_reticulation,
  not_a_morphism,
  hull_not_built,
  empty_set,
  unknown_key,
  parse_error,
  validation_error,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::lattice_axiom_violation: return "LatticeAxiomViolation";
    case Errc::monoid_axiom_violation: return "MonoidAxiomViolation";
    case Errc::residuation_violation: return "ResiduationViolation";
    case Errc::order_inconsistency: return "OrderInconsistency";
    case Errc::product_too_large: return "ProductTooLarge";
    case Errc::search_cap_exceeded: return "SearchCapExceeded";
    case Errc::not_directed: return "NotDirected";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::invalid_size: return "InvalidSize";
    case Errc::congruence_failure: return "CongruenceFailure";
    case Errc::host_mismatch: return "HostMismatch";
    case Errc::not_refinement: return "NotRefinement";
    case Errc::not_a_reticulation: return "NotAReticulation";
    case Errc::not_a_morphism: return "NotAMorphism";
    case Errc::hull_not_built: return "HullNotBuilt";
    case Errc::empty_set: return "EmptySet";
    case Errc::unknown_key: return "UnknownKey";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Size guards. These are configuration values, not hard constants; the CLI
/// exposes them through --max-size.
struct Caps {
  int product_max = 4096;       // largest direct/partition product carrier
  int iso_search_max = 24;      // largest carrier for isomorphism search
  int filter_enum_max = 20;     // largest carrier for exhaustive filter enumeration
  int partition_atom_max = 6;   // most atoms for partition enumeration (Bell growth)
  int limit_check_max = 12;     // largest target for universal-property cone checks
  int limit_reference_max = 16; // most partitions for the reference-path limit
};

/// Subset of a fixed carrier 0..n-1.
using IndexSet = boost::dynamic_bitset<>;

inline IndexSet make_set(std::size_t n) { return IndexSet(n); }

inline IndexSet make_set(std::size_t n, std::initializer_list<int> xs) {
  IndexSet s(n);
  for (int x : xs) s.set(static_cast<std::size_t>(x));
  return s;
}

inline std::vector<int> set_indices(const IndexSet& s) {
  std::vector<int> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

/// Canonical set order: by size, then lexicographically on the ascending
/// index sequence. Fixes carrier numbering everywhere, so golden tables are
/// stable across runs.
inline bool canonical_set_less(const IndexSet& a, const IndexSet& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  auto i = a.find_first(), j = b.find_first();
  while (i != IndexSet::npos && j != IndexSet::npos) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return false;
}

/// One verified statement with an optional counterexample.
struct CheckItem {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct Report {
  std::vector<CheckItem> items;

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }

  const CheckItem* find(std::string_view name) const {
    for (const auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }

  void add(std::string name, bool pass, std::string witness = "") {
    items.push_back({std::move(name), pass, std::move(witness)});
  }

  void merge(const Report& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
};

}  // namespace costone
