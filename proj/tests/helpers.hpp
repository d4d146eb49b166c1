#pragma once

#include <set>
#include <string>
#include <vector>

#include "costone/corpus.hpp"
#include "costone/filters.hpp"

namespace costone::test {

inline int el(const AlgebraPtr& A, const std::string& label) {
  for (int i = 0; i < A->n; ++i)
    if (A->labels[i] == label) return i;
  throw std::runtime_error("no element labelled " + label);
}

inline IndexSet set_of(const AlgebraPtr& A, std::initializer_list<const char*> labels) {
  IndexSet s(A->n);
  for (const char* l : labels) s.set(el(A, l));
  return s;
}

inline std::set<std::string> label_set(const AlgebraPtr& A, const IndexSet& s) {
  std::set<std::string> out;
  for (int i : set_indices(s)) out.insert(A->labels[i]);
  return out;
}

/// Test-side filter axioms, independent of the library predicate: contains
/// the top, upward closed, and closed under the monoid product (meet on
/// lattice hosts).
inline bool oracle_is_filter(const AlgebraPtr& A, const IndexSet& s) {
  if (!s.test(A->top)) return false;
  for (int a : set_indices(s)) {
    for (int b = 0; b < A->n; ++b)
      if (A->leq(a, b) && !s.test(b)) return false;
    for (int b : set_indices(s)) {
      int p = A->is_residuated() ? A->times(a, b) : A->meet(a, b);
      if (!s.test(p)) return false;
    }
  }
  return true;
}

/// Brute-force enumeration over all subsets (hosts up to 20 elements).
inline std::vector<IndexSet> oracle_all_filters(const AlgebraPtr& A) {
  std::vector<IndexSet> out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << A->n); ++mask) {
    IndexSet s(A->n);
    for (int i = 0; i < A->n; ++i)
      if (mask >> i & 1) s.set(i);
    if (oracle_is_filter(A, s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace costone::test
