#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfa/finite_algebra.hpp"

namespace pfa {

/// D(S) = {s : d(s) = s} in increasing index order. Throws EvaluationError
/// when d is neither given nor derivable.
std::vector<Element> domain_elements(const FiniteAlgebra& alg);

/// le[x][y] iff x = d(x);y.
std::vector<std::vector<bool>> natural_order(const FiniteAlgebra& alg);

struct BooleanStructure {
  std::vector<Element> elements;  // D(S)
  Element bottom = 0;
  Element top = 0;
  std::vector<Element> atoms;
  /// Set when (D(S), ;, a, 0, 1') is not a boolean algebra; names the law.
  std::optional<std::string> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Checks that D(S) with ; as meet, a as complement and
/// join(x, y) = a(a(x);a(y)) is a boolean algebra, and returns its atoms.
/// Requires antidomain.
BooleanStructure boolean_structure(const FiniteAlgebra& alg);

struct SubAlgebra {
  FiniteAlgebra algebra;
  /// embedding[i] is the element of the parent that element i stands for.
  std::vector<Element> embedding;
};

/// S^at = {s : d(s) is an atom} ∪ {0}, over the signature
/// {;, d, r, fix, 0} ∩ available symbols, plus 1' when 1' is itself an atom.
/// Throws NotRepresentable if the boolean structure fails or S^at is not
/// closed.
SubAlgebra s_at(const FiniteAlgebra& alg);

}  // namespace pfa
