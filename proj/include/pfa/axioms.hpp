#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfa/finite_algebra.hpp"
#include "pfa/signature.hpp"
#include "pfa/term.hpp"

namespace pfa {

struct Law {
  std::string label;  // "A", "I" ... "XXIV", "25" ... "28'", "F1" ...
  std::string description;
  Quasiequation law;
  /// Symbols the law mentions; d, 0 and 1' may be met via antidomain.
  Signature needs;
  /// Derivable from the other laws of its group; kept as a sanity check.
  bool consequence = false;
  /// Reported but never counted against membership.
  bool optional = false;
};

struct AxiomSuite {
  Signature signature;
  std::vector<Law> laws;
  std::vector<std::string> warnings;

  const Law* find(std::string_view label) const;
};

/// The laws characterising representability for `sig` (finite algebras when
/// maxiter is present). Monotone: a larger signature's suite contains every
/// law of a smaller one.
AxiomSuite axiom_suite_for(const Signature& sig);

/// True when every symbol of `law` can be evaluated in an algebra over `sig`.
bool law_applies(const Law& law, const Signature& sig);

/// Variable bindings, in variables_of order.
using Witness = std::vector<std::pair<std::string, Element>>;

/// Searches all assignments (domain variables over D(S) only) in
/// lexicographic order and returns the least one satisfying every premise
/// but violating the conclusion. The result does not depend on `jobs`.
std::optional<Witness> check_quasiequation(const Quasiequation& q, const FiniteAlgebra& alg, unsigned jobs = 1);

struct LawVerdict {
  const Law* law;
  std::optional<Witness> witness;  // empty when the law holds
  bool holds() const { return !witness.has_value(); }
};

std::vector<LawVerdict> check_suite(const AxiomSuite& suite, const FiniteAlgebra& alg, unsigned jobs = 1);

/// True when every non-optional law of the suite holds.
bool passes(const std::vector<LawVerdict>& verdicts);

std::string to_string(const Witness& w, const FiniteAlgebra& alg);

}  // namespace pfa
