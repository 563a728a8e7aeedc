#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfa/function_algebra.hpp"
#include "pfa/signature.hpp"
#include "pfa/term.hpp"

namespace pfa {

using Element = int;

/// Operation tables indexed by Op. A table of arity k has n^k entries,
/// row-major with the left operand as row; constants are 1-entry tables.
/// An empty table means the symbol is not given.
using TableSet = std::array<std::vector<Element>, kOpCount>;

/// A finite algebra given by total operation tables. Immutable once built.
///
/// d, 0 and 1' may be omitted when antidomain is given: they are then derived
/// as a(a(x)), a(x);x and a(0).
class FiniteAlgebra {
 public:
  /// Validates totality, closure, unique names, agreement of a given d table
  /// with a(a(x)), and the zero law 0;y = 0. Throws DataError.
  FiniteAlgebra(std::vector<std::string> names, Signature sig, TableSet tables);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Element e) const { return names_[static_cast<std::size_t>(e)]; }
  std::optional<Element> index_of(std::string_view name) const;
  const Signature& signature() const { return sig_; }

  /// Table as supplied (empty if derived or absent).
  const std::vector<Element>& given_table(Op op) const { return given_[static_cast<std::size_t>(op)]; }
  /// True when `op` can be evaluated, directly or via a derived definition.
  bool available(Op op) const { return !resolved_[static_cast<std::size_t>(op)].empty(); }

  Element apply(Op op) const;
  Element apply(Op op, Element x) const;
  Element apply(Op op, Element x, Element y) const;

  Element compose(Element x, Element y) const { return at(Op::compose, x * n() + y); }
  Element dom(Element x) const { return at(Op::dom, x); }
  std::optional<Element> zero() const;
  std::optional<Element> identity() const;

 private:
  Element n() const { return static_cast<Element>(names_.size()); }
  Element at(Op op, Element i) const {
    return resolved_[static_cast<std::size_t>(op)][static_cast<std::size_t>(i)];
  }

  std::vector<std::string> names_;
  Signature sig_;
  TableSet given_;
  TableSet resolved_;
};

/// Parses the line-oriented algebra format:
///   elements: 0 a b d r
///   signature: ; . d r fix 0
///   table ;:            followed by one row per element
///   table d: 0 d d d r
///   zero: 0
/// '#' starts a comment. Throws DataError.
FiniteAlgebra parse_finite_algebra(std::string_view text);
/// Canonical text; parse_finite_algebra(to_text(A)) reproduces A and
/// to_text of that is byte-identical.
std::string to_text(const FiniteAlgebra& alg);

using ElementAssignment = std::map<std::string, Element, std::less<>>;

/// Throws EvaluationError for an unbound variable or an unavailable symbol.
Element eval_term_abstract(const Term& t, const ElementAssignment& asg, const FiniteAlgebra& alg);

/// The finite algebra of all functions generated by a function algebra, with
/// the concrete function of each element (same index).
struct ConcreteAlgebra {
  FiniteAlgebra algebra;
  std::vector<PartialFunction> functions;
  std::size_t base_size;
};

ConcreteAlgebra to_finite_algebra(const FunctionAlgebra& alg, std::size_t max_elements = 4096);
/// The algebra whose elements are exactly `elements` (assumed closed under sig).
ConcreteAlgebra finite_algebra_of(const std::vector<PartialFunction>& elements, const Signature& sig,
                                  std::size_t base_size, const std::vector<std::string>& names = {});

}  // namespace pfa
