#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfa/partial_function.hpp"
#include "pfa/signature.hpp"
#include "pfa/term.hpp"

namespace pfa {

/// Named partial functions on a common base, read as generators of an
/// algebra of functions in `signature`.
struct FunctionAlgebra {
  std::size_t base_size = 0;
  Signature signature;
  std::vector<std::pair<std::string, PartialFunction>> generators;

  /// Throws DataError if a generator lives on another base or names repeat.
  void validate() const;
  const PartialFunction* find(std::string_view name) const;
};

using Assignment = std::map<std::string, PartialFunction, std::less<>>;

/// Evaluates on a base of `base_size` points; antidomain and 1' are taken
/// relative to that base. Throws EvaluationError on a missing binding or a
/// binding on another base.
PartialFunction evaluate(const Term& t, const Assignment& asg, std::size_t base_size);

/// As above, also checking `t` against alg.signature. Variables bound in
/// `asg` take precedence over generators of the same name.
PartialFunction evaluate(const Term& t, const Assignment& asg, const FunctionAlgebra& alg);

/// Canonical reindexing of a subset Y of a base: Y sorted ascending.
class PointRestriction {
 public:
  PointRestriction(std::vector<Point> subset, std::size_t base_size);
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  /// Index in Y, or kUndefined if `x` is not in Y.
  Point index_of(Point x) const { return index_[static_cast<std::size_t>(x)]; }
  Point original(Point i) const { return points_[static_cast<std::size_t>(i)]; }
  /// f ∩ (Y×Y), reindexed.
  PartialFunction restrict(const PartialFunction& f) const;

 private:
  std::vector<Point> points_;
  std::vector<Point> index_;
};

FunctionAlgebra restrict_algebra(const FunctionAlgebra& alg, const std::vector<Point>& subset);
Assignment restrict_assignment(const Assignment& asg, const PointRestriction& y);

/// All functions generated by the generators under the signature (constants
/// included), in discovery order. Throws DataError past `max_elements`.
std::vector<PartialFunction> closure(const std::vector<PartialFunction>& generators, const Signature& sig,
                                     std::size_t base_size, std::size_t max_elements = 4096);

// Text format:
//   base: 3
//   signature: ; d r        (optional, defaults to all symbols)
//   f: {0->1, 1->2}
//   witness: 0              (optional, used by counterexample files)
struct FunctionFile {
  FunctionAlgebra algebra;
  std::optional<Point> witness;
};

FunctionFile parse_function_file(std::string_view text);
std::string to_text(const FunctionAlgebra& alg, std::optional<Point> witness = std::nullopt);

}  // namespace pfa
