#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfa/function_algebra.hpp"
#include "pfa/term.hpp"

namespace pfa {

/// The witness set of t at x: x, t(x) when defined, and the points the
/// evaluation of t at x passes through (least witness for r). Throws
/// EvaluationError if t contains maxiter.
std::vector<Point> sigma(const Term& t, Point x, const Assignment& asg, std::size_t base_size);

struct RestrictionCheck {
  bool ok = true;
  Point original = kUndefined;    // t(x) on the full base
  Point restricted = kUndefined;  // t↾Y(x), in original numbering
};

/// Compares t at x on the full base with t at x on the base restricted to Y.
/// Throws DataError if x is not in Y.
RestrictionCheck check_restriction_lemma(const Term& t, Point x, const Assignment& asg, std::size_t base_size,
                                         const std::vector<Point>& y);

struct Counterexample {
  FunctionAlgebra algebra;  // one generator per variable
  Assignment assignment;
  Point witness = 0;
  Point lhs_value = kUndefined;
  Point rhs_value = kUndefined;
};

/// Evaluates both sides and fills in the disagreement at the least point.
/// Returns nullopt when u and v agree on the given assignment.
std::optional<Counterexample> make_counterexample(const Term& u, const Term& v, const Assignment& asg,
                                                  std::size_t base_size, const Signature& sig);

enum class SearchMode { exhaustive, random };
enum class Verdict { valid, counterexample, budget_exceeded };

std::string to_string(Verdict v);

struct DecideOptions {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  /// Wall-clock budget in seconds; none means unbounded.
  std::optional<double> budget_seconds;
  unsigned jobs = 1;
  /// Random mode: assignments sampled per base size.
  std::size_t trials_per_size = 2000;
  /// Overrides the bound 2(|u|+|v|) on the base size searched.
  std::optional<std::size_t> max_base;
};

struct DecideResult {
  Verdict verdict = Verdict::budget_exceeded;
  /// 2(|u| + |v|), or the override.
  std::size_t bound = 0;
  /// Largest base size for which the search finished without a verdict
  /// change. For Valid, the cap at which the search closed.
  std::size_t exhausted = 0;
  /// Valid because the search closed below the bound (no branch wanted more
  /// points), rather than by exhausting every base up to the bound.
  bool closed_early = false;
  std::optional<Counterexample> counterexample;
  std::uint64_t seed = 0;
  std::string note;
};

/// Searches for a counterexample to u = v over algebras of functions in sig.
/// Exhaustive mode explores assignments lazily, branching only on the
/// values the evaluation of u and v at the witness point 0 actually reads,
/// with fresh points numbered in order of first use. Counterexamples are
/// always re-checked by direct evaluation. Valid is never returned for
/// terms with maxiter or in random mode.
DecideResult decide_equation(const Term& u, const Term& v, const Signature& sig, const DecideOptions& opts = {});

/// Restricts a counterexample to Σ(u, x0) ∪ Σ(v, x0). Throws InternalError if
/// the disagreement does not survive the restriction.
Counterexample minimize_counterexample(const Counterexample& ce, const Term& u, const Term& v);

}  // namespace pfa
