#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfa/domain.hpp"
#include "pfa/finite_algebra.hpp"
#include "pfa/function_algebra.hpp"

namespace pfa {

/// (a0, b0, a1, ..., bn, a(n+1)) as element indices.
using Sequence = std::vector<Element>;

/// Precomputed lookups for Schein's construction on a finite algebra with
/// ;, d (possibly derived) and r. Elements other than 0 are "nonzero"; an
/// algebra without an available 0 has no zero.
class ScheinContext {
 public:
  /// Throws DataError if d or r is unavailable.
  explicit ScheinContext(const FiniteAlgebra& alg);

  const FiniteAlgebra& algebra() const { return *alg_; }
  std::size_t size() const { return n_; }
  bool nonzero(Element x) const { return x != zero_; }
  Element comp(Element x, Element y) const { return comp_[static_cast<std::size_t>(x) * n_ + static_cast<std::size_t>(y)]; }
  Element d(Element x) const { return d_[static_cast<std::size_t>(x)]; }
  Element r(Element x) const { return r_[static_cast<std::size_t>(x)]; }
  /// All y with b;y = t, ascending.
  const std::vector<Element>& solutions(Element b, Element t) const {
    return solve_[static_cast<std::size_t>(b) * n_ + static_cast<std::size_t>(t)];
  }
  std::optional<Element> zero() const { return zero_ >= 0 ? std::optional<Element>(zero_) : std::nullopt; }

 private:
  const FiniteAlgebra* alg_;
  std::size_t n_;
  Element zero_ = -1;
  std::vector<Element> comp_, d_, r_;
  std::vector<std::vector<Element>> solve_;
};

bool is_permissible(const Sequence& seq, const ScheinContext& ctx);

/// Applies the tail reduction (a_n, b_n, a_{n+1}) -> a_n;y while some y has
/// b_n;y = a_{n+1}, using the least such y. Throws NotRepresentable when two
/// witnesses give different results or the result is 0.
Sequence normal_form(Sequence seq, const ScheinContext& ctx);
bool is_reduced(const Sequence& seq, const ScheinContext& ctx);

/// x^θ on a reduced sequence: defined iff t;d(x) = t for the address t, and
/// then nf(..., t;x).
std::optional<Sequence> theta_forward(const Sequence& seq, Element x, const ScheinContext& ctx);

/// nf(seq, u;r(t), d(u;r(t))), or nullopt when u;r(t) = 0 or the candidate
/// is not permissible.
std::optional<Sequence> extend(const Sequence& seq, Element u, const ScheinContext& ctx);

/// view[x] = address of x^θ(seq), or -1 where x^θ is undefined or x = 0.
using View = std::vector<Element>;
View view_of(const Sequence& seq, const ScheinContext& ctx);

std::string to_string(const Sequence& seq, const FiniteAlgebra& alg);
std::string view_to_string(const View& view, const FiniteAlgebra& alg);

struct ViewClass {
  View view;
  Sequence rep;
};

struct Representation {
  /// Symbols the construction claims to represent.
  Signature signature;
  std::vector<ViewClass> classes;  // the base; class i is point i
  std::vector<PartialFunction> images;  // indexed by element

  std::size_t base_size() const { return classes.size(); }
  std::optional<Point> class_of(const View& v) const;
};

struct ClosureStats {
  std::size_t forward_moves = 0;
  std::size_t extend_moves = 0;
  std::size_t collisions_audited = 0;
};

/// Quotient of Schein's representation by equality of views, closed under
/// forward moves and extensions from the length-1 sequences. Represents the
/// symbols of alg.signature among ;, d, r, fix, 0, 1'. Throws
/// NotRepresentable when an audit or a size bound fails.
Representation build_quotient_representation(const FiniteAlgebra& alg, ClosureStats* stats = nullptr);

enum class DefectKind { operation, injectivity };

struct Defect {
  DefectKind kind = DefectKind::operation;
  Op symbol = Op::compose;
  std::vector<Element> args;  // operands, or the two colliding elements
  Point point = kUndefined;
  Point expected = kUndefined;  // image of the operation's value at point
  Point actual = kUndefined;    // operation applied to the images at point
};

struct VerifyReport {
  Signature checked;
  std::vector<Defect> defects;
  bool ok() const { return defects.empty(); }
};

/// Checks injectivity and, for every symbol of `sig` and every tuple, that
/// the image of the value equals the concrete operation on the images.
VerifyReport verify_representation(const Representation& rep, const FiniteAlgebra& alg, const Signature& sig,
                                   unsigned jobs = 1);
inline VerifyReport verify_representation(const Representation& rep, const FiniteAlgebra& alg, unsigned jobs = 1) {
  return verify_representation(rep, alg, rep.signature, jobs);
}

std::string to_string(const Defect& d, const FiniteAlgebra& alg);

struct AtomLift {
  SubAlgebra at;             // S^at
  Representation at_rep;     // Θ on S^at
  Representation rep;        // φ on S, same base
  std::vector<Element> atoms;
};

/// s^φ = ∪ over atoms δ of (δ;s)^Θ. Needs antidomain and range. Throws
/// NotRepresentable if the pieces overlap.
AtomLift lift_antidomain(const FiniteAlgebra& alg);

/// The representation as reloadable function-algebra text.
FunctionAlgebra to_function_algebra(const Representation& rep, const FiniteAlgebra& alg);

struct ShrinkResult {
  FunctionAlgebra algebra;  // the generators restricted to Y
  std::vector<Point> y;     // in original numbering
  std::size_t element_count = 0;
};

/// Restricts a range-free algebra of functions to the least disagreement
/// points of its element pairs and their images. Throws DataError for
/// signatures with range, InternalError if the restriction is not an
/// isomorphism.
ShrinkResult shrink_range_free(const FunctionAlgebra& alg, std::size_t max_elements = 4096);

}  // namespace pfa
