#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pfa/signature.hpp"

namespace pfa {

enum class NodeKind : std::uint8_t { variable, constant, unary, binary };

/// Immutable syntax tree over the partial-function operations. Copies share
/// structure; equality is structural.
class Term {
 public:
  /// The constant 0.
  Term();
  static Term variable(std::string name);
  /// `op` must be Op::zero or Op::identity.
  static Term constant(Op op);
  static Term unary(Op op, Term child);
  static Term binary(Op op, Term left, Term right);

  NodeKind kind() const;
  /// Operation symbol; meaningless for variables.
  Op op() const;
  /// Variable name; empty for other nodes.
  const std::string& name() const;
  const Term& child() const;  // unary operand
  const Term& left() const;
  const Term& right() const;

  /// Stable identity of the underlying node, usable as a memo key.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// premises => conclusion. Variables listed in `domain_variables` range over
/// domain elements only (the fixed points of d).
struct Quasiequation {
  std::vector<Equation> premises;
  Equation conclusion;
  std::vector<std::string> domain_variables;
};

/// Node count of the syntax tree.
std::size_t term_length(const Term& t);

/// Variable names in first-occurrence (left-to-right, pre-order) order.
std::vector<std::string> variables_of(const Term& t);
std::vector<std::string> variables_of(const Equation& e);
std::vector<std::string> variables_of(const Quasiequation& q);

struct IllFormed {
  Op symbol;
  /// Path from the root, e.g. "root.left.child".
  std::string path;
};

/// First symbol (pre-order) of `t` that is not in `sig`, if any.
std::optional<IllFormed> check_well_formed(const Term& t, const Signature& sig);
std::optional<IllFormed> check_well_formed(const Equation& e, const Signature& sig);

/// All operation symbols occurring in `t`.
Signature symbols_of(const Term& t);

/// Prints in the parser's grammar with the fewest parentheses that preserve
/// the tree shape.
std::string to_string(const Term& t);
std::string to_string(const Equation& e);
std::string to_string(const Quasiequation& q);

}  // namespace pfa
