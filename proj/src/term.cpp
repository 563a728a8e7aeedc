#include "pfa/term.hpp"

#include <algorithm>

#include "pfa/error.hpp"

namespace pfa {

struct Term::Node {
  NodeKind kind;
  Op op;
  std::string name;
  std::optional<Term> left;
  std::optional<Term> right;
};

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(
      Node{NodeKind::variable, Op::compose, std::move(name), std::nullopt, std::nullopt}));
}

Term::Term() : Term(constant(Op::zero)) {}

Term Term::constant(Op op) {
  if (arity(op) != 0) throw InternalError("Term::constant with non-constant symbol");
  return Term(std::make_shared<const Node>(Node{NodeKind::constant, op, {}, std::nullopt, std::nullopt}));
}

Term Term::unary(Op op, Term child) {
  if (arity(op) != 1) throw InternalError("Term::unary with non-unary symbol");
  return Term(std::make_shared<const Node>(Node{NodeKind::unary, op, {}, std::move(child), std::nullopt}));
}

Term Term::binary(Op op, Term left, Term right) {
  if (arity(op) != 2) throw InternalError("Term::binary with non-binary symbol");
  return Term(std::make_shared<const Node>(
      Node{NodeKind::binary, op, {}, std::move(left), std::move(right)}));
}

NodeKind Term::kind() const { return node_->kind; }
Op Term::op() const { return node_->op; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::child() const { return *node_->left; }
const Term& Term::left() const { return *node_->left; }
const Term& Term::right() const { return *node_->right; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::variable:
      return a.name() == b.name();
    case NodeKind::constant:
      return a.op() == b.op();
    case NodeKind::unary:
      return a.op() == b.op() && a.child() == b.child();
    case NodeKind::binary:
      return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::size_t term_length(const Term& t) {
  switch (t.kind()) {
    case NodeKind::variable:
    case NodeKind::constant:
      return 1;
    case NodeKind::unary:
      return 1 + term_length(t.child());
    case NodeKind::binary:
      return 1 + term_length(t.left()) + term_length(t.right());
  }
  return 1;
}

namespace {

void collect_variables(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case NodeKind::variable:
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
      break;
    case NodeKind::constant:
      break;
    case NodeKind::unary:
      collect_variables(t.child(), out);
      break;
    case NodeKind::binary:
      collect_variables(t.left(), out);
      collect_variables(t.right(), out);
      break;
  }
}

std::optional<IllFormed> find_ill_formed(const Term& t, const Signature& sig, const std::string& path) {
  if (t.kind() == NodeKind::variable) return std::nullopt;
  if (!sig.contains(t.op())) return IllFormed{t.op(), path};
  if (t.kind() == NodeKind::unary) return find_ill_formed(t.child(), sig, path + ".child");
  if (t.kind() == NodeKind::binary) {
    if (auto bad = find_ill_formed(t.left(), sig, path + ".left")) return bad;
    return find_ill_formed(t.right(), sig, path + ".right");
  }
  return std::nullopt;
}

// Binding strength used by the printer; higher binds tighter.
int precedence(const Term& t) {
  if (t.kind() != NodeKind::binary) {
    return (t.kind() == NodeKind::unary && t.op() == Op::maxiter) ? 4 : 5;
  }
  switch (t.op()) {
    case Op::prefunion:
      return 1;
    case Op::meet:
      return 2;
    default:
      return 3;
  }
}

void print(const Term& t, std::string& out);

void print_operand(const Term& t, bool parens, std::string& out) {
  if (parens) out += '(';
  print(t, out);
  if (parens) out += ')';
}

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case NodeKind::variable:
      out += t.name();
      return;
    case NodeKind::constant:
      out += token(t.op());
      return;
    case NodeKind::unary:
      if (t.op() == Op::maxiter) {
        print_operand(t.child(), precedence(t.child()) < 4, out);
        out += '^';
      } else {
        out += token(t.op());
        out += '(';
        print(t.child(), out);
        out += ')';
      }
      return;
    case NodeKind::binary: {
      int p = precedence(t);
      print_operand(t.left(), precedence(t.left()) < p, out);
      if (t.op() == Op::compose) {
        out += ';';
      } else {
        out += ' ';
        out += token(t.op());
        out += ' ';
      }
      print_operand(t.right(), precedence(t.right()) <= p, out);
      return;
    }
  }
}

void collect_symbols(const Term& t, Signature& sig) {
  if (t.kind() == NodeKind::variable) return;
  sig = sig.with(t.op());
  if (t.kind() == NodeKind::unary) collect_symbols(t.child(), sig);
  if (t.kind() == NodeKind::binary) {
    collect_symbols(t.left(), sig);
    collect_symbols(t.right(), sig);
  }
}

}  // namespace

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

std::vector<std::string> variables_of(const Equation& e) {
  std::vector<std::string> out;
  collect_variables(e.lhs, out);
  collect_variables(e.rhs, out);
  return out;
}

std::vector<std::string> variables_of(const Quasiequation& q) {
  std::vector<std::string> out;
  for (const auto& p : q.premises) {
    collect_variables(p.lhs, out);
    collect_variables(p.rhs, out);
  }
  collect_variables(q.conclusion.lhs, out);
  collect_variables(q.conclusion.rhs, out);
  return out;
}

std::optional<IllFormed> check_well_formed(const Term& t, const Signature& sig) {
  return find_ill_formed(t, sig, "root");
}

std::optional<IllFormed> check_well_formed(const Equation& e, const Signature& sig) {
  if (auto bad = find_ill_formed(e.lhs, sig, "lhs")) return bad;
  return find_ill_formed(e.rhs, sig, "rhs");
}

Signature symbols_of(const Term& t) {
  Signature sig;
  collect_symbols(t, sig);
  return sig;
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

std::string to_string(const Quasiequation& q) {
  std::string out;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    if (i) out += " & ";
    out += to_string(q.premises[i]);
  }
  if (!q.premises.empty()) out += " => ";
  out += to_string(q.conclusion);
  return out;
}

}  // namespace pfa
