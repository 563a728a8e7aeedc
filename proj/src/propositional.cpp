#include "pfa/propositional.hpp"

#include <algorithm>
#include <cctype>

#include "pfa/error.hpp"

namespace pfa {

Formula Formula::atom(std::string name) {
  Formula f;
  f.kind = Kind::atom;
  f.name = std::move(name);
  return f;
}

Formula Formula::negation(Formula g) {
  Formula f;
  f.kind = Kind::negation;
  f.left = std::make_shared<const Formula>(std::move(g));
  return f;
}

Formula Formula::conjunction(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::conjunction;
  f.left = std::make_shared<const Formula>(std::move(a));
  f.right = std::make_shared<const Formula>(std::move(b));
  return f;
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view s) : s_(s) {}

  Formula conj() {
    Formula f = unary();
    while (accept_and()) f = Formula::conjunction(f, unary());
    return f;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
  }

 private:
  Formula unary() {
    skip();
    if (accept_not()) return Formula::negation(unary());
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      Formula f = conj();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return f;
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Formula::atom(std::string(s_.substr(start, pos_ - start)));
    }
    throw ParseError("expected a formula", pos_);
  }

  bool accept_token(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool accept_not() { return accept_token("~") || accept_token("!") || accept_token("\xC2\xAC"); }
  bool accept_and() { return accept_token("&") || accept_token("^") || accept_token("\xE2\x88\xA7"); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::atom:
      if (std::find(out.begin(), out.end(), f.name) == out.end()) out.push_back(f.name);
      break;
    case Formula::Kind::negation:
      collect_atoms(*f.left, out);
      break;
    case Formula::Kind::conjunction:
      collect_atoms(*f.left, out);
      collect_atoms(*f.right, out);
      break;
  }
}

Term translate(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return Term::unary(Op::dom, Term::variable("f_" + f.name));
    case Formula::Kind::negation:
      return Term::unary(Op::antidom, translate(*f.left));
    case Formula::Kind::conjunction:
      return Term::binary(Op::compose, translate(*f.left), translate(*f.right));
  }
  throw InternalError("malformed formula");
}

}  // namespace

Formula parse_formula(std::string_view text) {
  FormulaParser p(text);
  Formula f = p.conj();
  p.finish();
  return f;
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return f.name;
    case Formula::Kind::negation: {
      std::string inner = to_string(*f.left);
      if (f.left->kind == Formula::Kind::conjunction) inner = "(" + inner + ")";
      return "~" + inner;
    }
    case Formula::Kind::conjunction: {
      std::string r = to_string(*f.right);
      if (f.right->kind == Formula::Kind::conjunction) r = "(" + r + ")";
      return to_string(*f.left) + " & " + r;
    }
  }
  return {};
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

bool evaluate(const Formula& f, const std::map<std::string, bool>& val) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return val.at(f.name);
    case Formula::Kind::negation:
      return !evaluate(*f.left, val);
    case Formula::Kind::conjunction:
      return evaluate(*f.left, val) && evaluate(*f.right, val);
  }
  return false;
}

bool is_tautology(const Formula& f) {
  auto atoms = atoms_of(f);
  const std::size_t rows = std::size_t{1} << atoms.size();
  for (std::size_t row = 0; row < rows; ++row) {
    std::map<std::string, bool> val;
    for (std::size_t i = 0; i < atoms.size(); ++i) val[atoms[i]] = (row >> i) & 1u;
    if (!evaluate(f, val)) return false;
  }
  return true;
}

Equation sat_to_equation(const Formula& f) { return Equation{translate(f), Term::constant(Op::identity)}; }

}  // namespace pfa
