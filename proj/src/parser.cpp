#include "pfa/parser.hpp"

#include <cctype>

#include "pfa/error.hpp"

namespace pfa {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term sum() {
    Term t = meet();
    while (accept('+')) t = Term::binary(Op::prefunion, t, meet());
    return t;
  }

  Equation equation() {
    Term lhs = sum();
    expect('=');
    return Equation{lhs, sum()};
  }

  Quasiequation quasiequation() {
    Quasiequation q;
    Equation first = equation();
    if (!peek_is("&") && !peek_is("=>")) {
      q.conclusion = std::move(first);
      return q;
    }
    q.premises.push_back(std::move(first));
    while (accept('&')) q.premises.push_back(equation());
    skip_space();
    if (!peek_is("=>")) fail("expected '=>'");
    pos_ += 2;
    q.conclusion = equation();
    return q;
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

 private:
  Term meet() {
    Term t = seq();
    while (accept('.')) t = Term::binary(Op::meet, t, seq());
    return t;
  }

  Term seq() {
    Term t = post();
    while (accept(';')) t = Term::binary(Op::compose, t, post());
    return t;
  }

  Term post() {
    Term t = atom();
    while (accept('^')) t = Term::unary(Op::maxiter, t);
    return t;
  }

  Term atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = sum();
      expect(')');
      return t;
    }
    if (c == '0') {
      ++pos_;
      return Term::constant(Op::zero);
    }
    if (c == '1') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        ++pos_;
        return Term::constant(Op::identity);
      }
      fail("expected 1'");
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      std::size_t after = pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        std::optional<Op> op;
        if (name == "d") op = Op::dom;
        if (name == "a") op = Op::antidom;
        if (name == "r") op = Op::range;
        if (name == "fix") op = Op::fixset;
        if (!op) fail("unknown operator '" + name + "'", start);
        ++pos_;
        Term child = sum();
        expect(')');
        return Term::unary(*op, child);
      }
      pos_ = after;
      return Term::variable(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(std::string_view s) {
    skip_space();
    return text_.substr(pos_, s.size()) == s;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      // '=' followed by '>' is the implication arrow, not an equals sign.
      if (c == '=' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') return false;
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) { throw ParseError(what, at); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.sum();
  p.finish();
  return t;
}

Equation parse_equation(std::string_view text) {
  Parser p(text);
  Equation e = p.equation();
  p.finish();
  return e;
}

Quasiequation parse_quasiequation(std::string_view text) {
  Parser p(text);
  Quasiequation q = p.quasiequation();
  p.finish();
  return q;
}

}  // namespace pfa
