#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pfa/term.hpp"

namespace pfa {

/// Propositional formula over negation and conjunction.
struct Formula {
  enum class Kind { atom, negation, conjunction };
  Kind kind = Kind::atom;
  std::string name;  // atom
  std::shared_ptr<const Formula> left, right;

  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
};

/// Accepts '~', '!' or '¬' for negation and '&', '∧' or '^' for conjunction;
/// atoms are identifiers. Throws ParseError.
Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);
std::vector<std::string> atoms_of(const Formula& f);
bool evaluate(const Formula& f, const std::map<std::string, bool>& val);
/// Truth table over atoms_of(f).
bool is_tautology(const Formula& f);

/// phi* = 1', with each atom p read as d(f_p), negation as a and
/// conjunction as ;.
Equation sat_to_equation(const Formula& f);

}  // namespace pfa
