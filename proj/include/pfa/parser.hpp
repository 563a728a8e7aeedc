#pragma once

#include <string_view>

#include "pfa/term.hpp"

namespace pfa {

// Grammar, loosest first:  sum := meet ('+' meet)*   meet := seq ('.' seq)*
// seq := post (';' post)*   post := atom '^'*
// atom := '0' | "1'" | IDENT | op '(' sum ')' | '(' sum ')'
// An identifier d, a, r or fix followed by '(' is an operator application;
// otherwise it is a variable name.
Term parse_term(std::string_view text);
Equation parse_equation(std::string_view text);
/// eq ('&' eq)* '=>' eq, or a bare equation.
Quasiequation parse_quasiequation(std::string_view text);

}  // namespace pfa
