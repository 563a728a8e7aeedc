#include "pfa/signature.hpp"

#include <sstream>

#include "pfa/error.hpp"

namespace pfa {

namespace {

struct OpInfo {
  int arity;
  std::string_view token;
  std::string_view name;
};

constexpr std::array<OpInfo, kOpCount> kInfo = {{
    {2, ";", "compose"},
    {2, ".", "meet"},
    {2, "+", "prefunion"},
    {1, "d", "dom"},
    {1, "a", "antidom"},
    {1, "r", "range"},
    {1, "fix", "fixset"},
    {1, "^", "maxiter"},
    {0, "0", "zero"},
    {0, "1'", "identity"},
}};

const OpInfo& info(Op op) { return kInfo[static_cast<std::size_t>(op)]; }

}  // namespace

int arity(Op op) { return info(op).arity; }
std::string_view token(Op op) { return info(op).token; }
std::string_view op_name(Op op) { return info(op).name; }

std::optional<Op> op_from_token(std::string_view tok) {
  for (Op op : kAllOps) {
    if (info(op).token == tok || info(op).name == tok) return op;
  }
  return std::nullopt;
}

Signature::Signature() { bits_.set(static_cast<std::size_t>(Op::compose)); }

Signature::Signature(std::initializer_list<Op> ops) : Signature() {
  for (Op op : ops) bits_.set(static_cast<std::size_t>(op));
}

Signature Signature::full() {
  Signature s;
  s.bits_.set();
  return s;
}

Signature Signature::parse(std::string_view text) {
  Signature s;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto op = op_from_token(tok);
    if (!op) throw DataError("unknown operation symbol '" + tok + "' in signature");
    s.bits_.set(static_cast<std::size_t>(*op));
  }
  return s;
}

Signature Signature::with(Op op) const {
  Signature s = *this;
  s.bits_.set(static_cast<std::size_t>(op));
  return s;
}

Signature Signature::without(Op op) const {
  if (op == Op::compose) return *this;
  Signature s = *this;
  s.bits_.reset(static_cast<std::size_t>(op));
  return s;
}

bool Signature::subset_of(const Signature& other) const {
  return (bits_ & ~other.bits_).none();
}

std::vector<Op> Signature::ops() const {
  std::vector<Op> out;
  for (Op op : kAllOps)
    if (contains(op)) out.push_back(op);
  return out;
}

std::string Signature::to_string() const {
  std::string out;
  for (Op op : ops()) {
    if (!out.empty()) out += ' ';
    out += token(op);
  }
  return out;
}

}  // namespace pfa
