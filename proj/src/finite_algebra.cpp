#include "pfa/finite_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pfa/error.hpp"

namespace pfa {

namespace {

std::size_t table_size(Op op, std::size_t n) {
  std::size_t s = 1;
  for (int i = 0; i < arity(op); ++i) s *= n;
  return s;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> names, Signature sig, TableSet tables)
    : names_(std::move(names)), sig_(sig), given_(std::move(tables)) {
  const std::size_t n = names_.size();
  std::set<std::string_view> seen;
  for (const auto& nm : names_) {
    if (nm.empty()) throw DataError("empty element name");
    if (!seen.insert(nm).second) throw DataError("element '" + nm + "' listed twice");
  }
  for (Op op : kAllOps) {
    const auto& t = given_[static_cast<std::size_t>(op)];
    if (t.empty()) continue;
    if (!sig_.contains(op))
      throw DataError("table for '" + std::string(token(op)) + "' given but the symbol is not in the signature");
    if (t.size() != table_size(op, n))
      throw DataError("table for '" + std::string(token(op)) + "' has " + std::to_string(t.size()) +
                      " entries, expected " + std::to_string(table_size(op, n)));
    for (Element e : t)
      if (e < 0 || static_cast<std::size_t>(e) >= n)
        throw DataError("table for '" + std::string(token(op)) + "' has an out-of-range entry");
  }
  if (n == 0) throw DataError("algebra has no elements");

  resolved_ = given_;
  auto& a = resolved_[static_cast<std::size_t>(Op::antidom)];
  auto& d = resolved_[static_cast<std::size_t>(Op::dom)];
  auto& z = resolved_[static_cast<std::size_t>(Op::zero)];
  auto& e = resolved_[static_cast<std::size_t>(Op::identity)];
  const auto& comp = resolved_[static_cast<std::size_t>(Op::compose)];
  if (comp.empty()) throw DataError("missing table for ';'");
  if (!a.empty()) {
    std::vector<Element> aa(n);
    for (std::size_t x = 0; x < n; ++x) aa[x] = a[static_cast<std::size_t>(a[x])];
    if (d.empty()) {
      d = aa;
    } else if (d != aa) {
      throw DataError("the d table disagrees with a(a(x))");
    }
    Element derived_zero = comp[static_cast<std::size_t>(a[0]) * n];
    if (z.empty()) {
      z = {derived_zero};
    } else if (z[0] != derived_zero) {
      throw DataError("the zero element disagrees with a(x);x");
    }
    Element derived_one = a[static_cast<std::size_t>(z[0])];
    if (e.empty()) {
      e = {derived_one};
    } else if (e[0] != derived_one) {
      throw DataError("the identity element disagrees with a(0)");
    }
  }
  for (Op op : sig_.ops())
    if (!available(op)) throw DataError("no table for '" + std::string(token(op)) + "'");
  if (sig_.contains(Op::zero)) {
    Element zero_el = z[0];
    for (std::size_t y = 0; y < n; ++y)
      if (comp[static_cast<std::size_t>(zero_el) * n + y] != zero_el)
        throw DataError("zero law 0;y = 0 fails at y = " + names_[y]);
  }
}

std::optional<Element> FiniteAlgebra::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Element>(i);
  return std::nullopt;
}

Element FiniteAlgebra::apply(Op op) const {
  if (arity(op) != 0 || !available(op))
    throw EvaluationError("constant '" + std::string(token(op)) + "' is not available");
  return at(op, 0);
}

Element FiniteAlgebra::apply(Op op, Element x) const {
  if (arity(op) != 1 || !available(op))
    throw EvaluationError("operation '" + std::string(token(op)) + "' is not available");
  return at(op, x);
}

Element FiniteAlgebra::apply(Op op, Element x, Element y) const {
  if (arity(op) != 2 || !available(op))
    throw EvaluationError("operation '" + std::string(token(op)) + "' is not available");
  return at(op, x * n() + y);
}

std::optional<Element> FiniteAlgebra::zero() const {
  if (!available(Op::zero)) return std::nullopt;
  return at(Op::zero, 0);
}

std::optional<Element> FiniteAlgebra::identity() const {
  if (!available(Op::identity)) return std::nullopt;
  return at(Op::identity, 0);
}

namespace {

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

FiniteAlgebra parse_finite_algebra(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      lines.push_back(trim(line));
    }
  }
  std::optional<std::vector<std::string>> names;
  std::optional<Signature> sig;
  TableSet tables;
  auto lookup = [&](const std::string& nm, std::size_t lineno) {
    for (std::size_t i = 0; i < names->size(); ++i)
      if ((*names)[i] == nm) return static_cast<Element>(i);
    throw DataError("line " + std::to_string(lineno) + ": unknown element '" + nm + "'");
  };
  auto need_names = [&](std::size_t lineno) {
    if (!names) throw DataError("line " + std::to_string(lineno) + ": 'elements:' must come first");
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const std::size_t lineno = i + 1;
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw DataError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(std::string_view(line).substr(0, colon));
    std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "elements") {
      if (names) throw DataError("line " + std::to_string(lineno) + ": duplicate 'elements:'");
      names = split_words(value);
    } else if (key == "signature") {
      sig = Signature::parse(value);
    } else if (key == "zero" || key == "identity") {
      need_names(lineno);
      Op op = key == "zero" ? Op::zero : Op::identity;
      tables[static_cast<std::size_t>(op)] = {lookup(value, lineno)};
    } else if (key.rfind("table", 0) == 0) {
      need_names(lineno);
      std::string tok = trim(std::string_view(key).substr(5));
      auto op = op_from_token(tok);
      if (!op || arity(*op) == 0)
        throw DataError("line " + std::to_string(lineno) + ": unknown table '" + tok + "'");
      auto& table = tables[static_cast<std::size_t>(*op)];
      if (!table.empty()) throw DataError("line " + std::to_string(lineno) + ": duplicate table '" + tok + "'");
      const std::size_t n = names->size();
      if (arity(*op) == 1) {
        for (const auto& w : split_words(value)) table.push_back(lookup(w, lineno));
        if (table.size() != n)
          throw DataError("line " + std::to_string(lineno) + ": table '" + tok + "' needs " + std::to_string(n) +
                          " entries");
      } else {
        if (!value.empty())
          throw DataError("line " + std::to_string(lineno) + ": binary table rows go on the following lines");
        std::size_t rows = 0;
        while (rows < n) {
          ++i;
          if (i >= lines.size())
            throw DataError("table '" + tok + "' ends after " + std::to_string(rows) + " rows");
          if (lines[i].empty()) continue;
          auto row = split_words(lines[i]);
          if (row.size() != n)
            throw DataError("line " + std::to_string(i + 1) + ": row of table '" + tok + "' needs " +
                            std::to_string(n) + " entries");
          for (const auto& w : row) table.push_back(lookup(w, i + 1));
          ++rows;
        }
      }
    } else {
      throw DataError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!names) throw DataError("missing 'elements:' line");
  if (!sig) throw DataError("missing 'signature:' line");
  return FiniteAlgebra(std::move(*names), *sig, std::move(tables));
}

std::string to_text(const FiniteAlgebra& alg) {
  std::ostringstream out;
  const auto n = alg.size();
  out << "elements:";
  for (const auto& nm : alg.names()) out << ' ' << nm;
  out << "\nsignature: " << alg.signature().to_string() << '\n';
  for (Op op : kAllOps) {
    const auto& t = alg.given_table(op);
    if (t.empty()) continue;
    if (arity(op) == 2) {
      out << "table " << token(op) << ":\n";
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out << (c ? " " : "") << alg.name(t[r * n + c]);
        out << '\n';
      }
    } else if (arity(op) == 1) {
      out << "table " << token(op) << ":";
      for (Element e : t) out << ' ' << alg.name(e);
      out << '\n';
    }
  }
  if (!alg.given_table(Op::zero).empty()) out << "zero: " << alg.name(alg.given_table(Op::zero)[0]) << '\n';
  if (!alg.given_table(Op::identity).empty())
    out << "identity: " << alg.name(alg.given_table(Op::identity)[0]) << '\n';
  return out.str();
}

Element eval_term_abstract(const Term& t, const ElementAssignment& asg, const FiniteAlgebra& alg) {
  switch (t.kind()) {
    case NodeKind::variable: {
      auto it = asg.find(t.name());
      if (it == asg.end()) throw EvaluationError("variable '" + t.name() + "' is not bound");
      return it->second;
    }
    case NodeKind::constant:
      return alg.apply(t.op());
    case NodeKind::unary:
      return alg.apply(t.op(), eval_term_abstract(t.child(), asg, alg));
    case NodeKind::binary: {
      Element l = eval_term_abstract(t.left(), asg, alg);
      return alg.apply(t.op(), l, eval_term_abstract(t.right(), asg, alg));
    }
  }
  throw InternalError("malformed term node");
}

ConcreteAlgebra finite_algebra_of(const std::vector<PartialFunction>& elements, const Signature& sig,
                                  std::size_t base_size, const std::vector<std::string>& names) {
  const std::size_t n = elements.size();
  std::map<PartialFunction, Element> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elements[i], static_cast<Element>(i));
  if (index.size() != n) throw DataError("element list has duplicates");
  auto find = [&](const PartialFunction& f) {
    auto it = index.find(f);
    if (it == index.end()) throw DataError("element set is not closed under the signature");
    return it->second;
  };
  TableSet tables;
  for (Op op : sig.ops()) {
    auto& t = tables[static_cast<std::size_t>(op)];
    switch (arity(op)) {
      case 0:
        t.push_back(find(op == Op::zero ? PartialFunction(base_size) : PartialFunction::identity(base_size)));
        break;
      case 1:
        for (const auto& f : elements) {
          PartialFunction g = op == Op::dom       ? dom(f)
                              : op == Op::antidom ? antidom(f)
                              : op == Op::range   ? range(f)
                              : op == Op::fixset  ? fixset(f)
                                                  : maxiter(f);
          t.push_back(find(g));
        }
        break;
      default:
        for (const auto& f : elements)
          for (const auto& g : elements) {
            PartialFunction h = op == Op::compose ? compose(f, g) : op == Op::meet ? meet(f, g) : prefunion(f, g);
            t.push_back(find(h));
          }
        break;
    }
  }
  std::vector<std::string> nm(names.begin(), names.end());
  for (std::size_t i = nm.size(); i < n; ++i) nm.push_back("s" + std::to_string(i));
  return ConcreteAlgebra{FiniteAlgebra(std::move(nm), sig, std::move(tables)), elements, base_size};
}

ConcreteAlgebra to_finite_algebra(const FunctionAlgebra& alg, std::size_t max_elements) {
  alg.validate();
  std::vector<PartialFunction> gens;
  std::vector<std::string> names;
  for (const auto& [name, f] : alg.generators) {
    if (std::find(gens.begin(), gens.end(), f) != gens.end()) continue;
    gens.push_back(f);
    names.push_back(name);
  }
  auto elems = closure(gens, alg.signature, alg.base_size, max_elements);
  // Name the constants when they are new elements; never reuse a generator's name.
  std::set<std::string> taken(names.begin(), names.end());
  for (std::size_t i = names.size(); i < elems.size(); ++i) {
    std::string nm = "s" + std::to_string(i);
    if (alg.signature.contains(Op::zero) && elems[i] == PartialFunction(alg.base_size) && !taken.count("0"))
      nm = "0";
    else if (alg.signature.contains(Op::identity) && elems[i] == PartialFunction::identity(alg.base_size) &&
             !taken.count("1'"))
      nm = "1'";
    while (taken.count(nm)) nm += "_";
    taken.insert(nm);
    names.push_back(nm);
  }
  return finite_algebra_of(elems, alg.signature, alg.base_size, names);
}

}  // namespace pfa
