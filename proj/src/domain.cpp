#include "pfa/domain.hpp"

#include <algorithm>

#include "pfa/error.hpp"

namespace pfa {

std::vector<Element> domain_elements(const FiniteAlgebra& alg) {
  if (!alg.available(Op::dom)) throw EvaluationError("domain needs d or a in the signature");
  std::vector<Element> out;
  for (Element x = 0; x < static_cast<Element>(alg.size()); ++x)
    if (alg.dom(x) == x) out.push_back(x);
  return out;
}

std::vector<std::vector<bool>> natural_order(const FiniteAlgebra& alg) {
  if (!alg.available(Op::dom)) throw EvaluationError("the natural order needs d or a in the signature");
  const auto n = static_cast<Element>(alg.size());
  std::vector<std::vector<bool>> le(alg.size(), std::vector<bool>(alg.size(), false));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) le[x][y] = alg.compose(alg.dom(x), y) == x;
  return le;
}

BooleanStructure boolean_structure(const FiniteAlgebra& alg) {
  if (!alg.available(Op::antidom)) throw EvaluationError("boolean structure needs antidomain");
  BooleanStructure b;
  b.elements = domain_elements(alg);
  b.bottom = *alg.zero();
  b.top = *alg.identity();
  const auto& D = b.elements;
  auto in_d = [&](Element x) { return std::binary_search(D.begin(), D.end(), x); };
  auto a = [&](Element x) { return alg.apply(Op::antidom, x); };
  auto m = [&](Element x, Element y) { return alg.compose(x, y); };
  auto j = [&](Element x, Element y) { return a(m(a(x), a(y))); };
  auto fail = [&](std::string what) {
    b.failure = std::move(what);
    return b;
  };

  if (!in_d(b.bottom)) return fail("0 is not a domain element");
  if (!in_d(b.top)) return fail("1' is not a domain element");
  for (Element x : D) {
    if (!in_d(a(x))) return fail("D(S) is not closed under a at " + alg.name(x));
    if (m(x, x) != x) return fail("meet is not idempotent at " + alg.name(x));
    if (m(x, a(x)) != b.bottom) return fail("x;a(x) = 0 fails at " + alg.name(x));
    if (j(x, a(x)) != b.top) return fail("x or a(x) = 1' fails at " + alg.name(x));
    if (m(x, b.top) != x || m(b.bottom, x) != b.bottom) return fail("bounds fail at " + alg.name(x));
    for (Element y : D) {
      if (!in_d(m(x, y))) return fail("D(S) is not closed under ; at " + alg.name(x) + ", " + alg.name(y));
      if (m(x, y) != m(y, x)) return fail("meet is not commutative at " + alg.name(x) + ", " + alg.name(y));
      if (m(x, j(x, y)) != x) return fail("absorption fails at " + alg.name(x) + ", " + alg.name(y));
      for (Element z : D) {
        if (m(x, j(y, z)) != j(m(x, y), m(x, z)))
          return fail("distributivity fails at " + alg.name(x) + ", " + alg.name(y) + ", " + alg.name(z));
      }
    }
  }
  for (Element x : D) {
    if (x == b.bottom) continue;
    bool minimal = true;
    for (Element y : D)
      if (y != b.bottom && y != x && m(y, x) == y) minimal = false;
    if (minimal) b.atoms.push_back(x);
  }
  return b;
}

SubAlgebra s_at(const FiniteAlgebra& alg) {
  BooleanStructure b = boolean_structure(alg);
  if (!b.ok()) throw NotRepresentable("domain elements do not form a boolean algebra: " + *b.failure);
  const Element zero = b.bottom;
  auto is_atom = [&](Element x) { return std::find(b.atoms.begin(), b.atoms.end(), x) != b.atoms.end(); };

  std::vector<Element> members;
  for (Element x = 0; x < static_cast<Element>(alg.size()); ++x)
    if (x == zero || is_atom(alg.dom(x))) members.push_back(x);
  std::vector<Element> local(alg.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<Element>(i);

  Signature sig{Op::dom, Op::zero};
  for (Op op : {Op::range, Op::fixset})
    if (alg.signature().contains(op)) sig = sig.with(op);
  if (alg.identity() && is_atom(*alg.identity())) sig = sig.with(Op::identity);

  auto map_back = [&](Element parent, Op op) {
    Element l = local[static_cast<std::size_t>(parent)];
    if (l < 0)
      throw NotRepresentable("S^at is not closed under '" + std::string(token(op)) + "' (produced " +
                             alg.name(parent) + ")");
    return l;
  };
  TableSet tables;
  for (Op op : sig.ops()) {
    auto& t = tables[static_cast<std::size_t>(op)];
    switch (arity(op)) {
      case 0:
        t.push_back(map_back(alg.apply(op), op));
        break;
      case 1:
        for (Element x : members) t.push_back(map_back(alg.apply(op, x), op));
        break;
      default:
        for (Element x : members)
          for (Element y : members) t.push_back(map_back(alg.apply(op, x, y), op));
        break;
    }
  }
  std::vector<std::string> names;
  for (Element x : members) names.push_back(alg.name(x));
  return SubAlgebra{FiniteAlgebra(std::move(names), sig, std::move(tables)), members};
}

}  // namespace pfa
