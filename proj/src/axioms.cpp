#include "pfa/axioms.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "parallel.hpp"
#include "pfa/domain.hpp"
#include "pfa/error.hpp"
#include "pfa/parser.hpp"

namespace pfa {

namespace {

enum class Group { always, domain, meet, zero, identity, antidom, range, antirange, prefunion, maxiter, fixset };

struct CatalogEntry {
  Group group;
  const char* label;
  const char* text;
  const char* description;
  bool consequence;
  bool optional;
};

// Greek-letter variables of the catalogue are spelled alpha/beta and range
// over domain elements.
const CatalogEntry kCatalog[] = {
    {Group::always, "A", "x;(y;z) = (x;y);z", "associativity", false, false},

    {Group::domain, "I", "d(x);x = x", "domain is a left identity", false, false},
    {Group::domain, "II", "d(x);d(y) = d(y);d(x)", "domain elements commute", false, false},
    {Group::domain, "III", "d(d(x)) = d(x)", "domain is idempotent", false, false},
    {Group::domain, "IV", "d(x);d(x;y) = d(x;y)", "domain of a product is below the domain", false, false},
    {Group::domain, "V", "x;d(y) = d(x;y);x", "twisted law for domain", false, false},
    {Group::domain, "VI", "d(x);d(y) = d(d(x);y)", "domain of a restriction", true, false},
    {Group::domain, "VII", "d(x;d(y)) = d(x;y)", "left congruence for domain", true, false},

    {Group::meet, "SL1", "x . x = x", "meet is idempotent", false, false},
    {Group::meet, "SL2", "x . y = y . x", "meet is commutative", false, false},
    {Group::meet, "SL3", "x . (y . z) = (x . y) . z", "meet is associative", false, false},
    {Group::meet, "VIII", "x;(y . z) = (x;y) . (x;z)", "composition distributes over meet on the left", false,
     false},
    {Group::meet, "IX", "x . y = d(x . y);x", "meet is a restriction of each side", false, false},

    {Group::zero, "XI", "0;y = 0", "zero is a left zero", false, false},
    {Group::zero, "XI'", "y;0 = 0", "zero is a right zero", false, false},
    {Group::zero, "Z1", "d(0) = 0", "zero is a domain element", false, false},
    {Group::zero, "Z2", "r(0) = 0", "zero has empty range", false, false},
    {Group::identity, "XII", "1';y = y", "identity is a left identity", false, false},
    {Group::identity, "XII'", "y;1' = y", "identity is a right identity", false, false},

    {Group::antidom, "X", "a(x);x = a(y);y", "a(x);x is a constant", false, false},
    {Group::antidom, "XI", "0;y = 0", "zero is a left zero", false, false},
    {Group::antidom, "XI'", "y;0 = 0", "zero is a right zero", true, false},
    {Group::antidom, "XII", "1';y = y", "identity is a left identity", false, false},
    {Group::antidom, "XII'", "y;1' = y", "identity is a right identity", true, false},
    {Group::antidom, "XIII", "a(x);a(y) = a(y);a(x)", "antidomain elements commute", false, false},
    {Group::antidom, "XIV", "x;a(y) = a(x;y);x", "twisted law for antidomain", false, false},
    {Group::antidom, "XVI", "alpha;x = alpha;y & a(alpha);x = a(alpha);y => x = y",
     "elements are determined by their restrictions to alpha and its complement", false, false},
    {Group::antidom, "XV", "a(x);a(y) = a(x);a(a(x);y)", "antidomain order law", true, false},
    {Group::antidom, "XV'",
     "alpha;x = alpha;y & beta;x = beta;y => a(a(alpha);a(beta));x = a(a(alpha);a(beta));y",
     "agreement on alpha and on beta gives agreement on their join", true, false},
    {Group::antidom, "XV''", "a(alpha;x);a(beta;x) = a(a(a(alpha);a(beta));x)",
     "antidomain of a join restriction", true, false},

    {Group::range, "XVII", "x;r(x) = x", "range is a right identity", false, false},
    {Group::range, "XVIII", "r(x);r(y) = r(y);r(x)", "range elements commute", false, false},
    {Group::range, "XIX", "r(r(x)) = r(x)", "range is idempotent", false, false},
    {Group::range, "XX", "r(x;y);r(y) = r(x;y)", "range of a product is below the range", false, false},
    {Group::range, "XXI", "r(r(x);y) = r(x;y)", "right congruence for range", false, false},
    {Group::range, "XXII", "x;y = x;z => r(x);y = r(x);z", "left cancellation up to the range", false, false},
    {Group::range, "XXIII", "d(r(x)) = r(x)", "range elements are domain elements", false, false},
    {Group::range, "XXIII'", "r(d(x)) = d(x)", "domain elements are range elements", false, false},

    {Group::antirange, "XXIV", "a(a(r(alpha;x));a(r(beta;x))) = r(a(a(alpha);a(beta));x)",
     "range distributes over joins of domain elements", false, false},

    {Group::prefunion, "25", "d(x);(x + y) = x", "preferential union agrees with its left side", false, false},
    {Group::prefunion, "26", "a(x);(x + y) = a(x);y", "preferential union falls back to its right side", false,
     false},

    {Group::maxiter, "27", "d(x);x^ = x;x^", "iterate on the domain continues", false, false},
    {Group::maxiter, "27'", "a(x);x^ = a(x)", "iterate outside the domain stops", false, false},
    {Group::maxiter, "28", "alpha;y = alpha;y;alpha => alpha;y^ = alpha;y^;alpha",
     "an invariant of y is an invariant of its iterate", false, false},
    {Group::maxiter, "28'", "d(x);a(y;a(x));(y;a(d(x);y;a(x)))^;a(x) = 0",
     "equational form of the invariant law", false, true},

    {Group::fixset, "F1", "fix(x);x = fix(x)", "x is the identity on its fixset", false, false},
    {Group::fixset, "F2", "d(fix(x)) = fix(x)", "fixsets are domain elements", false, false},
    {Group::fixset, "F3", "x;y = x => x;fix(y) = x", "y fixes the range of x", false, false},
    {Group::fixset, "F4", "fix(x) = d(x) . x", "fixset via meet", false, false},
};

bool domain_available(const Signature& sig) { return sig.contains(Op::dom) || sig.contains(Op::antidom); }

bool group_active(Group g, const Signature& sig) {
  switch (g) {
    case Group::always:
      return true;
    case Group::domain:
      return domain_available(sig);
    case Group::meet:
      return sig.contains(Op::meet);
    case Group::zero:
      return sig.contains(Op::zero);
    case Group::identity:
      return sig.contains(Op::identity);
    case Group::antidom:
      return sig.contains(Op::antidom);
    case Group::range:
      return sig.contains(Op::range);
    case Group::antirange:
      return sig.contains(Op::antidom) && sig.contains(Op::range);
    case Group::prefunion:
      return sig.contains(Op::prefunion);
    case Group::maxiter:
      return sig.contains(Op::maxiter);
    case Group::fixset:
      return sig.contains(Op::fixset);
  }
  return false;
}

Law make_law(const CatalogEntry& e) {
  Law law;
  law.label = e.label;
  law.description = e.description;
  law.law = parse_quasiequation(e.text);
  for (const auto& v : variables_of(law.law))
    if (v == "alpha" || v == "beta") law.law.domain_variables.push_back(v);
  Signature req;
  auto add = [&](const Term& t) {
    for (Op op : symbols_of(t).ops()) req = req.with(op);
  };
  for (const auto& p : law.law.premises) {
    add(p.lhs);
    add(p.rhs);
  }
  add(law.law.conclusion.lhs);
  add(law.law.conclusion.rhs);
  if (!law.law.domain_variables.empty()) req = req.with(Op::dom);
  law.needs = req;
  law.consequence = e.consequence;
  law.optional = e.optional;
  return law;
}

// Flattened term with variables replaced by slot numbers.
struct Compiled {
  struct Node {
    NodeKind kind;
    Op op;
    int var;
    int left;
    int right;
  };
  std::vector<Node> nodes;
  int root = -1;

  int add(const Term& t, const std::vector<std::string>& vars) {
    Node n{t.kind(), t.op(), -1, -1, -1};
    switch (t.kind()) {
      case NodeKind::variable:
        n.var = static_cast<int>(std::find(vars.begin(), vars.end(), t.name()) - vars.begin());
        break;
      case NodeKind::constant:
        break;
      case NodeKind::unary:
        n.left = add(t.child(), vars);
        break;
      case NodeKind::binary:
        n.left = add(t.left(), vars);
        n.right = add(t.right(), vars);
        break;
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }

  Element eval(int i, const std::vector<Element>& val, const FiniteAlgebra& alg) const {
    const Node& n = nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case NodeKind::variable:
        return val[static_cast<std::size_t>(n.var)];
      case NodeKind::constant:
        return alg.apply(n.op);
      case NodeKind::unary:
        return alg.apply(n.op, eval(n.left, val, alg));
      case NodeKind::binary:
        return alg.apply(n.op, eval(n.left, val, alg), eval(n.right, val, alg));
    }
    return 0;
  }
};

struct CompiledEquation {
  Compiled lhs, rhs;
  CompiledEquation(const Equation& e, const std::vector<std::string>& vars) {
    lhs.root = lhs.add(e.lhs, vars);
    rhs.root = rhs.add(e.rhs, vars);
  }
  bool holds(const std::vector<Element>& val, const FiniteAlgebra& alg) const {
    return lhs.eval(lhs.root, val, alg) == rhs.eval(rhs.root, val, alg);
  }
};

}  // namespace

const Law* AxiomSuite::find(std::string_view label) const {
  for (const auto& l : laws)
    if (l.label == label) return &l;
  return nullptr;
}

bool law_applies(const Law& law, const Signature& sig) {
  for (Op op : law.needs.ops()) {
    if (sig.contains(op)) continue;
    bool derivable = (op == Op::dom || op == Op::zero || op == Op::identity) && sig.contains(Op::antidom);
    if (!derivable) return false;
  }
  return true;
}

AxiomSuite axiom_suite_for(const Signature& sig) {
  AxiomSuite suite;
  suite.signature = sig;
  const bool has_domain = domain_available(sig);
  if (!has_domain)
    suite.warnings.push_back(
        "the law catalogue assumes d or a in the signature; only associativity is checked");
  for (const auto& e : kCatalog) {
    if (!has_domain && e.group != Group::always) continue;
    if (!group_active(e.group, sig)) continue;
    Law law = make_law(e);
    if (!law_applies(law, sig)) continue;
    if (suite.find(law.label)) continue;
    suite.laws.push_back(std::move(law));
  }
  return suite;
}

std::optional<Witness> check_quasiequation(const Quasiequation& q, const FiniteAlgebra& alg, unsigned jobs) {
  const std::vector<std::string> vars = variables_of(q);
  std::vector<CompiledEquation> premises;
  for (const auto& p : q.premises) premises.emplace_back(p, vars);
  CompiledEquation conclusion(q.conclusion, vars);

  const auto n = static_cast<Element>(alg.size());
  std::vector<Element> all(static_cast<std::size_t>(n));
  for (Element i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<const std::vector<Element>*> ranges;
  std::vector<Element> domain;
  bool need_domain = !q.domain_variables.empty();
  if (need_domain) domain = domain_elements(alg);
  for (const auto& v : vars) {
    bool restricted = std::find(q.domain_variables.begin(), q.domain_variables.end(), v) != q.domain_variables.end();
    ranges.push_back(restricted ? &domain : &all);
  }

  auto failing = [&](const std::vector<Element>& val) {
    for (const auto& p : premises)
      if (!p.holds(val, alg)) return false;
    return !conclusion.holds(val, alg);
  };

  auto make_witness = [&](const std::vector<Element>& val) {
    Witness w;
    for (std::size_t i = 0; i < vars.size(); ++i) w.emplace_back(vars[i], val[i]);
    return w;
  };

  if (vars.empty()) {
    std::vector<Element> val;
    if (failing(val)) return make_witness(val);
    return std::nullopt;
  }

  const std::size_t first_count = ranges[0]->size();
  std::vector<std::optional<std::vector<Element>>> found(first_count);
  // Odometer over the remaining variables with the first one pinned.
  auto search_block = [&](std::size_t first) {
    std::vector<std::size_t> idx(vars.size(), 0);
    idx[0] = first;
    std::vector<Element> val(vars.size());
    for (std::size_t i = 1; i < vars.size(); ++i)
      if (ranges[i]->empty()) return false;
    for (;;) {
      for (std::size_t i = 0; i < vars.size(); ++i) val[i] = (*ranges[i])[idx[i]];
      if (failing(val)) {
        found[first] = val;
        return true;
      }
      std::size_t i = vars.size();
      while (i > 1) {
        --i;
        if (++idx[i] < ranges[i]->size()) break;
        idx[i] = 0;
        if (i == 1) return false;
      }
      if (vars.size() == 1) return false;
    }
  };
  auto hit = detail::parallel_find_first(first_count, jobs, search_block);
  if (!hit) return std::nullopt;
  return make_witness(*found[*hit]);
}

std::vector<LawVerdict> check_suite(const AxiomSuite& suite, const FiniteAlgebra& alg, unsigned jobs) {
  std::vector<LawVerdict> out;
  for (const auto& law : suite.laws) out.push_back(LawVerdict{&law, check_quasiequation(law.law, alg, jobs)});
  return out;
}

bool passes(const std::vector<LawVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const LawVerdict& v) { return v.law->optional || v.holds(); });
}

std::string to_string(const Witness& w, const FiniteAlgebra& alg) {
  std::string out;
  for (const auto& [name, e] : w) {
    if (!out.empty()) out += ", ";
    out += name + " = " + alg.name(e);
  }
  return out;
}

}  // namespace pfa
