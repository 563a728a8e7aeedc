#include "generators.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "pfa/axioms.hpp"
#include "pfa/error.hpp"

#ifndef PFA_FIXTURE_DIR
#define PFA_FIXTURE_DIR "fixtures"
#endif

namespace gen {

using namespace pfa;

namespace {

Term term_of_size(std::mt19937_64& rng, const std::vector<Op>& unary, const std::vector<Op>& binary,
                  const std::vector<Op>& constants, const std::vector<std::string>& vars, std::size_t size) {
  if (size <= 1 || (unary.empty() && binary.empty())) {
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() + constants.size() - 1);
    std::size_t i = pick(rng);
    return i < vars.size() ? Term::variable(vars[i]) : Term::constant(constants[i - vars.size()]);
  }
  bool use_binary = !binary.empty() && size >= 3 && (unary.empty() || rng() % 2 == 0);
  if (use_binary) {
    Op op = binary[rng() % binary.size()];
    std::size_t left = 1 + rng() % (size - 2);
    return Term::binary(op, term_of_size(rng, unary, binary, constants, vars, left),
                        term_of_size(rng, unary, binary, constants, vars, size - 1 - left));
  }
  if (unary.empty()) return term_of_size(rng, unary, binary, constants, vars, 1);
  Op op = unary[rng() % unary.size()];
  return Term::unary(op, term_of_size(rng, unary, binary, constants, vars, size - 1));
}

}  // namespace

Term random_term(std::mt19937_64& rng, const Signature& sig, const std::vector<std::string>& vars,
                 std::size_t max_len) {
  std::vector<Op> unary, binary, constants;
  for (Op op : sig.ops()) (arity(op) == 0 ? constants : arity(op) == 1 ? unary : binary).push_back(op);
  std::size_t size = 1 + rng() % max_len;
  return term_of_size(rng, unary, binary, constants, vars, size);
}

PartialFunction random_function(std::mt19937_64& rng, std::size_t k, double defined) {
  std::bernoulli_distribution def(defined);
  std::uniform_int_distribution<Point> pt(0, static_cast<Point>(k) - 1);
  PartialFunction f(k);
  for (Point x = 0; x < static_cast<Point>(k); ++x)
    if (def(rng)) f.set(x, pt(rng));
  return f;
}

Assignment random_assignment(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t k) {
  Assignment asg;
  for (const auto& v : vars) asg.emplace(v, random_function(rng, k));
  return asg;
}

std::vector<Formula> all_formulas(const std::vector<std::string>& atoms, int max_connectives) {
  // by[n] = formulas with exactly n connectives; atoms are canonicalised afterwards.
  std::vector<std::vector<Formula>> by(static_cast<std::size_t>(max_connectives) + 1);
  for (const auto& a : atoms) by[0].push_back(Formula::atom(a));
  for (int n = 1; n <= max_connectives; ++n) {
    auto& cur = by[static_cast<std::size_t>(n)];
    for (const auto& f : by[static_cast<std::size_t>(n - 1)]) cur.push_back(Formula::negation(f));
    for (int i = 0; i <= n - 1; ++i)
      for (const auto& l : by[static_cast<std::size_t>(i)])
        for (const auto& r : by[static_cast<std::size_t>(n - 1 - i)]) cur.push_back(Formula::conjunction(l, r));
  }
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const auto& level : by)
    for (const auto& f : level) {
      // canonical renaming: atoms in order of first occurrence become atoms[0], atoms[1], ...
      auto order = atoms_of(f);
      std::map<std::string, std::string> rename;
      for (std::size_t i = 0; i < order.size(); ++i) rename[order[i]] = atoms[i];
      std::function<Formula(const Formula&)> ren = [&](const Formula& g) -> Formula {
        switch (g.kind) {
          case Formula::Kind::atom: return Formula::atom(rename.at(g.name));
          case Formula::Kind::negation: return Formula::negation(ren(*g.left));
          case Formula::Kind::conjunction: return Formula::conjunction(ren(*g.left), ren(*g.right));
        }
        return g;
      };
      Formula c = ren(f);
      if (seen.insert(to_string(c)).second) out.push_back(c);
    }
  return out;
}

std::string fixture_path(const std::string& name) { return std::string(PFA_FIXTURE_DIR) + "/" + name; }

FiniteAlgebra example62() {
  std::ifstream in(fixture_path("example62.alg"));
  if (!in) throw DataError("missing fixture example62.alg");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_finite_algebra(ss.str());
}

ConcreteAlgebra full_two_point(const Signature& sig) {
  FunctionAlgebra fa{2, sig, {}};
  const char* names[] = {"e", "p", "q", "s", "u", "v", "w", "y", "z"};
  int i = 0;
  for (Point a = -1; a < 2; ++a)
    for (Point b = -1; b < 2; ++b) fa.generators.emplace_back(names[i++], PartialFunction(std::vector<Point>{a, b}));
  return to_finite_algebra(fa);
}

std::vector<CorpusAlgebra> corpus() {
  std::vector<CorpusAlgebra> out;
  out.push_back({"example62", example62(), std::nullopt});
  out.push_back({"full2 ; a r 0 1'", full_two_point(Signature::parse("; a r 0 1'")).algebra, std::nullopt});
  std::set<std::string> seen;
  for (const auto& c : out) seen.insert(to_text(c.algebra));

  const char* sigs[] = {"; d r 0", "; d r", "; d r fix 0", "; d r 0 1'", "; a r", "; a r 0 1'", "; d r fix"};
  std::mt19937_64 rng(20261016);
  for (int round = 0; round < 400 && out.size() < 40; ++round) {
    Signature sig = Signature::parse(sigs[round % 7]);
    std::size_t k = 1 + rng() % 3;
    std::size_t gens = 1 + rng() % 2;
    FunctionAlgebra fa{k, sig, {}};
    for (std::size_t g = 0; g < gens; ++g)
      fa.generators.emplace_back(std::string(1, static_cast<char>('f' + g)), random_function(rng, k, 0.6));
    try {
      ConcreteAlgebra ca = to_finite_algebra(fa, 9);
      if (ca.algebra.size() > 9) continue;
      if (!seen.insert(to_text(ca.algebra)).second) continue;
      out.push_back({"random " + std::to_string(round) + " [" + sig.to_string() + "]", ca.algebra, fa});
    } catch (const DataError&) {
      // closure too large
    }
  }
  return out;
}

std::vector<FunctionAlgebra> range_free_corpus() {
  std::vector<FunctionAlgebra> out;
  const char* sigs[] = {"; d", "; d 0", "; a 0 1'", "; . d", "; d fix", "; a + 1'", "; d ^", "; a . fix 0 1'"};
  std::mt19937_64 rng(977);
  for (int round = 0; round < 200 && out.size() < 24; ++round) {
    Signature sig = Signature::parse(sigs[round % 8]);
    std::size_t k = round % 3 == 0 ? 100 : 4 + rng() % 12;
    FunctionAlgebra fa{k, sig, {}};
    std::size_t gens = k == 100 ? 1 : 1 + rng() % 2;
    for (std::size_t g = 0; g < gens; ++g)
      fa.generators.emplace_back(std::string(1, static_cast<char>('f' + g)), random_function(rng, k, 0.5));
    try {
      (void)closure({fa.generators[0].second}, sig, k, 300);
      if (gens == 2) {
        std::vector<PartialFunction> g2{fa.generators[0].second, fa.generators[1].second};
        (void)closure(g2, sig, k, 300);
      }
      out.push_back(fa);
    } catch (const DataError&) {
    }
  }
  return out;
}

std::optional<Sequence> random_permissible(std::mt19937_64& rng, const ScheinContext& ctx, std::size_t max_len) {
  std::vector<Element> nz;
  for (Element x = 0; x < static_cast<Element>(ctx.size()); ++x)
    if (ctx.nonzero(x)) nz.push_back(x);
  if (nz.empty()) return std::nullopt;
  Sequence seq{nz[rng() % nz.size()]};
  std::size_t target = 1 + 2 * (rng() % ((max_len + 1) / 2));
  while (seq.size() < target) {
    std::vector<Element> bs;
    for (Element b : nz)
      if (ctx.r(b) == ctx.r(seq.back())) bs.push_back(b);
    Element b = bs[rng() % bs.size()];  // seq.back() itself qualifies
    std::vector<Element> as;
    for (Element a : nz)
      if (ctx.d(a) == ctx.d(b)) as.push_back(a);
    seq.push_back(b);
    seq.push_back(as[rng() % as.size()]);  // b itself qualifies
  }
  return seq;
}

}  // namespace gen
