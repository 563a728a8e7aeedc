#include <doctest.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "pfa/axioms.hpp"
#include "pfa/domain.hpp"
#include "pfa/error.hpp"
#include "pfa/finite_algebra.hpp"
#include "pfa/parser.hpp"

using namespace pfa;

namespace {

Element el(const FiniteAlgebra& a, const char* name) { return *a.index_of(name); }

const char* kBadDomain = R"(elements: 0 e
signature: ; d 0
table ;:
0 0
0 e
table d: 0 0
zero: 0
)";

bool has_label(const AxiomSuite& s, const std::string& label) { return s.find(label) != nullptr; }

}  // namespace

TEST_CASE("five-element example tables") {
  FiniteAlgebra A = gen::example62();
  CHECK(A.size() == 5);
  ElementAssignment asg{{"x", el(A, "d")}, {"y", el(A, "a")}, {"z", el(A, "r")}};
  CHECK(eval_term_abstract(parse_term("x;y;z"), asg, A) == el(A, "a"));
  CHECK(A.compose(el(A, "a"), el(A, "b")) == el(A, "0"));
  CHECK(A.zero() == el(A, "0"));
  CHECK_FALSE(A.identity());
  CHECK_THROWS_AS(eval_term_abstract(parse_term("a(x)"), asg, A), EvaluationError);
  CHECK_THROWS_AS(eval_term_abstract(parse_term("w"), asg, A), EvaluationError);
}

TEST_CASE("algebra text round trip is byte-identical") {
  FiniteAlgebra A = gen::example62();
  std::string text = to_text(A);
  CHECK(to_text(parse_finite_algebra(text)) == text);
  auto full = gen::full_two_point(Signature::parse("; a r 0 1'")).algebra;
  CHECK(to_text(parse_finite_algebra(to_text(full))) == to_text(full));
}

TEST_CASE("loader rejects inconsistent tables") {
  CHECK_THROWS_AS(parse_finite_algebra("elements: 0 0\nsignature: ;\ntable ;:\n0 0\n0 0\n"), DataError);
  CHECK_THROWS_AS(parse_finite_algebra("elements: e\nsignature: ; d\ntable ;:\ne\n"), DataError);  // no d table
  CHECK_THROWS_AS(parse_finite_algebra("elements: e f\nsignature: ;\ntable ;:\ne g\ne e\n"), DataError);
  // 0;y = 0 fails
  CHECK_THROWS_AS(parse_finite_algebra("elements: 0 e\nsignature: ; 0\ntable ;:\ne e\ne e\nzero: 0\n"), DataError);
  // d disagrees with a(a(x))
  CHECK_THROWS_AS(parse_finite_algebra("elements: 0 e\nsignature: ; d a\ntable ;:\n0 0\n0 e\n"
                                       "table a: e 0\ntable d: 0 0\n"),
                  DataError);
  // table outside the signature
  CHECK_THROWS_AS(parse_finite_algebra("elements: e\nsignature: ;\ntable ;:\ne\ntable d: e\n"), DataError);
}

TEST_CASE("derived d, 0 and 1' from antidomain") {
  FiniteAlgebra B = parse_finite_algebra("elements: 0 e\nsignature: ; a\ntable ;:\n0 0\n0 e\ntable a: e 0\n");
  CHECK(B.available(Op::dom));
  CHECK(B.dom(el(B, "e")) == el(B, "e"));
  CHECK(B.zero() == el(B, "0"));
  CHECK(B.identity() == el(B, "e"));
}

TEST_CASE("axiom suites by signature") {
  auto rs = axiom_suite_for(Signature::parse("; d"));
  for (const char* l : {"A", "I", "II", "III", "IV", "V"}) CHECK(has_label(rs, l));
  CHECK_FALSE(has_label(rs, "XVII"));
  CHECK(rs.warnings.empty());

  auto mar = axiom_suite_for(Signature::parse("; a r"));
  for (const char* l : {"X", "XIII", "XIV", "XVI", "XVII", "XXII", "XXIV"}) CHECK(has_label(mar, l));

  auto meet = axiom_suite_for(Signature::parse("; . a r"));
  for (const char* l : {"SL1", "VIII", "IX", "X", "XVII", "XXIV"}) CHECK(has_label(meet, l));

  auto bare = axiom_suite_for(Signature::parse(";"));
  CHECK(bare.laws.size() == 1);
  CHECK(bare.warnings.size() == 1);

  auto iter = axiom_suite_for(Signature::parse("; a ^"));
  CHECK(has_label(iter, "27"));
  REQUIRE(has_label(iter, "28'"));
  CHECK(iter.find("28'")->optional);
}

TEST_CASE("suites are monotone in the signature") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Signature big = Signature::full(), small;
    for (Op op : kAllOps)
      if (rng() % 3 == 0) big = big.without(op);
    for (Op op : big.ops())
      if (rng() % 2 == 0) small = small.with(op);
    auto bs = axiom_suite_for(big), ss = axiom_suite_for(small);
    for (const auto& law : ss.laws) {
      if (!law_applies(law, big)) continue;
      bool found = std::any_of(bs.laws.begin(), bs.laws.end(),
                               [&](const Law& l) { return to_string(l.law) == to_string(law.law); });
      CHECK_MESSAGE(found, law.label << " of " << small.to_string() << " missing from " << big.to_string());
    }
  }
}

TEST_CASE("law checking finds the least witness") {
  FiniteAlgebra A = gen::example62();
  auto verdicts = check_suite(axiom_suite_for(A.signature()), A, 3);
  CHECK(passes(verdicts));

  FiniteAlgebra bad = parse_finite_algebra(kBadDomain);
  auto w = check_quasiequation(parse_quasiequation("d(x);x = x"), bad);
  REQUIRE(w);
  CHECK(to_string(*w, bad) == "x = e");
  CHECK(check_quasiequation(parse_quasiequation("d(x);x = x"), bad, 4) == w);
  CHECK_FALSE(passes(check_suite(axiom_suite_for(bad.signature()), bad)));

  FiniteAlgebra one = parse_finite_algebra("elements: 0\nsignature: ; d\ntable ;:\n0\ntable d: 0\n");
  CHECK_FALSE(check_quasiequation(parse_quasiequation("d(x);d(x;y) = d(x;y)"), one));
}

TEST_CASE("domain elements and the natural order") {
  FiniteAlgebra A = gen::example62();
  CHECK(domain_elements(A) == std::vector<Element>{el(A, "0"), el(A, "d"), el(A, "r")});
  auto le = natural_order(A);
  for (Element s = 0; s < 5; ++s) {
    CHECK(le[static_cast<std::size_t>(el(A, "0"))][static_cast<std::size_t>(s)]);
    CHECK(le[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)]);
  }
  CHECK_FALSE(le[static_cast<std::size_t>(el(A, "a"))][static_cast<std::size_t>(el(A, "b"))]);
}

TEST_CASE("natural order is a compatible partial order on the corpus") {
  for (const auto& c : gen::corpus()) {
    const auto& A = c.algebra;
    auto le = natural_order(A);
    const auto n = A.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && le[x][y]) CHECK_FALSE(le[y][x]);
        // s <= t and d(s) = d(t) imply s = t
        if (le[x][y] && A.dom(static_cast<Element>(x)) == A.dom(static_cast<Element>(y))) CHECK(x == y);
        for (std::size_t z = 0; z < n; ++z) {
          if (le[x][y] && le[y][z]) CHECK(le[x][z]);
          if (le[x][y]) {
            auto xz = static_cast<std::size_t>(A.compose(static_cast<Element>(x), static_cast<Element>(z)));
            auto yz = static_cast<std::size_t>(A.compose(static_cast<Element>(y), static_cast<Element>(z)));
            auto zx = static_cast<std::size_t>(A.compose(static_cast<Element>(z), static_cast<Element>(x)));
            auto zy = static_cast<std::size_t>(A.compose(static_cast<Element>(z), static_cast<Element>(y)));
            CHECK(le[xz][yz]);
            CHECK(le[zx][zy]);
          }
        }
      }
  }
}

TEST_CASE("boolean structure of the two-point algebra") {
  auto full = gen::full_two_point(Signature::parse("; a r 0 1'"));
  BooleanStructure bs = boolean_structure(full.algebra);
  REQUIRE(bs.ok());
  CHECK(bs.elements.size() == 4);
  REQUIRE(bs.atoms.size() == 2);
  for (Element atom : bs.atoms) CHECK(full.functions[static_cast<std::size_t>(atom)].domain_size() == 1);
  SubAlgebra at = s_at(full.algebra);
  CHECK(at.algebra.size() == 5);
  CHECK_FALSE(at.algebra.signature().contains(Op::antidom));

  FiniteAlgebra one = parse_finite_algebra("elements: 0\nsignature: ; a\ntable ;:\n0\ntable a: 0\n");
  BooleanStructure trivial = boolean_structure(one);
  CHECK(trivial.ok());
  CHECK(trivial.atoms.empty());
  CHECK(s_at(one).algebra.size() == 1);
  CHECK_THROWS(s_at(gen::example62()));
}

TEST_CASE("derived definitions agree on concrete algebras") {
  auto full = gen::full_two_point(Signature::parse("; . d a fix"));
  const auto& A = full.algebra;
  for (Element x = 0; x < static_cast<Element>(A.size()); ++x) {
    CHECK(A.apply(Op::dom, x) == A.apply(Op::antidom, A.apply(Op::antidom, x)));
    CHECK(A.apply(Op::fixset, x) == A.apply(Op::meet, A.dom(x), x));
  }
}
