// One pass/fail line per acceptance criterion. Thresholds are pinned below.

#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "generators.hpp"
#include "oracle.hpp"
#include "pfa/axioms.hpp"
#include "pfa/decider.hpp"
#include "pfa/error.hpp"
#include "pfa/parser.hpp"
#include "pfa/propositional.hpp"
#include "pfa/representation.hpp"

using namespace pfa;

namespace {

// Pinned thresholds.
constexpr double kAc1Seconds = 1.0;
constexpr std::size_t kAc1Classes = 6;
constexpr std::size_t kAc2MinCorpus = 20;
constexpr std::size_t kAc2MaxElements = 9;
constexpr int kAc3ExhaustiveK = 3;
constexpr int kAc3RandomK = 6;
constexpr std::size_t kAc3RandomTrials = 10000;
constexpr double kAc3Seconds = 60.0;
constexpr std::size_t kAc4Trials = 10000;
constexpr std::size_t kAc4MaxBase = 8;
constexpr std::size_t kAc4MaxLength = 12;
constexpr std::size_t kAc5Equations = 50;
constexpr std::size_t kAc6Atoms = 3;
constexpr int kAc6Connectives = 6;
constexpr std::size_t kAc8Sequences = 1000;

// Criteria whose failure is explained in the README (the claimed result
// does not hold as stated). They still print FAIL.
const std::set<int> kKnownDeviations = {1, 4};

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

void parallel_each(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers(); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Line {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Line> results;

void report(int id, bool pass, const std::string& detail) {
  results.push_back({id, pass, detail});
  std::cout << "AC" << id << ' ' << (pass ? "PASS" : "FAIL") << (pass || !kKnownDeviations.count(id) ? "" : " (known deviation)")
            << ": " << detail << std::endl;
}

// Five-element example: class count, faithful homomorphism, meet defect at (a,b,d).
void ac1() {
  auto t0 = std::chrono::steady_clock::now();
  FiniteAlgebra alg = gen::example62();
  Representation rep = build_quotient_representation(alg);
  VerifyReport plain = verify_representation(rep, alg, Signature::parse("; d r fix 0"));
  VerifyReport with_meet = verify_representation(rep, alg, Signature::parse("; . d r fix 0"));
  ScheinContext ctx(alg);
  const Element a = *alg.index_of("a"), b = *alg.index_of("b"), d = *alg.index_of("d");
  auto cls = rep.class_of(view_of(normal_form({a, b, d}, ctx), ctx));
  bool defect_found = false;
  for (const auto& def : with_meet.defects)
    if (def.symbol == Op::meet && def.args == std::vector<Element>{a, b} && cls && def.point == *cls) defect_found = true;
  double secs = seconds_since(t0);
  std::ostringstream o;
  o << rep.base_size() << " classes (expected " << kAc1Classes << "), verify {; d r fix 0} "
    << (plain.ok() ? "ok" : "FAILED") << ", meet defect at class of (a,b,d) " << (defect_found ? "found" : "missing")
    << ", " << secs << " s";
  report(1, rep.base_size() == kAc1Classes && plain.ok() && defect_found && secs < kAc1Seconds, o.str());
}

// Size bounds over the corpus.
void ac2(const std::vector<gen::CorpusAlgebra>& corpus) {
  std::size_t used = 0, ok = 0, lifts = 0;
  std::string first_bad;
  for (const auto& c : corpus) {
    const auto& alg = c.algebra;
    if (alg.size() > kAc2MaxElements) continue;
    if (!passes(check_suite(axiom_suite_for(alg.signature()), alg))) continue;
    ++used;
    const long double s = static_cast<long double>(alg.size());
    try {
      if (alg.signature().contains(Op::antidom)) {
        ++lifts;
        AtomLift lift = lift_antidomain(alg);
        if (static_cast<long double>(lift.rep.base_size()) <= std::pow(s, s + 1) &&
            verify_representation(lift.rep, alg).ok())
          ++ok;
        else if (first_bad.empty())
          first_bad = c.name;
      } else {
        Representation rep = build_quotient_representation(alg);
        long double bound = alg.available(Op::zero) ? std::pow(s - 1, s) : std::pow(s, s + 1);
        if (static_cast<long double>(rep.base_size()) <= bound && verify_representation(rep, alg).ok())
          ++ok;
        else if (first_bad.empty())
          first_bad = c.name;
      }
    } catch (const Error& e) {
      if (first_bad.empty()) first_bad = c.name + ": " + e.what();
    }
  }
  std::ostringstream o;
  o << ok << "/" << used << " corpus algebras within bound and verified (" << lifts << " via the antidomain lift)";
  if (!first_bad.empty()) o << "; first failure " << first_bad;
  report(2, used >= kAc2MinCorpus && ok == used, o.str());
}

// Every catalog law holds in all function algebras on small bases.
void ac3() {
  auto t0 = std::chrono::steady_clock::now();
  AxiomSuite suite = axiom_suite_for(Signature::full());
  std::vector<std::string> bad(suite.laws.size());
  parallel_each(suite.laws.size(), [&](std::size_t i) {
    const Law& law = suite.laws[i];
    for (int k = 1; k <= kAc3ExhaustiveK; ++k)
      if (!oracle::holds_exhaustively(law.law, k)) {
        bad[i] = law.label + " (k=" + std::to_string(k) + ")";
        return;
      }
    std::mt19937_64 rng(1000 + i);
    for (int k = kAc3ExhaustiveK + 1; k <= kAc3RandomK; ++k)
      if (oracle::random_violations(law.law, k, kAc3RandomTrials, rng)) {
        bad[i] = law.label + " (random, k=" + std::to_string(k) + ")";
        return;
      }
  });
  std::string failures;
  for (const auto& b : bad)
    if (!b.empty()) failures += (failures.empty() ? "" : ", ") + b;
  double secs = seconds_since(t0);
  std::ostringstream o;
  o << suite.laws.size() << " laws, exhaustive k<=" << kAc3ExhaustiveK << ", " << kAc3RandomTrials
    << " random assignments per law for k<=" << kAc3RandomK << ": " << (failures.empty() ? "0 violations" : "violations in " + failures)
    << ", " << secs << " s";
  report(3, failures.empty() && secs < kAc3Seconds, o.str());
}

bool has_nonmonotone_r(const Term& t) {
  Signature s = symbols_of(t);
  return s.contains(Op::range) && (s.contains(Op::antidom) || s.contains(Op::prefunion));
}

// Restriction to Σ(t,x) preserves t at x; the warning instance shows Σ is needed.
void ac4() {
  Signature sig = Signature::full().without(Op::maxiter);
  std::vector<std::string> vars{"x", "y", "z"};
  std::mt19937_64 rng(4);
  std::size_t failures = 0, failures_nonmonotone = 0, nonmonotone = 0, oversize = 0;
  std::string example;
  for (std::size_t trial = 0; trial < kAc4Trials; ++trial) {
    std::size_t k = 1 + rng() % kAc4MaxBase;
    Term t = gen::random_term(rng, sig, vars, kAc4MaxLength);
    Assignment asg = gen::random_assignment(rng, vars, k);
    Point x = static_cast<Point>(rng() % k);
    auto y = sigma(t, x, asg, k);
    if (y.size() > 2 * term_length(t)) ++oversize;
    bool nm = has_nonmonotone_r(t);
    nonmonotone += nm;
    if (!check_restriction_lemma(t, x, asg, k, y).ok) {
      ++failures;
      failures_nonmonotone += nm;
      if (example.empty()) example = to_string(t);
    }
  }
  // a = {(0,1)}, Y = {0}: d(a) is defined at 0 on the full base but not after restriction.
  Assignment warn{{"a", PartialFunction(std::vector<Point>{1, kUndefined})}};
  bool warning_violates = !check_restriction_lemma(parse_term("d(a)"), 0, warn, 2, {0}).ok;
  std::ostringstream o;
  o << kAc4Trials << " trials: " << failures << " violations (" << failures_nonmonotone << " in the " << nonmonotone
    << " terms mixing r with a or +), " << oversize << " oversize witness sets; warning instance "
    << (warning_violates ? "violates" : "does NOT violate") << " the conclusion";
  if (!example.empty()) o << "; first violating term " << example;
  report(4, failures == 0 && oversize == 0 && warning_violates, o.str());
}

// Minimized counterexamples of random non-laws stay within 2(|u|+|v|).
void ac5() {
  Signature sig = Signature::full().without(Op::maxiter);
  std::vector<std::string> vars{"x", "y"};
  std::mt19937_64 rng(5);
  std::size_t found = 0, ok = 0, tried = 0;
  std::string first_bad;
  while (found < kAc5Equations && tried < 2000) {
    ++tried;
    Term u = gen::random_term(rng, sig, vars, 6), v = gen::random_term(rng, sig, vars, 6);
    if (u == v) continue;
    DecideOptions opts;
    opts.budget_seconds = 2.0;
    DecideResult res = decide_equation(u, v, sig, opts);
    if (res.verdict != Verdict::counterexample) continue;
    ++found;
    const std::size_t bound = 2 * (term_length(u) + term_length(v));
    try {
      Counterexample small = minimize_counterexample(*res.counterexample, u, v);
      PartialFunction lu = evaluate(u, small.assignment, small.algebra.base_size);
      PartialFunction lv = evaluate(v, small.assignment, small.algebra.base_size);
      if (small.algebra.base_size <= bound && res.counterexample->algebra.base_size <= bound &&
          lu(small.witness) != lv(small.witness))
        ++ok;
      else if (first_bad.empty())
        first_bad = to_string(u) + " = " + to_string(v);
    } catch (const InternalError& e) {
      if (first_bad.empty()) first_bad = to_string(u) + " = " + to_string(v) + " (" + e.what() + ")";
    }
  }
  std::ostringstream o;
  o << ok << "/" << found << " minimized counterexamples within 2(|u|+|v|) with the disagreement kept";
  if (!first_bad.empty()) o << "; first failure " << first_bad;
  report(5, found >= kAc5Equations && ok == found, o.str());
}

// sat_to_equation verdicts match the truth table.
void ac6() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> atoms{"p", "q", "s"};
  atoms.resize(kAc6Atoms);
  auto formulas = gen::all_formulas(atoms, kAc6Connectives);
  Signature sig{Op::compose, Op::dom, Op::antidom, Op::identity};
  std::atomic<std::size_t> mismatches{0}, undecided{0};
  std::mutex m;
  std::string first_bad;
  parallel_each(formulas.size(), [&](std::size_t i) {
    Equation eq = sat_to_equation(formulas[i]);
    DecideResult res = decide_equation(eq.lhs, eq.rhs, sig);
    if (res.verdict == Verdict::budget_exceeded) {
      ++undecided;
      return;
    }
    if ((res.verdict == Verdict::valid) != oracle::tautology(formulas[i])) {
      ++mismatches;
      std::lock_guard<std::mutex> lock(m);
      if (first_bad.empty()) first_bad = to_string(formulas[i]);
    }
  });
  std::ostringstream o;
  o << formulas.size() << " formulas (<=" << kAc6Atoms << " atoms, <=" << kAc6Connectives
    << " connectives, atoms canonically renamed): " << mismatches << " mismatches, " << undecided << " undecided, "
    << seconds_since(t0) << " s";
  if (!first_bad.empty()) o << "; first mismatch " << first_bad;
  report(6, mismatches == 0 && undecided == 0, o.str());
}

// Representation output reloads and passes its suite; shrink stays within |S|^3.
void ac7(const std::vector<gen::CorpusAlgebra>& corpus) {
  std::size_t reps = 0, reps_ok = 0, shrinks = 0, shrinks_ok = 0;
  std::string first_bad;
  for (const auto& c : corpus) {
    const auto& alg = c.algebra;
    if (!passes(check_suite(axiom_suite_for(alg.signature()), alg))) continue;
    ++reps;
    try {
      Representation rep =
          alg.signature().contains(Op::antidom) ? lift_antidomain(alg).rep : build_quotient_representation(alg);
      FunctionFile reloaded = parse_function_file(to_text(to_function_algebra(rep, alg)));
      FiniteAlgebra back = to_finite_algebra(reloaded.algebra).algebra;
      if (back.size() == alg.size() && passes(check_suite(axiom_suite_for(rep.signature), back)))
        ++reps_ok;
      else if (first_bad.empty())
        first_bad = c.name;
    } catch (const Error& e) {
      if (first_bad.empty()) first_bad = c.name + ": " + e.what();
    }
  }
  std::size_t max_y = 0;
  for (const auto& fa : gen::range_free_corpus()) {
    ++shrinks;
    try {
      ShrinkResult res = shrink_range_free(fa);
      const std::size_t n = res.element_count;
      max_y = std::max(max_y, res.y.size());
      if (res.y.size() <= n * n * n) ++shrinks_ok;
    } catch (const Error& e) {
      if (first_bad.empty()) first_bad = std::string("shrink: ") + e.what();
    }
  }
  std::ostringstream o;
  o << reps_ok << "/" << reps << " representations reload and pass their suites; " << shrinks_ok << "/" << shrinks
    << " range-free shrinks within |S|^3 with a verified isomorphism (largest Y " << max_y << ")";
  if (!first_bad.empty()) o << "; first failure " << first_bad;
  report(7, reps >= kAc2MinCorpus && reps_ok == reps && shrinks_ok == shrinks && shrinks > 0, o.str());
}

// Normal forms, view addresses and well-definedness audits on random sequences.
void ac8(const std::vector<gen::CorpusAlgebra>& corpus) {
  std::mt19937_64 rng(8);
  std::size_t sequences = 0, failures = 0, audits = 0;
  std::string first_bad;
  auto fail = [&](const std::string& why) {
    ++failures;
    if (first_bad.empty()) first_bad = why;
  };
  std::vector<const gen::CorpusAlgebra*> usable;
  for (const auto& c : corpus)
    if (!c.algebra.signature().contains(Op::antidom) && passes(check_suite(axiom_suite_for(c.algebra.signature()), c.algebra)))
      usable.push_back(&c);
  std::vector<Representation> reps;
  for (const auto* c : usable) reps.push_back(build_quotient_representation(c->algebra));
  for (std::size_t round = 0; sequences < kAc8Sequences && round < 20 * kAc8Sequences; ++round) {
    const auto& alg = usable[round % usable.size()]->algebra;
    const Representation& rep = reps[round % usable.size()];
    ScheinContext ctx(alg);
    auto seq = gen::random_permissible(rng, ctx, 9);
    if (!seq) continue;
    ++sequences;
    try {
      if (!is_permissible(*seq, ctx)) {
        fail("generator produced a non-permissible sequence");
        continue;
      }
      Sequence nf = normal_form(*seq, ctx);
      if (normal_form(nf, ctx) != nf || nf.size() > seq->size() || !is_reduced(nf, ctx) || !is_permissible(nf, ctx))
        fail("normal form of " + to_string(*seq, alg));
      View v = view_of(nf, ctx);
      const Element t = nf.back();
      if (v[static_cast<std::size_t>(ctx.r(t))] != t) fail("view misses (r(t), t) for " + to_string(nf, alg));
      for (Element x = 0; x < static_cast<Element>(alg.size()); ++x) {
        bool key = ctx.nonzero(x) && ctx.comp(t, ctx.d(x)) == t;
        if (key != (v[static_cast<std::size_t>(x)] >= 0)) fail("view key set of " + to_string(nf, alg));
        if (key && ctx.d(x) == x && v[static_cast<std::size_t>(x)] != t)
          fail("domain key with another value in " + to_string(nf, alg));
      }
      // Audit against the closure's representative with the same view.
      auto cls = rep.class_of(v);
      if (!cls) {
        fail("closure misses the view of " + to_string(nf, alg));
        continue;
      }
      const Sequence& r = rep.classes[static_cast<std::size_t>(*cls)].rep;
      ++audits;
      for (Element x = 0; x < static_cast<Element>(alg.size()); ++x) {
        if (!ctx.nonzero(x)) continue;
        auto f1 = theta_forward(nf, x, ctx), f2 = theta_forward(r, x, ctx);
        if (f1.has_value() != f2.has_value() || (f1 && view_of(*f1, ctx) != view_of(*f2, ctx)))
          fail("forward audit on " + to_string(nf, alg));
        auto e1 = extend(nf, x, ctx), e2 = extend(r, x, ctx);
        if (e1.has_value() != e2.has_value() || (e1 && view_of(*e1, ctx) != view_of(*e2, ctx)))
          fail("extension audit on " + to_string(nf, alg));
      }
    } catch (const Error& e) {
      fail(to_string(*seq, alg) + ": " + e.what());
    }
  }
  std::ostringstream o;
  o << sequences << " random permissible sequences over " << usable.size() << " algebras, " << audits
    << " audited against class representatives: " << failures << " failures";
  if (!first_bad.empty()) o << "; first " << first_bad;
  report(8, sequences >= kAc8Sequences && failures == 0, o.str());
}

}  // namespace

int main() {
  auto corpus = gen::corpus();
  std::cout << "corpus: " << corpus.size() << " algebras" << std::endl;
  const std::vector<std::function<void()>> checks = {
      ac1, [&] { ac2(corpus); }, ac3, ac4, ac5, ac6, [&] { ac7(corpus); }, [&] { ac8(corpus); }};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("aborted: ") + e.what());
    }
  }
  bool unexpected = false;
  for (const auto& r : results)
    if (!r.pass && !kKnownDeviations.count(r.id)) unexpected = true;
  std::cout << (unexpected ? "acceptance: unexpected failures" : "acceptance: all criteria pass or are known deviations")
            << std::endl;
  return unexpected ? 1 : 0;
}
