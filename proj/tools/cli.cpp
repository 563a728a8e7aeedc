#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "pfa/axioms.hpp"
#include "pfa/decider.hpp"
#include "pfa/error.hpp"
#include "pfa/finite_algebra.hpp"
#include "pfa/function_algebra.hpp"
#include "pfa/parser.hpp"
#include "pfa/propositional.hpp"
#include "pfa/representation.hpp"

namespace pfa::cli {

namespace {

// FNV-1a, 64 bit.
class Digest {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
    h_ ^= 0xff;  // separator
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << h_;
    return o.str();
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Digest digest;
  std::string command;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    digest.add(ss.str());
    return ss.str();
  }

  void header() {
    out << "pfa " << kVersion << '\n';
    out << "command: " << command << '\n';
    out << "input digest: fnv1a64:" << digest.hex() << '\n';
  }

  void write(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw DataError("cannot write '" + path + "'");
  }
};

FiniteAlgebra load_algebra(Context& ctx, const std::string& algebra_file, const std::string& functions_file) {
  if (!algebra_file.empty()) return parse_finite_algebra(ctx.read(algebra_file));
  return to_finite_algebra(parse_function_file(ctx.read(functions_file)).algebra).algebra;
}

void require_available(const FiniteAlgebra& alg, const Signature& sig) {
  for (Op op : sig.ops())
    if (!alg.available(op)) throw DataError("the algebra has no table for '" + std::string(token(op)) + "'");
}

std::string padded(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

int check_axioms(Context& ctx, const std::string& alg_file, const std::string& fn_file, const std::string& sig_text,
                 unsigned jobs) {
  FiniteAlgebra alg = load_algebra(ctx, alg_file, fn_file);
  Signature sig = sig_text.empty() ? alg.signature() : Signature::parse(sig_text);
  require_available(alg, sig);
  ctx.header();
  AxiomSuite suite = axiom_suite_for(sig);
  ctx.out << "elements: " << alg.size() << '\n';
  ctx.out << "signature: " << sig.to_string() << '\n';
  for (const auto& w : suite.warnings) ctx.out << "warning: " << w << '\n';
  auto verdicts = check_suite(suite, alg, jobs);
  std::size_t failed = 0;
  for (const auto& v : verdicts) {
    std::string tag = v.law->optional ? " (optional)" : v.law->consequence ? " (consequence)" : "";
    ctx.out << padded(v.law->label, 6) << padded(v.holds() ? "holds" : "FAILS", 6) << to_string(v.law->law) << tag;
    if (!v.holds()) {
      ctx.out << "  at " << to_string(*v.witness, alg);
      if (!v.law->optional) ++failed;
    }
    ctx.out << '\n';
  }
  if (failed == 0)
    ctx.out << "result: all " << verdicts.size() << " laws hold\n";
  else
    ctx.out << "result: " << failed << " of " << verdicts.size() << " laws fail\n";
  return failed == 0 ? kOk : kFails;
}

void print_representation(Context& ctx, const Representation& rep, const FiniteAlgebra& view_alg,
                          const FiniteAlgebra& alg) {
  ctx.out << "base: " << rep.base_size() << " classes\n";
  for (std::size_t i = 0; i < rep.classes.size(); ++i)
    ctx.out << "class " << i << ": view " << view_to_string(rep.classes[i].view, view_alg) << " rep "
            << to_string(rep.classes[i].rep, view_alg) << '\n';
  for (std::size_t s = 0; s < alg.size(); ++s) ctx.out << alg.name(static_cast<Element>(s)) << " -> " << to_string(rep.images[s]) << '\n';
}

int represent(Context& ctx, const std::string& alg_file, const std::string& verify_text, const std::string& dump,
              unsigned jobs) {
  FiniteAlgebra alg = parse_finite_algebra(ctx.read(alg_file));
  ctx.header();
  Representation rep;
  if (alg.signature().contains(Op::antidom)) {
    AtomLift lift = lift_antidomain(alg);
    ctx.out << "method: antidomain lift over " << lift.atoms.size() << " atoms\n";
    ctx.out << "atomic subalgebra: " << lift.at.algebra.size() << " elements\n";
    print_representation(ctx, lift.at_rep, lift.at.algebra, lift.at.algebra);
    rep = std::move(lift.rep);
    ctx.out << "lifted:\n";
    for (std::size_t s = 0; s < alg.size(); ++s)
      ctx.out << alg.name(static_cast<Element>(s)) << " -> " << to_string(rep.images[s]) << '\n';
  } else {
    ClosureStats stats;
    rep = build_quotient_representation(alg, &stats);
    ctx.out << "method: view quotient\n";
    print_representation(ctx, rep, alg, alg);
    ctx.out << "moves: " << stats.forward_moves << " forward, " << stats.extend_moves << " extend, "
            << stats.collisions_audited << " audits\n";
  }
  Signature sig = verify_text.empty() ? rep.signature : Signature::parse(verify_text);
  VerifyReport report = verify_representation(rep, alg, sig, jobs);
  ctx.out << "represented: " << rep.signature.to_string() << '\n';
  if (!dump.empty()) ctx.write(dump, to_text(to_function_algebra(rep, alg)));
  if (report.ok()) {
    ctx.out << "verify: ok for " << sig.to_string() << '\n';
    return kOk;
  }
  ctx.out << "verify: " << report.defects.size() << " defects for " << sig.to_string() << '\n';
  for (const auto& d : report.defects) ctx.out << "defect: " << to_string(d, alg) << '\n';
  return kInternal;
}

int check_equation(Context& ctx, const std::string& sig_text, const std::string& eq_text, const std::string& mode,
                   std::uint64_t seed, std::optional<double> budget, unsigned jobs, std::optional<std::size_t> max_base,
                   const std::string& out_file) {
  Signature sig = Signature::parse(sig_text);
  Equation eq = parse_equation(eq_text);
  if (auto bad = check_well_formed(eq, sig))
    throw DataError("symbol '" + std::string(token(bad->symbol)) + "' at " + bad->path + " is not in the signature");
  DecideOptions opts;
  opts.mode = mode == "random" ? SearchMode::random : SearchMode::exhaustive;
  opts.seed = seed;
  opts.budget_seconds = budget;
  opts.jobs = jobs;
  opts.max_base = max_base;
  DecideResult res = decide_equation(eq.lhs, eq.rhs, sig, opts);
  ctx.header();
  ctx.out << "equation: " << to_string(eq) << '\n';
  ctx.out << "signature: " << sig.to_string() << '\n';
  ctx.out << "mode: " << mode << '\n';
  if (opts.mode == SearchMode::random) ctx.out << "seed: " << res.seed << '\n';
  ctx.out << "bound: " << res.bound << '\n';
  ctx.out << "verdict: " << to_string(res.verdict) << '\n';
  if (res.verdict == Verdict::valid)
    ctx.out << (res.closed_early ? "search closed at base " : "search exhausted bases up to ") << res.exhausted << '\n';
  if (!res.note.empty()) ctx.out << "note: " << res.note << '\n';
  if (res.counterexample) {
    const auto& ce = *res.counterexample;
    auto pt = [](Point p) { return p == kUndefined ? std::string("undefined") : std::to_string(p); };
    ctx.out << "witness: " << ce.witness << " (lhs " << pt(ce.lhs_value) << ", rhs " << pt(ce.rhs_value) << ")\n";
    ctx.out << "counterexample:\n" << to_text(ce.algebra, ce.witness);
    if (!out_file.empty()) ctx.write(out_file, to_text(ce.algebra, ce.witness));
  }
  switch (res.verdict) {
    case Verdict::valid: return kOk;
    case Verdict::counterexample: return kFails;
    case Verdict::budget_exceeded: return kBudget;
  }
  return kInternal;
}

Counterexample load_counterexample(Context& ctx, const std::string& file, const Term& u, const Term& v) {
  FunctionFile ff = parse_function_file(ctx.read(file));
  if (!ff.witness) throw DataError("counterexample file has no 'witness:' line");
  Assignment asg;
  for (const auto& [name, f] : ff.algebra.generators) asg.emplace(name, f);
  auto ce = make_counterexample(u, v, asg, ff.algebra.base_size, ff.algebra.signature);
  if (!ce) throw DataError("the two sides agree everywhere on this assignment");
  auto pu = evaluate(u, asg, ff.algebra.base_size), pv = evaluate(v, asg, ff.algebra.base_size);
  if (pu(*ff.witness) == pv(*ff.witness)) throw DataError("the two sides agree at the witness point");
  ce->witness = *ff.witness;
  ce->lhs_value = pu(*ff.witness);
  ce->rhs_value = pv(*ff.witness);
  return *ce;
}

int minimize(Context& ctx, const std::string& file, const std::string& eq_text, const std::string& out_file) {
  Equation eq = parse_equation(eq_text);
  Counterexample ce = load_counterexample(ctx, file, eq.lhs, eq.rhs);
  Counterexample small = minimize_counterexample(ce, eq.lhs, eq.rhs);
  ctx.header();
  ctx.out << "equation: " << to_string(eq) << '\n';
  ctx.out << "base: " << ce.algebra.base_size << " -> " << small.algebra.base_size << " (bound "
          << 2 * (term_length(eq.lhs) + term_length(eq.rhs)) << ")\n";
  ctx.out << "minimized:\n" << to_text(small.algebra, small.witness);
  if (!out_file.empty()) ctx.write(out_file, to_text(small.algebra, small.witness));
  return kOk;
}

int eval(Context& ctx, const std::string& file, const std::string& term_text, std::optional<Point> at) {
  FunctionFile ff = parse_function_file(ctx.read(file));
  Term t = parse_term(term_text);
  PartialFunction f = evaluate(t, Assignment{}, ff.algebra);
  ctx.header();
  ctx.out << "term: " << to_string(t) << '\n';
  if (at) {
    if (*at < 0 || static_cast<std::size_t>(*at) >= f.base_size()) throw DataError("point outside the base");
    ctx.out << "at " << *at << ": " << (f.defined_at(*at) ? std::to_string(f(*at)) : "undefined") << '\n';
  } else {
    ctx.out << "value: " << to_string(f) << '\n';
  }
  return kOk;
}

int shrink(Context& ctx, const std::string& file, const std::string& out_file) {
  FunctionFile ff = parse_function_file(ctx.read(file));
  ShrinkResult res = shrink_range_free(ff.algebra);
  ctx.header();
  ctx.out << "elements: " << res.element_count << '\n';
  ctx.out << "base: " << ff.algebra.base_size << " -> " << res.y.size() << " (bound " << res.element_count << "^3)\n";
  ctx.out << "Y:";
  for (Point p : res.y) ctx.out << ' ' << p;
  ctx.out << "\nverify: restriction is an isomorphism\n";
  ctx.out << "restricted:\n" << to_text(res.algebra);
  if (!out_file.empty()) ctx.write(out_file, to_text(res.algebra));
  return kOk;
}

int reduce_sat(Context& ctx, const std::string& formula_text, bool decide) {
  Formula f = parse_formula(formula_text);
  Equation eq = sat_to_equation(f);
  ctx.header();
  ctx.out << "formula: " << to_string(f) << '\n';
  ctx.out << "equation: " << to_string(eq) << '\n';
  if (!decide) return kOk;
  DecideResult res = decide_equation(eq.lhs, eq.rhs, Signature{Op::compose, Op::dom, Op::antidom, Op::identity});
  ctx.out << "verdict: " << to_string(res.verdict) << '\n';
  ctx.out << "tautology: " << (res.verdict == Verdict::valid ? "yes" : "no") << '\n';
  return res.verdict == Verdict::valid ? kOk : res.verdict == Verdict::counterexample ? kFails : kBudget;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial-function algebras: axioms, finite representations and equational validity", "pfa"};
  app.set_version_flag("--version", std::string("pfa ") + kVersion);
  app.require_subcommand(1);

  std::string alg_file, fn_file, sig_text, eq_text, mode = "exhaustive", out_file, term_text, formula, verify_text,
                                                      ce_file;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::optional<double> budget;
  std::optional<std::size_t> max_base;
  std::optional<Point> at;
  bool decide = false;

  auto* axioms = app.add_subcommand("check-axioms", "check the axiom suite on a finite algebra");
  auto* src = axioms->add_option_group("source");
  src->add_option("--algebra", alg_file, "operation-table file")->check(CLI::ExistingFile);
  src->add_option("--functions", fn_file, "function-algebra file (closed under its signature)")->check(CLI::ExistingFile);
  src->require_option(1);
  axioms->add_option("--signature", sig_text, "signature tokens, e.g. \"; d r 0\"");
  axioms->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));

  auto* rep = app.add_subcommand("represent", "build and verify a representation by partial functions");
  rep->add_option("--algebra", alg_file, "operation-table file")->required()->check(CLI::ExistingFile);
  rep->add_option("--verify", verify_text, "signature to verify (default: the represented one)");
  rep->add_option("--dump", out_file, "write the representation as a function-algebra file");
  rep->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));

  auto* eqc = app.add_subcommand("check-equation", "decide an equation over algebras of partial functions");
  eqc->add_option("--signature", sig_text, "signature tokens")->required();
  eqc->add_option("--eq", eq_text, "\"u = v\"")->required();
  eqc->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  eqc->add_option("--seed", seed);
  eqc->add_option("--budget", budget, "seconds")->check(CLI::PositiveNumber);
  eqc->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
  eqc->add_option("--max-base", max_base, "override the base-size bound")->check(CLI::Range(1, 64));
  eqc->add_option("--out", out_file, "write a counterexample file");

  auto* mini = app.add_subcommand("minimize", "restrict a counterexample to its witness points");
  mini->add_option("--counterexample", ce_file)->required()->check(CLI::ExistingFile);
  mini->add_option("--eq", eq_text)->required();
  mini->add_option("--out", out_file);

  auto* ev = app.add_subcommand("eval", "evaluate a term over a function-algebra file");
  ev->add_option("--functions", fn_file)->required()->check(CLI::ExistingFile);
  ev->add_option("--term", term_text)->required();
  ev->add_option("--at", at);

  auto* sh = app.add_subcommand("shrink", "restrict a range-free algebra of functions to at most |S|^3 points");
  sh->add_option("--functions", fn_file)->required()->check(CLI::ExistingFile);
  sh->add_option("--out", out_file);

  auto* sat = app.add_subcommand("reduce-sat", "translate a propositional formula into an equation");
  sat->add_option("--formula", formula)->required();
  sat->add_flag("--decide", decide, "also decide the equation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "pfa " << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "pfa: " << e.what() << '\n';
    return kUsage;
  }

  Context ctx{out, err, {}, app.get_subcommands().front()->get_name()};
  for (int i = 1; i < argc; ++i) ctx.digest.add(argv[i]);
  try {
    if (axioms->parsed()) return check_axioms(ctx, alg_file, fn_file, sig_text, jobs);
    if (rep->parsed()) return represent(ctx, alg_file, verify_text, out_file, jobs);
    if (eqc->parsed()) return check_equation(ctx, sig_text, eq_text, mode, seed, budget, jobs, max_base, out_file);
    if (mini->parsed()) return minimize(ctx, ce_file, eq_text, out_file);
    if (ev->parsed()) return eval(ctx, fn_file, term_text, at);
    if (sh->parsed()) return shrink(ctx, fn_file, out_file);
    if (sat->parsed()) return reduce_sat(ctx, formula, decide);
  } catch (const ParseError& e) {
    err << "pfa: parse error: " << e.what() << '\n';
    return kDataFormat;
  } catch (const DataError& e) {
    err << "pfa: " << e.what() << '\n';
    return kDataFormat;
  } catch (const EvaluationError& e) {
    err << "pfa: " << e.what() << '\n';
    return kDataFormat;
  } catch (const NotRepresentable& e) {
    err << "pfa: not representable: " << e.what() << '\n';
    return kInternal;
  } catch (const InternalError& e) {
    err << "pfa: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace pfa::cli
