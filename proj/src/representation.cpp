#include "pfa/representation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "parallel.hpp"
#include "pfa/error.hpp"

namespace pfa {

ScheinContext::ScheinContext(const FiniteAlgebra& alg) : alg_(&alg), n_(alg.size()) {
  if (!alg.available(Op::dom)) throw DataError("the construction needs d (or a) in the signature");
  if (!alg.available(Op::range)) throw DataError("the construction needs r in the signature");
  if (auto z = alg.zero()) zero_ = *z;
  comp_.resize(n_ * n_);
  d_.resize(n_);
  r_.resize(n_);
  solve_.resize(n_ * n_);
  for (std::size_t x = 0; x < n_; ++x) {
    d_[x] = alg.dom(static_cast<Element>(x));
    r_[x] = alg.apply(Op::range, static_cast<Element>(x));
    for (std::size_t y = 0; y < n_; ++y) {
      Element p = alg.compose(static_cast<Element>(x), static_cast<Element>(y));
      comp_[x * n_ + y] = p;
      solve_[x * n_ + static_cast<std::size_t>(p)].push_back(static_cast<Element>(y));
    }
  }
}

bool is_permissible(const Sequence& seq, const ScheinContext& ctx) {
  if (seq.size() % 2 == 0) return false;
  for (Element e : seq)
    if (e < 0 || static_cast<std::size_t>(e) >= ctx.size() || !ctx.nonzero(e)) return false;
  for (std::size_t i = 0; i + 2 < seq.size(); i += 2) {
    if (ctx.r(seq[i]) != ctx.r(seq[i + 1])) return false;
    if (ctx.d(seq[i + 1]) != ctx.d(seq[i + 2])) return false;
  }
  return true;
}

namespace {

// The unique result a;y over all y with b;y = target, if any.
std::optional<Element> reduce_tail(Element a, Element b, Element target, const ScheinContext& ctx,
                                   Element* witness = nullptr) {
  const auto& ys = ctx.solutions(b, target);
  if (ys.empty()) return std::nullopt;
  Element first = ctx.comp(a, ys[0]);
  for (Element y : ys) {
    if (ctx.comp(a, y) != first) {
      const auto& alg = ctx.algebra();
      throw NotRepresentable("reduction is not unique: " + alg.name(b) + ";" + alg.name(ys[0]) + " = " +
                             alg.name(b) + ";" + alg.name(y) + " = " + alg.name(target) + " but " + alg.name(a) +
                             ";" + alg.name(ys[0]) + " != " + alg.name(a) + ";" + alg.name(y) + " (law XXII)");
    }
  }
  if (!ctx.nonzero(first))
    throw NotRepresentable("reduction produced 0 at " + ctx.algebra().name(a) + ";" + ctx.algebra().name(ys[0]));
  if (witness) *witness = ys[0];
  return first;
}

}  // namespace

Sequence normal_form(Sequence seq, const ScheinContext& ctx) {
  while (seq.size() >= 3) {
    const std::size_t n = seq.size();
    auto reduced = reduce_tail(seq[n - 3], seq[n - 2], seq[n - 1], ctx);
    if (!reduced) break;
    seq.resize(n - 2);
    seq.back() = *reduced;
  }
  return seq;
}

bool is_reduced(const Sequence& seq, const ScheinContext& ctx) {
  const std::size_t n = seq.size();
  return n < 3 || ctx.solutions(seq[n - 2], seq[n - 1]).empty();
}

std::optional<Sequence> theta_forward(const Sequence& seq, Element x, const ScheinContext& ctx) {
  const Element t = seq.back();
  if (ctx.comp(t, ctx.d(x)) != t) return std::nullopt;
  Element tx = ctx.comp(t, x);
  const auto& alg = ctx.algebra();
  if (!ctx.nonzero(tx)) throw NotRepresentable(alg.name(t) + ";" + alg.name(x) + " = 0 although " + alg.name(t) +
                                               ";d(" + alg.name(x) + ") = " + alg.name(t));
  if (seq.size() >= 3 && ctx.d(tx) != ctx.d(t))
    throw NotRepresentable("d(" + alg.name(t) + ";" + alg.name(x) + ") != d(" + alg.name(t) + ")");
  Sequence next = seq;
  next.back() = tx;
  return normal_form(std::move(next), ctx);
}

std::optional<Sequence> extend(const Sequence& seq, Element u, const ScheinContext& ctx) {
  const Element t = seq.back();
  const Element p = ctx.comp(u, ctx.r(t));
  if (!ctx.nonzero(p)) return std::nullopt;
  const Element dp = ctx.d(p);
  if (ctx.r(t) != ctx.r(p) || ctx.d(p) != ctx.d(dp) || !ctx.nonzero(dp)) return std::nullopt;
  Sequence cand = seq;
  cand.push_back(p);
  cand.push_back(dp);
  // A reduction straight away folds the new tail back into seq via some y;
  // the theory needs seq to lie in the domain of y^θ.
  Element y = -1;
  if (reduce_tail(t, p, dp, ctx, &y) && ctx.comp(t, ctx.d(y)) != t) {
    const auto& alg = ctx.algebra();
    throw NotRepresentable("extension of " + to_string(seq, alg) + " by " + alg.name(u) + " reduces with " +
                           alg.name(y) + " outside the domain of its view");
  }
  return normal_form(std::move(cand), ctx);
}

View view_of(const Sequence& seq, const ScheinContext& ctx) {
  View v(ctx.size(), -1);
  for (std::size_t x = 0; x < ctx.size(); ++x) {
    if (!ctx.nonzero(static_cast<Element>(x))) continue;
    if (auto next = theta_forward(seq, static_cast<Element>(x), ctx)) v[x] = next->back();
  }
  return v;
}

std::string to_string(const Sequence& seq, const FiniteAlgebra& alg) {
  std::string out = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ",";
    out += alg.name(seq[i]);
  }
  return out + ")";
}

std::string view_to_string(const View& view, const FiniteAlgebra& alg) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x = 0; x < view.size(); ++x) {
    if (view[x] < 0) continue;
    if (!first) out += ", ";
    first = false;
    out += alg.name(static_cast<Element>(x)) + "->" + alg.name(view[x]);
  }
  return out + "}";
}

std::optional<Point> Representation::class_of(const View& v) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].view == v) return static_cast<Point>(i);
  return std::nullopt;
}

namespace {

long double class_bound(std::size_t n, bool has_zero) {
  const long double s = static_cast<long double>(n);
  return has_zero ? std::pow(s - 1, s) : std::pow(s, s + 1);
}

bool same_move(const std::optional<Sequence>& a, const std::optional<Sequence>& b, const ScheinContext& ctx) {
  if (a.has_value() != b.has_value()) return false;
  return !a || view_of(*a, ctx) == view_of(*b, ctx);
}

void audit(const Sequence& a, const Sequence& b, const ScheinContext& ctx) {
  const auto& alg = ctx.algebra();
  for (Element x = 0; x < static_cast<Element>(ctx.size()); ++x) {
    if (!ctx.nonzero(x)) continue;
    if (!same_move(theta_forward(a, x, ctx), theta_forward(b, x, ctx), ctx))
      throw NotRepresentable("sequences " + to_string(a, alg) + " and " + to_string(b, alg) +
                             " share a view but " + alg.name(x) + " separates them");
    if (!same_move(extend(a, x, ctx), extend(b, x, ctx), ctx))
      throw NotRepresentable("sequences " + to_string(a, alg) + " and " + to_string(b, alg) +
                             " share a view but extending by " + alg.name(x) + " separates them");
  }
}

constexpr std::size_t kAuditLimit = 4096;

}  // namespace

Representation build_quotient_representation(const FiniteAlgebra& alg, ClosureStats* stats) {
  ScheinContext ctx(alg);
  ClosureStats local_stats;
  ClosureStats& st = stats ? *stats : local_stats;
  Representation rep;
  for (Op op : {Op::compose, Op::dom, Op::range, Op::fixset, Op::zero, Op::identity})
    if (alg.signature().contains(op)) rep.signature = rep.signature.with(op);
  if (alg.available(Op::dom)) rep.signature = rep.signature.with(Op::dom);

  const long double bound = class_bound(alg.size(), ctx.zero().has_value());
  std::map<View, std::size_t> index;
  auto add = [&](Sequence seq) -> std::size_t {
    View v = view_of(seq, ctx);
    auto [it, inserted] = index.emplace(v, rep.classes.size());
    if (inserted) {
      rep.classes.push_back(ViewClass{std::move(v), std::move(seq)});
      if (static_cast<long double>(rep.classes.size()) > bound)
        throw NotRepresentable("more classes than the size bound allows");
    } else if (rep.classes[it->second].rep != seq && st.collisions_audited < kAuditLimit) {
      ++st.collisions_audited;
      audit(rep.classes[it->second].rep, seq, ctx);
    }
    return it->second;
  };

  for (Element c = 0; c < static_cast<Element>(alg.size()); ++c) {
    if (!ctx.nonzero(c)) continue;
    std::size_t before = rep.classes.size();
    std::size_t idx = add(Sequence{c});
    if (idx != before)
      throw NotRepresentable("length-1 sequences (" + alg.name(c) + ") and " +
                             to_string(rep.classes[idx].rep, alg) + " share a view");
  }
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const Sequence seq = rep.classes[i].rep;
    for (Element x = 0; x < static_cast<Element>(alg.size()); ++x) {
      if (!ctx.nonzero(x)) continue;
      if (auto next = theta_forward(seq, x, ctx)) {
        ++st.forward_moves;
        add(std::move(*next));
      }
      if (auto next = extend(seq, x, ctx)) {
        ++st.extend_moves;
        add(std::move(*next));
      }
    }
  }

  const std::size_t n = rep.classes.size();
  rep.images.assign(alg.size(), PartialFunction(n));
  for (Element s = 0; s < static_cast<Element>(alg.size()); ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      auto next = theta_forward(rep.classes[i].rep, s, ctx);
      if (!next) continue;
      auto it = index.find(view_of(*next, ctx));
      if (it == index.end()) throw InternalError("closure missed the view of " + to_string(*next, alg));
      rep.images[static_cast<std::size_t>(s)].set(static_cast<Point>(i), static_cast<Point>(it->second));
    }
  }
  return rep;
}

namespace {

PartialFunction apply_concrete(Op op, const std::vector<const PartialFunction*>& args, std::size_t k) {
  switch (op) {
    case Op::compose:
      return compose(*args[0], *args[1]);
    case Op::meet:
      return meet(*args[0], *args[1]);
    case Op::prefunion:
      return prefunion(*args[0], *args[1]);
    case Op::dom:
      return dom(*args[0]);
    case Op::antidom:
      return antidom(*args[0]);
    case Op::range:
      return range(*args[0]);
    case Op::fixset:
      return fixset(*args[0]);
    case Op::maxiter:
      return maxiter(*args[0]);
    case Op::zero:
      return PartialFunction(k);
    case Op::identity:
      return PartialFunction::identity(k);
  }
  throw InternalError("unknown symbol");
}

void compare(const PartialFunction& expected, const PartialFunction& actual, Op op, std::vector<Element> args,
             std::vector<Defect>& out) {
  for (Point x = 0; x < static_cast<Point>(expected.base_size()); ++x) {
    if (expected(x) == actual(x)) continue;
    out.push_back(Defect{DefectKind::operation, op, args, x, expected(x), actual(x)});
  }
}

}  // namespace

VerifyReport verify_representation(const Representation& rep, const FiniteAlgebra& alg, const Signature& sig,
                                   unsigned jobs) {
  VerifyReport report;
  report.checked = sig;
  const std::size_t n = alg.size();
  const std::size_t k = rep.base_size();
  if (rep.images.size() != n) throw DataError("representation does not cover every element");
  for (const auto& f : rep.images)
    if (f.base_size() != k) throw DataError("representation images live on different bases");

  for (Element i = 0; i < static_cast<Element>(n); ++i)
    for (Element j = i + 1; j < static_cast<Element>(n); ++j)
      if (rep.images[static_cast<std::size_t>(i)] == rep.images[static_cast<std::size_t>(j)])
        report.defects.push_back(Defect{DefectKind::injectivity, Op::compose, {i, j}, kUndefined, kUndefined, kUndefined});

  for (Op op : sig.ops()) {
    if (!alg.available(op))
      throw DataError("cannot verify '" + std::string(token(op)) + "': the algebra has no table for it");
    const auto& img = rep.images;
    if (arity(op) == 0) {
      compare(img[static_cast<std::size_t>(alg.apply(op))], apply_concrete(op, {}, k), op, {}, report.defects);
    } else if (arity(op) == 1) {
      for (Element x = 0; x < static_cast<Element>(n); ++x)
        compare(img[static_cast<std::size_t>(alg.apply(op, x))],
                apply_concrete(op, {&img[static_cast<std::size_t>(x)]}, k), op, {x}, report.defects);
    } else {
      std::vector<std::vector<Defect>> blocks(n);
      detail::parallel_for(n, jobs, [&](std::size_t x) {
        for (Element y = 0; y < static_cast<Element>(n); ++y)
          compare(img[static_cast<std::size_t>(alg.apply(op, static_cast<Element>(x), y))],
                  apply_concrete(op, {&img[x], &img[static_cast<std::size_t>(y)]}, k), op,
                  {static_cast<Element>(x), y}, blocks[x]);
      });
      for (auto& b : blocks) report.defects.insert(report.defects.end(), b.begin(), b.end());
    }
  }
  return report;
}

std::string to_string(const Defect& d, const FiniteAlgebra& alg) {
  std::ostringstream out;
  if (d.kind == DefectKind::injectivity) {
    out << "not injective: " << alg.name(d.args[0]) << " and " << alg.name(d.args[1]) << " have the same image";
    return out.str();
  }
  auto pt = [](Point p) { return p == kUndefined ? std::string("undefined") : std::to_string(p); };
  std::ostringstream call;
  call << op_name(d.symbol);
  if (!d.args.empty()) {
    call << '(';
    for (std::size_t i = 0; i < d.args.size(); ++i) call << (i ? ", " : "") << alg.name(d.args[i]);
    call << ')';
  }
  out << call.str() << " at point " << d.point << ": the image of the value gives " << pt(d.expected)
      << ", " << op_name(d.symbol) << " of the images gives " << pt(d.actual);
  return out.str();
}

AtomLift lift_antidomain(const FiniteAlgebra& alg) {
  if (!alg.available(Op::antidom)) throw DataError("the antidomain lift needs a in the signature");
  if (!alg.available(Op::range)) throw DataError("the construction needs r in the signature");
  AtomLift lift{s_at(alg), {}, {}, {}};
  lift.atoms = boolean_structure(alg).atoms;
  lift.at_rep = build_quotient_representation(lift.at.algebra);

  std::vector<Element> local(alg.size(), -1);
  for (std::size_t i = 0; i < lift.at.embedding.size(); ++i)
    local[static_cast<std::size_t>(lift.at.embedding[i])] = static_cast<Element>(i);

  const std::size_t k = lift.at_rep.base_size();
  lift.rep.signature = alg.signature().without(Op::meet).with(Op::dom);
  lift.rep.classes = lift.at_rep.classes;
  lift.rep.images.assign(alg.size(), PartialFunction(k));
  for (Element s = 0; s < static_cast<Element>(alg.size()); ++s) {
    PartialFunction& phi = lift.rep.images[static_cast<std::size_t>(s)];
    for (Element atom : lift.atoms) {
      Element piece = alg.compose(atom, s);
      Element l = local[static_cast<std::size_t>(piece)];
      if (l < 0) throw NotRepresentable(alg.name(atom) + ";" + alg.name(s) + " does not have an atomic domain");
      const PartialFunction& f = lift.at_rep.images[static_cast<std::size_t>(l)];
      for (Point x = 0; x < static_cast<Point>(k); ++x) {
        if (!f.defined_at(x)) continue;
        if (phi.defined_at(x))
          throw NotRepresentable("pieces of " + alg.name(s) + " overlap at point " + std::to_string(x));
        phi.set(x, f(x));
      }
    }
  }
  return lift;
}

FunctionAlgebra to_function_algebra(const Representation& rep, const FiniteAlgebra& alg) {
  FunctionAlgebra out{rep.base_size(), rep.signature, {}};
  for (std::size_t i = 0; i < alg.size(); ++i) out.generators.emplace_back(alg.names()[i], rep.images[i]);
  return out;
}

}  // namespace pfa
