#include "pfa/decider.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "parallel.hpp"
#include "pfa/error.hpp"

namespace pfa {

// ---------------------------------------------------------------- Σ(t, x)

namespace {

void sigma_rec(const Term& t, Point x, const Assignment& asg, std::size_t k, std::set<Point>& out) {
  out.insert(x);
  switch (t.kind()) {
    case NodeKind::constant:
      return;
    case NodeKind::variable: {
      PartialFunction f = evaluate(t, asg, k);
      if (f.defined_at(x)) out.insert(f(x));
      return;
    }
    case NodeKind::unary:
      switch (t.op()) {
        case Op::dom:
        case Op::antidom:
        // fix(s) = 1' . s, so s has to be evaluated at x as for d.
        case Op::fixset:
          sigma_rec(t.child(), x, asg, k, out);
          return;
        case Op::range: {
          PartialFunction s = evaluate(t.child(), asg, k);
          for (Point y = 0; y < static_cast<Point>(k); ++y) {
            if (s(y) == x) {
              sigma_rec(t.child(), y, asg, k, out);
              return;
            }
          }
          return;
        }
        default:
          throw EvaluationError("sigma is not defined for terms with maxiter");
      }
    case NodeKind::binary:
      if (t.op() == Op::compose) {
        sigma_rec(t.left(), x, asg, k, out);
        PartialFunction s = evaluate(t.left(), asg, k);
        if (s.defined_at(x)) sigma_rec(t.right(), s(x), asg, k, out);
      } else {
        sigma_rec(t.left(), x, asg, k, out);
        sigma_rec(t.right(), x, asg, k, out);
      }
      return;
  }
}

Signature signature_of(const Term& u, const Term& v) {
  Signature s = symbols_of(u);
  for (Op op : symbols_of(v).ops()) s = s.with(op);
  return s;
}

}  // namespace

std::vector<Point> sigma(const Term& t, Point x, const Assignment& asg, std::size_t base_size) {
  if (symbols_of(t).contains(Op::maxiter)) throw EvaluationError("sigma is not defined for terms with maxiter");
  if (x < 0 || static_cast<std::size_t>(x) >= base_size) throw DataError("point outside the base");
  std::set<Point> out;
  sigma_rec(t, x, asg, base_size, out);
  return {out.begin(), out.end()};
}

RestrictionCheck check_restriction_lemma(const Term& t, Point x, const Assignment& asg, std::size_t base_size,
                                         const std::vector<Point>& y) {
  PointRestriction r(y, base_size);
  if (x < 0 || static_cast<std::size_t>(x) >= base_size || r.index_of(x) == kUndefined)
    throw DataError("the point must lie in Y");
  RestrictionCheck out;
  out.original = evaluate(t, asg, base_size)(x);
  Point local = evaluate(t, restrict_assignment(asg, r), r.size())(r.index_of(x));
  out.restricted = local == kUndefined ? kUndefined : r.original(local);
  out.ok = out.original == out.restricted;
  return out;
}

std::optional<Counterexample> make_counterexample(const Term& u, const Term& v, const Assignment& asg,
                                                  std::size_t base_size, const Signature& sig) {
  PartialFunction fu = evaluate(u, asg, base_size);
  PartialFunction fv = evaluate(v, asg, base_size);
  for (Point x = 0; x < static_cast<Point>(base_size); ++x) {
    if (fu(x) == fv(x)) continue;
    Counterexample ce;
    ce.algebra.base_size = base_size;
    ce.algebra.signature = sig;
    ce.assignment = asg;
    for (const auto& [name, f] : asg) ce.algebra.generators.emplace_back(name, f);
    ce.witness = x;
    ce.lhs_value = fu(x);
    ce.rhs_value = fv(x);
    return ce;
  }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::valid:
      return "Valid";
    case Verdict::counterexample:
      return "Counterexample";
    case Verdict::budget_exceeded:
      return "BudgetExceeded";
  }
  return "?";
}

// ------------------------------------------------------- exhaustive search

namespace {

constexpr Point kUnknown = -2;
constexpr Point kBlocked = -3;
constexpr Point kInconsistent = -4;
constexpr Point kDeclined = -1;

struct BudgetTimeout {};

struct Flat {
  struct Node {
    NodeKind kind;
    Op op;
    int var;
    int left;
    int right;
  };
  std::vector<Node> nodes;
  std::vector<std::string> vars;
  int root_u = -1;
  int root_v = -1;

  int add(const Term& t) {
    Node n{t.kind(), t.op(), -1, -1, -1};
    switch (t.kind()) {
      case NodeKind::variable:
        n.var = static_cast<int>(std::find(vars.begin(), vars.end(), t.name()) - vars.begin());
        break;
      case NodeKind::constant:
        break;
      case NodeKind::unary:
        n.left = add(t.child());
        break;
      case NodeKind::binary:
        n.left = add(t.left());
        n.right = add(t.right());
        break;
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }
};

enum class NeedKind { value, witness };

struct Need {
  NeedKind kind;
  int index;  // variable for value, r-node for witness
  Point point;
};

enum class StepStatus { blocked, agree, disagree, inconsistent };

class Deadline {
 public:
  explicit Deadline(std::optional<double> seconds) {
    if (seconds)
      end_ = std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*seconds));
  }
  void check() {
    if (!end_) return;
    if ((++ticks_ & 255u) != 0) return;
    if (std::chrono::steady_clock::now() > *end_) throw BudgetTimeout{};
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  unsigned ticks_ = 0;
};

class Search {
 public:
  Search(const Flat& flat, std::size_t cap, bool verify_declines, const std::atomic<bool>* stop,
         std::optional<double> budget)
      : f_(flat),
        cap_(cap),
        verify_(verify_declines),
        stop_(stop),
        deadline_(budget),
        table_(flat.vars.size() * cap, kUnknown),
        witness_(flat.nodes.size() * cap, kUnknown),
        memo_(flat.nodes.size() * cap, kUnknown),
        stamp_(flat.nodes.size() * cap, 0) {}

  bool cap_hit() const { return cap_hit_; }
  const std::optional<std::pair<std::vector<Point>, std::size_t>>& found() const { return found_; }

  StepStatus step(Need& need) {
    ++pass_;
    need_ = &need;
    Point u = eval(f_.root_u, 0);
    if (u == kBlocked) return StepStatus::blocked;
    if (u == kInconsistent) return StepStatus::inconsistent;
    Point v = eval(f_.root_v, 0);
    if (v == kBlocked) return StepStatus::blocked;
    if (v == kInconsistent) return StepStatus::inconsistent;
    if (verify_) {
      for (const auto& [node, x] : declines_) {
        int child = f_.nodes[static_cast<std::size_t>(node)].left;
        for (Point y = 0; y < static_cast<Point>(m_); ++y) {
          Point s = eval(child, y);
          if (s == kBlocked) return StepStatus::blocked;
          if (s == kInconsistent || s == x) return StepStatus::inconsistent;
        }
      }
    }
    return u == v ? StepStatus::agree : StepStatus::disagree;
  }

  std::size_t option_count(const Need& need) const {
    // value: undefined, each existing point, a fresh point
    // witness: decline, each existing point, a fresh point
    (void)need;
    return m_ + 2;
  }

  struct Undo {
    Need need;
    bool fresh = false;
  };

  /// False if the option needs a point beyond the cap.
  bool apply(const Need& need, std::size_t option, Undo& undo) {
    undo.need = need;
    undo.fresh = false;
    Point choice;
    if (option == 0) {
      choice = kUndefined;
    } else if (option <= m_) {
      choice = static_cast<Point>(option - 1);
    } else {
      if (m_ >= cap_) {
        cap_hit_ = true;
        return false;
      }
      choice = static_cast<Point>(m_++);
      undo.fresh = true;
    }
    if (need.kind == NeedKind::value) {
      table_[slot(need.index, need.point)] = choice;
    } else {
      witness_[wslot(need.index, need.point)] = choice == kUndefined ? kDeclined : choice;
      if (choice == kUndefined) declines_.emplace_back(need.index, need.point);
    }
    return true;
  }

  void undo(const Undo& u) {
    if (u.need.kind == NeedKind::value) {
      table_[slot(u.need.index, u.need.point)] = kUnknown;
    } else {
      Point& w = witness_[wslot(u.need.index, u.need.point)];
      if (w == kDeclined) declines_.pop_back();
      w = kUnknown;
    }
    if (u.fresh) --m_;
  }

  /// Depth-first search below the current state. True once a concretely
  /// verified counterexample is stored.
  bool dfs() {
    if (stop_ && stop_->load(std::memory_order_relaxed)) return false;
    deadline_.check();
    Need need{};
    StepStatus st = step(need);
    if (st == StepStatus::agree || st == StepStatus::inconsistent) return false;
    if (st == StepStatus::disagree) return accept_leaf();
    const std::size_t n = option_count(need);
    for (std::size_t i = 0; i < n; ++i) {
      Undo u;
      if (!apply(need, i, u)) continue;
      bool hit = dfs();
      undo(u);
      if (hit) return true;
    }
    return false;
  }

  std::size_t points() const { return m_; }

  /// Concrete tables of the current state on m points (unknown = undefined).
  std::vector<Point> concrete_tables() const {
    std::vector<Point> out(f_.vars.size() * m_, kUndefined);
    for (std::size_t v = 0; v < f_.vars.size(); ++v)
      for (std::size_t p = 0; p < m_; ++p) {
        Point y = table_[v * cap_ + p];
        out[v * m_ + p] = y == kUnknown ? kUndefined : y;
      }
    return out;
  }

  std::function<bool(const std::vector<Point>&, std::size_t)> verify_leaf;

 private:
  std::size_t slot(int var, Point p) const { return static_cast<std::size_t>(var) * cap_ + static_cast<std::size_t>(p); }
  std::size_t wslot(int node, Point p) const {
    return static_cast<std::size_t>(node) * cap_ + static_cast<std::size_t>(p);
  }

  bool accept_leaf() {
    auto tables = concrete_tables();
    if (verify_leaf && verify_leaf(tables, m_)) {
      found_ = std::make_pair(std::move(tables), m_);
      return true;
    }
    return false;
  }

  Point block(NeedKind kind, int index, Point p) {
    *need_ = Need{kind, index, p};
    return kBlocked;
  }

  Point eval(int node, Point x) {
    const std::size_t key = static_cast<std::size_t>(node) * cap_ + static_cast<std::size_t>(x);
    if (stamp_[key] == pass_) return memo_[key];
    Point r = eval_uncached(node, x);
    if (r == kBlocked || r == kInconsistent) return r;
    stamp_[key] = pass_;
    memo_[key] = r;
    return r;
  }

  Point eval_uncached(int node, Point x) {
    const auto& n = f_.nodes[static_cast<std::size_t>(node)];
    switch (n.kind) {
      case NodeKind::variable: {
        Point y = table_[slot(n.var, x)];
        return y == kUnknown ? block(NeedKind::value, n.var, x) : y;
      }
      case NodeKind::constant:
        return n.op == Op::identity ? x : kUndefined;
      case NodeKind::unary: {
        if (n.op == Op::range) {
          Point w = witness_[wslot(node, x)];
          if (w == kUnknown) return block(NeedKind::witness, node, x);
          if (w == kDeclined) return kUndefined;
          Point s = eval(n.left, w);
          if (s < kUndefined) return s;
          return s == x ? x : kInconsistent;
        }
        if (n.op == Op::maxiter) {
          std::vector<Point> seen;
          Point y = x;
          for (;;) {
            seen.push_back(y);
            Point s = eval(n.left, y);
            if (s < kUndefined) return s;
            if (s == kUndefined) return y;
            if (std::find(seen.begin(), seen.end(), s) != seen.end()) return kUndefined;
            y = s;
          }
        }
        Point s = eval(n.left, x);
        if (s < kUndefined) return s;
        switch (n.op) {
          case Op::dom:
            return s == kUndefined ? kUndefined : x;
          case Op::antidom:
            return s == kUndefined ? x : kUndefined;
          case Op::fixset:
            return s == x ? x : kUndefined;
          default:
            throw InternalError("unexpected unary symbol");
        }
      }
      case NodeKind::binary: {
        Point s = eval(n.left, x);
        if (s < kUndefined) return s;
        switch (n.op) {
          case Op::compose:
            return s == kUndefined ? kUndefined : eval(n.right, s);
          case Op::prefunion:
            return s != kUndefined ? s : eval(n.right, x);
          case Op::meet: {
            Point t = eval(n.right, x);
            if (t < kUndefined) return t;
            return s == t ? s : kUndefined;
          }
          default:
            throw InternalError("unexpected binary symbol");
        }
      }
    }
    return kUndefined;
  }

  const Flat& f_;
  std::size_t cap_;
  bool verify_;
  const std::atomic<bool>* stop_;
  Deadline deadline_;
  std::size_t m_ = 1;
  bool cap_hit_ = false;
  std::vector<Point> table_;
  std::vector<Point> witness_;
  std::vector<std::pair<int, Point>> declines_;
  std::vector<Point> memo_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t pass_ = 0;
  Need* need_ = nullptr;
  std::optional<std::pair<std::vector<Point>, std::size_t>> found_;
};

Assignment assignment_from(const Flat& f, const std::vector<Point>& tables, std::size_t m) {
  Assignment asg;
  for (std::size_t v = 0; v < f.vars.size(); ++v) {
    std::vector<Point> img(tables.begin() + static_cast<std::ptrdiff_t>(v * m),
                           tables.begin() + static_cast<std::ptrdiff_t>((v + 1) * m));
    asg.emplace(f.vars[v], PartialFunction(std::move(img)));
  }
  return asg;
}

struct CapResult {
  bool cap_hit = false;
  std::optional<Counterexample> ce;
};

// Replays option choices from the root; false if a choice is unavailable or
// the path ends before all choices are used.
bool replay(Search& s, const std::vector<std::size_t>& path) {
  for (std::size_t opt : path) {
    Need need{};
    if (s.step(need) != StepStatus::blocked) return false;
    Search::Undo u;
    if (!s.apply(need, opt, u)) return false;
  }
  return true;
}

CapResult search_cap(const Flat& flat, const Term& u, const Term& v, const Signature& sig, std::size_t cap,
                     bool verify, unsigned jobs, std::optional<double> budget) {
  auto verify_leaf = [&](const std::vector<Point>& tables, std::size_t m) {
    return make_counterexample(u, v, assignment_from(flat, tables, m), m, sig).has_value();
  };
  CapResult out;

  if (jobs <= 1) {
    Search s(flat, cap, verify, nullptr, budget);
    s.verify_leaf = verify_leaf;
    if (s.dfs()) {
      const auto& [tables, m] = *s.found();
      out.ce = make_counterexample(u, v, assignment_from(flat, tables, m), m, sig);
    }
    out.cap_hit = s.cap_hit();
    return out;
  }

  // Expand the tree breadth-first, keeping depth-first order, until there
  // are enough independent subtrees.
  std::vector<std::vector<std::size_t>> frontier{{}};
  const std::size_t want = 8 * static_cast<std::size_t>(jobs);
  bool root_cap_hit = false;
  for (int depth = 0; depth < 6 && frontier.size() < want; ++depth) {
    std::vector<std::vector<std::size_t>> next;
    bool grew = false;
    for (const auto& path : frontier) {
      Search s(flat, cap, verify, nullptr, std::nullopt);
      replay(s, path);
      Need need{};
      if (s.step(need) != StepStatus::blocked) {
        next.push_back(path);
        continue;
      }
      for (std::size_t i = 0; i < s.option_count(need); ++i) {
        Search::Undo undo;
        if (!s.apply(need, i, undo)) {
          root_cap_hit = true;
          continue;
        }
        s.undo(undo);
        auto child = path;
        child.push_back(i);
        next.push_back(std::move(child));
        grew = true;
      }
    }
    frontier = std::move(next);
    if (!grew) break;
  }

  std::vector<std::optional<Counterexample>> results(frontier.size());
  std::atomic<bool> any_cap{root_cap_hit};
  auto hit = detail::parallel_find_first(frontier.size(), jobs, [&](std::size_t i) {
    Search s(flat, cap, verify, nullptr, budget);
    s.verify_leaf = verify_leaf;
    replay(s, frontier[i]);
    bool found = s.dfs();
    if (s.cap_hit()) any_cap = true;
    if (found) {
      const auto& [tables, m] = *s.found();
      results[i] = make_counterexample(u, v, assignment_from(flat, tables, m), m, sig);
      return true;
    }
    return false;
  });
  out.cap_hit = any_cap.load();
  if (hit) out.ce = results[*hit];
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DecideResult decide_equation(const Term& u, const Term& v, const Signature& sig, const DecideOptions& opts) {
  for (const Term* t : {&u, &v})
    if (auto bad = check_well_formed(*t, sig))
      throw EvaluationError("symbol '" + std::string(token(bad->symbol)) + "' is not in the signature");

  Flat flat;
  flat.vars = variables_of(Equation{u, v});
  flat.root_u = flat.add(u);
  flat.root_v = flat.add(v);

  DecideResult res;
  res.seed = opts.seed;
  res.bound = opts.max_base.value_or(2 * (term_length(u) + term_length(v)));
  const Signature used = signature_of(u, v);
  const bool has_maxiter = used.contains(Op::maxiter);
  // Without a, + and ^ every term is monotone in its arguments, so an r
  // without a witness among the points read stays without one.
  const bool verify = used.contains(Op::range) &&
                      (used.contains(Op::antidom) || used.contains(Op::prefunion) || has_maxiter);

  const auto start = std::chrono::steady_clock::now();
  auto remaining = [&]() -> std::optional<double> {
    if (!opts.budget_seconds) return std::nullopt;
    double spent = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::max(0.0, *opts.budget_seconds - spent);
  };

  if (opts.mode == SearchMode::random) {
    for (std::size_t k = 1; k <= res.bound; ++k) {
      auto left = remaining();
      if (left && *left <= 0) {
        res.note = "time budget spent";
        return res;
      }
      std::vector<std::optional<Counterexample>> found(opts.trials_per_size);
      auto hit = detail::parallel_find_first(opts.trials_per_size, opts.jobs, [&](std::size_t i) {
        std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(k * 0x100000001ULL + i)));
        std::uniform_int_distribution<Point> pick(-1, static_cast<Point>(k) - 1);
        Assignment asg;
        for (const auto& name : flat.vars) {
          std::vector<Point> img(k);
          for (auto& y : img) y = pick(rng);
          asg.emplace(name, PartialFunction(std::move(img)));
        }
        found[i] = make_counterexample(u, v, asg, k, sig);
        return found[i].has_value();
      });
      if (hit) {
        res.verdict = Verdict::counterexample;
        res.counterexample = found[*hit];
        return res;
      }
      res.exhausted = 0;
    }
    res.note = "random search found no counterexample";
    return res;
  }

  for (std::size_t k = 1; k <= res.bound; ++k) {
    CapResult cr;
    try {
      auto left = remaining();
      if (left && *left <= 0) throw BudgetTimeout{};
      cr = search_cap(flat, u, v, sig, k, verify, opts.jobs, left);
    } catch (const BudgetTimeout&) {
      res.note = "time budget spent";
      return res;
    }
    if (cr.ce) {
      res.verdict = Verdict::counterexample;
      res.counterexample = std::move(cr.ce);
      return res;
    }
    res.exhausted = k;
    if (!cr.cap_hit || k == res.bound) {
      if (has_maxiter) {
        res.note = "no counterexample found; bounded search is not complete for maxiter";
        return res;
      }
      res.verdict = Verdict::valid;
      res.closed_early = !cr.cap_hit;
      return res;
    }
  }
  return res;
}

Counterexample minimize_counterexample(const Counterexample& ce, const Term& u, const Term& v) {
  const std::size_t k = ce.algebra.base_size;
  std::vector<Point> y = sigma(u, ce.witness, ce.assignment, k);
  for (Point p : sigma(v, ce.witness, ce.assignment, k)) y.push_back(p);
  PointRestriction r(y, k);
  Assignment small = restrict_assignment(ce.assignment, r);
  Counterexample out;
  out.algebra.base_size = r.size();
  out.algebra.signature = ce.algebra.signature;
  out.assignment = small;
  for (const auto& [name, f] : small) out.algebra.generators.emplace_back(name, f);
  out.witness = r.index_of(ce.witness);
  out.lhs_value = evaluate(u, small, r.size())(out.witness);
  out.rhs_value = evaluate(v, small, r.size())(out.witness);
  if (out.lhs_value == out.rhs_value)
    throw InternalError("disagreement at the witness point does not survive restriction to the witness set");
  return out;
}

}  // namespace pfa
