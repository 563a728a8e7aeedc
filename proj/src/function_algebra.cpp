#include "pfa/function_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pfa/error.hpp"

namespace pfa {

void FunctionAlgebra::validate() const {
  std::set<std::string, std::less<>> seen;
  for (const auto& [name, f] : generators) {
    if (f.base_size() != base_size)
      throw DataError("generator '" + name + "' lives on a base of size " + std::to_string(f.base_size()) +
                      ", expected " + std::to_string(base_size));
    if (!seen.insert(name).second) throw DataError("generator '" + name + "' defined twice");
  }
}

const PartialFunction* FunctionAlgebra::find(std::string_view name) const {
  for (const auto& [n, f] : generators)
    if (n == name) return &f;
  return nullptr;
}

namespace {

PartialFunction eval(const Term& t, const Assignment& asg, const FunctionAlgebra* alg, std::size_t k) {
  switch (t.kind()) {
    case NodeKind::variable: {
      const PartialFunction* f = nullptr;
      if (auto it = asg.find(t.name()); it != asg.end()) f = &it->second;
      if (!f && alg) f = alg->find(t.name());
      if (!f) throw EvaluationError("variable '" + t.name() + "' is not bound");
      if (f->base_size() != k)
        throw EvaluationError("variable '" + t.name() + "' is bound on a base of size " +
                              std::to_string(f->base_size()) + ", expected " + std::to_string(k));
      return *f;
    }
    case NodeKind::constant:
      return t.op() == Op::zero ? PartialFunction(k) : PartialFunction::identity(k);
    case NodeKind::unary: {
      PartialFunction c = eval(t.child(), asg, alg, k);
      switch (t.op()) {
        case Op::dom:
          return dom(c);
        case Op::antidom:
          return antidom(c);
        case Op::range:
          return range(c);
        case Op::fixset:
          return fixset(c);
        case Op::maxiter:
          return maxiter(c);
        default:
          break;
      }
      break;
    }
    case NodeKind::binary: {
      PartialFunction l = eval(t.left(), asg, alg, k);
      PartialFunction r = eval(t.right(), asg, alg, k);
      switch (t.op()) {
        case Op::compose:
          return compose(l, r);
        case Op::meet:
          return meet(l, r);
        case Op::prefunion:
          return prefunion(l, r);
        default:
          break;
      }
      break;
    }
  }
  throw InternalError("malformed term node");
}

}  // namespace

PartialFunction evaluate(const Term& t, const Assignment& asg, std::size_t base_size) {
  return eval(t, asg, nullptr, base_size);
}

PartialFunction evaluate(const Term& t, const Assignment& asg, const FunctionAlgebra& alg) {
  if (auto bad = check_well_formed(t, alg.signature))
    throw EvaluationError("symbol '" + std::string(token(bad->symbol)) + "' at " + bad->path +
                          " is not in the signature");
  return eval(t, asg, &alg, alg.base_size);
}

PointRestriction::PointRestriction(std::vector<Point> subset, std::size_t base_size)
    : points_(std::move(subset)), index_(base_size, kUndefined) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    Point x = points_[i];
    if (x < 0 || static_cast<std::size_t>(x) >= base_size)
      throw DataError("restriction point " + std::to_string(x) + " outside the base");
    index_[static_cast<std::size_t>(x)] = static_cast<Point>(i);
  }
}

PartialFunction PointRestriction::restrict(const PartialFunction& f) const {
  PartialFunction out(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    Point y = f(points_[i]);
    if (y != kUndefined && index_of(y) != kUndefined) out.set(static_cast<Point>(i), index_of(y));
  }
  return out;
}

FunctionAlgebra restrict_algebra(const FunctionAlgebra& alg, const std::vector<Point>& subset) {
  PointRestriction y(subset, alg.base_size);
  FunctionAlgebra out{y.size(), alg.signature, {}};
  for (const auto& [name, f] : alg.generators) out.generators.emplace_back(name, y.restrict(f));
  return out;
}

Assignment restrict_assignment(const Assignment& asg, const PointRestriction& y) {
  Assignment out;
  for (const auto& [name, f] : asg) out.emplace(name, y.restrict(f));
  return out;
}

std::vector<PartialFunction> closure(const std::vector<PartialFunction>& generators, const Signature& sig,
                                     std::size_t base_size, std::size_t max_elements) {
  std::vector<PartialFunction> elems;
  std::set<PartialFunction> seen;
  auto add = [&](PartialFunction f) {
    if (f.base_size() != base_size) throw DataError("generator on the wrong base");
    if (!seen.insert(f).second) return;
    if (elems.size() >= max_elements)
      throw DataError("closure exceeds " + std::to_string(max_elements) + " elements");
    elems.push_back(std::move(f));
  };
  for (const auto& g : generators) add(g);
  if (sig.contains(Op::zero)) add(PartialFunction(base_size));
  if (sig.contains(Op::identity)) add(PartialFunction::identity(base_size));

  std::vector<Op> unary_ops, binary_ops;
  for (Op op : sig.ops()) {
    if (arity(op) == 1) unary_ops.push_back(op);
    if (arity(op) == 2) binary_ops.push_back(op);
  }
  auto apply2 = [](Op op, const PartialFunction& f, const PartialFunction& g) {
    switch (op) {
      case Op::compose:
        return compose(f, g);
      case Op::meet:
        return meet(f, g);
      default:
        return prefunion(f, g);
    }
  };
  auto apply1 = [](Op op, const PartialFunction& f) {
    switch (op) {
      case Op::dom:
        return dom(f);
      case Op::antidom:
        return antidom(f);
      case Op::range:
        return range(f);
      case Op::fixset:
        return fixset(f);
      default:
        return maxiter(f);
    }
  };

  // Element i is combined with every j <= i once it is reached.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Op op : unary_ops) add(apply1(op, elems[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      for (Op op : binary_ops) {
        add(apply2(op, elems[i], elems[j]));
        if (i != j) add(apply2(op, elems[j], elems[i]));
      }
    }
  }
  return elems;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

FunctionFile parse_function_file(std::string_view text) {
  FunctionFile out;
  out.algebra.signature = Signature::full();
  bool have_base = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto colon = body.find(':');
    if (colon == std::string::npos)
      throw DataError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(std::string_view(body).substr(0, colon));
    std::string value = trim(std::string_view(body).substr(colon + 1));
    try {
      if (key == "base") {
        long n = std::stol(value);
        if (n < 0) throw DataError("negative base size");
        out.algebra.base_size = static_cast<std::size_t>(n);
        have_base = true;
      } else if (key == "signature") {
        out.algebra.signature = Signature::parse(value);
      } else if (key == "witness") {
        out.witness = static_cast<Point>(std::stol(value));
      } else {
        if (!have_base) throw DataError("'base:' must come before the functions");
        // Names are any token without blanks; element names such as 0 and 1' are allowed.
        if (key.empty() || std::any_of(key.begin(), key.end(), [](unsigned char c) { return std::isspace(c); }))
          throw DataError("bad function name '" + key + "'");
        out.algebra.generators.emplace_back(key, parse_partial_function(value, out.algebra.base_size));
      }
    } catch (const std::logic_error&) {
      throw DataError("line " + std::to_string(lineno) + ": bad number '" + value + "'");
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_base) throw DataError("missing 'base:' line");
  out.algebra.validate();
  if (out.witness && (*out.witness < 0 || static_cast<std::size_t>(*out.witness) >= out.algebra.base_size))
    throw DataError("witness point outside the base");
  return out;
}

std::string to_text(const FunctionAlgebra& alg, std::optional<Point> witness) {
  std::ostringstream out;
  out << "base: " << alg.base_size << '\n';
  out << "signature: " << alg.signature.to_string() << '\n';
  for (const auto& [name, f] : alg.generators) out << name << ": " << to_string(f) << '\n';
  if (witness) out << "witness: " << *witness << '\n';
  return out.str();
}

}  // namespace pfa
