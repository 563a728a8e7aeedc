#include <algorithm>
#include <set>

#include "parallel.hpp"
#include "pfa/error.hpp"
#include "pfa/representation.hpp"

namespace pfa {

namespace {

PartialFunction apply_op(Op op, const PartialFunction& f, const PartialFunction& g) {
  switch (op) {
    case Op::compose: return compose(f, g);
    case Op::meet: return meet(f, g);
    case Op::prefunion: return prefunion(f, g);
    case Op::dom: return dom(f);
    case Op::antidom: return antidom(f);
    case Op::fixset: return fixset(f);
    case Op::maxiter: return maxiter(f);
    default: break;
  }
  throw InternalError("unexpected symbol in shrink");
}

}  // namespace

ShrinkResult shrink_range_free(const FunctionAlgebra& alg, std::size_t max_elements) {
  alg.validate();
  if (alg.signature.contains(Op::range)) throw DataError("shrink needs a signature without r");
  std::vector<PartialFunction> gens;
  for (const auto& [name, f] : alg.generators) gens.push_back(f);
  const std::vector<PartialFunction> elems = closure(gens, alg.signature, alg.base_size, max_elements);
  const std::size_t n = elems.size();

  std::set<Point> y;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (Point x = 0; x < static_cast<Point>(alg.base_size); ++x)
        if (elems[i](x) != elems[j](x)) {
          y.insert(x);
          break;
        }
  std::vector<Point> seeds(y.begin(), y.end());
  for (Point x : seeds)
    for (const auto& u : elems)
      if (u.defined_at(x)) y.insert(u(x));
  // The images of the seeds already close Y; a second pass must add nothing.
  for (Point x : std::vector<Point>(y.begin(), y.end()))
    for (const auto& u : elems)
      if (u.defined_at(x) && !y.count(u(x))) throw InternalError("Y is not closed under the elements");

  PointRestriction res(std::vector<Point>(y.begin(), y.end()), alg.base_size);
  std::vector<PartialFunction> small;
  small.reserve(n);
  for (const auto& e : elems) small.push_back(res.restrict(e));

  std::vector<PartialFunction> sorted = small;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InternalError("restriction to Y is not injective");

  for (Op op : alg.signature.ops()) {
    if (arity(op) == 0) continue;  // 0 and 1' restrict to 0 and 1' on Y by construction
    const std::size_t inner = arity(op) == 2 ? n : 1;
    auto bad = detail::parallel_find_first(n, 1, [&](std::size_t i) {
      for (std::size_t j = 0; j < inner; ++j) {
        PartialFunction big = apply_op(op, elems[i], elems[j]);
        if (res.restrict(big) != apply_op(op, small[i], small[j])) return true;
      }
      return false;
    });
    if (bad) throw InternalError("restriction to Y does not preserve '" + std::string(token(op)) + "'");
  }
  if (alg.signature.contains(Op::zero) && res.restrict(PartialFunction(alg.base_size)) != PartialFunction(res.size()))
    throw InternalError("restriction to Y does not preserve 0");
  if (alg.signature.contains(Op::identity) &&
      res.restrict(PartialFunction::identity(alg.base_size)) != PartialFunction::identity(res.size()))
    throw InternalError("restriction to Y does not preserve 1'");

  const std::size_t cube = n * n * n;
  if (res.size() > cube) throw InternalError("|Y| exceeds |S|^3");

  ShrinkResult out{restrict_algebra(alg, res.points()), res.points(), n};
  return out;
}

}  // namespace pfa
