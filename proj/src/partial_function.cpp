#include "pfa/partial_function.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "pfa/error.hpp"

namespace pfa {
namespace {

void require_same_base(const PartialFunction& f, const PartialFunction& g) {
  if (f.base_size() != g.base_size())
    throw EvaluationError("operands live on bases of different sizes (" + std::to_string(f.base_size()) +
                          " and " + std::to_string(g.base_size()) + ")");
}

}  // namespace

PartialFunction::PartialFunction(std::vector<Point> image) : image_(std::move(image)) {
  const auto n = static_cast<Point>(image_.size());
  for (Point y : image_)
    if (y != kUndefined && (y < 0 || y >= n))
      throw DataError("image point " + std::to_string(y) + " outside base of size " + std::to_string(n));
}

PartialFunction PartialFunction::identity(std::size_t size) {
  PartialFunction f(size);
  for (std::size_t x = 0; x < size; ++x) f.image_[x] = static_cast<Point>(x);
  return f;
}

bool PartialFunction::empty() const {
  return std::all_of(image_.begin(), image_.end(), [](Point y) { return y == kUndefined; });
}

std::size_t PartialFunction::domain_size() const {
  return static_cast<std::size_t>(
      std::count_if(image_.begin(), image_.end(), [](Point y) { return y != kUndefined; }));
}

PartialFunction compose(const PartialFunction& f, const PartialFunction& g) {
  require_same_base(f, g);
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x)
    if (f.defined_at(x)) out.set(x, g(f(x)));
  return out;
}

PartialFunction meet(const PartialFunction& f, const PartialFunction& g) {
  require_same_base(f, g);
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x)
    if (f(x) == g(x)) out.set(x, f(x));
  return out;
}

PartialFunction prefunion(const PartialFunction& f, const PartialFunction& g) {
  require_same_base(f, g);
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x) out.set(x, f.defined_at(x) ? f(x) : g(x));
  return out;
}

PartialFunction dom(const PartialFunction& f) {
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x)
    if (f.defined_at(x)) out.set(x, x);
  return out;
}

PartialFunction range(const PartialFunction& f) {
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x)
    if (f.defined_at(x)) out.set(f(x), f(x));
  return out;
}

PartialFunction fixset(const PartialFunction& f) {
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x)
    if (f(x) == x) out.set(x, x);
  return out;
}

PartialFunction antidom(const PartialFunction& f) {
  PartialFunction out(f.base_size());
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x)
    if (!f.defined_at(x)) out.set(x, x);
  return out;
}

PartialFunction maxiter(const PartialFunction& f) {
  const std::size_t k = f.base_size();
  PartialFunction out(k);
  for (Point x = 0; x < static_cast<Point>(k); ++x) {
    Point y = x;
    // k steps visit k+1 points, so a walk still inside dom(f) has cycled.
    for (std::size_t step = 0; step < k && f.defined_at(y); ++step) y = f(y);
    if (!f.defined_at(y)) out.set(x, y);
  }
  return out;
}

std::string to_string(const PartialFunction& f) {
  std::string out = "{";
  bool first = true;
  for (Point x = 0; x < static_cast<Point>(f.base_size()); ++x) {
    if (!f.defined_at(x)) continue;
    if (!first) out += ", ";
    first = false;
    out += std::to_string(x);
    out += "->";
    out += std::to_string(f(x));
  }
  out += '}';
  return out;
}

PartialFunction parse_partial_function(std::string_view text, std::size_t base_size) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> PartialFunction {
    throw DataError("bad partial function '" + std::string(text) + "': " + what);
  };
  auto number = [&](Point& v) {
    skip();
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) return false;
    pos = static_cast<std::size_t>(ptr - text.data());
    return true;
  };

  PartialFunction f(base_size);
  skip();
  if (pos >= text.size() || text[pos] != '{') return fail("expected '{'");
  ++pos;
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    for (;;) {
      Point x = 0, y = 0;
      if (!number(x)) return fail("expected a point");
      skip();
      if (text.substr(pos, 2) != "->") return fail("expected '->'");
      pos += 2;
      if (!number(y)) return fail("expected a point");
      const auto n = static_cast<Point>(base_size);
      if (x < 0 || x >= n || y < 0 || y >= n) return fail("point outside base of size " + std::to_string(n));
      if (f.defined_at(x)) return fail("point " + std::to_string(x) + " mapped twice");
      f.set(x, y);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      return fail("expected ',' or '}'");
    }
  }
  skip();
  if (pos != text.size()) return fail("trailing input");
  return f;
}

}  // namespace pfa
