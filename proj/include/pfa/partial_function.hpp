#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pfa {

using Point = std::int32_t;
inline constexpr Point kUndefined = -1;

/// A partial self-map of the base {0, ..., size-1}, stored densely.
class PartialFunction {
 public:
  PartialFunction() = default;
  /// The empty function on a base of `size` points.
  explicit PartialFunction(std::size_t size) : image_(size, kUndefined) {}
  /// Throws DataError if an entry is neither kUndefined nor a valid point.
  explicit PartialFunction(std::vector<Point> image);

  static PartialFunction identity(std::size_t size);

  std::size_t base_size() const { return image_.size(); }
  Point operator()(Point x) const { return image_[static_cast<std::size_t>(x)]; }
  bool defined_at(Point x) const { return image_[static_cast<std::size_t>(x)] != kUndefined; }
  /// Caller keeps the invariant: y is kUndefined or a valid point.
  void set(Point x, Point y) { image_[static_cast<std::size_t>(x)] = y; }
  bool empty() const;
  std::size_t domain_size() const;
  const std::vector<Point>& image() const { return image_; }

  friend bool operator==(const PartialFunction&, const PartialFunction&) = default;
  friend auto operator<=>(const PartialFunction&, const PartialFunction&) = default;

 private:
  std::vector<Point> image_;
};

// Binary operations throw EvaluationError when the bases differ.
PartialFunction compose(const PartialFunction& f, const PartialFunction& g);
PartialFunction meet(const PartialFunction& f, const PartialFunction& g);
PartialFunction prefunion(const PartialFunction& f, const PartialFunction& g);
PartialFunction dom(const PartialFunction& f);
PartialFunction range(const PartialFunction& f);
PartialFunction fixset(const PartialFunction& f);
PartialFunction antidom(const PartialFunction& f);
/// Follows f from each point for at most base_size steps; defined where the
/// walk leaves dom(f), undefined where it is caught in a cycle.
PartialFunction maxiter(const PartialFunction& f);

/// `{0->1, 2->2}`; `{}` when empty.
std::string to_string(const PartialFunction& f);
/// Inverse of to_string on a base of the given size. Throws DataError.
PartialFunction parse_partial_function(std::string_view text, std::size_t base_size);

}  // namespace pfa
