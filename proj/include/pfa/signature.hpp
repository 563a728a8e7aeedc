#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pfa {

/// Operation symbols of the partial-function signature, in canonical order.
enum class Op : std::uint8_t {
  compose,    // ;
  meet,       // .
  prefunion,  // +
  dom,        // d
  antidom,    // a
  range,      // r
  fixset,     // fix
  maxiter,    // ^
  zero,       // 0
  identity,   // 1'
};

inline constexpr std::size_t kOpCount = 10;

inline constexpr std::array<Op, kOpCount> kAllOps = {
    Op::compose, Op::meet,   Op::prefunion, Op::dom,  Op::antidom,
    Op::range,   Op::fixset, Op::maxiter,   Op::zero, Op::identity,
};

int arity(Op op);
/// Grammar token: ";" "." "+" "d" "a" "r" "fix" "^" "0" "1'".
std::string_view token(Op op);
/// Long name used in reports: "compose", "meet", ...
std::string_view op_name(Op op);
std::optional<Op> op_from_token(std::string_view tok);

/// A set of operation symbols. Composition is always a member.
class Signature {
 public:
  Signature();
  Signature(std::initializer_list<Op> ops);

  static Signature full();
  /// Parses a whitespace-separated token list such as "; . d r 0".
  static Signature parse(std::string_view text);

  bool contains(Op op) const { return bits_.test(static_cast<std::size_t>(op)); }
  Signature with(Op op) const;
  /// Removing composition is a no-op.
  Signature without(Op op) const;
  bool subset_of(const Signature& other) const;
  std::vector<Op> ops() const;
  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::bitset<kOpCount> bits_;
};

}  // namespace pfa
