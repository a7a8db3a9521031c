#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bnpg {

using Rational = boost::rational<std::int64_t>;

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& r);

/// A nonnegative rational extended with +infinity. Used for edge costs and
/// budgets, where infinity means "prohibited" or "unbounded".
class Cost {
 public:
  Cost() = default;
  Cost(Rational value);  // NOLINT: implicit by intent
  Cost(std::int64_t value) : Cost(Rational(value)) {}

  static Cost infinity() {
    Cost c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Throws std::logic_error when infinite.
  const Rational& value() const;

  friend bool operator==(const Cost& a, const Cost& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b);

  friend Cost operator+(const Cost& a, const Cost& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// Accepts everything parse_rational accepts plus "inf".
Cost parse_cost(std::string_view text);
std::string format_cost(const Cost& c);

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

}  // namespace bnpg
