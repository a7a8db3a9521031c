#include "bnpg/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace bnpg {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t out = 0;
  if (s.empty()) {
    throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
  }
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text, text));
  }
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Cost::Cost(Rational value) : value_(value) {
  if (value < 0) throw std::invalid_argument("negative cost " + format_rational(value));
}

const Rational& Cost::value() const {
  if (infinite_) throw std::logic_error("value() of infinite cost");
  return value_;
}

std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Cost operator+(const Cost& a, const Cost& b) {
  if (a.infinite_ || b.infinite_) return Cost::infinity();
  return Cost(a.value_ + b.value_);
}

Cost parse_cost(std::string_view text) {
  if (text == "inf") return Cost::infinity();
  return Cost(parse_rational(text));
}

std::string format_cost(const Cost& c) {
  return c.is_infinite() ? "inf" : format_rational(c.value());
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in cost scaling");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in cost sum");
  return out;
}

}  // namespace bnpg
