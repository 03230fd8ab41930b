#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace stablecredit {

/// Signed decimal fixed-point number with 18 fractional digits.
///
/// Token amounts, currency, rates and ratios all use this type so that
/// ledger sums are exact and reference figures reproduce bit-for-bit.
/// Multiplication and division truncate toward zero; overflow of the
/// 256-bit backing store throws std::overflow_error.
class Decimal {
 public:
  using Raw = boost::multiprecision::checked_int256_t;
  using Wide = boost::multiprecision::checked_int512_t;

  static constexpr int kScale = 18;

  Decimal() = default;

  static Decimal from_raw(Raw raw) {
    Decimal d;
    d.raw_ = std::move(raw);
    return d;
  }
  static Decimal from_int(std::int64_t value);
  /// Strict parse: optional sign, digits, optional fraction of at most 18
  /// digits, optional exponent. Throws Error(kParse) otherwise.
  static Decimal parse(std::string_view text);
  /// Nearest shortest round-trip representation of `value`, truncated to
  /// 18 fractional digits. Throws Error(kParse) for NaN or infinity.
  static Decimal from_double(double value);

  static const Raw& unit();  // 10^18
  static Decimal zero() { return Decimal{}; }
  static Decimal one() { return from_raw(unit()); }
  /// Smallest representable positive value, 10^-18.
  static Decimal epsilon() { return from_raw(Raw(1)); }

  const Raw& raw() const { return raw_; }

  std::string to_string() const;
  /// Fixed number of fractional digits, rounded half away from zero.
  std::string to_string_fixed(int digits) const;
  double to_double() const;

  bool is_zero() const { return raw_ == 0; }
  bool is_negative() const { return raw_ < 0; }
  bool is_positive() const { return raw_ > 0; }

  Decimal operator-() const { return from_raw(-raw_); }
  Decimal& operator+=(const Decimal& o) {
    raw_ += o.raw_;
    return *this;
  }
  Decimal& operator-=(const Decimal& o) {
    raw_ -= o.raw_;
    return *this;
  }
  Decimal& operator*=(const Decimal& o) { return *this = *this * o; }
  Decimal& operator/=(const Decimal& o) { return *this = *this / o; }

  friend Decimal operator+(Decimal a, const Decimal& b) { return a += b; }
  friend Decimal operator-(Decimal a, const Decimal& b) { return a -= b; }
  friend Decimal operator*(const Decimal& a, const Decimal& b);
  friend Decimal operator/(const Decimal& a, const Decimal& b);

  friend bool operator==(const Decimal& a, const Decimal& b) { return a.raw_ == b.raw_; }
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    if (a.raw_ < b.raw_) return std::strong_ordering::less;
    if (a.raw_ > b.raw_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Raw raw_{0};
};

/// a * b / c with a single truncation.
Decimal mul_div(const Decimal& a, const Decimal& b, const Decimal& c);

inline Decimal abs(const Decimal& d) { return d.is_negative() ? -d : d; }
inline const Decimal& min(const Decimal& a, const Decimal& b) { return b < a ? b : a; }
inline const Decimal& max(const Decimal& a, const Decimal& b) { return a < b ? b : a; }

namespace literals {
/// 0.15_dec, 1000000_dec
inline Decimal operator""_dec(const char* text) { return Decimal::parse(text); }
}  // namespace literals

}  // namespace stablecredit
