#include "stablecredit/decimal.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "stablecredit/error.hpp"

namespace stablecredit {

namespace {

const Decimal::Wide& wide_unit() {
  static const Decimal::Wide v = Decimal::Wide(Decimal::unit());
  return v;
}

Decimal narrow(const Decimal::Wide& w) {
  static const Decimal::Wide limit = (Decimal::Wide(1) << 255) - 1;
  if (w > limit || w < -limit) {
    throw std::overflow_error("decimal overflow");
  }
  return Decimal::from_raw(Decimal::Raw(w));
}

Decimal parse_impl(std::string_view text, bool truncate_excess) {
  auto fail = [&](const char* why) -> Decimal {
    throw Error(ErrorCode::kParse, "invalid decimal '" + std::string(text) + "': " + why);
  };
  if (text.empty()) return fail("empty");

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  int int_digits = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) {
        ++frac_digits;
      } else {
        ++int_digits;
      }
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == '_' || c == ',') {
      // digit group separators are not accepted
      return fail("unexpected character");
    } else {
      break;
    }
  }
  if (!any_digit) return fail("no digits");
  if (seen_point && (int_digits == 0 || frac_digits == 0)) return fail("digits required around '.'");

  int exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail("unexpected character");
    ++i;
    auto rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || rest.empty()) {
      return fail("bad exponent");
    }
    if (exponent > 200 || exponent < -200) return fail("exponent out of range");
  }

  int scale = frac_digits - exponent;  // value = digits * 10^-scale
  if (scale > Decimal::kScale) {
    int excess = scale - Decimal::kScale;
    std::size_t keep = digits.size() > static_cast<std::size_t>(excess)
                           ? digits.size() - static_cast<std::size_t>(excess)
                           : 0;
    std::string_view dropped = std::string_view(digits).substr(keep);
    if (!truncate_excess && dropped.find_first_not_of('0') != std::string_view::npos) {
      return fail("more than 18 fractional digits");
    }
    digits.resize(keep);
    if (digits.empty()) digits = "0";
    scale = Decimal::kScale;
  }
  digits.append(static_cast<std::size_t>(Decimal::kScale - scale), '0');
  // strip leading zeros so cpp_int does not read the string as octal
  auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  if (digits.size() > 78) return fail("magnitude too large");

  Decimal::Wide w(digits);
  if (negative) w = -w;
  return narrow(w);
}

}  // namespace

const Decimal::Raw& Decimal::unit() {
  static const Raw v("1000000000000000000");
  return v;
}

Decimal Decimal::from_int(std::int64_t value) { return from_raw(Raw(value) * unit()); }

Decimal Decimal::parse(std::string_view text) { return parse_impl(text, false); }

Decimal Decimal::from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kParse, "non-finite number");
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error(ErrorCode::kParse, "cannot format number");
  return parse_impl(std::string_view(buf, static_cast<std::size_t>(ptr - buf)), true);
}

std::string Decimal::to_string() const {
  Raw mag = raw_ < 0 ? Raw(-raw_) : raw_;
  Raw int_part = mag / unit();
  Raw frac_part = mag % unit();
  std::string out = raw_ < 0 ? "-" : "";
  out += int_part.str();
  if (frac_part != 0) {
    std::string frac = frac_part.str();
    frac.insert(0, static_cast<std::size_t>(kScale) - frac.size(), '0');
    frac.erase(frac.find_last_not_of('0') + 1);
    out += '.';
    out += frac;
  }
  return out;
}

std::string Decimal::to_string_fixed(int digits) const {
  if (digits < 0) digits = 0;
  if (digits > kScale) digits = kScale;
  Raw mag = raw_ < 0 ? Raw(-raw_) : raw_;
  Raw step = 1;
  for (int i = 0; i < kScale - digits; ++i) step *= 10;
  Raw rounded = (mag + step / 2) / step;  // in units of 10^-digits
  Raw pow = 1;
  for (int i = 0; i < digits; ++i) pow *= 10;
  std::string out = (raw_ < 0 && rounded != 0) ? "-" : "";
  out += Raw(rounded / pow).str();
  if (digits > 0) {
    std::string frac = Raw(rounded % pow).str();
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    out += '.';
    out += frac;
  }
  return out;
}

double Decimal::to_double() const { return std::strtod(to_string().c_str(), nullptr); }

Decimal operator*(const Decimal& a, const Decimal& b) {
  Decimal::Wide w = Decimal::Wide(a.raw_) * Decimal::Wide(b.raw_);
  return narrow(w / wide_unit());
}

Decimal operator/(const Decimal& a, const Decimal& b) {
  if (b.raw_ == 0) throw Error(ErrorCode::kArithmetic, "division by zero");
  Decimal::Wide w = Decimal::Wide(a.raw_) * wide_unit();
  return narrow(w / Decimal::Wide(b.raw_));
}

Decimal mul_div(const Decimal& a, const Decimal& b, const Decimal& c) {
  if (c.is_zero()) throw Error(ErrorCode::kArithmetic, "division by zero");
  Decimal::Wide w = Decimal::Wide(a.raw()) * Decimal::Wide(b.raw());
  return narrow(w / Decimal::Wide(c.raw()));
}

}  // namespace stablecredit
