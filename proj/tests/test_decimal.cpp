#include <doctest.h>

#include <string>

#include <stdexcept>

#include "stablecredit/decimal.hpp"
#include "stablecredit/error.hpp"

using namespace stablecredit;
using namespace stablecredit::literals;

TEST_CASE("parse and canonical formatting") {
  CHECK(Decimal::parse("1000000").to_string() == "1000000");
  CHECK(Decimal::parse("0.10").to_string() == "0.1");
  CHECK(Decimal::parse("-2.500").to_string() == "-2.5");
  CHECK(Decimal::parse("+3").to_string() == "3");
  CHECK(Decimal::parse("1e26").to_string() == "100000000000000000000000000");
  CHECK(Decimal::parse("2.5e-3").to_string() == "0.0025");
  CHECK(Decimal::parse("0.000000000000000001") == Decimal::epsilon());
  CHECK(Decimal::parse("-0").to_string() == "0");
}

TEST_CASE("strict parse rejects malformed text") {
  for (const char* bad : {"", "-", "1.", ".5", "1.2.3", "abc", "1e", "1 000", "0x10",
                          "0.0000000000000000001", "1e-19"}) {
    std::string text = bad;
    CAPTURE(text);
    try {
      (void)Decimal::parse(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
    }
  }
}

TEST_CASE("arithmetic truncates toward zero") {
  CHECK((1_dec / 3_dec).to_string() == "0.333333333333333333");
  CHECK((-1_dec / 3_dec).to_string() == "-0.333333333333333333");
  CHECK((2_dec / 3_dec).to_string() == "0.666666666666666666");
  CHECK((0.000000000000000001_dec * 0.5_dec).is_zero());
  CHECK(mul_div(1_dec, 2_dec, 3_dec).to_string() == "0.666666666666666666");
  CHECK(mul_div(1000000_dec, 400000_dec, 1000000_dec) == 400000_dec);
  CHECK(0.15_dec * 0.4_dec / 0.6_dec == 0.1_dec);
}

TEST_CASE("ordering and helpers") {
  CHECK(1_dec < 2_dec);
  CHECK(-1_dec < 0_dec);
  CHECK(max(1_dec, 2_dec) == 2_dec);
  CHECK(min(1_dec, 2_dec) == 1_dec);
  CHECK(abs(-3.5_dec) == 3.5_dec);
  CHECK(Decimal::one() == 1_dec);
  CHECK(Decimal::from_int(-7) == -7_dec);
}

TEST_CASE("division by zero and overflow") {
  CHECK_THROWS_AS((void)(1_dec / 0_dec), Error);
  Decimal big = Decimal::parse("1e57");
  CHECK_THROWS_AS((void)(big * big), std::overflow_error);
}

TEST_CASE("fixed rendering rounds half away from zero") {
  CHECK(Decimal::parse("398132.5").to_string_fixed(0) == "398133");
  CHECK(Decimal::parse("398132.4999").to_string_fixed(0) == "398132");
  CHECK(Decimal::parse("-1.25").to_string_fixed(1) == "-1.3");
  CHECK(Decimal::parse("6666666.666666666666666667").to_string_fixed(2) == "6666666.67");
  CHECK(Decimal::parse("2").to_string_fixed(3) == "2.000");
}

TEST_CASE("from_double uses the shortest round-trip digits") {
  CHECK(Decimal::from_double(0.1) == 0.1_dec);
  CHECK(Decimal::from_double(-2.75) == -2.75_dec);
  CHECK(Decimal::from_double(1e-20).is_zero());
  CHECK(Decimal::parse("0.123").to_double() == doctest::Approx(0.123));
}
