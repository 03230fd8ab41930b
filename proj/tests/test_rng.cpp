#include <doctest.h>

#include <cmath>
#include <set>

#include "stablecredit/rng.hpp"

using namespace stablecredit::rng;

TEST_CASE("Philox4x64-10 known answers") {
  CHECK(philox4x64_10({0, 0, 0, 0}, {0, 0}) ==
        Counter{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                0x7e68b68aec7ba23bULL});
  CHECK(philox4x64_10({6, 0, 7, 0}, {42, 9}) ==
        Counter{0x2588f919e79fa093ULL, 0x432c8d1b313a81f1ULL, 0x254840e3688eaa6bULL,
                0xf611f59f20914e17ULL});
  CHECK(philox4x64_10({7, 0, 7, 0}, {42, 9}) ==
        Counter{0x648a329e35b3e744ULL, 0xf94a1a533e1fa53fULL, 0xf5bab5691cdf3cd2ULL,
                0x6254c8df6fd7b143ULL});
}

TEST_CASE("stream layout: key {seed, 0}, counter {block, channel, path, 0}") {
  Stream s(42, 7, Channel::kPnl);
  // independent reference: key {42, 0}, counters {0, 2, 7, 0} and {1, 2, 7, 0}
  const std::uint64_t expected[] = {0x9310d5a31b52e099ULL, 0x041b8f7a2edbd2eaULL,
                                    0x777ea3255cb7d3ccULL, 0x71e05634fcf94cbeULL,
                                    0xbc6166365ffc6ab9ULL, 0xef1a3f76b7a57e30ULL,
                                    0x6c7a0040497aab3eULL, 0x567bac2f19a62790ULL};
  for (auto e : expected) CHECK(s.next_u64() == e);
}

TEST_CASE("uniform conversion") {
  Stream a(42, 7, Channel::kPnl);
  CHECK(a.uniform() == static_cast<double>(0x9310d5a31b52e099ULL >> 11) / 9007199254740992.0);
  Stream b(1, 0, Channel::kPrice);
  for (int i = 0; i < 10000; ++i) {
    double u = b.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    double v = b.uniform_open0();
    CHECK((v > 0.0 && v <= 1.0));
  }
}

TEST_CASE("streams are independent of one another and reproducible") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t path = 0; path < 50; ++path) {
    for (auto ch : {Channel::kPrice, Channel::kDemand, Channel::kPnl}) {
      Stream s(99, path, ch);
      firsts.insert(s.next_u64());
      Stream again(99, path, ch);
      Stream s2(99, path, ch);
      CHECK(again.next_u64() == s2.next_u64());
    }
  }
  CHECK(firsts.size() == 150);
}

TEST_CASE("gaussian moments") {
  Stream s(5, 0, Channel::kPnl);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    double z = s.gaussian(0.0, 1.0);
    sum += z;
    sq += z * z;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bernoulli frequency") {
  Stream s(8, 3, Channel::kDemand);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += s.bernoulli(0.3);
  CHECK(static_cast<double>(hits) / n == doctest::Approx(0.3).epsilon(0.02));
}
