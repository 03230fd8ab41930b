#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace stablecredit::rng {

/// Algorithm id written into scenario files and reports.
inline constexpr std::string_view kPhiloxId = "philox4x64-10";

using Counter = std::array<std::uint64_t, 4>;
using Key = std::array<std::uint64_t, 2>;

/// Philox4x64 with 10 rounds (Salmon et al., Random123). Pure function of
/// (counter, key).
Counter philox4x64_10(Counter ctr, Key key);

/// Independent draw channels within one simulation path.
enum class Channel : std::uint64_t { kPrice = 0, kDemand = 1, kPnl = 2 };

/// Sequential reader over one substream.
///
/// Substream derivation: key = {master_seed, 0}; block i of the stream for
/// (path, channel) is philox4x64_10({i, channel, path, 0}, key), and its four
/// words are consumed in order. Any Philox4x64-10 implementation reproduces
/// the same draws from (seed, path, channel).
class Stream {
 public:
  Stream(std::uint64_t master_seed, std::uint64_t path, Channel channel)
      : key_{master_seed, 0}, path_(path), channel_(static_cast<std::uint64_t>(channel)) {}

  std::uint64_t next_u64();
  /// (x >> 11) * 2^-53, in [0, 1).
  double uniform();
  /// ((x >> 11) + 1) * 2^-53, in (0, 1].
  double uniform_open0();
  bool bernoulli(double p) { return uniform() < p; }
  /// Box-Muller, cosine branch only; consumes two words per draw.
  double gaussian(double mean, double stddev);

 private:
  Key key_;
  std::uint64_t path_;
  std::uint64_t channel_;
  std::uint64_t block_ = 0;
  Counter buffer_{};
  int used_ = 4;
};

}  // namespace stablecredit::rng
