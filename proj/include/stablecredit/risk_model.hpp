#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stablecredit::risk {

enum class Likelihood { kLow = 0, kMedium = 1, kHigh = 2 };     // A, B, C
enum class Consequence { kLow = 0, kMedium = 1, kHigh = 2 };    // 1, 2, 3

enum class Tier { kBlue, kGreen, kYellow, kOrange, kRed };

char likelihood_letter(Likelihood l);
int consequence_digit(Consequence c);
std::string_view tier_name(Tier t);

/// Accepts "A"/"B"/"C" or "Low"/"Medium"/"High" (case-insensitive).
Likelihood parse_likelihood(std::string_view text);
/// Accepts "1"/"2"/"3" or "Low"/"Medium"/"High" (case-insensitive).
Consequence parse_consequence(std::string_view text);

struct Rating {
  Likelihood likelihood;
  Consequence consequence;

  bool operator==(const Rating&) const = default;
};

struct RiskCell {
  std::string code;  // e.g. "C2"
  Tier tier;

  bool operator==(const RiskCell&) const = default;
};

struct RiskRegisterEntry {
  std::string name;
  Rating unmitigated;
  std::vector<std::string> interim_mitigations;
  std::vector<std::string> enduring_mitigations;
  Rating mitigated;

  bool operator==(const RiskRegisterEntry&) const = default;
};

RiskCell score(Likelihood l, Consequence c);
inline RiskCell score(const Rating& r) { return score(r.likelihood, r.consequence); }

/// Throws Error(kInvalidEntry) when the mitigated rating is worse than the
/// unmitigated one on either axis.
void validate(const RiskRegisterEntry& entry);

/// (unmitigated cell, mitigated cell)
std::pair<RiskCell, RiskCell> apply_mitigations(const RiskRegisterEntry& entry);

/// The four built-in credit-issuance risks.
std::vector<RiskRegisterEntry> default_register();

}  // namespace stablecredit::risk
