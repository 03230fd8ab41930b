#include "stablecredit/risk_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "stablecredit/error.hpp"

namespace stablecredit::risk {

namespace {

// rows: likelihood A..C, columns: consequence 1..3
constexpr std::array<std::array<Tier, 3>, 3> kGrid{{
    {Tier::kBlue, Tier::kGreen, Tier::kYellow},
    {Tier::kGreen, Tier::kYellow, Tier::kOrange},
    {Tier::kYellow, Tier::kOrange, Tier::kRed},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

char likelihood_letter(Likelihood l) { return static_cast<char>('A' + static_cast<int>(l)); }

int consequence_digit(Consequence c) { return static_cast<int>(c) + 1; }

std::string_view tier_name(Tier t) {
  switch (t) {
    case Tier::kBlue: return "Blue";
    case Tier::kGreen: return "Green";
    case Tier::kYellow: return "Yellow";
    case Tier::kOrange: return "Orange";
    case Tier::kRed: return "Red";
  }
  return "?";
}

Likelihood parse_likelihood(std::string_view text) {
  auto t = lower(text);
  if (t == "a" || t == "low") return Likelihood::kLow;
  if (t == "b" || t == "medium") return Likelihood::kMedium;
  if (t == "c" || t == "high") return Likelihood::kHigh;
  throw Error(ErrorCode::kRange, "unknown likelihood '" + std::string(text) + "'");
}

Consequence parse_consequence(std::string_view text) {
  auto t = lower(text);
  if (t == "1" || t == "low") return Consequence::kLow;
  if (t == "2" || t == "medium") return Consequence::kMedium;
  if (t == "3" || t == "high") return Consequence::kHigh;
  throw Error(ErrorCode::kRange, "unknown consequence '" + std::string(text) + "'");
}

RiskCell score(Likelihood l, Consequence c) {
  std::string code;
  code += likelihood_letter(l);
  code += static_cast<char>('0' + consequence_digit(c));
  return RiskCell{std::move(code), kGrid[static_cast<int>(l)][static_cast<int>(c)]};
}

void validate(const RiskRegisterEntry& entry) {
  if (entry.mitigated.likelihood > entry.unmitigated.likelihood ||
      entry.mitigated.consequence > entry.unmitigated.consequence) {
    throw Error(ErrorCode::kInvalidEntry,
                "risk '" + entry.name + "': mitigated rating exceeds unmitigated rating");
  }
}

std::pair<RiskCell, RiskCell> apply_mitigations(const RiskRegisterEntry& entry) {
  validate(entry);
  return {score(entry.unmitigated), score(entry.mitigated)};
}

std::vector<RiskRegisterEntry> default_register() {
  using L = Likelihood;
  using C = Consequence;
  return {
      {"Liquidation Risk",
       {L::kHigh, C::kMedium},
       {"System Health Monitoring"},
       {"Liquidation/Redistribution Infrastructure"},
       {L::kLow, C::kMedium}},
      {"Operations Risk",
       {L::kMedium, C::kHigh},
       {"Multisignature Safe", "Timelock"},
       {"Immutable", "Permissionless"},
       {L::kLow, C::kMedium}},
      {"Cost of Borrowing Risk",
       {L::kHigh, C::kMedium},
       {"Excessive Rates", "Credit Limit"},
       {"Active Monitoring Infrastructure", "Endogenous Yield"},
       {L::kMedium, C::kMedium}},
      {"Unbacked Circulation Risk",
       {L::kMedium, C::kHigh},
       {"Credit Limit"},
       {"Active Monitoring Infrastructure", "Endogenous Yield"},
       {L::kLow, C::kHigh}},
  };
}

}  // namespace stablecredit::risk
