#ifndef POLICYGAME_GAME_HPP
#define POLICYGAME_GAME_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace policygame {

// Four players, each with a binary action. Canonical iteration order is
// Industrialist, Government, Activist, Citizen.
enum class Role : int { Industrialist = 0, Government = 1, Activist = 2, Citizen = 3 };

inline constexpr int kNumRoles = 4;
inline constexpr int kNumProfiles = 16;

inline constexpr std::array<Role, 4> kRoles = {Role::Industrialist, Role::Government,
                                               Role::Activist, Role::Citizen};

constexpr int role_index(Role r) { return static_cast<int>(r); }

inline constexpr std::array<std::string_view, 4> kRoleNames = {"Industrialist", "Government",
                                                               "Activist", "Citizen"};

constexpr std::string_view role_name(Role r) { return kRoleNames[role_index(r)]; }

inline std::optional<Role> parse_role(std::string_view s) {
  for (Role r : kRoles) {
    if (s == kRoleNames[role_index(r)]) return r;
  }
  return std::nullopt;
}

// kActionNames[role][index]; index 0 is the status-quo action, index 1 the
// pro-environmental one.
inline constexpr std::array<std::array<std::string_view, 2>, 4> kActionNames = {{
    {{"POLLUTE", "CLEAN"}},
    {{"NOREG", "REGULATE"}},
    {{"NOCAMPAIGN", "CAMPAIGN"}},
    {{"BUY_CHEAP", "SUPPORT_GREEN"}},
}};

// Compact forms used in rendered payoff tables.
inline constexpr std::array<std::array<std::string_view, 2>, 4> kActionShortNames = {{
    {{"POLLUTE", "CLEAN"}},
    {{"NO_REG", "REG"}},
    {{"NO_CAM", "CAM"}},
    {{"BUY_CHEAP", "SUPPORT_GREEN"}},
}};

class ActionId {
 public:
  constexpr ActionId(Role role, int index) : role_(role), index_(index) {
    if (index != 0 && index != 1) throw std::invalid_argument("action index must be 0 or 1");
  }

  constexpr Role role() const { return role_; }
  constexpr int index() const { return index_; }
  constexpr std::string_view name() const { return kActionNames[role_index(role_)][index_]; }
  constexpr std::string_view short_name() const {
    return kActionShortNames[role_index(role_)][index_];
  }

  friend constexpr bool operator==(ActionId a, ActionId b) {
    return a.role_ == b.role_ && a.index_ == b.index_;
  }
  friend constexpr bool operator!=(ActionId a, ActionId b) { return !(a == b); }

 private:
  Role role_;
  int index_;
};

// Accepts canonical names, the short table forms, and a few common spellings;
// matching is case-insensitive.
inline std::optional<ActionId> parse_action_name(Role role, std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (int i = 0; i < 2; ++i) {
    if (key == kActionNames[role_index(role)][i] || key == kActionShortNames[role_index(role)][i])
      return ActionId(role, i);
  }
  // underscore-less spellings seen in free-form replies
  static constexpr std::array<std::pair<std::string_view, std::pair<Role, int>>, 4> extras = {{
      {"NO_REGULATE", {Role::Government, 0}},
      {"NO_CAMPAIGN", {Role::Activist, 0}},
      {"BUYCHEAP", {Role::Citizen, 0}},
      {"SUPPORTGREEN", {Role::Citizen, 1}},
  }};
  for (const auto& [alias, ri] : extras) {
    if (key == alias && ri.first == role) return ActionId(role, ri.second);
  }
  return std::nullopt;
}

// One action per role, packed as 4 bits (bit r = action index of role r).
// The space of profiles therefore has cardinality 16.
class StrategyProfile {
 public:
  constexpr StrategyProfile() = default;

  static constexpr StrategyProfile from_index(int idx) {
    if (idx < 0 || idx >= kNumProfiles) throw std::invalid_argument("profile index out of range");
    StrategyProfile p;
    p.bits_ = static_cast<std::uint8_t>(idx);
    return p;
  }

  static constexpr StrategyProfile from_actions(int ind, int gov, int act, int cit) {
    return from_index((ind & 1) | ((gov & 1) << 1) | ((act & 1) << 2) | ((cit & 1) << 3));
  }

  constexpr int index() const { return bits_; }
  constexpr int action_index(Role r) const { return (bits_ >> role_index(r)) & 1; }
  constexpr ActionId action(Role r) const { return ActionId(r, action_index(r)); }

  constexpr StrategyProfile with_action(Role r, int idx) const {
    StrategyProfile p = *this;
    p.bits_ = static_cast<std::uint8_t>((bits_ & ~(1u << role_index(r))) |
                                        ((idx & 1u) << role_index(r)));
    return p;
  }
  constexpr StrategyProfile with_flipped(Role r) const {
    return with_action(r, 1 - action_index(r));
  }

  friend constexpr bool operator==(StrategyProfile a, StrategyProfile b) {
    return a.bits_ == b.bits_;
  }
  friend constexpr bool operator!=(StrategyProfile a, StrategyProfile b) { return !(a == b); }
  friend constexpr bool operator<(StrategyProfile a, StrategyProfile b) {
    return a.bits_ < b.bits_;
  }

 private:
  std::uint8_t bits_ = 0;
};

// Canonical profiles: coordinated pro-environmental play and full defection.
inline constexpr StrategyProfile kGreenProfile = StrategyProfile::from_actions(1, 1, 1, 1);
inline constexpr StrategyProfile kTragedyProfile = StrategyProfile::from_actions(0, 0, 0, 0);

// Real-valued utility for every (profile, role) pair.
class PayoffTable {
 public:
  PayoffTable() = default;

  double payoff(StrategyProfile p, Role r) const { return u_[p.index()][role_index(r)]; }
  const std::array<double, 4>& payoffs(StrategyProfile p) const { return u_[p.index()]; }

  void set_payoff(StrategyProfile p, Role r, double v) { u_[p.index()][role_index(r)] = v; }
  void set_payoffs(StrategyProfile p, const std::array<double, 4>& v) { u_[p.index()] = v; }

  bool all_finite() const {
    for (const auto& row : u_)
      for (double v : row)
        if (!std::isfinite(v)) return false;
    return true;
  }

  friend bool operator==(const PayoffTable& a, const PayoffTable& b) { return a.u_ == b.u_; }

 private:
  std::array<std::array<double, 4>, 16> u_{};
};

enum class OutcomeType { GreenTransition, TragedyOfCommons, Other };

inline std::string_view to_string(OutcomeType t) {
  switch (t) {
    case OutcomeType::GreenTransition: return "GreenTransition";
    case OutcomeType::TragedyOfCommons: return "TragedyOfCommons";
    case OutcomeType::Other: return "Other";
  }
  return "Other";
}

enum class DominanceClass { GreenDominant, TragedyDominant, BothCanonical, NeitherCanonical };

inline std::string_view to_string(DominanceClass d) {
  switch (d) {
    case DominanceClass::GreenDominant: return "GreenDominant";
    case DominanceClass::TragedyDominant: return "TragedyDominant";
    case DominanceClass::BothCanonical: return "BothCanonical";
    case DominanceClass::NeitherCanonical: return "NeitherCanonical";
  }
  return "NeitherCanonical";
}

inline std::optional<DominanceClass> parse_dominance(std::string_view s) {
  for (DominanceClass d : {DominanceClass::GreenDominant, DominanceClass::TragedyDominant,
                           DominanceClass::BothCanonical, DominanceClass::NeitherCanonical}) {
    if (s == to_string(d)) return d;
  }
  return std::nullopt;
}

// Argmax of the role's two actions with the other three actions fixed.
// `others` supplies those actions; its entry for `role` is ignored.
// Comparison is exact; on a tie both actions are returned, index 0 first.
inline std::vector<ActionId> best_response(const PayoffTable& table, Role role,
                                           StrategyProfile others) {
  const double u0 = table.payoff(others.with_action(role, 0), role);
  const double u1 = table.payoff(others.with_action(role, 1), role);
  std::vector<ActionId> out;
  if (u0 >= u1) out.push_back(ActionId(role, 0));
  if (u1 >= u0) out.push_back(ActionId(role, 1));
  return out;
}

inline std::vector<ActionId> best_response(const PayoffTable& table, Role role,
                                           const std::array<ActionId, 3>& others) {
  StrategyProfile p;
  std::uint8_t seen = 0;
  for (ActionId a : others) {
    if (a.role() == role) throw std::invalid_argument("others must not include the deciding role");
    if (seen & (1u << role_index(a.role())))
      throw std::invalid_argument("duplicate role in others");
    seen |= static_cast<std::uint8_t>(1u << role_index(a.role()));
    p = p.with_action(a.role(), a.index());
  }
  return best_response(table, role, p);
}

// Stability under unilateral deviations, with weak inequality: a profile is an
// equilibrium when no single role strictly gains by switching its own action.
inline bool is_nash(const PayoffTable& table, StrategyProfile profile) {
  for (Role r : kRoles) {
    if (table.payoff(profile.with_flipped(r), r) > table.payoff(profile, r)) return false;
  }
  return true;
}

inline std::vector<StrategyProfile> enumerate_nash(const PayoffTable& table) {
  std::vector<StrategyProfile> out;
  for (int i = 0; i < kNumProfiles; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    if (is_nash(table, p)) out.push_back(p);
  }
  return out;
}

inline OutcomeType classify_outcome(StrategyProfile profile) {
  if (profile == kGreenProfile) return OutcomeType::GreenTransition;
  if (profile == kTragedyProfile) return OutcomeType::TragedyOfCommons;
  return OutcomeType::Other;
}

inline DominanceClass classify_dominance(const PayoffTable& table) {
  const bool green = is_nash(table, kGreenProfile);
  const bool tragedy = is_nash(table, kTragedyProfile);
  if (green && !tragedy) return DominanceClass::GreenDominant;
  if (tragedy && !green) return DominanceClass::TragedyDominant;
  if (green && tragedy) return DominanceClass::BothCanonical;
  return DominanceClass::NeitherCanonical;
}

}  // namespace policygame

#endif  // POLICYGAME_GAME_HPP
