#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "policygame/game.hpp"
#include "policygame/scenario.hpp"
#include "support/oracles.hpp"

using namespace policygame;

namespace {

std::set<int> as_index_set(const std::vector<ActionId>& v) {
  std::set<int> out;
  for (ActionId a : v) out.insert(a.index());
  return out;
}

std::set<int> as_index_set(const std::vector<StrategyProfile>& v) {
  std::set<int> out;
  for (StrategyProfile p : v) out.insert(p.index());
  return out;
}

}  // namespace

TEST_CASE("canonical roles, actions and profiles") {
  REQUIRE(kRoles[0] == Role::Industrialist);
  REQUIRE(kRoles[1] == Role::Government);
  REQUIRE(kRoles[2] == Role::Activist);
  REQUIRE(kRoles[3] == Role::Citizen);

  REQUIRE(ActionId(Role::Industrialist, 0).name() == "POLLUTE");
  REQUIRE(ActionId(Role::Industrialist, 1).name() == "CLEAN");
  REQUIRE(ActionId(Role::Government, 0).name() == "NOREG");
  REQUIRE(ActionId(Role::Government, 1).name() == "REGULATE");
  REQUIRE(ActionId(Role::Activist, 0).name() == "NOCAMPAIGN");
  REQUIRE(ActionId(Role::Activist, 1).name() == "CAMPAIGN");
  REQUIRE(ActionId(Role::Citizen, 0).name() == "BUY_CHEAP");
  REQUIRE(ActionId(Role::Citizen, 1).name() == "SUPPORT_GREEN");

  REQUIRE(kGreenProfile.index() == 15);
  REQUIRE(kTragedyProfile.index() == 0);
  for (Role r : kRoles) {
    REQUIRE(kGreenProfile.action_index(r) == 1);
    REQUIRE(kTragedyProfile.action_index(r) == 0);
  }
}

TEST_CASE("action name parsing accepts aliases case-insensitively") {
  REQUIRE(parse_action_name(Role::Government, "NO_REG")->index() == 0);
  REQUIRE(parse_action_name(Role::Government, "noreg")->index() == 0);
  REQUIRE(parse_action_name(Role::Government, "REG")->index() == 1);
  REQUIRE(parse_action_name(Role::Government, "regulate")->index() == 1);
  REQUIRE(parse_action_name(Role::Activist, "cam")->index() == 1);
  REQUIRE(parse_action_name(Role::Activist, "NO_CAM")->index() == 0);
  REQUIRE(parse_action_name(Role::Activist, "no_campaign")->index() == 0);
  REQUIRE(parse_action_name(Role::Citizen, "support_green")->index() == 1);
  REQUIRE_FALSE(parse_action_name(Role::Citizen, "ABSTAIN").has_value());
  REQUIRE_FALSE(parse_action_name(Role::Industrialist, "REG").has_value());
}

TEST_CASE("best response on the debt_crisis table") {
  const PayoffTable& t = debt_crisis_scenario().table;

  // all others at their pro-environment action
  auto br = best_response(t, Role::Industrialist, kGreenProfile);
  REQUIRE(br.size() == 1);
  REQUIRE(br[0].name() == "POLLUTE");
  REQUIRE(t.payoff(kGreenProfile.with_action(Role::Industrialist, 0), Role::Industrialist) ==
          9.5);
  REQUIRE(t.payoff(kGreenProfile, Role::Industrialist) == 3.0);

  // explicit three-action overload
  auto br2 = best_response(t, Role::Industrialist,
                           std::array<ActionId, 3>{ActionId(Role::Government, 1),
                                                   ActionId(Role::Activist, 1),
                                                   ActionId(Role::Citizen, 1)});
  REQUIRE(as_index_set(br2) == std::set<int>{0});

  REQUIRE_THROWS_AS(best_response(t, Role::Industrialist,
                                  std::array<ActionId, 3>{ActionId(Role::Government, 1),
                                                          ActionId(Role::Government, 0),
                                                          ActionId(Role::Citizen, 1)}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(best_response(t, Role::Government,
                                  std::array<ActionId, 3>{ActionId(Role::Government, 1),
                                                          ActionId(Role::Activist, 0),
                                                          ActionId(Role::Citizen, 1)}),
                    std::invalid_argument);
}

TEST_CASE("best response ties return both actions") {
  PayoffTable zeros;
  for (int i = 0; i < kNumProfiles; ++i) {
    for (Role r : kRoles) {
      auto br = best_response(zeros, r, StrategyProfile::from_index(i));
      REQUIRE(as_index_set(br) == std::set<int>{0, 1});
      REQUIRE(br[0].index() == 0);  // index order, lexicographically-first first
    }
  }
}

TEST_CASE("best response agrees with direct-comparison oracle on seeded tables") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    PayoffTable t = pgtest::random_table(rng);
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile ctx = StrategyProfile::from_index(i);
      for (Role r : kRoles) {
        REQUIRE(as_index_set(best_response(t, r, ctx)) == pgtest::oracle_best_response(t, r, ctx));
      }
    }
  }
}

TEST_CASE("weak inequality: the all-zero table makes every profile an equilibrium") {
  PayoffTable zeros;
  for (int i = 0; i < kNumProfiles; ++i) REQUIRE(is_nash(zeros, StrategyProfile::from_index(i)));
  REQUIRE(enumerate_nash(zeros).size() == 16);
  REQUIRE(classify_dominance(zeros) == DominanceClass::BothCanonical);
}

TEST_CASE("debt_crisis: no profile with a clean industrialist is stable") {
  const PayoffTable& t = debt_crisis_scenario().table;
  for (int i = 0; i < kNumProfiles; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    if (p.action_index(Role::Industrialist) == 1) REQUIRE_FALSE(is_nash(t, p));
  }
  REQUIRE(is_nash(t, kTragedyProfile));
  REQUIRE(classify_dominance(t) == DominanceClass::TragedyDominant);
}

TEST_CASE("nash check agrees with deviation-enumeration oracle over 1000 seeded tables",
          "[oracle]") {
  std::mt19937_64 rng(20240917);
  for (int iter = 0; iter < 1000; ++iter) {
    PayoffTable t = pgtest::random_table(rng);
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile p = StrategyProfile::from_index(i);
      REQUIRE(is_nash(t, p) == pgtest::oracle_is_nash(t, p));
    }
    REQUIRE(as_index_set(enumerate_nash(t)) == pgtest::oracle_nash_set(t));
  }
}

TEST_CASE("outcome classification partitions the 16 profiles") {
  int green = 0, tragedy = 0, other = 0;
  for (int i = 0; i < kNumProfiles; ++i) {
    switch (classify_outcome(StrategyProfile::from_index(i))) {
      case OutcomeType::GreenTransition: ++green; break;
      case OutcomeType::TragedyOfCommons: ++tragedy; break;
      case OutcomeType::Other: ++other; break;
    }
  }
  REQUIRE(green == 1);
  REQUIRE(tragedy == 1);
  REQUIRE(other == 14);
  REQUIRE(classify_outcome(kGreenProfile) == OutcomeType::GreenTransition);
  REQUIRE(classify_outcome(kTragedyProfile) == OutcomeType::TragedyOfCommons);
  REQUIRE(classify_outcome(StrategyProfile::from_actions(1, 0, 1, 0)) == OutcomeType::Other);
}

TEST_CASE("strictly dominant actions give a singleton equilibrium set") {
  // payoff = 1 if the role plays action 1, else 0, regardless of the others
  PayoffTable t;
  for (int i = 0; i < kNumProfiles; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    for (Role r : kRoles) t.set_payoff(p, r, p.action_index(r) == 1 ? 1.0 : 0.0);
  }
  auto ne = enumerate_nash(t);
  REQUIRE(ne.size() == 1);
  REQUIRE(ne[0] == kGreenProfile);
  REQUIRE(classify_dominance(t) == DominanceClass::GreenDominant);
}

TEST_CASE("classify_dominance matches construction targets") {
  for (std::uint64_t seed : {7ull, 8ull, 9ull, 100ull}) {
    Scenario g = generate_scenario(DominanceClass::GreenDominant, seed);
    REQUIRE(is_nash(g.table, kGreenProfile));
    REQUIRE_FALSE(is_nash(g.table, kTragedyProfile));
    REQUIRE(classify_dominance(g.table) == DominanceClass::GreenDominant);

    Scenario tr = generate_scenario(DominanceClass::TragedyDominant, seed);
    REQUIRE(is_nash(tr.table, kTragedyProfile));
    REQUIRE_FALSE(is_nash(tr.table, kGreenProfile));
    REQUIRE(classify_dominance(tr.table) == DominanceClass::TragedyDominant);
  }
}

TEST_CASE("positive affine transforms preserve all equilibrium structure") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> alpha(0.1, 4.0);
  std::uniform_real_distribution<double> beta(-20.0, 20.0);
  for (int iter = 0; iter < 200; ++iter) {
    PayoffTable t = pgtest::random_table(rng);
    double a[4], b[4];
    for (int r = 0; r < 4; ++r) {
      a[r] = alpha(rng);
      b[r] = beta(rng);
    }
    PayoffTable t2;
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile p = StrategyProfile::from_index(i);
      for (Role r : kRoles)
        t2.set_payoff(p, r, a[role_index(r)] * t.payoff(p, r) + b[role_index(r)]);
    }
    REQUIRE(as_index_set(enumerate_nash(t)) == as_index_set(enumerate_nash(t2)));
    REQUIRE(classify_dominance(t) == classify_dominance(t2));
    for (Role r : kRoles) {
      StrategyProfile ctx = StrategyProfile::from_index(static_cast<int>(rng() % 16));
      REQUIRE(as_index_set(best_response(t, r, ctx)) == as_index_set(best_response(t2, r, ctx)));
    }
  }
}

TEST_CASE("definitional consistency between is_nash and best_response") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 200; ++iter) {
    PayoffTable t = pgtest::random_table(rng);
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile p = StrategyProfile::from_index(i);
      bool all_br = true;
      for (Role r : kRoles) {
        auto br = as_index_set(best_response(t, r, p));
        if (br.count(p.action_index(r)) == 0) all_br = false;
      }
      REQUIRE(is_nash(t, p) == all_br);
    }
  }
}
