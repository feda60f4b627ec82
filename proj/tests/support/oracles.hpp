#ifndef POLICYGAME_TESTS_ORACLES_HPP
#define POLICYGAME_TESTS_ORACLES_HPP

// Independent reference implementations used to cross-check the library.
// These deliberately take different code paths from the headers under test.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "policygame/game.hpp"

namespace pgtest {

using namespace policygame;

inline PayoffTable random_table(std::mt19937_64& rng, double lo = -10.0, double hi = 10.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  PayoffTable t;
  for (int i = 0; i < kNumProfiles; ++i)
    for (Role r : kRoles) t.set_payoff(StrategyProfile::from_index(i), r, dist(rng));
  return t;
}

// Best response by direct comparison of the two payoff entries.
inline std::set<int> oracle_best_response(const PayoffTable& t, Role role,
                                          StrategyProfile others) {
  double u[2];
  for (int a = 0; a < 2; ++a) u[a] = t.payoff(others.with_action(role, a), role);
  std::set<int> out;
  double best = std::max(u[0], u[1]);
  for (int a = 0; a < 2; ++a)
    if (u[a] == best) out.insert(a);
  return out;
}

// Nash check by scanning all 16 profiles for each role's achievable payoffs,
// iterating roles in reverse order.
inline bool oracle_is_nash(const PayoffTable& t, StrategyProfile p) {
  for (int k = kNumRoles - 1; k >= 0; --k) {
    Role role = kRoles[k];
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile q = StrategyProfile::from_index(i);
      bool same_others = true;
      for (Role o : kRoles)
        if (o != role && q.action_index(o) != p.action_index(o)) same_others = false;
      if (same_others) best = std::max(best, t.payoff(q, role));
    }
    if (t.payoff(p, role) < best) return false;
  }
  return true;
}

inline std::set<int> oracle_nash_set(const PayoffTable& t) {
  std::set<int> out;
  for (int i = 0; i < kNumProfiles; ++i)
    if (oracle_is_nash(t, StrategyProfile::from_index(i))) out.insert(i);
  return out;
}

}  // namespace pgtest

#endif  // POLICYGAME_TESTS_ORACLES_HPP
