#ifndef POLICYGAME_SCENARIO_HPP
#define POLICYGAME_SCENARIO_HPP

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "policygame/game.hpp"
#include "policygame/seeding.hpp"

namespace policygame {

enum class Family { Economic, Environmental };

inline std::string_view to_string(Family f) {
  return f == Family::Economic ? "economic" : "environmental";
}

inline std::optional<Family> parse_family(std::string_view s) {
  if (s == "economic") return Family::Economic;
  if (s == "environmental") return Family::Environmental;
  return std::nullopt;
}

// Economic scenarios must come out TragedyDominant, environmental ones
// GreenDominant; loading rejects bundles that break this pairing.
constexpr DominanceClass expected_dominance(Family f) {
  return f == Family::Economic ? DominanceClass::TragedyDominant : DominanceClass::GreenDominant;
}

struct Scenario {
  std::string id;
  Family family = Family::Environmental;
  std::string subtype;
  std::string narrative;
  PayoffTable table;
  DominanceClass dominance = DominanceClass::NeitherCanonical;  // always recomputed
};

struct ScenarioBundle {
  std::string name;
  std::vector<Scenario> scenarios;

  const Scenario* find(std::string_view id) const {
    for (const auto& s : scenarios)
      if (s.id == id) return &s;
    return nullptr;
  }
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Code {
    MalformedFile,
    IncompleteTable,
    DominanceMismatch,
    DuplicateId,
    GenerationFailed,
  };

  ScenarioError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Shortest decimal form that round-trips, padded to at least one fractional
// digit ("15" -> "15.0").
inline std::string format_payoff(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

enum class RenderMode { OwnPayoff, FullTuple };

namespace detail {

// Row order: group by the viewpoint player's action (index 0 group first),
// then the viewpoint payoff descending, then profile index descending.
inline std::vector<StrategyProfile> render_order(const PayoffTable& table, Role viewpoint) {
  std::vector<StrategyProfile> rows;
  rows.reserve(kNumProfiles);
  for (int group = 0; group < 2; ++group) {
    std::vector<StrategyProfile> part;
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile p = StrategyProfile::from_index(i);
      if (p.action_index(viewpoint) == group) part.push_back(p);
    }
    std::sort(part.begin(), part.end(), [&](StrategyProfile a, StrategyProfile b) {
      double ua = table.payoff(a, viewpoint), ub = table.payoff(b, viewpoint);
      if (ua != ub) return ua > ub;
      return a.index() > b.index();
    });
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

inline void append_padded(std::string& out, std::string_view cell, std::size_t width) {
  out += cell;
  for (std::size_t i = cell.size(); i < width; ++i) out += ' ';
}

}  // namespace detail

// Text form of a payoff table as shown to agents. OwnPayoff lists only the
// viewpoint player's payoff per profile; FullTuple lists all four.
inline std::string render_payoff_text(const PayoffTable& table, Role viewpoint,
                                      RenderMode mode = RenderMode::OwnPayoff) {
  static constexpr std::array<std::size_t, 4> kWidths = {15, 12, 12, 15};
  std::string out;
  for (Role r : kRoles) detail::append_padded(out, role_name(r), kWidths[role_index(r)]);
  out += "Payoff\n";
  for (StrategyProfile p : detail::render_order(table, viewpoint)) {
    for (Role r : kRoles)
      detail::append_padded(out, p.action(r).short_name(), kWidths[role_index(r)]);
    if (mode == RenderMode::OwnPayoff) {
      out += format_payoff(table.payoff(p, viewpoint));
    } else {
      out += '(';
      for (Role r : kRoles) {
        if (r != Role::Industrialist) out += ", ";
        out += format_payoff(table.payoff(p, r));
      }
      out += ')';
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline nlohmann::ordered_json scenario_to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["family"] = std::string(to_string(s.family));
  j["subtype"] = s.subtype;
  j["narrative"] = s.narrative;
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < kNumProfiles; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    nlohmann::ordered_json row;
    auto names = nlohmann::ordered_json::array();
    for (Role r : kRoles) names.push_back(std::string(p.action(r).name()));
    row["profile"] = names;
    row["values"] = s.table.payoffs(p);
    rows.push_back(row);
  }
  j["payoffs"] = rows;
  return j;
}

}  // namespace detail

inline std::string serialize_bundle(const ScenarioBundle& bundle) {
  nlohmann::ordered_json j;
  j["name"] = bundle.name;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : bundle.scenarios) arr.push_back(detail::scenario_to_json(s));
  j["scenarios"] = arr;
  return j.dump(2) + "\n";
}

// Parses and validates a bundle document. Dominance classes are recomputed
// from the payoffs, never trusted from the file. Near-tie payoffs (same
// player, gap below 1e-9 but nonzero) produce warnings, since Nash checks
// compare exactly.
inline ScenarioBundle load_bundle(std::string_view text,
                                  std::vector<std::string>* warnings = nullptr) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw ScenarioError(ScenarioError::Code::MalformedFile, "bundle is not a JSON object");
  if (!doc.contains("scenarios") || !doc["scenarios"].is_array())
    throw ScenarioError(ScenarioError::Code::MalformedFile, "bundle has no scenarios array");

  ScenarioBundle bundle;
  bundle.name = doc.value("name", "");

  for (const auto& js : doc["scenarios"]) {
    if (!js.is_object())
      throw ScenarioError(ScenarioError::Code::MalformedFile, "scenario entry is not an object");
    Scenario s;
    try {
      s.id = js.at("id").get<std::string>();
      s.subtype = js.value("subtype", "");
      s.narrative = js.value("narrative", "");
      auto fam = parse_family(js.at("family").get<std::string>());
      if (!fam)
        throw ScenarioError(ScenarioError::Code::MalformedFile,
                            s.id + ": family must be economic or environmental");
      s.family = *fam;
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError(ScenarioError::Code::MalformedFile,
                          std::string("bad scenario fields: ") + e.what());
    }

    if (bundle.find(s.id) != nullptr)
      throw ScenarioError(ScenarioError::Code::DuplicateId, "duplicate scenario id: " + s.id);

    if (!js.contains("payoffs") || !js["payoffs"].is_array())
      throw ScenarioError(ScenarioError::Code::IncompleteTable, s.id + ": missing payoffs array");
    const auto& rows = js["payoffs"];
    std::array<bool, kNumProfiles> seen{};
    int n_rows = 0;
    for (const auto& row : rows) {
      StrategyProfile p;
      try {
        const auto& names = row.at("profile");
        if (!names.is_array() || names.size() != kNumRoles)
          throw ScenarioError(ScenarioError::Code::IncompleteTable,
                              s.id + ": profile must list four actions");
        for (Role r : kRoles) {
          auto a = parse_action_name(r, names[role_index(r)].get<std::string>());
          if (!a)
            throw ScenarioError(ScenarioError::Code::IncompleteTable,
                                s.id + ": unknown action name for " +
                                    std::string(role_name(r)) + ": " +
                                    names[role_index(r)].get<std::string>());
          p = p.with_action(r, a->index());
        }
        const auto& values = row.at("values");
        if (!values.is_array() || values.size() != kNumRoles)
          throw ScenarioError(ScenarioError::Code::IncompleteTable,
                              s.id + ": each entry needs four payoffs");
        std::array<double, 4> v{};
        for (int k = 0; k < kNumRoles; ++k) v[k] = values[k].get<double>();
        s.table.set_payoffs(p, v);
      } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(ScenarioError::Code::IncompleteTable,
                            s.id + ": bad payoff row: " + e.what());
      }
      if (seen[p.index()])
        throw ScenarioError(ScenarioError::Code::IncompleteTable,
                            s.id + ": duplicate payoff row");
      seen[p.index()] = true;
      ++n_rows;
    }
    if (n_rows != kNumProfiles)
      throw ScenarioError(ScenarioError::Code::IncompleteTable,
                          s.id + ": expected 16 payoff rows, got " + std::to_string(n_rows));
    if (!s.table.all_finite())
      throw ScenarioError(ScenarioError::Code::IncompleteTable, s.id + ": non-finite payoff");

    s.dominance = classify_dominance(s.table);
    if (s.dominance != expected_dominance(s.family))
      throw ScenarioError(ScenarioError::Code::DominanceMismatch,
                          s.id + ": family " + std::string(to_string(s.family)) +
                              " but computed dominance is " +
                              std::string(to_string(s.dominance)));

    if (warnings != nullptr) {
      for (Role r : kRoles) {
        std::array<double, kNumProfiles> vals{};
        for (int i = 0; i < kNumProfiles; ++i)
          vals[i] = s.table.payoff(StrategyProfile::from_index(i), r);
        std::sort(vals.begin(), vals.end());
        for (int i = 1; i < kNumProfiles; ++i) {
          double gap = vals[i] - vals[i - 1];
          if (gap > 0 && gap < 1e-9) {
            warnings->push_back(s.id + ": near-tie payoffs for " + std::string(role_name(r)) +
                                " (gap " + format_payoff(gap) + ")");
            break;
          }
        }
      }
    }

    bundle.scenarios.push_back(std::move(s));
  }
  return bundle;
}

inline ScenarioBundle load_bundle(std::istream& in, std::vector<std::string>* warnings = nullptr) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_bundle(ss.str(), warnings);
}

// Builds a payoff table with the requested equilibrium structure directly:
// the target canonical profile pays everyone 10 and every unilateral
// deviation from it costs the mover 1..5, so it is an equilibrium by
// construction; the opposite canonical profile hands one player a strictly
// profitable deviation, so it is not. All remaining cells get seeded noise in
// [-0.5, 0.5]. The result is verified before being returned.
inline Scenario generate_scenario(DominanceClass target, std::uint64_t seed) {
  if (target != DominanceClass::GreenDominant && target != DominanceClass::TragedyDominant)
    throw std::invalid_argument("target must be GreenDominant or TragedyDominant");

  const bool green = target == DominanceClass::GreenDominant;
  const StrategyProfile anchor = green ? kGreenProfile : kTragedyProfile;
  const StrategyProfile opposite = green ? kTragedyProfile : kGreenProfile;

  for (int attempt = 0; attempt < 16; ++attempt) {
    std::mt19937_64 rng(mix64(seed_combine(seed, static_cast<std::uint64_t>(attempt))));
    std::uniform_real_distribution<double> noise(-0.5, 0.5);
    std::uniform_real_distribution<double> drop(1.0, 5.0);

    PayoffTable t;
    for (int i = 0; i < kNumProfiles; ++i) {
      StrategyProfile p = StrategyProfile::from_index(i);
      for (Role r : kRoles) t.set_payoff(p, r, noise(rng));
    }
    for (Role r : kRoles) {
      t.set_payoff(anchor, r, 10.0);
      t.set_payoff(anchor.with_flipped(r), r, 10.0 - drop(rng));
    }
    const Role breaker = kRoles[rng() % kNumRoles];
    t.set_payoff(opposite, breaker, 0.0);
    t.set_payoff(opposite.with_flipped(breaker), breaker, drop(rng));

    if (classify_dominance(t) != target) continue;

    Scenario s;
    char idbuf[64];
    std::snprintf(idbuf, sizeof idbuf, "synthetic_%s_%llu", green ? "green" : "tragedy",
                  static_cast<unsigned long long>(seed));
    s.id = idbuf;
    s.family = green ? Family::Environmental : Family::Economic;
    s.subtype = "Synthetic";
    s.narrative =
        green ? "[synthetic] Clean production, regulation, campaigning, and green purchasing "
                "reinforce one another; any lone defection from the coordinated outcome costs "
                "the defector. Generated scenario, seed " + std::to_string(seed) + "."
              : "[synthetic] Cheap polluting production pays while regulation, campaigning, and "
                "green premiums are individually costly; any lone move away from the defection "
                "outcome hurts the mover. Generated scenario, seed " + std::to_string(seed) + ".";
    s.table = t;
    s.dominance = target;
    return s;
  }
  throw ScenarioError(ScenarioError::Code::GenerationFailed,
                      "could not construct a table with the requested dominance");
}

// Deterministic bundle of synthetic scenarios, ids numbered from 1.
inline ScenarioBundle make_synthetic_bundle(DominanceClass target, int count,
                                            std::uint64_t seed) {
  const bool green = target == DominanceClass::GreenDominant;
  ScenarioBundle b;
  b.name = std::string("synthetic-") + (green ? "green" : "tragedy");
  for (int i = 0; i < count; ++i) {
    Scenario s = generate_scenario(target, seed_combine(seed, static_cast<std::uint64_t>(i)));
    char idbuf[64];
    std::snprintf(idbuf, sizeof idbuf, "synthetic_%s_%03d", green ? "green" : "tragedy", i + 1);
    s.id = idbuf;
    b.scenarios.push_back(std::move(s));
  }
  return b;
}

// The one published example scenario: a debt-squeezed economy in which the
// all-defect profile is the unique equilibrium. The Industrialist column is
// the reference table; the other columns keep the same story.
inline const Scenario& debt_crisis_scenario() {
  static const Scenario scenario = [] {
    Scenario s;
    s.id = "debt_crisis";
    s.family = Family::Economic;
    s.subtype = "Debt Crisis";
    s.narrative =
        "A sovereign debt crisis has frozen public budgets and squeezed household incomes. "
        "Enforcement agencies are unfunded, so new regulation would strain an already "
        "stretched treasury. Advocacy groups report donor fatigue and can barely fund "
        "campaigns. Households cut costs wherever possible and green products carry a steep "
        "premium. Polluting production lines run on cheap domestic inputs and stay highly "
        "profitable, while retooling for clean production demands upfront capital that banks "
        "will not lend.";

    // rows keyed (industrialist, government, activist, citizen) action indices
    struct Row {
      int i, g, a, c;
      std::array<double, 4> u;
    };
    static constexpr Row rows[] = {
        {0, 0, 0, 0, {15.0, 3.0, 2.0, 1.0}},  {0, 0, 0, 1, {14.0, 3.5, 2.5, -1.0}},
        {0, 0, 1, 0, {13.5, 2.0, -0.5, 1.0}}, {0, 0, 1, 1, {12.5, 2.5, 0.0, -1.0}},
        {0, 1, 0, 0, {12.0, 0.5, 2.0, 1.5}},  {0, 1, 0, 1, {11.0, 1.0, 2.5, -0.5}},
        {0, 1, 1, 0, {10.5, 1.5, 1.5, 1.5}},  {0, 1, 1, 1, {9.5, 2.0, 2.0, -0.5}},
        {1, 0, 0, 0, {-0.5, 4.5, 3.5, 2.5}},  {1, 0, 0, 1, {1.5, 5.0, 4.0, 0.5}},
        {1, 0, 1, 0, {-0.5, 3.5, 1.0, 2.5}},  {1, 0, 1, 1, {1.5, 4.0, 1.5, 0.5}},
        {1, 1, 0, 0, {0.5, 2.0, 3.5, 3.0}},   {1, 1, 0, 1, {2.5, 2.5, 4.0, 1.0}},
        {1, 1, 1, 0, {0.5, 3.0, 3.0, 3.0}},   {1, 1, 1, 1, {3.0, 3.5, 3.5, 1.0}},
    };
    for (const Row& r : rows)
      s.table.set_payoffs(StrategyProfile::from_actions(r.i, r.g, r.a, r.c), r.u);
    s.dominance = classify_dominance(s.table);
    return s;
  }();
  return scenario;
}

}  // namespace policygame

#endif  // POLICYGAME_SCENARIO_HPP
