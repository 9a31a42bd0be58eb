#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fkmc/agents.hpp"
#include "fkmc/scheduler.hpp"

namespace fkmc {

inline constexpr int kSchemaVersion = 1;

struct PopulationEntry {
  std::string archetype;
  std::uint64_t count = 0;
  double bad_actor_fraction = 0.0;

  friend bool operator==(const PopulationEntry&, const PopulationEntry&) = default;
};

// Complete description of one scenario. Immutable once parsed.
struct SimulationConfig {
  std::uint64_t seed = 0;
  std::chrono::sys_seconds epoch{};
  double max_time = 0.0;  // days
  std::vector<PopulationEntry> population;
  std::vector<ArchetypeSpec> archetypes;
  BadActorOverrides bad_actor_overrides;
  double unverified_cap = 10.0;
  double btc_price = 1.0;
  double boost_multiplier = 1e6;
  double new_customer_rate = 0.0;
  ScheduleSettings schedules;
  std::string comment;  // free text, carried through serialization

  std::uint64_t population_size() const {
    std::uint64_t n = 0;
    for (const auto& p : population) n += p.count;
    return n;
  }

  const ArchetypeSpec* find_archetype(const std::string& name) const {
    for (const auto& a : archetypes) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Malformed document: bad JSON, unknown key, missing key, wrong type.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Violation {
  std::string code;     // machine-readable, e.g. "negative_std"
  std::string message;  // human-readable, names the offending key

  friend bool operator==(const Violation&, const Violation&) = default;
};

// ---------------------------------------------------------------------------
// Epoch text: "YYYY-MM-DD HH:MM:SS"

inline std::chrono::sys_seconds parse_epoch(const std::string& text) {
  int y, mo, d, h, mi, s;
  char tail;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2d %2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail) != 6) {
    throw ConfigError("epoch: expected \"YYYY-MM-DD HH:MM:SS\", got \"" + text + "\"");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59 || h < 0 || mi < 0 || s < 0) {
    throw ConfigError("epoch: invalid calendar time \"" + text + "\"");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

inline std::string format_epoch(std::chrono::sys_seconds t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{t - day_start};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

inline const json& require(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + ": missing required key \"" + key + "\"");
  return *it;
}

template <typename T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": wrong type (" + e.what() + ")");
  }
}

template <typename T>
T get_or(const json& j, const std::string& where, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : get_as<T>(*it, where + "." + key);
}

inline NormalParams normal_from_json(const json& j, const std::string& where) {
  reject_unknown(j, where, {"mean", "std"});
  return {get_as<double>(require(j, where, "mean"), where + ".mean"),
          get_as<double>(require(j, where, "std"), where + ".std")};
}

inline json normal_to_json(const NormalParams& p) { return {{"mean", p.mean}, {"std", p.std}}; }

inline std::map<Action, NormalParams> action_map_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::map<Action, NormalParams> out;
  for (const auto& [key, value] : j.items()) {
    auto a = action_from_name(key);
    if (!a || *a == Action::join) throw ConfigError(where + ": unknown action \"" + key + "\"");
    out[*a] = normal_from_json(value, where + "." + key);
  }
  return out;
}

inline json action_map_to_json(const std::map<Action, NormalParams>& m) {
  json j = json::object();
  for (const auto& [a, p] : m) j[std::string(action_name(a))] = normal_to_json(p);
  return j;
}

inline AgentKind kind_from_json(const json& j, const std::string& where) {
  const auto s = get_as<std::string>(j, where);
  if (s == "individual") return AgentKind::individual;
  if (s == "business") return AgentKind::business;
  throw ConfigError(where + ": expected \"individual\" or \"business\", got \"" + s + "\"");
}

inline ArchetypeSpec archetype_from_json(const json& j, const std::string& where) {
  reject_unknown(j, where, {"name", "kind", "rates", "amounts", "p2p_threshold", "id_success_prob",
                            "initial_cash", "receives_paycheque", "pays_rent", "has_loan", "loan"});
  ArchetypeSpec a;
  a.name = get_as<std::string>(require(j, where, "name"), where + ".name");
  a.kind = kind_from_json(require(j, where, "kind"), where + ".kind");
  if (auto it = j.find("rates"); it != j.end()) a.rates = action_map_from_json(*it, where + ".rates");
  if (auto it = j.find("amounts"); it != j.end()) a.amounts = action_map_from_json(*it, where + ".amounts");
  if (auto it = j.find("p2p_threshold"); it != j.end()) a.p2p_threshold = normal_from_json(*it, where + ".p2p_threshold");
  a.id_success_prob = get_or<double>(j, where, "id_success_prob", 1.0);
  a.initial_cash = get_or<double>(j, where, "initial_cash", 0.0);
  a.receives_paycheque = get_or<bool>(j, where, "receives_paycheque", false);
  a.pays_rent = get_or<bool>(j, where, "pays_rent", false);
  a.has_loan = get_or<bool>(j, where, "has_loan", false);
  if (auto it = j.find("loan"); it != j.end()) {
    const std::string w = where + ".loan";
    reject_unknown(*it, w, {"original", "repayment_fraction"});
    a.loan.original = normal_from_json(require(*it, w, "original"), w + ".original");
    a.loan.repayment_fraction = get_as<double>(require(*it, w, "repayment_fraction"), w + ".repayment_fraction");
  }
  return a;
}

inline json archetype_to_json(const ArchetypeSpec& a) {
  json j = {
      {"name", a.name},
      {"kind", a.kind == AgentKind::individual ? "individual" : "business"},
      {"rates", action_map_to_json(a.rates)},
      {"amounts", action_map_to_json(a.amounts)},
      {"p2p_threshold", normal_to_json(a.p2p_threshold)},
      {"id_success_prob", a.id_success_prob},
      {"initial_cash", a.initial_cash},
      {"receives_paycheque", a.receives_paycheque},
      {"pays_rent", a.pays_rent},
      {"has_loan", a.has_loan},
  };
  if (a.has_loan || a.loan != LoanSpec{}) {
    j["loan"] = {{"original", normal_to_json(a.loan.original)}, {"repayment_fraction", a.loan.repayment_fraction}};
  }
  return j;
}

inline ScheduleTiming timing_from_json(const json& j, const std::string& where, ScheduleTiming fallback) {
  reject_unknown(j, where, {"period", "first_due"});
  fallback.period = get_or<double>(j, where, "period", fallback.period);
  fallback.first_due = get_or<double>(j, where, "first_due", fallback.first_due);
  return fallback;
}

}  // namespace detail

inline nlohmann::json to_json(const SimulationConfig& c) {
  using detail::json;
  json pop = json::array();
  for (const auto& p : c.population) {
    pop.push_back({{"archetype", p.archetype}, {"count", p.count}, {"bad_actor_fraction", p.bad_actor_fraction}});
  }
  json arch = json::array();
  for (const auto& a : c.archetypes) arch.push_back(detail::archetype_to_json(a));

  json bad = json::object();
  const auto& o = c.bad_actor_overrides;
  if (o.id_success_prob) bad["id_success_prob"] = *o.id_success_prob;
  if (!o.rates.empty()) bad["rates"] = detail::action_map_to_json(o.rates);
  if (!o.amounts.empty()) bad["amounts"] = detail::action_map_to_json(o.amounts);
  if (o.p2p_threshold) bad["p2p_threshold"] = detail::normal_to_json(*o.p2p_threshold);

  auto timing = [](const ScheduleTiming& t) { return json{{"period", t.period}, {"first_due", t.first_due}}; };
  json j = {
      {"schema_version", kSchemaVersion},
      {"seed", c.seed},
      {"epoch", format_epoch(c.epoch)},
      {"max_time", c.max_time},
      {"unverified_cap", c.unverified_cap},
      {"btc_price", c.btc_price},
      {"boost_multiplier", c.boost_multiplier},
      {"new_customer_rate", c.new_customer_rate},
      {"schedules",
       {{"anchor", c.schedules.anchor == ScheduleAnchor::join ? "join" : "calendar"},
        {"pay_rent", timing(c.schedules.rent)},
        {"deposit_paycheque", timing(c.schedules.paycheque)},
        {"repay_loan", timing(c.schedules.loan)}}},
      {"population", pop},
      {"archetypes", arch},
      {"bad_actor_overrides", bad},
  };
  if (!c.comment.empty()) j["comment"] = c.comment;
  return j;
}

inline SimulationConfig config_from_json(const nlohmann::json& j) {
  using namespace detail;
  const std::string root = "config";
  if (j.is_object()) {
    std::string missing;
    for (const char* key : {"schema_version", "seed", "max_time", "population", "archetypes"}) {
      if (!j.contains(key)) missing += std::string(missing.empty() ? "" : ", ") + key;
    }
    if (!missing.empty()) throw ConfigError(root + ": missing required keys: " + missing);
  }
  reject_unknown(j, root,
                 {"schema_version", "seed", "epoch", "max_time", "population", "archetypes", "bad_actor_overrides",
                  "unverified_cap", "btc_price", "boost_multiplier", "new_customer_rate", "schedules", "comment"});

  const int version = get_as<int>(j.at("schema_version"), "schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError("schema_version: unsupported version " + std::to_string(version));
  }

  SimulationConfig c;
  c.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
  c.epoch = parse_epoch(get_or<std::string>(j, root, "epoch", "2022-09-01 00:00:00"));
  c.max_time = get_as<double>(j.at("max_time"), "max_time");
  c.unverified_cap = get_or<double>(j, root, "unverified_cap", c.unverified_cap);
  c.btc_price = get_or<double>(j, root, "btc_price", c.btc_price);
  c.boost_multiplier = get_or<double>(j, root, "boost_multiplier", c.boost_multiplier);
  c.new_customer_rate = get_or<double>(j, root, "new_customer_rate", c.new_customer_rate);
  c.comment = get_or<std::string>(j, root, "comment", "");

  const auto& pop = j.at("population");
  if (!pop.is_array()) throw ConfigError("population: expected an array");
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const std::string w = "population[" + std::to_string(i) + "]";
    reject_unknown(pop[i], w, {"archetype", "count", "bad_actor_fraction"});
    PopulationEntry e;
    e.archetype = get_as<std::string>(require(pop[i], w, "archetype"), w + ".archetype");
    e.count = get_as<std::uint64_t>(require(pop[i], w, "count"), w + ".count");
    e.bad_actor_fraction = get_or<double>(pop[i], w, "bad_actor_fraction", 0.0);
    c.population.push_back(std::move(e));
  }

  const auto& arch = j.at("archetypes");
  if (!arch.is_array()) throw ConfigError("archetypes: expected an array");
  for (std::size_t i = 0; i < arch.size(); ++i) {
    c.archetypes.push_back(archetype_from_json(arch[i], "archetypes[" + std::to_string(i) + "]"));
  }

  if (auto it = j.find("bad_actor_overrides"); it != j.end()) {
    const std::string w = "bad_actor_overrides";
    reject_unknown(*it, w, {"id_success_prob", "rates", "amounts", "p2p_threshold"});
    auto& o = c.bad_actor_overrides;
    if (it->contains("id_success_prob")) o.id_success_prob = get_as<double>(it->at("id_success_prob"), w + ".id_success_prob");
    if (it->contains("rates")) o.rates = action_map_from_json(it->at("rates"), w + ".rates");
    if (it->contains("amounts")) o.amounts = action_map_from_json(it->at("amounts"), w + ".amounts");
    if (it->contains("p2p_threshold")) o.p2p_threshold = normal_from_json(it->at("p2p_threshold"), w + ".p2p_threshold");
  }

  if (auto it = j.find("schedules"); it != j.end()) {
    const std::string w = "schedules";
    reject_unknown(*it, w, {"anchor", "pay_rent", "deposit_paycheque", "repay_loan"});
    const auto anchor = get_or<std::string>(*it, w, "anchor", "join");
    if (anchor == "join") {
      c.schedules.anchor = ScheduleAnchor::join;
    } else if (anchor == "calendar") {
      c.schedules.anchor = ScheduleAnchor::calendar;
    } else {
      throw ConfigError(w + ".anchor: expected \"join\" or \"calendar\"");
    }
    if (it->contains("pay_rent")) c.schedules.rent = timing_from_json(it->at("pay_rent"), w + ".pay_rent", c.schedules.rent);
    if (it->contains("deposit_paycheque")) {
      c.schedules.paycheque = timing_from_json(it->at("deposit_paycheque"), w + ".deposit_paycheque", c.schedules.paycheque);
    }
    if (it->contains("repay_loan")) c.schedules.loan = timing_from_json(it->at("repay_loan"), w + ".repay_loan", c.schedules.loan);
  }
  return c;
}

/// Parses JSON text. Blank input is treated as an empty document, which fails on the required keys.
inline SimulationConfig parse_config_text(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return config_from_json(nlohmann::json::object());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return config_from_json(j);
}

/// Raised when the config file itself cannot be read (as opposed to being invalid).
class ConfigIoError : public std::runtime_error {
 public:
  explicit ConfigIoError(const std::string& what) : std::runtime_error(what) {}
};

inline SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigIoError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

inline std::string serialize_config(const SimulationConfig& c) { return to_json(c).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Validation: violations are data, never exceptions.

inline std::vector<Violation> validate_config(const SimulationConfig& c) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string msg) { out.push_back({std::move(code), std::move(msg)}); };
  auto check_normal = [&](const NormalParams& p, const std::string& where) {
    if (!std::isfinite(p.mean) || !std::isfinite(p.std)) add("non_finite", where + ": non-finite parameter");
    if (p.std < 0.0) add("negative_std", where + ": negative standard deviation");
  };
  auto check_prob = [&](double p, const std::string& where) {
    if (!(p >= 0.0 && p <= 1.0)) add("out_of_range", where + ": probability must lie in [0, 1]");
  };

  if (!(c.max_time > 0.0) || !std::isfinite(c.max_time)) add("out_of_range", "max_time: must be positive");
  if (!(c.unverified_cap > 0.0)) add("out_of_range", "unverified_cap: must be positive");
  if (!(c.btc_price > 0.0)) add("out_of_range", "btc_price: must be positive");
  if (!(c.boost_multiplier >= 1.0)) add("out_of_range", "boost_multiplier: must be >= 1");
  if (!(c.new_customer_rate >= 0.0)) add("out_of_range", "new_customer_rate: must be >= 0");
  for (const auto& [name, t] : {std::pair{"pay_rent", c.schedules.rent}, std::pair{"deposit_paycheque", c.schedules.paycheque},
                                std::pair{"repay_loan", c.schedules.loan}}) {
    if (!(t.period > 0.0)) add("out_of_range", std::string("schedules.") + name + ".period: must be positive");
    if (!(t.first_due >= 0.0)) add("out_of_range", std::string("schedules.") + name + ".first_due: must be >= 0");
  }

  if (c.population.empty()) add("empty_population", "population: at least one entry required");
  for (std::size_t i = 0; i < c.population.size(); ++i) {
    const auto& p = c.population[i];
    const std::string w = "population[" + std::to_string(i) + "]";
    if (p.count == 0) add("out_of_range", w + ".count: must be > 0");
    if (!(p.bad_actor_fraction >= 0.0 && p.bad_actor_fraction <= 1.0)) {
      add("out_of_range", w + ".bad_actor_fraction: must lie in [0, 1]");
    }
    if (c.find_archetype(p.archetype) == nullptr) {
      add("unknown_archetype", w + ".archetype: no archetype named \"" + p.archetype + "\"");
    }
  }

  std::set<std::string> names;
  for (const auto& a : c.archetypes) {
    const std::string w = "archetypes[" + a.name + "]";
    if (a.name.empty()) add("missing_name", "archetypes: empty archetype name");
    if (!names.insert(a.name).second) add("duplicate_archetype", w + ": duplicate name");
    for (const auto& [act, p] : a.rates) {
      const std::string aw = w + ".rates." + std::string(action_name(act));
      check_normal(p, aw);
      if (is_scheduled(act)) add("scheduled_rate", aw + ": scheduled actions are enabled by flag, not by rate");
    }
    for (const auto& [act, p] : a.amounts) check_normal(p, w + ".amounts." + std::string(action_name(act)));
    check_normal(a.p2p_threshold, w + ".p2p_threshold");
    check_prob(a.id_success_prob, w + ".id_success_prob");
    if (!(a.initial_cash >= 0.0)) add("out_of_range", w + ".initial_cash: must be >= 0");

    if (a.kind == AgentKind::business) {
      auto disallow = [&](bool granted, Action act) {
        if (granted) add("disallowed_action", w + ": action disallowed for business kind: " + std::string(action_name(act)));
      };
      disallow(a.pays_rent, Action::pay_rent);
      disallow(a.has_loan, Action::repay_loan);
      disallow(a.rates.contains(Action::btc_buy), Action::btc_buy);
    }
    for (Action act : kAgentActions) {
      if (act == Action::id_verification || act == Action::repay_loan || !a.allows(act)) continue;
      if (!a.amounts.contains(act)) {
        add("missing_amount", w + ".amounts." + std::string(action_name(act)) + ": required for an allowed action");
      }
    }
    if (a.has_loan) {
      check_normal(a.loan.original, w + ".loan.original");
      if (!(a.loan.repayment_fraction > 0.0 && a.loan.repayment_fraction <= 1.0)) {
        add("out_of_range", w + ".loan.repayment_fraction: must lie in (0, 1]");
      }
    }
  }

  const auto& o = c.bad_actor_overrides;
  if (o.id_success_prob) check_prob(*o.id_success_prob, "bad_actor_overrides.id_success_prob");
  for (const auto& [act, p] : o.rates) check_normal(p, "bad_actor_overrides.rates." + std::string(action_name(act)));
  for (const auto& [act, p] : o.amounts) check_normal(p, "bad_actor_overrides.amounts." + std::string(action_name(act)));
  if (o.p2p_threshold) check_normal(*o.p2p_threshold, "bad_actor_overrides.p2p_threshold");
  return out;
}

// ---------------------------------------------------------------------------
// Shipped scenario: 1000 agents, half of them bad actors, ~8 simulated days.
//
// Stated behaviour differences between the classes:
//   id verification success   0.50 (bad)   vs 0.75 (regular)
//   p2p amount                N(5, 3)      vs N(8, 3)
//   p2p balance threshold     N(15, 3)     vs N(30, 3)
// Everything else (archetype mix, action rates, other amounts) is filler tuned
// so that an agent performs roughly 100 actions over the 8 days. The nominal
// non-scheduled rates sum to 14 per day; gating on cash trims the realized
// rate to about 12. Rent and paycheques first fall due after day 8.
inline SimulationConfig baseline_scenario() {
  using A = Action;
  SimulationConfig c;
  c.seed = 20220901;
  c.epoch = parse_epoch("2022-09-01 00:00:00");
  c.max_time = 8.0;

  auto individual = [](std::string name) {
    ArchetypeSpec a;
    a.name = std::move(name);
    a.kind = AgentKind::individual;
    a.rates = {{A::cash_in, {5.0, 1.0}}, {A::cash_out, {2.0, 0.5}}, {A::p2p_send, {5.0, 1.0}},
               {A::id_verification, {1.5, 0.3}}, {A::btc_buy, {0.5, 0.25}}};
    a.amounts = {{A::cash_in, {40.0, 15.0}},   {A::cash_out, {20.0, 8.0}},          {A::p2p_send, {8.0, 3.0}},
                 {A::btc_buy, {15.0, 5.0}},    {A::pay_rent, {150.0, 20.0}},        {A::deposit_paycheque, {400.0, 50.0}}};
    a.p2p_threshold = {30.0, 3.0};
    a.id_success_prob = 0.75;
    return a;
  };

  ArchetypeSpec everyday = individual("everyday_spender");
  everyday.receives_paycheque = true;
  everyday.pays_rent = true;

  ArchetypeSpec enthusiast = individual("crypto_enthusiast");
  enthusiast.rates[A::btc_buy] = {2.0, 1.0};
  enthusiast.rates[A::cash_out] = {1.0, 0.5};
  enthusiast.has_loan = true;
  enthusiast.loan = {{200.0, 50.0}, 0.25};

  ArchetypeSpec skeptic = individual("crypto_skeptic");
  skeptic.rates[A::btc_buy] = {0.0, 0.0};
  skeptic.rates[A::cash_out] = {2.5, 0.5};

  ArchetypeSpec spender = individual("big_spender");
  spender.amounts[A::cash_in] = {120.0, 40.0};
  spender.amounts[A::cash_out] = {60.0, 20.0};

  ArchetypeSpec business;
  business.name = "small_business";
  business.kind = AgentKind::business;
  business.rates = {{A::cash_in, {5.0, 1.0}}, {A::cash_out, {2.5, 0.5}}, {A::p2p_send, {5.0, 1.0}},
                    {A::id_verification, {1.5, 0.3}}};
  business.amounts = {{A::cash_in, {60.0, 20.0}}, {A::cash_out, {30.0, 10.0}}, {A::p2p_send, {8.0, 3.0}}};
  business.p2p_threshold = {30.0, 3.0};
  business.id_success_prob = 0.75;

  c.archetypes = {everyday, enthusiast, skeptic, spender, business};
  c.population = {{"everyday_spender", 300, 0.5},
                  {"crypto_enthusiast", 200, 0.5},
                  {"crypto_skeptic", 200, 0.5},
                  {"big_spender", 200, 0.5},
                  {"small_business", 100, 0.5}};

  c.bad_actor_overrides.id_success_prob = 0.50;
  c.bad_actor_overrides.amounts = {{A::p2p_send, {5.0, 3.0}}};
  c.bad_actor_overrides.p2p_threshold = NormalParams{15.0, 3.0};
  c.comment =
      "Baseline: 1000 agents, half bad actors, 8 days. Stated class differences: id verification success "
      "0.50 vs 0.75, p2p amount N(5,3) vs N(8,3), p2p threshold N(15,3) vs N(30,3). Archetype mix, rates, "
      "other amounts and loans are tuned fillers targeting about 100 actions per agent.";
  return c;
}

}  // namespace fkmc
