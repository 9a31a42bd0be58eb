#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkmc/agents.hpp"
#include "fkmc/config.hpp"
#include "fkmc/engine.hpp"
#include "fkmc/record.hpp"
#include "fkmc/scheduler.hpp"

namespace fkmc {

class InvalidConfig : public std::runtime_error {
 public:
  explicit InvalidConfig(std::vector<Violation> violations)
      : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string s = "invalid config";
    for (const auto& x : v) s += "\n  " + x.message;
    return s;
  }
  std::vector<Violation> violations_;
};

/// The archetype an agent is drawn from, with the bad-actor overrides applied if flagged.
inline ArchetypeSpec effective_spec(const SimulationConfig& config, const ArchetypeSpec& spec, bool bad) {
  return bad ? apply_overrides(spec, config.bad_actor_overrides) : spec;
}

// Draws the initial population: entries in config order, ids 0..N-1. Within
// each entry exactly round(count * fraction) agents are flagged bad, chosen
// by a partial Fisher-Yates shuffle, before any agent is sampled.
inline std::vector<Agent> build_population(const SimulationConfig& config, Rng& rng) {
  std::vector<Agent> agents;
  agents.reserve(config.population_size());
  AgentId next_id = 0;
  for (const auto& entry : config.population) {
    const ArchetypeSpec* spec = config.find_archetype(entry.archetype);
    if (spec == nullptr) throw std::invalid_argument("unknown archetype " + entry.archetype);
    const std::size_t archetype = static_cast<std::size_t>(spec - config.archetypes.data());

    const auto n = static_cast<std::size_t>(entry.count);
    const auto bad_count = static_cast<std::size_t>(std::llround(static_cast<double>(n) * entry.bad_actor_fraction));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = 0; k < bad_count; ++k) {
      const auto pick = k + static_cast<std::size_t>(rng.index(n - k));
      std::swap(order[k], order[pick]);
    }
    std::vector<bool> bad(n, false);
    for (std::size_t k = 0; k < bad_count; ++k) bad[order[k]] = true;

    const ArchetypeSpec good_spec = *spec;
    const ArchetypeSpec bad_spec = effective_spec(config, *spec, true);
    for (std::size_t k = 0; k < n; ++k) {
      const ArchetypeSpec& s = bad[k] ? bad_spec : good_spec;
      Agent a = sample_agent(s, next_id++, rng);
      a.archetype = archetype;
      a.is_bad_actor = bad[k];
      init_schedules(a, s, config.schedules, 0.0);
      agents.push_back(std::move(a));
    }
  }
  return agents;
}

// kMC model of the whole platform: the agent population plus the optional
// customer-arrival process. Owns no random state; the engine passes the
// run's stream in.
class World {
 public:
  using record_type = LogRecord;

  World(const SimulationConfig& config, Rng& rng)
      : config_(config), agents_(build_population(config, rng)) {
    settings_.unverified_cap = Money::from_units(config.unverified_cap);
    settings_.btc_price = config.btc_price;
    policy_.boost_multiplier = config.boost_multiplier;
    policy_.new_customer_rate = config.new_customer_rate;
  }

  void update_rates(RateTable& table, double now) { fkmc::update_rates(agents_, now, policy_, table); }

  LogRecord execute(const EventCandidate& c, double now, Rng& rng) {
    if (c.action == Action::join) return join(now, rng);

    const ActionOutcome out = execute_action(agents_, c.agent, c.action, settings_, rng);
    if (is_scheduled(c.action)) fire_and_reset(agents_[c.agent], schedule_slot(c.action));

    LogRecord r;
    r.time = now;
    r.initiator = agents_[c.agent].id;
    r.action = c.action;
    r.value = out.value;
    if (out.counterparty) r.receiver = agents_[*out.counterparty].id;
    return r;
  }

  std::span<const Agent> agents() const { return agents_; }
  std::span<Agent> agents() { return agents_; }
  const SimulationConfig& config() const { return config_; }

 private:
  // New customer: archetype entry drawn in proportion to its count, bad
  // with that entry's fraction, then sampled like an initial agent.
  LogRecord join(double now, Rng& rng) {
    const std::uint64_t total = config_.population_size();
    std::uint64_t pick = rng.index(total);
    const PopulationEntry* entry = &config_.population.front();
    for (const auto& e : config_.population) {
      if (pick < e.count) {
        entry = &e;
        break;
      }
      pick -= e.count;
    }
    const bool bad = rng.uniform() <= entry->bad_actor_fraction && entry->bad_actor_fraction > 0.0;
    const ArchetypeSpec* base = config_.find_archetype(entry->archetype);
    const ArchetypeSpec spec = effective_spec(config_, *base, bad);

    Agent a = sample_agent(spec, static_cast<AgentId>(agents_.size()), rng);
    a.archetype = static_cast<std::size_t>(base - config_.archetypes.data());
    a.is_bad_actor = bad;
    init_schedules(a, spec, config_.schedules, now);
    agents_.push_back(std::move(a));

    LogRecord r;
    r.time = now;
    r.initiator = agents_.back().id;
    r.action = Action::join;
    return r;
  }

  const SimulationConfig& config_;
  std::vector<Agent> agents_;
  ActionSettings settings_;
  RatePolicy policy_;
};

struct SimulationResult {
  std::vector<LogRecord> records;
  RunSummary summary;
  std::vector<Agent> final_agents;
};

// Validates, draws the population, and runs the loop from the epoch until the
// first step whose post-advance time reaches max_time. Every record is passed
// to `sink` as it is produced. Running out of enabled events ends the run
// early; the summary carries the diagnostic.
template <typename Sink>
RunSummary simulate(const SimulationConfig& config, Sink&& sink, std::vector<Agent>* final_agents = nullptr) {
  if (auto v = validate_config(config); !v.empty()) throw InvalidConfig(std::move(v));
  Rng rng(config.seed);
  World world(config, rng);
  Engine engine(world, rng, Clock{0.0, config.max_time});
  RunSummary summary = engine.run(std::forward<Sink>(sink));
  if (final_agents) final_agents->assign(world.agents().begin(), world.agents().end());
  return summary;
}

inline SimulationResult run(const SimulationConfig& config) {
  SimulationResult result;
  result.summary = simulate(config, [&](LogRecord r) { result.records.push_back(std::move(r)); }, &result.final_agents);
  return result;
}

/// The population a run starts from, reproduced without simulating.
inline std::vector<Agent> initial_population(const SimulationConfig& config) {
  Rng rng(config.seed);
  return build_population(config, rng);
}

}  // namespace fkmc
