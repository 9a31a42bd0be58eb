#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fkmc/agents.hpp"
#include "fkmc/rate_table.hpp"

namespace fkmc {

enum class ScheduleAnchor { join, calendar };

struct ScheduleTiming {
  double period = 0.0;     // days
  double first_due = 0.0;  // days after the anchor

  friend bool operator==(const ScheduleTiming&, const ScheduleTiming&) = default;
};

struct ScheduleSettings {
  ScheduleTiming rent{30.0, 0.0};
  ScheduleTiming paycheque{14.0, 14.0};
  ScheduleTiming loan{7.0, 7.0};
  ScheduleAnchor anchor = ScheduleAnchor::join;

  const ScheduleTiming& timing(ScheduleSlot s) const {
    switch (s) {
      case ScheduleSlot::rent: return rent;
      case ScheduleSlot::paycheque: return paycheque;
      case ScheduleSlot::loan: return loan;
    }
    return rent;
  }

  friend bool operator==(const ScheduleSettings&, const ScheduleSettings&) = default;
};

struct RatePolicy {
  double boost_multiplier = 1e6;
  double new_customer_rate = 0.0;  // days^-1, 0 disables arrivals

  friend bool operator==(const RatePolicy&, const RatePolicy&) = default;
};

// Sets next_due for each payment the archetype participates in. Join-anchored
// schedules start counting at the join time; calendar-anchored ones fall on
// the fixed grid first_due + k * period measured from the epoch.
inline void init_schedules(Agent& agent, const ArchetypeSpec& spec, const ScheduleSettings& settings,
                           double joined_at) {
  agent.joined_at = joined_at;
  for (ScheduleSlot slot : kScheduleSlots) {
    auto& ev = agent.schedule(slot);
    const auto& timing = settings.timing(slot);
    ev = ScheduledEvent{};
    if (agent.kind == AgentKind::business || !spec.allows(scheduled_action(slot))) continue;
    if (slot == ScheduleSlot::loan && agent.loan_balance <= Money{}) continue;
    ev.active = true;
    ev.period = timing.period;
    if (settings.anchor == ScheduleAnchor::join) {
      ev.next_due = joined_at + timing.first_due;
    } else {
      const double k = std::max(0.0, std::ceil((joined_at - timing.first_due) / timing.period));
      ev.next_due = timing.first_due + k * timing.period;
    }
  }
}

// Arms the payment once its due time has been reached. A rent or loan payment
// that finds an empty account is skipped for this cycle (next_due still moves
// by one period, so the cadence is kept); a repaid loan never re-arms.
// Returns whether the event is armed afterwards.
inline bool arm_scheduled(Agent& agent, ScheduleSlot slot, double now) {
  auto& ev = agent.schedule(slot);
  if (!ev.active) return false;
  if (slot == ScheduleSlot::loan && agent.loan_balance <= Money{}) {
    ev.active = false;
    ev.armed = false;
    return false;
  }
  if (!ev.armed && now >= ev.next_due) ev.armed = true;
  if (ev.armed && scheduled_needs_funds(scheduled_action(slot)) && agent.cash < kOneCent) {
    ev.armed = false;
    ev.next_due += ev.period;
  }
  return ev.armed;
}

/// Called right after an armed payment executed: rate drops to 0 until the next due time.
inline void fire_and_reset(Agent& agent, ScheduleSlot slot) {
  auto& ev = agent.schedule(slot);
  ev.armed = false;
  ev.next_due += ev.period;
  if (slot == ScheduleSlot::loan && agent.loan_balance <= Money{}) ev.active = false;
}

/// Current rate of one agent action after gating; 0 for scheduled actions (their rate is the boost).
inline double gated_rate(const Agent& agent, Action a, const ActionSet& eligible) {
  if (is_scheduled(a) || !eligible.contains(a)) return 0.0;
  return agent.base_rate(a);
}

/// max(multiplier * non-boosted sum, multiplier * 1 day^-1).
inline double boost_rate(double non_boosted_total, double multiplier) {
  return multiplier * std::max(non_boosted_total, 1.0);
}

// Rebuilds the candidate list for the current time. Entries appear in agent
// order and, within an agent, in Action order; the arrival candidate (if
// enabled) goes last. Armed payments all carry the same boost rate, so
// simultaneous ones are ordered by the selection draw alone.
inline void update_rates(std::span<Agent> population, double now, const RatePolicy& policy, RateTable& table) {
  std::vector<std::size_t> boosted;
  double non_boosted = 0.0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    Agent& agent = population[i];
    if (agent.kind == AgentKind::individual) {
      for (ScheduleSlot slot : kScheduleSlots) arm_scheduled(agent, slot, now);
    }
    const ActionSet eligible = eligible_actions(agent, population.size());
    for (Action a : kAgentActions) {
      if (!eligible.contains(a)) continue;
      if (is_scheduled(a)) {
        boosted.push_back(table.add(i, a, 1.0));
      } else {
        const double r = gated_rate(agent, a, eligible);
        non_boosted += r;
        table.add(i, a, r);
      }
    }
  }
  if (policy.new_customer_rate > 0.0) {
    non_boosted += policy.new_customer_rate;
    table.add(kWorldEvent, Action::join, policy.new_customer_rate);
  }
  if (!boosted.empty()) {
    const double boost = boost_rate(non_boosted, policy.boost_multiplier);
    for (std::size_t idx : boosted) table.set_rate(idx, boost);
  }
}

}  // namespace fkmc
