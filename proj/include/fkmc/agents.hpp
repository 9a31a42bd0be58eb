#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "fkmc/random.hpp"
#include "fkmc/record.hpp"
#include "fkmc/types.hpp"

namespace fkmc {

enum class AgentKind { individual, business };

struct NormalParams {
  double mean = 0.0;
  double std = 0.0;

  friend bool operator==(const NormalParams&, const NormalParams&) = default;
};

struct LoanSpec {
  NormalParams original;          // currency
  double repayment_fraction = 0;  // of the original, per 7-day installment

  friend bool operator==(const LoanSpec&, const LoanSpec&) = default;
};

// Distribution parameters from which the agents of one archetype are drawn.
// `rates` only ever holds non-scheduled actions; the three guaranteed
// payments are switched on by the boolean flags.
struct ArchetypeSpec {
  std::string name;
  AgentKind kind = AgentKind::individual;
  std::map<Action, NormalParams> rates;    // days^-1
  std::map<Action, NormalParams> amounts;  // currency, drawn per event
  NormalParams p2p_threshold;              // currency, drawn per agent
  double id_success_prob = 1.0;
  double initial_cash = 0.0;
  bool receives_paycheque = false;
  bool pays_rent = false;
  bool has_loan = false;
  LoanSpec loan;

  bool allows(Action a) const {
    switch (a) {
      case Action::pay_rent: return pays_rent;
      case Action::deposit_paycheque: return receives_paycheque;
      case Action::repay_loan: return has_loan;
      case Action::join: return false;
      default: return rates.contains(a);
    }
  }

  friend bool operator==(const ArchetypeSpec&, const ArchetypeSpec&) = default;
};

/// Replacement parameters for agents flagged as bad actors, applied on top of any archetype.
struct BadActorOverrides {
  std::optional<double> id_success_prob;
  std::map<Action, NormalParams> rates;
  std::map<Action, NormalParams> amounts;
  std::optional<NormalParams> p2p_threshold;

  friend bool operator==(const BadActorOverrides&, const BadActorOverrides&) = default;
};

inline ArchetypeSpec apply_overrides(ArchetypeSpec spec, const BadActorOverrides& o) {
  if (o.id_success_prob) spec.id_success_prob = *o.id_success_prob;
  if (o.p2p_threshold) spec.p2p_threshold = *o.p2p_threshold;
  for (const auto& [a, p] : o.rates) {
    if (spec.rates.contains(a)) spec.rates[a] = p;
  }
  for (const auto& [a, p] : o.amounts) spec.amounts[a] = p;
  return spec;
}

// Index into Agent::schedules.
enum class ScheduleSlot : std::uint8_t { rent, paycheque, loan };
inline constexpr std::array<ScheduleSlot, 3> kScheduleSlots = {ScheduleSlot::rent, ScheduleSlot::paycheque,
                                                               ScheduleSlot::loan};

constexpr Action scheduled_action(ScheduleSlot s) {
  switch (s) {
    case ScheduleSlot::rent: return Action::pay_rent;
    case ScheduleSlot::paycheque: return Action::deposit_paycheque;
    case ScheduleSlot::loan: return Action::repay_loan;
  }
  return Action::pay_rent;
}

constexpr ScheduleSlot schedule_slot(Action a) {
  switch (a) {
    case Action::pay_rent: return ScheduleSlot::rent;
    case Action::deposit_paycheque: return ScheduleSlot::paycheque;
    case Action::repay_loan: return ScheduleSlot::loan;
    default: throw std::invalid_argument("not a scheduled action");
  }
}

/// Per-agent state of one guaranteed payment.
struct ScheduledEvent {
  bool active = false;  // agent participates; cleared for good once a loan is repaid
  double next_due = 0.0;
  double period = 0.0;
  bool armed = false;
};

struct Agent {
  AgentId id = 0;
  AgentKind kind = AgentKind::individual;
  std::size_t archetype = 0;  // index into the config's archetype list
  bool is_bad_actor = false;

  Money cash;
  double btc = 0.0;
  Money loan_original;
  Money loan_balance;
  Money loan_installment;

  bool id_verified = false;
  double joined_at = 0.0;

  std::array<double, kAgentActionCount> rates{};  // sampled; scheduled slots stay 0
  std::array<NormalParams, kAgentActionCount> amounts{};
  Money p2p_threshold;
  double id_success_prob = 1.0;

  std::array<ScheduledEvent, 3> schedules{};

  double base_rate(Action a) const { return rates[index_of(a)]; }
  ScheduledEvent& schedule(ScheduleSlot s) { return schedules[static_cast<std::size_t>(s)]; }
  const ScheduledEvent& schedule(ScheduleSlot s) const { return schedules[static_cast<std::size_t>(s)]; }
};

/// Actions an agent may be selected for, as a bitmask over Action.
class ActionSet {
 public:
  void insert(Action a) { bits_ |= bit(a); }
  bool contains(Action a) const { return (bits_ & bit(a)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  friend bool operator==(ActionSet, ActionSet) = default;

 private:
  static constexpr std::uint16_t bit(Action a) { return static_cast<std::uint16_t>(1u << index_of(a)); }
  std::uint16_t bits_ = 0;
};

// Draws one agent. Sampling order is fixed (rates in Action order, then the
// p2p threshold, then the loan principal) because it is part of the
// determinism contract. Negative draws are clamped to zero.
inline Agent sample_agent(const ArchetypeSpec& spec, AgentId id, Rng& rng) {
  Agent agent;
  agent.id = id;
  agent.kind = spec.kind;
  agent.cash = Money::from_units(std::max(spec.initial_cash, 0.0));
  agent.id_success_prob = spec.id_success_prob;

  for (Action a : kAgentActions) {
    if (is_scheduled(a)) continue;
    if (auto it = spec.rates.find(a); it != spec.rates.end()) {
      agent.rates[index_of(a)] = std::max(rng.normal(it->second.mean, it->second.std), 0.0);
    }
  }
  for (const auto& [a, p] : spec.amounts) {
    if (index_of(a) < kAgentActionCount) agent.amounts[index_of(a)] = p;
  }
  agent.p2p_threshold =
      Money::from_units(std::max(rng.normal(spec.p2p_threshold.mean, spec.p2p_threshold.std), 0.0));

  if (spec.has_loan && spec.kind == AgentKind::individual) {
    agent.loan_original = std::max(
        Money::from_units(rng.normal(spec.loan.original.mean, spec.loan.original.std)), kOneCent);
    agent.loan_balance = agent.loan_original;
    // Rounded up to the cent so the loan is cleared in ceil(1/fraction) installments.
    const double installment = std::ceil(spec.loan.repayment_fraction * agent.loan_original.cents);
    agent.loan_installment = Money::from_cents(std::max<std::int64_t>(static_cast<std::int64_t>(installment), 1));
  }
  return agent;
}

/// Scheduled actions whose execution debits cash; they are skipped for a cycle when the account is empty.
constexpr bool scheduled_needs_funds(Action a) { return a == Action::pay_rent || a == Action::repay_loan; }

/// Whether an armed scheduled payment can execute in the agent's current state.
inline bool scheduled_ready(const Agent& agent, Action a) {
  const auto& s = agent.schedule(schedule_slot(a));
  if (!s.active || !s.armed) return false;
  if (a == Action::repay_loan && agent.loan_balance <= Money{}) return false;
  if (scheduled_needs_funds(a) && agent.cash < kOneCent) return false;
  return true;
}

// State gates. A non-scheduled action is eligible when its sampled rate is
// positive and:
//   cash_out, btc_buy   at least one cent to spend
//   p2p_send            cash strictly above the agent's threshold, and someone to pay
//   id_verification     not yet verified
//   btc_buy             verified, individuals only
// Scheduled actions are eligible only while armed (see scheduler.hpp).
inline ActionSet eligible_actions(const Agent& agent, std::size_t population_size) {
  ActionSet set;
  const bool business = agent.kind == AgentKind::business;
  for (Action a : kAgentActions) {
    if (is_scheduled(a)) {
      if (!business && scheduled_ready(agent, a)) set.insert(a);
      continue;
    }
    if (!(agent.base_rate(a) > 0.0)) continue;
    switch (a) {
      case Action::cash_in:
        set.insert(a);
        break;
      case Action::cash_out:
        if (agent.cash >= kOneCent) set.insert(a);
        break;
      case Action::p2p_send:
        if (agent.cash >= kOneCent && agent.cash > agent.p2p_threshold && population_size > 1) set.insert(a);
        break;
      case Action::id_verification:
        if (!agent.id_verified) set.insert(a);
        break;
      case Action::btc_buy:
        if (!business && agent.id_verified && agent.cash >= kOneCent) set.insert(a);
        break;
      default:
        break;
    }
  }
  return set;
}

struct ActionOutcome {
  Action action = Action::cash_in;
  EventValue value;
  std::optional<std::size_t> counterparty;  // population index, p2p only
};

struct ActionSettings {
  Money unverified_cap = Money::from_units(10.0);
  double btc_price = 1.0;  // currency per BTC
};

/// Normal draw rounded to the cent and clamped to [0.01, cap].
inline Money draw_amount(const NormalParams& p, Money cap, Rng& rng) {
  const Money drawn = Money::from_units(rng.normal(p.mean, p.std));
  return std::clamp(drawn, kOneCent, std::max(cap, kOneCent));
}

inline ActionOutcome attempt_id_verification(Agent& agent, Rng& rng) {
  if (agent.id_verified) throw std::logic_error("id_verification attempted by a verified agent");
  const bool success = rng.uniform() <= agent.id_success_prob;
  if (success) {
    agent.id_verified = true;
    agent.rates[index_of(Action::id_verification)] = 0.0;
  }
  return {Action::id_verification, success, std::nullopt};
}

/// Uniform over every agent except the sender.
inline std::size_t choose_receiver(std::size_t sender, std::size_t population_size, Rng& rng) {
  if (population_size < 2) throw std::logic_error("p2p_send needs at least two agents");
  auto j = static_cast<std::size_t>(rng.index(population_size - 1));
  return j >= sender ? j + 1 : j;
}

// Receiver is drawn before the amount. Cash is conserved exactly.
inline ActionOutcome p2p_send(std::span<Agent> population, std::size_t sender, Rng& rng) {
  Agent& from = population[sender];
  if (!(from.cash > from.p2p_threshold) || from.cash < kOneCent) {
    throw std::logic_error("p2p_send with balance not above threshold");
  }
  const std::size_t to = choose_receiver(sender, population.size(), rng);
  const Money amount = draw_amount(from.amounts[index_of(Action::p2p_send)], from.cash, rng);
  from.cash -= amount;
  population[to].cash += amount;
  return {Action::p2p_send, amount, to};
}

// Carries out one eligible action for population[who]. Scheduled actions only
// move money here; re-arming is the scheduler's job (fire_and_reset).
inline ActionOutcome execute_action(std::span<Agent> population, std::size_t who, Action action,
                                    const ActionSettings& settings, Rng& rng) {
  Agent& agent = population[who];
  if (!eligible_actions(agent, population.size()).contains(action)) {
    throw std::logic_error("ineligible action " + std::string(action_name(action)) + " for agent " +
                           std::to_string(agent.id));
  }
  const auto& amount = agent.amounts[index_of(action)];
  const Money unlimited = Money::from_cents(std::numeric_limits<std::int64_t>::max() / 4);

  switch (action) {
    case Action::cash_in: {
      const Money cap = agent.id_verified ? unlimited : settings.unverified_cap;
      const Money v = draw_amount(amount, cap, rng);
      agent.cash += v;
      return {action, v, std::nullopt};
    }
    case Action::cash_out: {
      const Money cap = agent.id_verified ? agent.cash : std::min(agent.cash, settings.unverified_cap);
      const Money v = draw_amount(amount, cap, rng);
      agent.cash -= v;
      return {action, v, std::nullopt};
    }
    case Action::p2p_send:
      return p2p_send(population, who, rng);
    case Action::id_verification:
      return attempt_id_verification(agent, rng);
    case Action::btc_buy: {
      const Money v = draw_amount(amount, agent.cash, rng);
      agent.cash -= v;
      agent.btc += v.units() / settings.btc_price;
      return {action, v, std::nullopt};
    }
    case Action::pay_rent: {
      const Money v = draw_amount(amount, agent.cash, rng);
      agent.cash -= v;
      return {action, v, std::nullopt};
    }
    case Action::deposit_paycheque: {
      const Money v = draw_amount(amount, unlimited, rng);
      agent.cash += v;
      return {action, v, std::nullopt};
    }
    case Action::repay_loan: {
      const Money v = std::min({agent.loan_installment, agent.loan_balance, agent.cash});
      agent.cash -= v;
      agent.loan_balance -= v;
      return {action, v, std::nullopt};
    }
    case Action::join:
      break;
  }
  throw std::logic_error("execute_action: unsupported action");
}

}  // namespace fkmc
