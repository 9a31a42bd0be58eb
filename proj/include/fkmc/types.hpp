#pragma once

#include <array>
#include <compare>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fkmc {

using AgentId = std::uint64_t;

// Every event kind the simulator can emit. The first eight are agent actions;
// `join` is the world-level new-customer arrival.
enum class Action : std::uint8_t {
  cash_in,
  cash_out,
  p2p_send,
  id_verification,
  btc_buy,
  pay_rent,
  deposit_paycheque,
  repay_loan,
  join,
};

inline constexpr std::size_t kAgentActionCount = 8;
inline constexpr std::size_t kActionCount = 9;

inline constexpr std::array<Action, kAgentActionCount> kAgentActions = {
    Action::cash_in,  Action::cash_out,          Action::p2p_send,
    Action::id_verification, Action::btc_buy,    Action::pay_rent,
    Action::deposit_paycheque, Action::repay_loan,
};

constexpr std::size_t index_of(Action a) { return static_cast<std::size_t>(a); }

/// Name used in configuration files.
constexpr std::string_view action_name(Action a) {
  switch (a) {
    case Action::cash_in: return "cash_in";
    case Action::cash_out: return "cash_out";
    case Action::p2p_send: return "p2p_send";
    case Action::id_verification: return "id_verification";
    case Action::btc_buy: return "btc_buy";
    case Action::pay_rent: return "pay_rent";
    case Action::deposit_paycheque: return "deposit_paycheque";
    case Action::repay_loan: return "repay_loan";
    case Action::join: return "join";
  }
  return "unknown";
}

/// Name written to the event log. Differs from the config name only for p2p.
constexpr std::string_view log_name(Action a) {
  return a == Action::p2p_send ? std::string_view{"p2p_sent"} : action_name(a);
}

constexpr std::optional<Action> action_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kActionCount; ++i) {
    auto a = static_cast<Action>(i);
    if (action_name(a) == name) return a;
  }
  return std::nullopt;
}

constexpr std::optional<Action> action_from_log_name(std::string_view name) {
  if (name == "p2p_sent") return Action::p2p_send;
  if (name == "p2p_send") return std::nullopt;
  return action_from_name(name);
}

/// Guaranteed periodic payments driven by the scheduler, never by a sampled rate.
constexpr bool is_scheduled(Action a) {
  return a == Action::pay_rent || a == Action::deposit_paycheque || a == Action::repay_loan;
}

constexpr bool moves_money(Action a) {
  return a != Action::id_verification && a != Action::join;
}

/// Actions that debit the initiator's cash balance.
constexpr bool is_outflow(Action a) {
  return a == Action::cash_out || a == Action::p2p_send || a == Action::btc_buy ||
         a == Action::pay_rent || a == Action::repay_loan;
}

/// Currency amount held as an integer number of cents so balances replay exactly.
struct Money {
  std::int64_t cents = 0;

  static constexpr Money from_cents(std::int64_t c) { return Money{c}; }
  static Money from_units(double units) { return Money{std::llround(units * 100.0)}; }
  constexpr double units() const { return static_cast<double>(cents) / 100.0; }

  constexpr Money& operator+=(Money o) { cents += o.cents; return *this; }
  constexpr Money& operator-=(Money o) { cents -= o.cents; return *this; }
  friend constexpr Money operator+(Money a, Money b) { return Money{a.cents + b.cents}; }
  friend constexpr Money operator-(Money a, Money b) { return Money{a.cents - b.cents}; }
  friend constexpr auto operator<=>(Money, Money) = default;
};

inline constexpr Money kOneCent = Money::from_cents(1);

}  // namespace fkmc
