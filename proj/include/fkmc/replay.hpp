#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fkmc/agents.hpp"
#include "fkmc/config.hpp"
#include "fkmc/logio.hpp"

namespace fkmc {

struct ReplayAccount {
  AgentKind kind = AgentKind::individual;
  Money cash;
  double btc = 0.0;
  Money loan_balance;
  bool verified = false;
  bool present = false;  // false until a join record for late arrivals
};

struct ReplayReport {
  std::map<std::string, ReplayAccount> accounts;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Re-applies every record of a log to fresh account state and checks the
// ledger rules along the way: no negative cash or loan balance, no btc_buy
// before a successful verification, no verification attempt after one, no
// rent/loan/btc records from businesses, p2p conserves cash.
//
// `population` is the run's final population (it must contain every agent
// that ever appeared); agents beyond the configured initial count must enter
// through a join record.
inline ReplayReport replay_log(std::span<const LogEntry> log, std::span<const Agent> population,
                               const SimulationConfig& config) {
  ReplayReport report;
  const std::uint64_t initial_count = config.population_size();
  for (const auto& a : population) {
    ReplayAccount acc;
    acc.kind = a.kind;
    acc.cash = Money::from_units(std::max(config.archetypes.at(a.archetype).initial_cash, 0.0));
    acc.loan_balance = a.loan_original;
    acc.present = a.id < initial_count;
    report.accounts.emplace(token_for(a.id), acc);
  }
  auto fail = [&](const LogEntry& e, const std::string& what) {
    report.violations.push_back("line " + std::to_string(e.line) + ": " + what);
  };

  for (const auto& e : log) {
    auto it = report.accounts.find(e.initiator);
    if (it == report.accounts.end()) {
      fail(e, "unknown initiator " + e.initiator);
      continue;
    }
    ReplayAccount& acc = it->second;
    if (e.action == Action::join) {
      if (acc.present) fail(e, "join by an agent already present");
      acc.present = true;
      continue;
    }
    if (!acc.present) fail(e, "event before the agent joined");

    const bool business = acc.kind == AgentKind::business;
    if (business && (e.action == Action::pay_rent || e.action == Action::repay_loan || e.action == Action::btc_buy)) {
      fail(e, std::string(action_name(e.action)) + " initiated by a business");
    }
    const Money amount = std::holds_alternative<Money>(e.value) ? std::get<Money>(e.value) : Money{};

    switch (e.action) {
      case Action::cash_in:
      case Action::deposit_paycheque:
        acc.cash += amount;
        break;
      case Action::cash_out:
      case Action::pay_rent:
        acc.cash -= amount;
        break;
      case Action::repay_loan:
        acc.cash -= amount;
        acc.loan_balance -= amount;
        if (acc.loan_balance < Money{}) fail(e, "loan balance negative");
        break;
      case Action::btc_buy:
        if (!acc.verified) fail(e, "btc_buy before successful id_verification");
        acc.cash -= amount;
        acc.btc += amount.units() / config.btc_price;
        break;
      case Action::id_verification:
        if (acc.verified) fail(e, "id_verification after success");
        if (std::get<bool>(e.value)) acc.verified = true;
        break;
      case Action::p2p_send: {
        auto rt = report.accounts.find(e.receiver);
        if (rt == report.accounts.end() || !rt->second.present) {
          fail(e, "unknown receiver " + e.receiver);
        } else if (rt == it) {
          fail(e, "p2p to self");
        } else {
          const Money before = acc.cash + rt->second.cash;
          acc.cash -= amount;
          rt->second.cash += amount;
          if (acc.cash + rt->second.cash != before) fail(e, "p2p did not conserve cash");
        }
        break;
      }
      case Action::join:
        break;
    }
    if (acc.cash < Money{}) fail(e, "negative cash balance for " + e.initiator);
  }
  return report;
}

}  // namespace fkmc
