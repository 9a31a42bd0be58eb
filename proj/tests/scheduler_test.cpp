#include <vector>

#include <gtest/gtest.h>

#include "fkmc/random.hpp"
#include "fkmc/scheduler.hpp"

namespace fkmc {
namespace {

ArchetypeSpec payer_spec() {
  ArchetypeSpec s;
  s.name = "payer";
  s.kind = AgentKind::individual;
  s.rates = {{Action::cash_in, {2.0, 0.0}}, {Action::id_verification, {1.0, 0.0}}, {Action::btc_buy, {0.7, 0.0}}};
  s.amounts = {{Action::cash_in, {20.0, 0.0}},
               {Action::btc_buy, {5.0, 0.0}},
               {Action::pay_rent, {100.0, 0.0}},
               {Action::deposit_paycheque, {300.0, 0.0}}};
  s.pays_rent = true;
  s.receives_paycheque = true;
  s.has_loan = true;
  s.loan = {{100.0, 0.0}, 0.25};
  s.id_success_prob = 1.0;
  s.initial_cash = 500.0;
  return s;
}

std::vector<Agent> make_population(std::size_t n = 1) {
  Rng rng(1);
  std::vector<Agent> pop;
  for (std::size_t i = 0; i < n; ++i) {
    pop.push_back(sample_agent(payer_spec(), i, rng));
    init_schedules(pop.back(), payer_spec(), ScheduleSettings{}, 0.0);
  }
  return pop;
}

double rate_of(const RateTable& t, std::size_t agent, Action a) {
  for (const auto& e : t.entries()) {
    if (e.agent == agent && e.action == a) return e.rate;
  }
  return 0.0;
}

TEST(InitSchedules, DefaultOffsets) {
  auto pop = make_population();
  EXPECT_EQ(pop[0].schedule(ScheduleSlot::rent).next_due, 0.0);
  EXPECT_EQ(pop[0].schedule(ScheduleSlot::paycheque).next_due, 14.0);
  EXPECT_EQ(pop[0].schedule(ScheduleSlot::loan).next_due, 7.0);
  EXPECT_EQ(pop[0].schedule(ScheduleSlot::loan).period, 7.0);
}

TEST(InitSchedules, CalendarAnchorUsesTheEpochGrid) {
  ScheduleSettings s;
  s.anchor = ScheduleAnchor::calendar;
  Rng rng(1);
  Agent a = sample_agent(payer_spec(), 0, rng);
  init_schedules(a, payer_spec(), s, 20.5);
  EXPECT_EQ(a.schedule(ScheduleSlot::rent).next_due, 30.0);
  EXPECT_EQ(a.schedule(ScheduleSlot::paycheque).next_due, 28.0);
  EXPECT_EQ(a.schedule(ScheduleSlot::loan).next_due, 21.0);
  init_schedules(a, payer_spec(), ScheduleSettings{}, 20.5);
  EXPECT_EQ(a.schedule(ScheduleSlot::rent).next_due, 20.5);
  EXPECT_EQ(a.schedule(ScheduleSlot::paycheque).next_due, 34.5);
}

TEST(UpdateRates, DuePaymentGetsTheBoostRate) {
  auto pop = make_population();
  RateTable t;
  update_rates(pop, 0.0, RatePolicy{}, t);
  t.finalize();
  // Rent is due at t = 0; cash_in (2) and id_verification (1) are the other rates.
  EXPECT_DOUBLE_EQ(rate_of(t, 0, Action::pay_rent), 1e6 * 3.0);
  EXPECT_EQ(rate_of(t, 0, Action::deposit_paycheque), 0.0);

  t.clear();
  update_rates(pop, 13.99, RatePolicy{}, t);
  EXPECT_EQ(rate_of(t, 0, Action::deposit_paycheque), 0.0);
  t.clear();
  update_rates(pop, 14.0, RatePolicy{}, t);
  EXPECT_GT(rate_of(t, 0, Action::deposit_paycheque), 1e6);
}

TEST(UpdateRates, BoostUsesFloorWhenNothingElseIsEnabled) {
  EXPECT_EQ(boost_rate(0.0, 1e6), 1e6);
  EXPECT_EQ(boost_rate(12.5, 1e6), 12.5e6);
}

TEST(UpdateRates, FiredPaymentDropsToZeroUntilNextDue) {
  auto pop = make_population();
  RateTable t;
  update_rates(pop, 0.0, RatePolicy{}, t);
  fire_and_reset(pop[0], ScheduleSlot::rent);
  t.clear();
  update_rates(pop, 0.001, RatePolicy{}, t);
  EXPECT_EQ(rate_of(t, 0, Action::pay_rent), 0.0);
  EXPECT_EQ(pop[0].schedule(ScheduleSlot::rent).next_due, 30.0);
  EXPECT_FALSE(pop[0].schedule(ScheduleSlot::rent).armed);
}

TEST(UpdateRates, RepaidLoanNeverReturns) {
  auto pop = make_population();
  pop[0].loan_balance = Money{};
  RateTable t;
  update_rates(pop, 7.0, RatePolicy{}, t);
  EXPECT_EQ(rate_of(t, 0, Action::repay_loan), 0.0);
  EXPECT_FALSE(pop[0].schedule(ScheduleSlot::loan).active);
  EXPECT_FALSE(arm_scheduled(pop[0], ScheduleSlot::loan, 100.0));
}

TEST(UpdateRates, VerificationUnlocksBitcoinRate) {
  auto pop = make_population();
  RateTable t;
  update_rates(pop, 1.0, RatePolicy{}, t);
  EXPECT_EQ(rate_of(t, 0, Action::btc_buy), 0.0);
  pop[0].id_verified = true;
  pop[0].rates[index_of(Action::id_verification)] = 0.0;
  t.clear();
  update_rates(pop, 1.0, RatePolicy{}, t);
  EXPECT_EQ(rate_of(t, 0, Action::btc_buy), 0.7);
  EXPECT_EQ(rate_of(t, 0, Action::id_verification), 0.0);
}

TEST(UpdateRates, UnfundedPaymentSkipsOneCycleAndKeepsCadence) {
  auto pop = make_population();
  pop[0].cash = Money{};
  RateTable t;
  update_rates(pop, 0.0, RatePolicy{}, t);
  EXPECT_EQ(rate_of(t, 0, Action::pay_rent), 0.0);
  EXPECT_EQ(pop[0].schedule(ScheduleSlot::rent).next_due, 30.0);
  pop[0].cash = Money::from_units(50);
  t.clear();
  update_rates(pop, 30.2, RatePolicy{}, t);
  EXPECT_GT(rate_of(t, 0, Action::pay_rent), 0.0);
}

TEST(UpdateRates, ArrivalCandidateIsAppendedLast) {
  auto pop = make_population();
  RatePolicy policy;
  policy.new_customer_rate = 0.5;
  RateTable t;
  update_rates(pop, 1.0, policy, t);
  ASSERT_FALSE(t.empty());
  EXPECT_EQ(t.entries().back().action, Action::join);
  EXPECT_EQ(t.entries().back().agent, kWorldEvent);
}

// With every boost at 1e6 x the rest, the cumulative array bounds the chance
// of picking anything else by (non-boosted sum) / (table total).
TEST(UpdateRates, BoostDominatesBySixOrdersOfMagnitude) {
  auto pop = make_population(50);
  RateTable t;
  update_rates(pop, 7.0, RatePolicy{}, t);
  t.finalize();
  double boosted = 0.0, others = 0.0;
  for (const auto& e : t.entries()) (is_scheduled(e.action) ? boosted : others) += e.rate;
  ASSERT_GT(boosted, 0.0);
  EXPECT_LE(others / t.total_rate(), 1e-6);
}

TEST(UpdateRates, SimultaneousPaymentsSplitEvenly) {
  auto pop = make_population();
  pop[0].schedule(ScheduleSlot::rent).active = false;
  RateTable t;
  update_rates(pop, 14.0, RatePolicy{}, t);  // paycheque (due 14) and loan (due 7, unfired) both armed
  t.finalize();
  ASSERT_GT(rate_of(t, 0, Action::deposit_paycheque), 0.0);
  ASSERT_GT(rate_of(t, 0, Action::repay_loan), 0.0);
  Rng rng(21);
  int paycheque = 0, loan = 0;
  constexpr int kDraws = 200'000;
  for (int i = 0; i < kDraws; ++i) {
    const auto a = t[t.select(rng.uniform())].action;
    paycheque += a == Action::deposit_paycheque;
    loan += a == Action::repay_loan;
  }
  EXPECT_NEAR(paycheque / double(kDraws), 0.5, 0.005);
  EXPECT_NEAR(loan / double(kDraws), 0.5, 0.005);
}

}  // namespace
}  // namespace fkmc
