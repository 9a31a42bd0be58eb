#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include "fkmc/random.hpp"
#include "fkmc/rate_table.hpp"

namespace fkmc {

struct Clock {
  double sim_time = 0.0;  // days since epoch
  double max_time = 0.0;  // days

  bool expired() const { return sim_time >= max_time; }
};

/// -ln(u2) / R. Zero when u2 == 1.
inline double waiting_time(double total_rate, double u2) {
  if (!(total_rate > 0.0) || std::isinf(total_rate)) {
    throw InvalidRate("total rate must be positive and finite, got " + std::to_string(total_rate));
  }
  if (!(u2 > 0.0 && u2 <= 1.0)) throw std::invalid_argument("u2 must lie in (0, 1]");
  return -std::log(u2) / total_rate;
}

inline Clock advance_clock(Clock clock, double total_rate, double u2) {
  clock.sim_time += waiting_time(total_rate, u2);
  return clock;
}

/// Random numbers and outcome of the most recent engine iteration.
struct EngineStep {
  double u1 = 0.0;
  double u2 = 0.0;
  std::size_t selected = 0;
  double dt = 0.0;
};

// A model rebuilds its candidate list for the current time and carries out
// the selected candidate, returning exactly one record.
template <typename M>
concept KmcModel = requires(M& m, RateTable& table, const EventCandidate& c, double now, Rng& rng) {
  typename M::record_type;
  m.update_rates(table, now);
  { m.execute(c, now, rng) } -> std::same_as<typename M::record_type>;
};

enum class Termination { reached_max_time, no_enabled_events, step_limit };

struct RunSummary {
  Termination termination = Termination::reached_max_time;
  std::uint64_t steps = 0;
  double final_time = 0.0;
  std::string diagnostic;
};

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::reached_max_time: return "reached_max_time";
    case Termination::no_enabled_events: return "no_enabled_events";
    case Termination::step_limit: return "step_limit";
  }
  return "unknown";
}

// Rejection-free kinetic Monte Carlo loop.
//
// Per step the random stream is consumed strictly as: u1 (event selection),
// u2 (waiting time), then whatever the executed event draws. The waiting time
// is known before execution, so the event is carried out and stamped at the
// post-advance time.
template <KmcModel Model>
class Engine {
 public:
  using record_type = typename Model::record_type;

  Engine(Model& model, Rng& rng, Clock clock) : model_(model), rng_(rng), clock_(clock) {}

  /// One iteration. Throws NoEnabledEvents without touching the clock or the stream.
  record_type step() {
    table_.clear();
    model_.update_rates(table_, clock_.sim_time);
    table_.finalize();
    if (table_.empty()) throw NoEnabledEvents{};

    EngineStep s;
    s.u1 = rng_.uniform();
    s.selected = table_.select(s.u1);
    s.u2 = rng_.uniform();
    s.dt = waiting_time(table_.total_rate(), s.u2);

    const double event_time = clock_.sim_time + s.dt;
    record_type record = model_.execute(table_[s.selected], event_time, rng_);
    clock_.sim_time = event_time;
    last_ = s;
    ++steps_;
    return record;
  }

  /// Loop until the clock passes max_time or nothing is enabled. Every
  /// completed iteration hands exactly one record to `sink`.
  template <typename Sink>
  RunSummary run(Sink&& sink) {
    return drive(std::forward<Sink>(sink), std::numeric_limits<std::uint64_t>::max());
  }

  /// Same as run() but also stops after `limit` iterations.
  template <typename Sink>
  RunSummary run_steps(std::uint64_t limit, Sink&& sink) {
    return drive(std::forward<Sink>(sink), limit);
  }

  const Clock& clock() const { return clock_; }
  const EngineStep& last_step() const { return last_; }
  const RateTable& rate_table() const { return table_; }
  std::uint64_t steps() const { return steps_; }

 private:
  template <typename Sink>
  RunSummary drive(Sink&& sink, std::uint64_t limit) {
    RunSummary summary;
    const std::uint64_t start = steps_;
    while (!clock_.expired()) {
      if (steps_ - start >= limit) {
        summary.termination = Termination::step_limit;
        break;
      }
      try {
        sink(step());
      } catch (const NoEnabledEvents&) {
        summary.termination = Termination::no_enabled_events;
        summary.diagnostic = "no enabled events at t = " + std::to_string(clock_.sim_time) +
                             " days after " + std::to_string(steps_ - start) + " steps";
        break;
      }
    }
    summary.steps = steps_ - start;
    summary.final_time = clock_.sim_time;
    return summary;
  }

  Model& model_;
  Rng& rng_;
  Clock clock_;
  RateTable table_;
  EngineStep last_;
  std::uint64_t steps_ = 0;
};

}  // namespace fkmc
