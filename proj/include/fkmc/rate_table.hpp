#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkmc/types.hpp"

namespace fkmc {

/// Thrown when a step finds no candidate with a positive rate.
class NoEnabledEvents : public std::runtime_error {
 public:
  NoEnabledEvents() : std::runtime_error("no enabled events") {}
};

class InvalidRate : public std::invalid_argument {
 public:
  explicit InvalidRate(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr std::size_t kWorldEvent = std::numeric_limits<std::size_t>::max();

// One (agent, action, rate) entry. `agent` is a population index, or
// kWorldEvent for world-level events such as customer arrivals.
struct EventCandidate {
  std::size_t agent = 0;
  Action action = Action::cash_in;
  double rate = 0.0;  // days^-1
};

// Flattened per-step list of enabled events with its normalized cumulative
// array. Rebuilt from scratch every step: add() the candidates, then
// finalize(). Zero-rate candidates are dropped on insertion, so a boundary
// hit in the search can never land on a disabled event.
class RateTable {
 public:
  void clear() {
    entries_.clear();
    cumulative_.clear();
    total_ = 0.0;
    finalized_ = false;
  }

  /// Returns the entry index, or npos when the rate is zero and the candidate was dropped.
  std::size_t add(std::size_t agent, Action action, double rate) {
    if (!(rate >= 0.0) || std::isinf(rate)) {
      throw InvalidRate("candidate rate must be finite and nonnegative, got " + std::to_string(rate));
    }
    if (rate == 0.0) return npos;
    entries_.push_back({agent, action, rate});
    finalized_ = false;
    return entries_.size() - 1;
  }

  /// Overwrite a rate before finalize(); used for boosts that depend on the other rates.
  void set_rate(std::size_t index, double rate) {
    if (!(rate > 0.0) || std::isinf(rate)) throw InvalidRate("boosted rate must be positive and finite");
    entries_.at(index).rate = rate;
    finalized_ = false;
  }

  /// cumulative[i] = (r_0 + ... + r_i) / R, normalized by the freshly computed sum.
  void finalize() {
    total_ = 0.0;
    for (const auto& e : entries_) total_ += e.rate;
    cumulative_.resize(entries_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      running += entries_[i].rate;
      cumulative_[i] = running / total_;
    }
    // Summation order can leave the last element a few ulps short of 1; a
    // draw of u1 = 1 must still land on the final entry.
    if (!cumulative_.empty()) cumulative_.back() = 1.0;
    finalized_ = true;
  }

  /// Smallest index whose cumulative value is >= u1.
  std::size_t select(double u1) const {
    if (entries_.empty()) throw NoEnabledEvents{};
    if (!finalized_) throw std::logic_error("RateTable::select before finalize");
    if (!(u1 > 0.0 && u1 <= 1.0)) throw std::invalid_argument("u1 must lie in (0, 1]");
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u1);
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

  std::span<const EventCandidate> entries() const { return entries_; }
  std::span<const double> cumulative() const { return cumulative_; }
  const EventCandidate& operator[](std::size_t i) const { return entries_[i]; }
  double total_rate() const { return total_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  std::vector<EventCandidate> entries_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
  bool finalized_ = false;
};

/// Free-function form of RateTable::select.
inline std::size_t select_event(const RateTable& table, double u1) { return table.select(u1); }

}  // namespace fkmc
