#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fkmc/agents.hpp"
#include "fkmc/config.hpp"
#include "fkmc/logio.hpp"

namespace fkmc {

/// The five actions with dedicated feature columns, in column order.
inline constexpr std::array<Action, 5> kFeaturedActions = {Action::cash_in, Action::id_verification, Action::cash_out,
                                                           Action::p2p_send, Action::btc_buy};

/// Column prefix of a featured action. id_verification appears as customer_verification.
constexpr std::string_view feature_prefix(Action a) {
  switch (a) {
    case Action::id_verification: return "customer_verification";
    case Action::p2p_send: return "p2p_sent";
    default: return action_name(a);
  }
}

// Mean, median, and sample standard deviation (n - 1 denominator) of
// successive gaps, in seconds. All three are absent when fewer than two
// timestamps exist; the deviation is also absent for a single gap.
struct TimeDiffStats {
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> std;
};

inline TimeDiffStats time_diff_stats(std::span<const LogTime> times) {
  if (!std::is_sorted(times.begin(), times.end())) throw std::logic_error("time_diff_stats: timestamps not sorted");
  TimeDiffStats s;
  if (times.size() < 2) return s;
  std::vector<double> gaps;
  gaps.reserve(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    gaps.push_back(static_cast<double>((times[i] - times[i - 1]).count()) / 100.0);
  }
  const double n = static_cast<double>(gaps.size());
  double sum = 0.0;
  for (double g : gaps) sum += g;
  const double mean = sum / n;
  double ss = 0.0;
  for (double g : gaps) ss += (g - mean) * (g - mean);
  std::sort(gaps.begin(), gaps.end());
  const std::size_t mid = gaps.size() / 2;
  s.mean = mean;
  s.median = gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
  if (gaps.size() > 1) s.std = std::sqrt(ss / (n - 1.0));
  return s;
}

struct ActionFeatures {
  std::uint64_t count = 0;
  double ratio = 0.0;        // count / total_events
  double value = 0.0;        // sum of values; successes for customer_verification
  double value_ratio = 0.0;  // value / sum of the five featured values, 0 when that sum is 0
  TimeDiffStats time_diff;
};

struct FeatureRow {
  std::string token;
  std::uint64_t total_events = 0;
  std::array<ActionFeatures, kFeaturedActions.size()> actions{};
  TimeDiffStats time_diff_all;
  std::optional<int> label;

  const ActionFeatures& of(Action a) const {
    for (std::size_t i = 0; i < kFeaturedActions.size(); ++i) {
      if (kFeaturedActions[i] == a) return actions[i];
    }
    throw std::invalid_argument("not a featured action");
  }
};

// One row per initiating token, sorted by token. Scheduled payments and joins
// count toward total_events and the *_all gaps but get no columns of their own.
inline std::vector<FeatureRow> extract_features(std::span<const LogEntry> log) {
  struct Acc {
    std::vector<LogTime> all;
    std::array<std::vector<LogTime>, kFeaturedActions.size()> per_action;
    std::array<std::int64_t, kFeaturedActions.size()> cents{};
    std::uint64_t verified = 0;
  };
  std::map<std::string, Acc> by_token;
  for (const auto& e : log) {
    Acc& acc = by_token[e.initiator];
    acc.all.push_back(e.time);
    for (std::size_t i = 0; i < kFeaturedActions.size(); ++i) {
      if (kFeaturedActions[i] != e.action) continue;
      acc.per_action[i].push_back(e.time);
      if (const auto* m = std::get_if<Money>(&e.value)) acc.cents[i] += m->cents;
      if (const auto* b = std::get_if<bool>(&e.value); b && *b) ++acc.verified;
    }
  }

  std::vector<FeatureRow> rows;
  rows.reserve(by_token.size());
  for (auto& [token, acc] : by_token) {
    FeatureRow row;
    row.token = token;
    row.total_events = acc.all.size();
    row.time_diff_all = time_diff_stats(acc.all);
    double value_total = 0.0;
    for (std::size_t i = 0; i < kFeaturedActions.size(); ++i) {
      auto& f = row.actions[i];
      f.count = acc.per_action[i].size();
      f.ratio = static_cast<double>(f.count) / static_cast<double>(row.total_events);
      f.value = kFeaturedActions[i] == Action::id_verification ? static_cast<double>(acc.verified)
                                                               : static_cast<double>(acc.cents[i]) / 100.0;
      f.time_diff = time_diff_stats(acc.per_action[i]);
      value_total += f.value;
    }
    for (auto& f : row.actions) f.value_ratio = value_total > 0.0 ? f.value / value_total : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

class LabelError : public std::runtime_error {
 public:
  explicit LabelError(const std::string& what) : std::runtime_error(what) {}
};

/// token -> 1 for bad actors, 0 otherwise.
inline std::map<std::string, int> label_table(std::span<const Agent> population) {
  std::map<std::string, int> labels;
  for (const auto& a : population) labels.emplace(token_for(a.id), a.is_bad_actor ? 1 : 0);
  return labels;
}

inline void attach_labels(std::vector<FeatureRow>& rows, const std::map<std::string, int>& labels) {
  for (auto& row : rows) {
    auto it = labels.find(row.token);
    if (it == labels.end()) throw LabelError("token " + row.token + " from the log is not in the population");
    row.label = it->second;
  }
}

/// Column names in output order, excluding the leading token and trailing label.
inline std::vector<std::string> feature_columns() {
  std::vector<std::string> cols{"total_events"};
  for (const char* stat : {"count", "ratio", "value", "value_ratio"}) {
    for (Action a : kFeaturedActions) cols.push_back(std::string(feature_prefix(a)) + "_" + stat);
  }
  for (const char* stat : {"mean", "median", "std"}) cols.push_back(std::string("time_diff_") + stat + "_all");
  for (Action a : kFeaturedActions) {
    for (const char* stat : {"mean", "median", "std"}) {
      cols.push_back(std::string("time_diff_") + stat + "_" + std::string(feature_prefix(a)));
    }
  }
  return cols;
}

namespace detail {

inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string{}; }

}  // namespace detail

// Header: initiating_token, the 39 feature columns, label. Undefined gap
// statistics are empty fields. Doubles use the shortest round-trip form.
inline void write_features_csv(std::ostream& out, std::span<const FeatureRow> rows) {
  out << "initiating_token";
  for (const auto& c : feature_columns()) out << ',' << c;
  out << ",label\n";
  for (const auto& r : rows) {
    std::string line = r.token;
    auto put = [&](const std::string& s) {
      line += ',';
      line += s;
    };
    put(std::to_string(r.total_events));
    for (const auto& f : r.actions) put(std::to_string(f.count));
    for (const auto& f : r.actions) put(detail::format_number(f.ratio));
    for (const auto& f : r.actions) put(detail::format_number(f.value));
    for (const auto& f : r.actions) put(detail::format_number(f.value_ratio));
    for (const TimeDiffStats* s : {&r.time_diff_all}) {
      put(detail::format_optional(s->mean));
      put(detail::format_optional(s->median));
      put(detail::format_optional(s->std));
    }
    for (const auto& f : r.actions) {
      put(detail::format_optional(f.time_diff.mean));
      put(detail::format_optional(f.time_diff.median));
      put(detail::format_optional(f.time_diff.std));
    }
    put(r.label ? std::to_string(*r.label) : std::string{});
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("write to feature table failed");
}

}  // namespace fkmc
