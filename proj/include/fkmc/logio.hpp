#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <openssl/sha.h>

#include "fkmc/record.hpp"
#include "fkmc/types.hpp"

namespace fkmc {

inline constexpr std::string_view kLogHeader = "time,initiating_token,action,value,receiving_token";

namespace detail {

inline std::string sha1_hex_of_id(AgentId numeric_id) {
  const std::string text = std::to_string(numeric_id);
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * SHA_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    hex += kHex[b >> 4];
    hex += kHex[b & 0xF];
  }
  return hex;
}

// Tokens are issued in id order. Each id takes the shortest SHA-1 prefix of at
// least 8 hex digits that no lower id already holds, so the mapping is a pure
// function of the id and stays injective past the 32-bit birthday bound.
class TokenRegistry {
 public:
  std::string get(AgentId id) {
    std::lock_guard lock(mutex_);
    while (tokens_.size() <= id) issue(static_cast<AgentId>(tokens_.size()));
    return tokens_[id];
  }

 private:
  void issue(AgentId id) {
    const std::string hex = sha1_hex_of_id(id);
    for (std::size_t len = 8;; ++len) {
      if (len > hex.size()) throw std::logic_error("SHA-1 collision between agent ids");
      std::string token = "C_" + hex.substr(0, len);
      if (issued_.insert(token).second) {
        tokens_.push_back(std::move(token));
        return;
      }
    }
  }

  std::mutex mutex_;
  std::vector<std::string> tokens_;
  std::unordered_set<std::string> issued_;
};

}  // namespace detail

/// "C_" + the first 8 hex digits of SHA-1 over the decimal id, lengthened by
/// one digit at a time for the rare id whose prefix a lower id already holds.
inline std::string token_for(AgentId numeric_id) {
  static detail::TokenRegistry registry;
  return registry.get(numeric_id);
}

/// Centiseconds since the Unix epoch, the resolution of log timestamps.
using Centiseconds = std::chrono::duration<std::int64_t, std::centi>;
using LogTime = std::chrono::time_point<std::chrono::system_clock, Centiseconds>;

inline LogTime to_log_time(double sim_time_days, std::chrono::sys_seconds epoch) {
  const auto cs = std::llround(sim_time_days * 86400.0 * 100.0);
  return LogTime{std::chrono::time_point_cast<Centiseconds>(epoch) + Centiseconds{cs}};
}

inline std::string render_log_time(LogTime t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const auto cs_in_day = (t - day_start).count();
  const auto secs = cs_in_day / 100;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02lld:%02lld:%02lld.%02lld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                static_cast<long long>(secs % 60), static_cast<long long>(cs_in_day % 100));
  return buf;
}

/// epoch + sim_time as "YYYY-MM-DD HH:MM:SS.ss" (24-hour clock, rounded to the centisecond).
inline std::string format_timestamp(double sim_time_days, std::chrono::sys_seconds epoch) {
  if (!(sim_time_days >= 0.0)) throw std::invalid_argument("sim_time must be nonnegative");
  return render_log_time(to_log_time(sim_time_days, epoch));
}

inline std::string format_money(Money m) {
  const char* sign = m.cents < 0 ? "-" : "";
  const auto a = m.cents < 0 ? -m.cents : m.cents;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", sign, static_cast<long long>(a / 100), static_cast<long long>(a % 100));
  return buf;
}

class LogIoError : public std::runtime_error {
 public:
  explicit LogIoError(const std::string& what) : std::runtime_error(what) {}
};

// Streams LogRecords as CSV rows. Each row is assembled in full before a
// single write, so a failing stream never receives half a row.
class LogWriter {
 public:
  LogWriter(std::ostream& out, std::chrono::sys_seconds epoch, bool header = true) : out_(out), epoch_(epoch) {
    if (header) write_line(std::string(kLogHeader));
  }

  void append(const LogRecord& r) {
    check(r);
    std::string row = format_timestamp(r.time, epoch_);
    row += ',';
    row += token(r.initiator);
    row += ',';
    row += log_name(r.action);
    row += ',';
    if (const auto* m = std::get_if<Money>(&r.value)) {
      row += format_money(*m);
    } else if (const auto* b = std::get_if<bool>(&r.value)) {
      row += *b ? "True" : "False";
    }
    row += ',';
    if (r.receiver) row += token(*r.receiver);
    write_line(row);
    ++rows_;
  }

  void flush() {
    out_.flush();
    if (!out_) throw LogIoError("log flush failed");
  }

  std::uint64_t rows() const { return rows_; }

 private:
  static void check(const LogRecord& r) {
    const bool is_p2p = r.action == Action::p2p_send;
    if (is_p2p != r.receiver.has_value()) throw std::invalid_argument("receiving_token must be set iff action is p2p");
    const bool is_id = r.action == Action::id_verification;
    if (is_id != std::holds_alternative<bool>(r.value)) throw std::invalid_argument("boolean value iff id_verification");
    if (moves_money(r.action) != std::holds_alternative<Money>(r.value)) {
      throw std::invalid_argument("money value iff the action moves money");
    }
  }

  const std::string& token(AgentId id) {
    auto it = tokens_.find(id);
    if (it == tokens_.end()) it = tokens_.emplace(id, token_for(id)).first;
    return it->second;
  }

  void write_line(const std::string& line) {
    out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    out_.put('\n');
    if (!out_) throw LogIoError("write to event log failed");
  }

  std::ostream& out_;
  std::chrono::sys_seconds epoch_;
  std::unordered_map<AgentId, std::string> tokens_;
  std::uint64_t rows_ = 0;
};

/// Convenience overload of LogWriter::append.
inline void append_record(LogWriter& writer, const LogRecord& record) { writer.append(record); }

// ---------------------------------------------------------------------------
// Reading a log back

/// One parsed row, in the log's own units.
struct LogEntry {
  LogTime time;
  std::string initiator;
  Action action = Action::cash_in;
  EventValue value;
  std::string receiver;  // empty for NULL
  std::size_t line = 0;
};

class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("log line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline std::optional<LogTime> parse_log_time(std::string_view s) {
  // YYYY-MM-DD HH:MM:SS.ss
  if (s.size() != 22 || s[4] != '-' || s[7] != '-' || s[10] != ' ' || s[13] != ':' || s[16] != ':' || s[19] != '.') {
    return std::nullopt;
  }
  std::int64_t y, mo, d, h, mi, sec, cs;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), mo) || !parse_int(s.substr(8, 2), d) ||
      !parse_int(s.substr(11, 2), h) || !parse_int(s.substr(14, 2), mi) || !parse_int(s.substr(17, 2), sec) ||
      !parse_int(s.substr(20, 2), cs)) {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{static_cast<int>(y)}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  const auto secs = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
  return LogTime{time_point_cast<Centiseconds>(secs) + Centiseconds{cs}};
}

// Decimal with at most two fractional digits, parsed exactly into cents.
inline std::optional<Money> parse_money(std::string_view s) {
  bool neg = false;
  if (!s.empty() && s.front() == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (dot != std::string_view::npos && (frac.empty() || frac.size() > 2)) return std::nullopt;
  std::int64_t w = 0, f = 0;
  if (!parse_int(whole, w) || w < 0) return std::nullopt;
  if (!frac.empty() && (!parse_int(frac, f) || f < 0)) return std::nullopt;
  if (frac.size() == 1) f *= 10;
  const std::int64_t cents = w * 100 + f;
  return Money::from_cents(neg ? -cents : cents);
}

}  // namespace detail

// Parses a whole log. The header row is optional. Any malformed row is a hard
// error naming its line number.
inline std::vector<LogEntry> read_log(std::istream& in) {
  std::vector<LogEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line == kLogHeader) continue;
    if (line.empty()) throw LogFormatError(lineno, "empty row");

    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 5) {
      throw LogFormatError(lineno, "expected 5 fields, found " + std::to_string(fields.size()));
    }

    LogEntry e;
    e.line = lineno;
    auto t = detail::parse_log_time(fields[0]);
    if (!t) throw LogFormatError(lineno, "bad timestamp \"" + std::string(fields[0]) + "\"");
    e.time = *t;
    if (fields[1].empty()) throw LogFormatError(lineno, "empty initiating_token");
    e.initiator = std::string(fields[1]);
    auto action = action_from_log_name(fields[2]);
    if (!action) throw LogFormatError(lineno, "unknown action \"" + std::string(fields[2]) + "\"");
    e.action = *action;

    const std::string_view value = fields[3];
    if (e.action == Action::id_verification) {
      if (value == "True") {
        e.value = true;
      } else if (value == "False") {
        e.value = false;
      } else {
        throw LogFormatError(lineno, "id_verification value must be True or False");
      }
    } else if (moves_money(e.action)) {
      auto m = detail::parse_money(value);
      if (!m || m->cents < 0) throw LogFormatError(lineno, "bad amount \"" + std::string(value) + "\"");
      e.value = *m;
    } else if (!value.empty()) {
      throw LogFormatError(lineno, "unexpected value for " + std::string(fields[2]));
    }

    e.receiver = std::string(fields[4]);
    if ((e.action == Action::p2p_send) == e.receiver.empty()) {
      throw LogFormatError(lineno, "receiving_token must be present iff action is p2p_sent");
    }
    if (!entries.empty() && e.time < entries.back().time) throw LogFormatError(lineno, "timestamp goes backwards");
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace fkmc
