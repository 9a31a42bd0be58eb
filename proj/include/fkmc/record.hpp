#pragma once

#include <optional>
#include <variant>

#include "fkmc/types.hpp"

namespace fkmc {

// No value (join), a currency amount, or the id_verification outcome.
using EventValue = std::variant<std::monostate, Money, bool>;

/// One simulated event, in simulation units. logio renders it to a CSV row.
struct LogRecord {
  double time = 0.0;  // days since epoch
  AgentId initiator = 0;
  Action action = Action::cash_in;
  EventValue value;
  std::optional<AgentId> receiver;  // p2p only

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

}  // namespace fkmc
