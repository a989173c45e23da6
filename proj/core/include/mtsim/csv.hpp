#pragma once

#include "mtsim/fees.hpp"
#include "mtsim/order_book.hpp"
#include "mtsim/types.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>

namespace mtsim::csv {

/// Shortest round-trip representation; empty for a missing value.
[[nodiscard]] std::string format(std::optional<double> value);
[[nodiscard]] std::string format(double value);
/// "normal:12", "algo:3", "maker".
[[nodiscard]] std::string format(AgentId id);

/// Streams book events as (step, event_type, order_id, side, price, owner).
class EventLogWriter {
 public:
  EventLogWriter(std::ostream& out, double tick_size);
  void operator()(const BookEvent& e);

 private:
  std::ostream* out_;
  double tick_;
};

void write_trade_log(std::ostream& out, std::span<const Trade> trades, const FeeSchedule& fee, double p_f,
                     double tick_size);

void write_price_series(std::ostream& out, std::span<const double> prices);

}  // namespace mtsim::csv
