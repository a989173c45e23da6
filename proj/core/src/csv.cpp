#include "mtsim/csv.hpp"

#include "mtsim/simulation.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace mtsim::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

std::string format(std::optional<double> value) { return value ? format(*value) : std::string{}; }

std::string format(AgentId id) {
  switch (id.kind) {
    case AgentClass::Normal: return "normal:" + std::to_string(id.index);
    case AgentClass::Algorithm: return "algo:" + std::to_string(id.index);
    case AgentClass::MarketMaker: return "maker";
  }
  return "?";
}

EventLogWriter::EventLogWriter(std::ostream& out, double tick_size) : out_(&out), tick_(tick_size) {
  *out_ << "step,event_type,order_id,side,price,owner\n";
}

void EventLogWriter::operator()(const BookEvent& e) {
  *out_ << e.step << ',' << to_string(e.type) << ',' << e.order_id << ',' << to_string(e.side) << ','
        << format(static_cast<double>(e.price) * tick_) << ',' << format(e.owner) << '\n';
}

void write_trade_log(std::ostream& out, std::span<const Trade> trades, const FeeSchedule& fee, double p_f,
                     double tick_size) {
  out << "step,price,buyer,seller,taker_side,taker_fee,maker_rebate,exchange_fee\n";
  FeeTallies scratch;
  for (const Trade& t : trades) {
    const TradeFees f = apply_trade_fees(t, fee, p_f, scratch);
    out << t.step << ',' << format(static_cast<double>(t.price) * tick_size) << ',' << format(t.buyer) << ','
        << format(t.seller) << ',' << to_string(t.taker_side) << ',' << format(f.taker_paid) << ','
        << format(f.maker_received) << ',' << format(f.exchange_received) << '\n';
  }
}

void write_price_series(std::ostream& out, std::span<const double> prices) {
  out << "t,price\n";
  for (std::size_t t = 0; t < prices.size(); ++t) out << t << ',' << format(prices[t]) << '\n';
}

}  // namespace mtsim::csv
