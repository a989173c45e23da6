#pragma once

#include "mtsim/config.hpp"
#include "mtsim/fees.hpp"
#include "mtsim/order_book.hpp"
#include "mtsim/rng.hpp"
#include "mtsim/tick.hpp"
#include "mtsim/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mtsim {

/// Market price history P^0..P^t. Lags before time 0 clamp to P^0.
class PriceSeries {
 public:
  explicit PriceSeries(double initial_price) { prices_.push_back(initial_price); }

  void push(double price) { prices_.push_back(price); }
  void reserve(std::size_t n) { prices_.reserve(n); }

  [[nodiscard]] double at(Step t) const noexcept {
    if (t <= 0) return prices_.front();
    const auto i = static_cast<std::size_t>(t);
    return i < prices_.size() ? prices_[i] : prices_.back();
  }
  [[nodiscard]] double latest() const noexcept { return prices_.back(); }
  [[nodiscard]] Step last_step() const noexcept { return static_cast<Step>(prices_.size()) - 1; }
  [[nodiscard]] std::span<const double> values() const noexcept { return prices_; }
  [[nodiscard]] std::vector<double> release() && { return std::move(prices_); }

 private:
  std::vector<double> prices_;
};

// ---------------------------------------------------------------------------
// Normal agents
// ---------------------------------------------------------------------------

struct NormalAgentState {
  double w1 = 0.0;  // fundamental
  double w2 = 0.0;  // technical
  double u = 0.0;   // noise, constant
  Step tau = 1;     // chartist horizon, constant
};

/// Fundamental and technical return signals seen by an agent acting at time t.
struct StrategySignals {
  double fundamental = 0.0;  // log(P_f / P^{t-n})
  double technical = 0.0;    // log(P^{t-n} / P^{t-n-tau})
};

[[nodiscard]] StrategySignals strategy_signals(const PriceSeries& prices, Step t, Step lag, Step tau,
                                               double p_f) noexcept;

/// Weighted mix of fundamental, technical and noise returns.
[[nodiscard]] double expected_return(const NormalAgentState& s, const StrategySignals& sig,
                                     double noise) noexcept;

/// Buy when the drawn order price is below the expected price, sell when above.
/// Empty on an exact tie.
[[nodiscard]] std::optional<Side> order_side(double expected_price, double order_price) noexcept;

struct LearningDraws {
  double q1 = 0.0;
  double q2 = 0.0;
};

/// Moves each weight toward its cap when its signal agrees in sign with the
/// realized return `r_l`, and toward zero when it disagrees. A zero signal or a
/// zero realized return leaves the weight alone.
void apply_learning(NormalAgentState& s, const StrategySignals& sig, double r_l, const LearningDraws& q,
                    double k_l, double w1_max, double w2_max) noexcept;

struct NormalOrder {
  Side side = Side::Buy;
  double raw_price = 0.0;
};

class NormalAgent {
 public:
  static constexpr int kMaxPriceDraws = 16;

  NormalAgent(std::uint32_t index, const SimConfig& cfg, std::uint64_t stream_seed);

  /// Learning followed by order drawing for the order that forms P^t. Returns
  /// empty when no valid order price could be drawn (the turn is skipped).
  std::optional<NormalOrder> act(const PriceSeries& prices, Step t, const SimConfig& cfg);

  [[nodiscard]] const NormalAgentState& state() const noexcept { return state_; }
  [[nodiscard]] std::uint32_t index() const noexcept { return index_; }

 private:
  std::uint32_t index_;
  NormalAgentState state_;
  Rng rng_;
};

// ---------------------------------------------------------------------------
// Algorithm agents
// ---------------------------------------------------------------------------

/// Marketable one-share buy one tick through the best ask; nothing when the
/// ask side is empty.
[[nodiscard]] std::optional<OrderRequest> algo_order(const OrderBook& book, std::uint32_t k);

struct AlgoFill {
  Step step = 0;      // t_buy: the step whose price this trade set
  double price = 0.0;

  friend bool operator==(const AlgoFill&, const AlgoFill&) = default;
};

// ---------------------------------------------------------------------------
// Position-based market maker
// ---------------------------------------------------------------------------

enum class QuoteAdjustment : std::uint8_t { None, BelowBestAsk, AboveBestBid };

struct MakerQuotes {
  double bid_raw = 0.0;  // after crossing adjustment, before rounding
  double ask_raw = 0.0;
  std::optional<Ticks> bid;  // empty if it rounds to a non-positive price
  std::optional<Ticks> ask;
  double reference_price = 0.0;  // P_bv
  double mid = 0.0;
  QuoteAdjustment adjustment = QuoteAdjustment::None;
};

/// Quote prices for the current book. `fallback_mid` is used when either side
/// is empty. The maker's own previous quotes must already be cancelled.
[[nodiscard]] MakerQuotes maker_quotes(std::int64_t position, double position_coefficient,
                                       const FeeSchedule& fee, std::optional<Ticks> best_bid,
                                       std::optional<Ticks> best_ask, double fallback_mid, double p_f,
                                       const TickGrid& grid);

struct MarketMakerState {
  std::int64_t position = 0;  // s_M, long positive
  double cash = 0.0;          // trading cash flow, fees excluded
  std::int64_t buys = 0;
  std::int64_t sells = 0;
  std::optional<OrderId> live_bid;
  std::optional<OrderId> live_ask;

  void on_fill(Side maker_side, double price) noexcept {
    if (maker_side == Side::Buy) {
      ++position;
      ++buys;
      cash -= price;
    } else {
      --position;
      ++sells;
      cash += price;
    }
  }
};

}  // namespace mtsim
