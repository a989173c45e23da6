#pragma once

#include "mtsim/agents.hpp"
#include "mtsim/config.hpp"
#include "mtsim/fees.hpp"
#include "mtsim/metrics.hpp"
#include "mtsim/order_book.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace mtsim {

/// Cash moved by the fee schedule, in currency units.
struct FeeTallies {
  std::array<double, 3> taker_fees_paid{};  // by AgentClass of the taker
  double maker_rebates_received = 0.0;      // market maker, negative if it paid
  double exchange_revenue = 0.0;
  std::int64_t maker_resting_trades = 0;
  std::int64_t other_resting_trades = 0;

  [[nodiscard]] double total_taker_fees() const noexcept {
    return taker_fees_paid[0] + taker_fees_paid[1] + taker_fees_paid[2];
  }

  friend bool operator==(const FeeTallies&, const FeeTallies&) = default;
};

struct TradeFees {
  double taker_paid = 0.0;
  double maker_received = 0.0;
  double exchange_received = 0.0;
};

/// Charges the taker C_T * P_f and, when the resting side is the market maker,
/// pays it R_M * P_f. The exchange keeps the remainder. No-op when fees are off.
TradeFees apply_trade_fees(const Trade& trade, const FeeSchedule& fee, double p_f, FeeTallies& tallies);

/// Decides who acts next: normal agents in fixed cyclic order, with one
/// algorithm agent (also cyclic) after every floor(n/m) normal orders.
class Scheduler {
 public:
  struct Turn {
    AgentClass kind;
    std::uint32_t index;  // 0-based
  };

  Scheduler(std::int64_t n, std::int64_t m);

  [[nodiscard]] Turn peek() const noexcept;
  /// Consumes the current turn.
  void advance() noexcept;

  [[nodiscard]] std::int64_t normal_per_algo() const noexcept { return cadence_; }

 private:
  std::int64_t n_;
  std::int64_t m_;
  std::int64_t cadence_;
  std::int64_t next_normal_ = 0;
  std::int64_t next_algo_ = 0;
  std::int64_t normal_since_algo_ = 0;
};

struct SimOptions {
  bool record_trades = false;
  bool record_maker_positions = false;
  /// Checks book, weight, spread, position and cash invariants after every turn.
  bool check_invariants = false;
  OrderBook::EventSink event_sink;
};

struct InvariantReport {
  std::int64_t checks = 0;
  std::int64_t book_violations = 0;
  std::int64_t weight_violations = 0;
  std::int64_t spread_violations = 0;
  std::int64_t position_violations = 0;
  std::int64_t cash_violations = 0;

  [[nodiscard]] std::int64_t total() const noexcept {
    return book_violations + weight_violations + spread_violations + position_violations + cash_violations;
  }
  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

struct RunResult {
  SimConfig config;
  FeeSchedule fee;
  std::vector<double> prices;  // P^0..P^t_end
  std::int64_t trade_count = 0;
  std::vector<Trade> trades;  // only with SimOptions::record_trades
  std::vector<AlgoFill> algo_fills;
  FeeTallies tallies;
  std::int64_t maker_position = 0;
  double maker_cash = 0.0;
  std::vector<std::int64_t> maker_positions;  // per step, only when recorded
  std::int64_t algo_passes = 0;
  std::int64_t skipped_normal_turns = 0;
  InvariantReport invariants;
  MetricsBundle metrics;

  /// Trading cash plus rebates plus the open position marked at the last price.
  [[nodiscard]] double maker_pnl() const noexcept;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// One simulated market. Each call to turn() gives the next scheduled agent a
/// chance to act, after expiring stale orders and letting the market maker
/// requote.
class Simulation {
 public:
  Simulation(SimConfig cfg, FeeSchedule fee, SimOptions options = {});

  /// Executes one scheduled turn. Returns true if an order was placed and time advanced.
  bool turn();
  [[nodiscard]] bool done() const noexcept { return now_ >= cfg_.t_end; }
  /// Runs turns until t_end.
  void run_to_end();

  [[nodiscard]] Step now() const noexcept { return now_; }
  [[nodiscard]] const OrderBook& book() const noexcept { return book_; }
  [[nodiscard]] const PriceSeries& prices() const noexcept { return prices_; }
  [[nodiscard]] const MarketMakerState& maker() const noexcept { return maker_; }
  [[nodiscard]] const std::vector<NormalAgent>& normal_agents() const noexcept { return normals_; }
  [[nodiscard]] const std::vector<AlgoFill>& algo_fills() const noexcept { return fills_; }
  [[nodiscard]] const FeeTallies& tallies() const noexcept { return tallies_; }
  [[nodiscard]] const InvariantReport& invariants() const noexcept { return report_; }
  [[nodiscard]] std::int64_t trade_count() const noexcept { return trade_count_; }
  [[nodiscard]] const MakerQuotes& last_quotes() const noexcept { return last_quotes_; }

  /// Moves the accumulated state into a RunResult with metrics computed.
  [[nodiscard]] RunResult finish() &&;

 private:
  void requote();
  void record_trade(const Trade& trade);
  void check_after_turn(std::optional<std::uint32_t> acted_normal);

  SimConfig cfg_;
  FeeSchedule fee_;
  SimOptions options_;
  TickGrid grid_;
  OrderBook book_;
  PriceSeries prices_;
  Scheduler scheduler_;
  std::vector<NormalAgent> normals_;
  MarketMakerState maker_;
  MakerQuotes last_quotes_;
  FeeTallies tallies_;
  std::vector<AlgoFill> fills_;
  std::vector<Trade> trades_;
  std::vector<std::int64_t> maker_positions_;
  InvariantReport report_;
  Step now_ = 0;
  std::int64_t trade_count_ = 0;
  std::int64_t algo_passes_ = 0;
  std::int64_t skipped_normal_ = 0;
  std::optional<double> pending_price_;
};

/// Full run from t = 0 to t_end. Deterministic in (cfg, fee).
[[nodiscard]] RunResult run(const SimConfig& cfg, const FeeSchedule& fee, const SimOptions& options = {});

}  // namespace mtsim
