#include "mtsim/simulation.hpp"

#include <cassert>
#include <cmath>

namespace mtsim {

TradeFees apply_trade_fees(const Trade& trade, const FeeSchedule& fee, double p_f, FeeTallies& tallies) {
  TradeFees out;
  if (!fee.enabled) return out;
  out.taker_paid = fee.taker_fee.fraction() * p_f;
  tallies.taker_fees_paid[static_cast<std::size_t>(trade.taker().kind)] += out.taker_paid;
  if (trade.maker().is_maker()) {
    out.maker_received = fee.maker_rebate.fraction() * p_f;
    tallies.maker_rebates_received += out.maker_received;
    ++tallies.maker_resting_trades;
  } else {
    ++tallies.other_resting_trades;
  }
  out.exchange_received = out.taker_paid - out.maker_received;
  tallies.exchange_revenue += out.exchange_received;
  return out;
}

Scheduler::Scheduler(std::int64_t n, std::int64_t m) : n_(n), m_(m) {
  if (n < 1 || m < 1 || m > n) throw ConfigError("scheduler requires 1 <= m <= n");
  cadence_ = n / m;
}

Scheduler::Turn Scheduler::peek() const noexcept {
  if (normal_since_algo_ >= cadence_) return {AgentClass::Algorithm, static_cast<std::uint32_t>(next_algo_)};
  return {AgentClass::Normal, static_cast<std::uint32_t>(next_normal_)};
}

void Scheduler::advance() noexcept {
  if (normal_since_algo_ >= cadence_) {
    next_algo_ = (next_algo_ + 1) % m_;
    normal_since_algo_ = 0;
  } else {
    next_normal_ = (next_normal_ + 1) % n_;
    ++normal_since_algo_;
  }
}

double RunResult::maker_pnl() const noexcept {
  const double last = prices.empty() ? config.p_f : prices.back();
  return maker_cash + tallies.maker_rebates_received + static_cast<double>(maker_position) * last;
}

namespace {

SimConfig validated(SimConfig cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

Simulation::Simulation(SimConfig cfg, FeeSchedule fee, SimOptions options)
    : cfg_(validated(std::move(cfg))),
      fee_(fee),
      options_(std::move(options)),
      grid_(cfg_.delta_p),
      book_(cfg_.t_c),
      prices_(cfg_.p_f),
      scheduler_(cfg_.n, cfg_.m) {
  if (!(fee_.maker_base_spread > Rate{})) throw ConfigError("maker base spread must be positive");
  prices_.reserve(static_cast<std::size_t>(cfg_.t_end) + 1);
  normals_.reserve(static_cast<std::size_t>(cfg_.n));
  for (std::int64_t j = 0; j < cfg_.n; ++j) {
    normals_.emplace_back(static_cast<std::uint32_t>(j), cfg_, derive_seed(cfg_.seed, static_cast<std::uint64_t>(j)));
  }
  if (options_.record_maker_positions) maker_positions_.reserve(static_cast<std::size_t>(cfg_.t_end));
  if (options_.event_sink) book_.set_event_sink(options_.event_sink);
}

void Simulation::record_trade(const Trade& trade) {
  ++trade_count_;
  const double price = grid_.to_price(trade.price);
  if (trade.buyer.is_maker()) {
    maker_.on_fill(Side::Buy, price);
    if (maker_.live_bid == trade.resting_id) maker_.live_bid.reset();
  }
  if (trade.seller.is_maker()) {
    maker_.on_fill(Side::Sell, price);
    if (maker_.live_ask == trade.resting_id) maker_.live_ask.reset();
  }
  if (trade.buyer.kind == AgentClass::Algorithm) fills_.push_back(AlgoFill{now_ + 1, price});

  const TradeFees f = apply_trade_fees(trade, fee_, cfg_.p_f, tallies_);
  if (options_.check_invariants) {
    const double scale = std::max(1.0, std::abs(f.taker_paid));
    if (std::abs(f.taker_paid - (f.maker_received + f.exchange_received)) > 1e-12 * scale) ++report_.cash_violations;
  }
  if (options_.record_trades) trades_.push_back(trade);
  pending_price_ = price;
}

void Simulation::requote() {
  if (maker_.live_bid) book_.cancel(*maker_.live_bid, now_);
  if (maker_.live_ask) book_.cancel(*maker_.live_ask, now_);
  maker_.live_bid.reset();
  maker_.live_ask.reset();

  last_quotes_ = maker_quotes(maker_.position, cfg_.w_m, fee_, book_.best_bid(), book_.best_ask(), prices_.latest(),
                              cfg_.p_f, grid_);
  const AgentId me = AgentId::market_maker();
  if (last_quotes_.bid) {
    const SubmitOutcome out = book_.submit({Side::Buy, *last_quotes_.bid, me}, now_);
    assert(out.rested());
    if (out.rested()) maker_.live_bid = out.id;
    if (out.trade) record_trade(*out.trade);
  }
  if (last_quotes_.ask) {
    const SubmitOutcome out = book_.submit({Side::Sell, *last_quotes_.ask, me}, now_);
    assert(out.rested());
    if (out.rested()) maker_.live_ask = out.id;
    if (out.trade) record_trade(*out.trade);
  }
}

bool Simulation::turn() {
  if (done()) return false;
  book_.expire(now_);
  pending_price_.reset();
  requote();
  // Maker quotes never cross, so no price is set by them.
  pending_price_.reset();

  const Scheduler::Turn who = scheduler_.peek();
  scheduler_.advance();

  bool placed = false;
  std::optional<std::uint32_t> acted_normal;
  if (who.kind == AgentClass::Normal) {
    NormalAgent& agent = normals_[who.index];
    acted_normal = who.index;
    if (auto order = agent.act(prices_, now_ + 1, cfg_)) {
      if (auto ticks = grid_.round(order->raw_price, order->side)) {
        const SubmitOutcome out = book_.submit({order->side, *ticks, AgentId::normal(who.index)}, now_);
        if (out.trade) record_trade(*out.trade);
        placed = true;
      }
    }
    if (!placed) ++skipped_normal_;
  } else {
    if (auto request = algo_order(book_, who.index)) {
      const SubmitOutcome out = book_.submit(*request, now_);
      if (out.trade) record_trade(*out.trade);
      placed = true;
    } else {
      ++algo_passes_;
    }
  }

  if (options_.check_invariants) check_after_turn(acted_normal);

  if (!placed) return false;
  prices_.push(pending_price_.value_or(prices_.latest()));
  pending_price_.reset();
  ++now_;
  if (options_.record_maker_positions) maker_positions_.push_back(maker_.position);
  return true;
}

void Simulation::check_after_turn(std::optional<std::uint32_t> acted_normal) {
  ++report_.checks;
  if (!book_.check_invariants(now_)) ++report_.book_violations;
  if (acted_normal) {
    const NormalAgentState& s = normals_[*acted_normal].state();
    if (!(s.w1 >= 0.0 && s.w1 <= cfg_.w1_max && s.w2 >= 0.0 && s.w2 <= cfg_.w2_max)) ++report_.weight_violations;
  }
  const double spread = cfg_.p_f * fee_.maker_base_spread.fraction();
  const double quoted = last_quotes_.ask_raw - last_quotes_.bid_raw;
  if (std::abs(quoted - spread) > 1e-9 * std::max(1.0, cfg_.p_f)) ++report_.spread_violations;
  if (maker_.position != maker_.buys - maker_.sells) ++report_.position_violations;
  const double taker = tallies_.total_taker_fees();
  const double credited = tallies_.maker_rebates_received + tallies_.exchange_revenue;
  if (std::abs(taker - credited) > 1e-9 * std::max(1.0, std::abs(taker))) ++report_.cash_violations;
}

void Simulation::run_to_end() {
  while (!done()) turn();
}

RunResult Simulation::finish() && {
  RunResult r;
  r.config = cfg_;
  r.fee = fee_;
  r.prices = std::move(prices_).release();
  r.trade_count = trade_count_;
  r.trades = std::move(trades_);
  r.algo_fills = std::move(fills_);
  r.tallies = tallies_;
  r.maker_position = maker_.position;
  r.maker_cash = maker_.cash;
  r.maker_positions = std::move(maker_positions_);
  r.algo_passes = algo_passes_;
  r.skipped_normal_turns = skipped_normal_;
  r.invariants = report_;
  r.metrics = compute_metrics(r.prices, r.algo_fills, fee_, cfg_.p_f);
  return r;
}

RunResult run(const SimConfig& cfg, const FeeSchedule& fee, const SimOptions& options) {
  Simulation sim(cfg, fee, options);
  sim.run_to_end();
  return std::move(sim).finish();
}

}  // namespace mtsim
