#include "mtsim/agents.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mtsim {

StrategySignals strategy_signals(const PriceSeries& prices, Step t, Step lag, Step tau, double p_f) noexcept {
  const double base = prices.at(t - lag);
  // Before the horizon reaches back past P^0 there is no trend to follow.
  const double technical = t - lag - tau < 0 ? 0.0 : std::log(base / prices.at(t - lag - tau));
  return {std::log(p_f / base), technical};
}

double expected_return(const NormalAgentState& s, const StrategySignals& sig, double noise) noexcept {
  const double denom = s.w1 + s.w2 + s.u;
  if (denom <= 0.0) return 0.0;
  return (s.w1 * sig.fundamental + s.w2 * sig.technical + s.u * noise) / denom;
}

std::optional<Side> order_side(double expected_price, double order_price) noexcept {
  if (expected_price > order_price) return Side::Buy;
  if (expected_price < order_price) return Side::Sell;
  return std::nullopt;
}

namespace {

double learn_weight(double w, double w_max, double signal, double r_l, double q, double k_l) noexcept {
  if (signal == 0.0 || r_l == 0.0) return w;
  const double gain = k_l * std::abs(r_l) * q;
  const double next = (signal > 0.0) == (r_l > 0.0) ? w + gain * (w_max - w) : w - gain * w;
  // A gain above one would overshoot; the update is a convex step toward the target.
  return std::clamp(next, 0.0, w_max);
}

}  // namespace

void apply_learning(NormalAgentState& s, const StrategySignals& sig, double r_l, const LearningDraws& q,
                    double k_l, double w1_max, double w2_max) noexcept {
  s.w1 = learn_weight(s.w1, w1_max, sig.fundamental, r_l, q.q1, k_l);
  s.w2 = learn_weight(s.w2, w2_max, sig.technical, r_l, q.q2, k_l);
}

NormalAgent::NormalAgent(std::uint32_t index, const SimConfig& cfg, std::uint64_t stream_seed)
    : index_(index), rng_(stream_seed) {
  state_.w1 = rng_.uniform(0.0, cfg.w1_max);
  state_.w2 = rng_.uniform(0.0, cfg.w2_max);
  // (0, u_max]: keeps the expected-return denominator positive.
  state_.u = cfg.u_max * (1.0 - rng_.uniform());
  state_.tau = rng_.uniform_int(1, cfg.tau_max);
}

std::optional<NormalOrder> NormalAgent::act(const PriceSeries& prices, Step t, const SimConfig& cfg) {
  const double latest = prices.latest();
  const StrategySignals sig = strategy_signals(prices, t, cfg.n, state_.tau, cfg.p_f);

  // The price forming at t is not known yet; the realized return runs to the latest price.
  const double r_l = std::log(latest / prices.at(t - cfg.t_l));
  LearningDraws q;
  q.q1 = rng_.uniform();
  q.q2 = rng_.uniform();
  apply_learning(state_, sig, r_l, q, cfg.k_l, cfg.w1_max, cfg.w2_max);
  if (rng_.bernoulli(cfg.delta_l)) state_.w1 = rng_.uniform(0.0, cfg.w1_max);
  if (rng_.bernoulli(cfg.delta_l)) state_.w2 = rng_.uniform(0.0, cfg.w2_max);

  const double noise = rng_.normal(0.0, cfg.sigma_epsilon);
  const double r_e = expected_return(state_, sig, noise);
  const double expected_price = latest * std::exp(r_e);
  for (int attempt = 0; attempt < kMaxPriceDraws; ++attempt) {
    const double order_price = rng_.normal(expected_price, expected_price * cfg.est);
    if (!(order_price > 0.0)) continue;
    if (auto side = order_side(expected_price, order_price)) return NormalOrder{*side, order_price};
  }
  return std::nullopt;
}

std::optional<OrderRequest> algo_order(const OrderBook& book, std::uint32_t k) {
  const auto ask = book.best_ask();
  if (!ask) return std::nullopt;
  return OrderRequest{Side::Buy, *ask + 1, AgentId::algorithm(k)};
}

MakerQuotes maker_quotes(std::int64_t position, double position_coefficient, const FeeSchedule& fee,
                         std::optional<Ticks> best_bid, std::optional<Ticks> best_ask, double fallback_mid,
                         double p_f, const TickGrid& grid) {
  MakerQuotes q;
  const double tick = grid.tick_size();
  q.mid = best_bid && best_ask ? 0.5 * (grid.to_price(*best_bid) + grid.to_price(*best_ask)) : fallback_mid;

  const double s = static_cast<double>(position);
  q.reference_price = (1.0 - position_coefficient * s * s * s) * q.mid;

  const double spread = p_f * fee.maker_base_spread.fraction();
  q.bid_raw = q.reference_price - 0.5 * spread;
  q.ask_raw = q.reference_price + 0.5 * spread;

  if (best_ask && q.bid_raw >= grid.to_price(*best_ask)) {
    q.bid_raw = grid.to_price(*best_ask) - tick;
    q.ask_raw = q.bid_raw + spread;
    q.adjustment = QuoteAdjustment::BelowBestAsk;
  } else if (best_bid && q.ask_raw <= grid.to_price(*best_bid)) {
    q.ask_raw = grid.to_price(*best_bid) + tick;
    q.bid_raw = q.ask_raw - spread;
    q.adjustment = QuoteAdjustment::AboveBestBid;
  }
  // Both adjustments at once would need a crossed book.
  assert(!(q.adjustment == QuoteAdjustment::BelowBestAsk && best_bid && q.ask_raw <= grid.to_price(*best_bid)));

  q.bid = grid.round(q.bid_raw, Side::Buy);
  q.ask = grid.round(q.ask_raw, Side::Sell);
  return q;
}

}  // namespace mtsim
