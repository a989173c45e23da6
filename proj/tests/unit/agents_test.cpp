#include "mtsim/agents.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace mtsim {
namespace {

TEST(ExpectedReturn, FundamentalOnlyAtFundamentalPriceIsZero) {
  PriceSeries prices(10'000.0);
  for (int i = 0; i < 20; ++i) prices.push(10'000.0);
  const auto sig = strategy_signals(prices, 15, 5, 3, 10'000.0);
  EXPECT_EQ(sig.fundamental, 0.0);
  EXPECT_EQ(expected_return({1.0, 0.0, 1e-12, 3}, sig, 0.5), 0.5 * 1e-12 / (1.0 + 1e-12));
  EXPECT_EQ(expected_return({1.0, 0.0, 0.0, 3}, sig, 0.5), 0.0);
}

TEST(ExpectedReturn, NoiseOnlyIsTheNoise) {
  const StrategySignals sig{0.3, -0.2};
  EXPECT_EQ(expected_return({0.0, 0.0, 1.0, 1}, sig, 0.0123), 0.0123);
}

TEST(ExpectedReturn, HandEvaluatedMix) {
  // P^{t-n} = 9900 at step 10, P^{t-n-tau} = 9800 at step 8.
  PriceSeries prices(10'000.0);
  for (double p : {10'000.0, 10'000.0, 10'000.0, 10'000.0, 10'000.0, 10'000.0, 10'000.0, 9'800.0, 10'000.0,
                   9'900.0, 10'000.0, 10'000.0})
    prices.push(p);
  const auto sig = strategy_signals(prices, 13, 3, 2, 10'000.0);
  EXPECT_DOUBLE_EQ(sig.fundamental, std::log(10'000.0 / 9'900.0));
  EXPECT_DOUBLE_EQ(sig.technical, std::log(9'900.0 / 9'800.0));
  const double r_e = expected_return({1.0, 1.0, 1.0, 2}, sig, 0.01);
  EXPECT_NEAR(r_e, 0.010067569105839806, 1e-15);
}

TEST(StrategySignals, WarmUpClampsToInitialPriceAndHasNoTrend) {
  PriceSeries prices(10'000.0);
  prices.push(10'200.0);
  prices.push(10'300.0);
  const auto early = strategy_signals(prices, 3, 5, 2, 10'000.0);
  EXPECT_EQ(early.fundamental, 0.0);
  EXPECT_EQ(early.technical, 0.0);
  // Lag reaches P^1 but the horizon would reach before P^0.
  const auto partial = strategy_signals(prices, 3, 2, 2, 10'000.0);
  EXPECT_DOUBLE_EQ(partial.fundamental, std::log(10'000.0 / 10'200.0));
  EXPECT_EQ(partial.technical, 0.0);
  const auto full = strategy_signals(prices, 3, 1, 2, 10'000.0);
  EXPECT_DOUBLE_EQ(full.technical, std::log(10'300.0 / 10'000.0));
}

TEST(OrderSide, Rule) {
  EXPECT_EQ(order_side(10'000.0, 9'990.0), Side::Buy);
  EXPECT_EQ(order_side(10'000.0, 10'010.0), Side::Sell);
  EXPECT_FALSE(order_side(10'000.0, 10'000.0));
}

TEST(Learning, FlatMarketLeavesWeights) {
  NormalAgentState s{0.4, 3.0, 0.5, 10};
  apply_learning(s, {0.01, -0.02}, 0.0, {0.7, 0.7}, 4.0, 1.0, 10.0);
  EXPECT_EQ(s.w1, 0.4);
  EXPECT_EQ(s.w2, 3.0);
}

TEST(Learning, CapIsAFixedPointForAgreeingSignals) {
  NormalAgentState s{1.0, 10.0, 0.5, 10};
  apply_learning(s, {0.01, 0.02}, 0.03, {0.9, 0.4}, 4.0, 1.0, 10.0);
  EXPECT_EQ(s.w1, 1.0);
  EXPECT_EQ(s.w2, 10.0);
  s = {0.0, 0.0, 0.5, 10};
  apply_learning(s, {-0.01, -0.02}, 0.03, {0.9, 0.4}, 4.0, 1.0, 10.0);
  EXPECT_EQ(s.w1, 0.0);
  EXPECT_EQ(s.w2, 0.0);
}

TEST(Learning, HandEvaluatedUpdate) {
  NormalAgentState s{0.5, 5.0, 0.5, 10};
  apply_learning(s, {0.02, -0.02}, 0.01, {0.5, 0.5}, 4.0, 1.0, 10.0);
  EXPECT_DOUBLE_EQ(s.w1, 0.51);
  EXPECT_DOUBLE_EQ(s.w2, 5.0 - 4.0 * 0.01 * 0.5 * 5.0);
}

TEST(Learning, WeightsStayInBoundsUnderRandomSequences) {
  Rng rng(17);
  NormalAgentState s{0.5, 5.0, 0.5, 10};
  for (int i = 0; i < 100'000; ++i) {
    const StrategySignals sig{rng.normal(0.0, 0.3), rng.normal(0.0, 0.3)};
    // Large realized returns push the gain above one.
    apply_learning(s, sig, rng.normal(0.0, 0.5), {rng.uniform(), rng.uniform()}, 4.0, 1.0, 10.0);
    ASSERT_GE(s.w1, 0.0);
    ASSERT_LE(s.w1, 1.0);
    ASSERT_GE(s.w2, 0.0);
    ASSERT_LE(s.w2, 10.0);
  }
}

TEST(NormalAgent, InitialStateWithinRanges) {
  const SimConfig cfg;
  for (std::uint32_t j = 0; j < 500; ++j) {
    const NormalAgent a(j, cfg, derive_seed(1, j));
    const auto& s = a.state();
    ASSERT_GE(s.w1, 0.0);
    ASSERT_LT(s.w1, cfg.w1_max);
    ASSERT_GE(s.w2, 0.0);
    ASSERT_LT(s.w2, cfg.w2_max);
    ASSERT_GT(s.u, 0.0);
    ASSERT_LE(s.u, cfg.u_max);
    ASSERT_GE(s.tau, 1);
    ASSERT_LE(s.tau, cfg.tau_max);
  }
}

TEST(NormalAgent, BuySellSymmetryAtFixedExpectedPrice) {
  // With the price pinned at P_f every signal is zero, so P_e is driven by noise
  // alone and the side is a fair coin.
  SimConfig cfg;
  cfg.delta_l = 0.0;
  PriceSeries prices(cfg.p_f);
  NormalAgent agent(0, cfg, 42);
  constexpr int N = 20'000;
  int buys = 0;
  for (int i = 0; i < N; ++i) {
    const auto order = agent.act(prices, 1, cfg);
    ASSERT_TRUE(order);
    buys += order->side == Side::Buy;
    ASSERT_GT(order->raw_price, 0.0);
  }
  EXPECT_NEAR(buys, N / 2, 3.0 * std::sqrt(N * 0.25));
}

TEST(NormalAgent, SameSeedSameOrders) {
  const SimConfig cfg;
  PriceSeries prices(cfg.p_f);
  NormalAgent a(3, cfg, 9), b(3, cfg, 9);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.act(prices, 1, cfg);
    const auto y = b.act(prices, 1, cfg);
    ASSERT_EQ(x.has_value(), y.has_value());
    if (x) {
      ASSERT_EQ(x->side, y->side);
      ASSERT_EQ(x->raw_price, y->raw_price);
    }
  }
}

TEST(AlgoOrder, BuysOneTickThroughTheAsk) {
  OrderBook book(100);
  EXPECT_FALSE(algo_order(book, 0));
  book.submit({Side::Buy, 9'990, AgentId::normal(0)}, 0);
  EXPECT_FALSE(algo_order(book, 0));
  book.submit({Side::Sell, 10'001, AgentId::normal(1)}, 0);
  const auto req = algo_order(book, 4);
  ASSERT_TRUE(req);
  EXPECT_EQ(req->side, Side::Buy);
  EXPECT_EQ(req->price, 10'002);
  EXPECT_EQ(req->owner, AgentId::algorithm(4));
  const auto out = book.submit(*req, 1);
  ASSERT_TRUE(out.filled());
  EXPECT_EQ(out.trade->price, 10'001);
}

FeeSchedule with_theta(const char* theta) {
  FeeSchedule f = no_fee_schedule(Rate::parse(theta));
  return f;
}

TEST(MakerQuotes, ZeroPositionMidpoint) {
  const TickGrid grid(1.0);
  const auto q = maker_quotes(0, 5e-8, with_theta("0.3%"), 9'990, 10'010, 1.0, 10'000.0, grid);
  EXPECT_EQ(q.mid, 10'000.0);
  EXPECT_EQ(q.reference_price, 10'000.0);
  EXPECT_EQ(q.bid, 9'985);
  EXPECT_EQ(q.ask, 10'015);
  EXPECT_EQ(q.adjustment, QuoteAdjustment::None);
}

TEST(MakerQuotes, WideSpreadOutsideNarrowBook) {
  const TickGrid grid(1.0);
  const auto q = maker_quotes(0, 5e-8, with_theta("0.5%"), 9'999, 10'001, 1.0, 10'000.0, grid);
  EXPECT_DOUBLE_EQ(q.bid_raw, 9'975.0);
  EXPECT_DOUBLE_EQ(q.ask_raw, 10'025.0);
  EXPECT_EQ(q.bid, 9'975);
  EXPECT_EQ(q.ask, 10'025);
  EXPECT_EQ(q.adjustment, QuoteAdjustment::None);
}

TEST(MakerQuotes, BidAtOrAboveBestAskIsPulledBelowIt) {
  const TickGrid grid(1.0);
  // Short position pushes P_bv up: (1 - w s^3) with s = -100 is 1.05.
  const auto q = maker_quotes(-100, 5e-8, with_theta("0.3%"), 9'999, 10'001, 1.0, 10'000.0, grid);
  EXPECT_GT(q.reference_price, q.mid);
  EXPECT_EQ(q.adjustment, QuoteAdjustment::BelowBestAsk);
  EXPECT_EQ(q.bid, 10'000);
  EXPECT_EQ(q.ask, 10'030);
}

TEST(MakerQuotes, AskAtOrBelowBestBidIsPushedAboveIt) {
  const TickGrid grid(1.0);
  const auto q = maker_quotes(100, 5e-8, with_theta("0.3%"), 9'999, 10'001, 1.0, 10'000.0, grid);
  EXPECT_LT(q.reference_price, q.mid);
  EXPECT_EQ(q.adjustment, QuoteAdjustment::AboveBestBid);
  EXPECT_EQ(q.ask, 10'000);
  EXPECT_EQ(q.bid, 9'970);
}

TEST(MakerQuotes, FallbackMidWhenASideIsEmpty) {
  const TickGrid grid(1.0);
  const auto q = maker_quotes(0, 5e-8, with_theta("0.3%"), std::nullopt, 10'100, 10'050.0, 10'000.0, grid);
  EXPECT_EQ(q.mid, 10'050.0);
  EXPECT_EQ(q.bid, 10'035);
  EXPECT_EQ(q.ask, 10'065);
}

TEST(MakerQuotes, RoundingIsOutward) {
  const TickGrid grid(1.0);
  const auto q = maker_quotes(0, 5e-8, with_theta("0.25%"), 9'990, 10'011, 1.0, 10'000.0, grid);
  EXPECT_DOUBLE_EQ(q.bid_raw, 9'988.0);
  EXPECT_DOUBLE_EQ(q.ask_raw, 10'013.0);
  const auto r = maker_quotes(0, 5e-8, with_theta("0.3%"), 9'990, 10'011, 1.0, 10'000.0, grid);
  EXPECT_EQ(r.bid, 9'985);  // 9985.5 down
  EXPECT_EQ(r.ask, 10'016);  // 10015.5 up
}

TEST(MakerQuotes, SpreadAndNeutralityProperties) {
  const TickGrid grid(1.0);
  Rng rng(8);
  for (int i = 0; i < 50'000; ++i) {
    const Ticks bb = 9'500 + rng.uniform_int(0, 1'000);
    const Ticks ba = bb + rng.uniform_int(1, 60);
    const auto pos = rng.uniform_int(-300, 300);
    const Rate theta = Rate::from_nanos(rng.uniform_int(1, 6'000'000));
    const FeeSchedule fee = no_fee_schedule(theta);
    const auto q = maker_quotes(pos, 5e-8, fee, bb, ba, 1.0, 10'000.0, grid);
    const double spread = 10'000.0 * theta.fraction();
    ASSERT_NEAR(q.ask_raw - q.bid_raw, spread, 1e-9 * 10'000.0);
    if (pos > 0) ASSERT_LT(q.reference_price, q.mid);
    if (pos < 0) ASSERT_GT(q.reference_price, q.mid);
    ASSERT_TRUE(q.bid && q.ask);
    ASSERT_LT(*q.bid, ba);
    ASSERT_GT(*q.ask, bb);
    ASSERT_LE(static_cast<double>(*q.bid), q.bid_raw + 1e-9);
    ASSERT_GE(static_cast<double>(*q.ask), q.ask_raw - 1e-9);
  }
}

TEST(MarketMakerState, TracksPositionAndCash) {
  MarketMakerState mm;
  mm.on_fill(Side::Buy, 9'990.0);
  mm.on_fill(Side::Buy, 9'980.0);
  mm.on_fill(Side::Sell, 10'020.0);
  EXPECT_EQ(mm.position, 1);
  EXPECT_EQ(mm.buys, 2);
  EXPECT_EQ(mm.sells, 1);
  EXPECT_DOUBLE_EQ(mm.cash, -9'990.0 - 9'980.0 + 10'020.0);
}

}  // namespace
}  // namespace mtsim
