#include "mtsim/csv.hpp"
#include "mtsim/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace mtsim {
namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t count_fields(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

SweepSpec small_spec() {
  SweepSpec spec;
  spec.config.t_end = 5'000;
  spec.grid = {GridPoint::with_rebate(Rate::parse("0%")), GridPoint::with_rebate(Rate::parse("0.1%")),
               GridPoint::baseline()};
  spec.seeds = {1, 2, 3};
  return spec;
}

TEST(Csv, HeaderIsTheDocumentedSchema) {
  std::ostringstream out;
  write_csv_header(out);
  EXPECT_EQ(out.str(),
            "fees_enabled,r_m,c_t,theta_m,seed,volatility,mi,m_ie_abs,m_ie_signed,total_cost_ratio,excess_kurtosis,"
            "acf_sq_1,acf_sq_2,acf_sq_3,acf_sq_4,acf_sq_5,n_buy,trades,maker_pnl,exchange_revenue\n");
  EXPECT_EQ(csv_header().size(), 5 + kValueColumns);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(csv::format(0.1), "0.1");
  EXPECT_EQ(csv::format(std::optional<double>{}), "");
  EXPECT_EQ(csv::format(1e-7), "1e-07");
  const double x = 0.010067569105839806;
  EXPECT_EQ(std::stod(csv::format(x)), x);
  EXPECT_EQ(csv::format(AgentId::normal(12)), "normal:12");
  EXPECT_EQ(csv::format(AgentId::algorithm(3)), "algo:3");
  EXPECT_EQ(csv::format(AgentId::market_maker()), "maker");
}

TEST(Csv, RowEchoesFeeParameters) {
  SimConfig cfg;
  cfg.t_end = 2'000;
  const RunResult r = run(cfg, fee_schedule_from_rebate(Rate::parse("0.05%"), cfg.re_m, cfg.r_ex));
  std::ostringstream out;
  write_csv_row(out, make_row(r));
  const std::string line = out.str();
  EXPECT_EQ(line.rfind("1,0.0005,0.0015,0.002,1,", 0), 0u) << line;
  EXPECT_EQ(count_fields(line.substr(0, line.size() - 1)), csv_header().size());
  EXPECT_EQ(line.back(), '\n');
}

TEST(Csv, LogWriters) {
  std::ostringstream prices;
  csv::write_price_series(prices, std::vector<double>{10'000.0, 10'001.0});
  EXPECT_EQ(prices.str(), "t,price\n0,10000\n1,10001\n");

  std::ostringstream events;
  OrderBook book(10);
  csv::EventLogWriter w(events, 1.0);
  book.set_event_sink([&](const BookEvent& e) { w(e); });
  book.submit({Side::Sell, 10'001, AgentId::market_maker()}, 0);
  book.submit({Side::Buy, 10'002, AgentId::algorithm(2)}, 1);
  const auto lines = split_lines(events.str());
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "step,event_type,order_id,side,price,owner");
  EXPECT_EQ(lines[1], "0,submit,1,sell,10001,maker");
  EXPECT_EQ(lines[3], "1,submit,2,buy,10002,algo:2");
  EXPECT_EQ(lines[4], "1,trade,1,sell,10001,maker");
  EXPECT_EQ(lines[5], "1,trade,2,buy,10001,algo:2");
}

TEST(Csv, TradeLogCarriesFees) {
  Trade t;
  t.step = 4;
  t.price = 10'010;
  t.buyer = AgentId::algorithm(0);
  t.seller = AgentId::market_maker();
  t.taker_side = Side::Buy;
  std::ostringstream out;
  const FeeSchedule fee = fee_schedule_from_rebate(Rate::parse("0.05%"), percent_rate(3, 10), percent_rate(1, 10));
  csv::write_trade_log(out, std::vector<Trade>{t}, fee, 10'000.0, 1.0);
  const auto lines = split_lines(out.str());
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "step,price,buyer,seller,taker_side,taker_fee,maker_rebate,exchange_fee");
  EXPECT_EQ(lines[1], "4,10010,algo:0,maker,buy,15,5,10");
}

TEST(ParseLists, Seeds) {
  EXPECT_EQ(parse_seed_list("1-5,9"), (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 9}));
  EXPECT_EQ(parse_seed_list("7"), (std::vector<std::uint64_t>{7}));
  EXPECT_THROW(parse_seed_list(""), ConfigError);
  EXPECT_THROW(parse_seed_list("5-1"), ConfigError);
  EXPECT_THROW(parse_seed_list("a"), ConfigError);
  EXPECT_THROW(parse_seed_list("1-"), ConfigError);
}

TEST(ParseLists, Rates) {
  EXPECT_EQ(parse_rate_list("0.05%,-0.1%,0.0005"),
            (std::vector<Rate>{Rate::parse("0.05%"), Rate::parse("-0.1%"), Rate::parse("0.05%")}));
  EXPECT_THROW(parse_rate_list("x"), ConfigError);
  EXPECT_THROW(parse_rate_list(","), ConfigError);
}

TEST(Sweep, DefaultSpecIsTwelveRowsPlusBaselineOverThirtySeeds) {
  const SweepSpec spec;
  ASSERT_EQ(spec.grid.size(), 13u);
  EXPECT_EQ(spec.grid.back(), GridPoint::baseline());
  EXPECT_EQ(spec.seeds.size(), 30u);
  EXPECT_EQ(spec.seeds.front(), 1u);
  EXPECT_EQ(spec.seeds.back(), 30u);
  EXPECT_NO_THROW(spec.validate());
}

TEST(Sweep, ValidationRejectsBadSpecs) {
  SweepSpec spec;
  spec.seeds.clear();
  EXPECT_THROW(spec.validate(), ConfigError);
  spec = SweepSpec{};
  spec.grid.push_back(GridPoint::with_rebate(Rate::parse("0.15%")));
  EXPECT_THROW(spec.validate(), ConfigError);
  EXPECT_THROW((void)run_sweep(spec, 1), ConfigError);
}

TEST(Sweep, ParallelMatchesSerial) {
  const SweepSpec spec = small_spec();
  std::ostringstream serial, parallel;
  run_sweep(spec, 1).write_csv(serial);
  run_sweep(spec, 3).write_csv(parallel);
  EXPECT_EQ(serial.str(), parallel.str());
  const auto lines = split_lines(serial.str());
  EXPECT_EQ(lines.size(), 1 + 3 * (3 + 2));
  EXPECT_NE(lines[4].find(",mean,"), std::string::npos);
  EXPECT_NE(lines[5].find(",se,"), std::string::npos);
}

TEST(Sweep, SingleRunSweepEqualsRun) {
  SweepSpec spec;
  spec.config.t_end = 5'000;
  spec.grid = {GridPoint::with_rebate(Rate::parse("0.05%"))};
  spec.seeds = {4};
  const SweepResult s = run_sweep(spec, 1);
  SimConfig cfg = spec.config;
  cfg.seed = 4;
  const MetricsRow direct = make_row(run(cfg, spec.grid[0].schedule(cfg)));
  ASSERT_EQ(s.per_seed.size(), 1u);
  EXPECT_EQ(s.per_seed[0][0], direct);
  EXPECT_EQ(s.means[0].values, direct.values);
}

TEST(Sweep, ProgressReachesTotal) {
  SweepSpec spec = small_spec();
  spec.config.t_end = 500;
  std::size_t last = 0, total = 0;
  (void)run_sweep(spec, 2, [&](std::size_t d, std::size_t t) {
    last = std::max(last, d);
    total = t;
  });
  EXPECT_EQ(total, 9u);
  EXPECT_EQ(last, 9u);
}

TEST(Aggregate, MeanAndStandardError) {
  std::vector<MetricsRow> rows(3);
  const double xs[] = {1.0, 2.0, 6.0};
  for (std::size_t i = 0; i < 3; ++i) {
    rows[i].r_m = Rate::parse("0.1%");
    rows[i].seed = std::to_string(i + 1);
    rows[i][Column::Volatility] = xs[i];
  }
  rows[1][Column::MarketImpact] = 0.5;
  const auto [mean, se] = aggregate(rows);
  EXPECT_EQ(mean.seed, "mean");
  EXPECT_EQ(se.seed, "se");
  EXPECT_EQ(mean.r_m, Rate::parse("0.1%"));
  EXPECT_DOUBLE_EQ(*mean[Column::Volatility], 3.0);
  // Sample variance (4 + 1 + 9) / 2 = 7.
  EXPECT_DOUBLE_EQ(*se[Column::Volatility], std::sqrt(7.0 / 3.0));
  EXPECT_DOUBLE_EQ(*mean[Column::MarketImpact], 0.5);
  EXPECT_FALSE(se[Column::MarketImpact]);
  EXPECT_FALSE(mean[Column::TotalCostRatio]);
}

TEST(Validation, GaussianControlFails) {
  SimConfig cfg;
  cfg.t_end = 200'000;
  ValidationOptions opt;
  opt.seeds = {1, 2, 3, 4, 5};
  opt.synthetic_gaussian = true;
  const ValidationReport rep = validate_stylized_facts(cfg, opt);
  EXPECT_FALSE(rep.pass);
  EXPECT_LT(rep.passed, 4u);
}

TEST(Validation, ReportMentionsReferenceValues) {
  SimConfig cfg;
  cfg.t_end = 20'000;
  ValidationOptions opt;
  opt.synthetic_gaussian = true;
  std::ostringstream out;
  print_validation_report(out, validate_stylized_facts(cfg, opt));
  EXPECT_NE(out.str().find("17.54"), std::string::npos);
  EXPECT_NE(out.str().find("0.045"), std::string::npos);
}

TEST(GaussianWalk, Deterministic) {
  EXPECT_EQ(gaussian_price_walk(100, 10'000.0, 0.01, 1), gaussian_price_walk(100, 10'000.0, 0.01, 1));
  const auto w = gaussian_price_walk(100, 10'000.0, 0.01, 1);
  EXPECT_EQ(w.size(), 101u);
  EXPECT_EQ(w.front(), 10'000.0);
}

}  // namespace
}  // namespace mtsim
