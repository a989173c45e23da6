#include "mtsim/experiment.hpp"

#include "mtsim/csv.hpp"
#include "mtsim/rng.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

namespace mtsim {

FeeSchedule GridPoint::schedule(const SimConfig& cfg) const {
  return fees_enabled ? fee_schedule_from_rebate(maker_rebate, cfg.re_m, cfg.r_ex) : no_fee_schedule(cfg.re_m);
}

std::string GridPoint::label() const {
  return fees_enabled ? "r_m=" + maker_rebate.to_percent_string() : std::string("no-fees");
}

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> g;
  for (Rate r : standard_rebate_grid()) g.push_back(GridPoint::with_rebate(r));
  g.push_back(GridPoint::baseline());
  return g;
}

std::vector<std::uint64_t> SweepSpec::default_seeds() {
  std::vector<std::uint64_t> s(30);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i + 1;
  return s;
}

void SweepSpec::validate() const {
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  if (grid.empty()) throw ConfigError("sweep needs at least one grid point");
  config.validate();
  for (const GridPoint& p : grid) (void)p.schedule(config);
}

const std::vector<std::string_view>& csv_header() {
  static const std::vector<std::string_view> h{
      "fees_enabled", "r_m",      "c_t",      "theta_m",  "seed",     "volatility",       "mi",
      "m_ie_abs",     "m_ie_signed", "total_cost_ratio", "excess_kurtosis", "acf_sq_1", "acf_sq_2", "acf_sq_3",
      "acf_sq_4",     "acf_sq_5", "n_buy",    "trades",   "maker_pnl", "exchange_revenue"};
  return h;
}

MetricsRow make_row(const RunResult& result) {
  MetricsRow row;
  row.fees_enabled = result.fee.enabled;
  row.r_m = result.fee.maker_rebate;
  row.c_t = result.fee.taker_fee;
  row.theta_m = result.fee.maker_base_spread;
  row.seed = std::to_string(result.config.seed);
  const MetricsBundle& m = result.metrics;
  row[Column::Volatility] = m.volatility;
  row[Column::MarketImpact] = m.market_impact;
  row[Column::MieAbs] = m.m_ie_abs;
  row[Column::MieSigned] = m.m_ie_signed;
  row[Column::TotalCostRatio] = m.total_cost_ratio;
  row[Column::ExcessKurtosis] = m.excess_kurtosis;
  for (std::size_t i = 0; i < m.acf_sq.size(); ++i) row.values[static_cast<std::size_t>(Column::AcfSq1) + i] = m.acf_sq[i];
  row[Column::NBuy] = static_cast<double>(m.n_buy);
  row[Column::Trades] = static_cast<double>(result.trade_count);
  row[Column::MakerPnl] = result.maker_pnl();
  row[Column::ExchangeRevenue] = result.tallies.exchange_revenue;
  return row;
}

std::pair<MetricsRow, MetricsRow> aggregate(const std::vector<MetricsRow>& rows) {
  MetricsRow mean_row;
  MetricsRow se_row;
  if (!rows.empty()) {
    mean_row.fees_enabled = se_row.fees_enabled = rows.front().fees_enabled;
    mean_row.r_m = se_row.r_m = rows.front().r_m;
    mean_row.c_t = se_row.c_t = rows.front().c_t;
    mean_row.theta_m = se_row.theta_m = rows.front().theta_m;
  }
  mean_row.seed = "mean";
  se_row.seed = "se";
  for (std::size_t c = 0; c < kValueColumns; ++c) {
    double sum = 0.0;
    std::size_t k = 0;
    for (const MetricsRow& r : rows) {
      if (r.values[c]) {
        sum += *r.values[c];
        ++k;
      }
    }
    if (k == 0) continue;
    const double mu = sum / static_cast<double>(k);
    mean_row.values[c] = mu;
    if (k < 2) continue;
    double ss = 0.0;
    for (const MetricsRow& r : rows) {
      if (r.values[c]) ss += (*r.values[c] - mu) * (*r.values[c] - mu);
    }
    se_row.values[c] = std::sqrt(ss / static_cast<double>(k - 1)) / std::sqrt(static_cast<double>(k));
  }
  return {mean_row, se_row};
}

void write_csv_header(std::ostream& out) {
  const auto& h = csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const MetricsRow& row) {
  out << (row.fees_enabled ? 1 : 0) << ',' << row.r_m.to_string() << ',' << row.c_t.to_string() << ','
      << row.theta_m.to_string() << ',' << row.seed;
  for (const auto& v : row.values) out << ',' << csv::format(v);
  out << '\n';
}

void SweepResult::write_csv(std::ostream& out) const {
  write_csv_header(out);
  for (std::size_t g = 0; g < per_seed.size(); ++g) {
    for (const MetricsRow& r : per_seed[g]) write_csv_row(out, r);
    write_csv_row(out, means[g]);
    write_csv_row(out, standard_errors[g]);
  }
}

SweepResult run_sweep(const SweepSpec& spec, unsigned jobs, SweepProgress progress) {
  spec.validate();
  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t total = spec.grid.size() * n_seeds;

  SweepResult result;
  result.grid = spec.grid;
  result.per_seed.assign(spec.grid.size(), std::vector<MetricsRow>(n_seeds));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total || failed.load()) return;
      const std::size_t g = task / n_seeds;
      const std::size_t s = task % n_seeds;
      try {
        SimConfig cfg = spec.config;
        cfg.seed = spec.seeds[s];
        const RunResult r = run(cfg, spec.grid[g].schedule(cfg));
        result.per_seed[g][s] = make_row(r);
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (!failed.exchange(true)) {
          try {
            throw ConfigError("sweep point " + spec.grid[g].label() + " seed " + std::to_string(spec.seeds[s]) +
                              ": " + e.what());
          } catch (...) {
            error = std::current_exception();
          }
        }
        return;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(mu);
        progress(finished, total);
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  for (const auto& rows : result.per_seed) {
    auto [mean_row, se_row] = aggregate(rows);
    result.means.push_back(std::move(mean_row));
    result.standard_errors.push_back(std::move(se_row));
  }
  return result;
}

std::vector<double> gaussian_price_walk(std::size_t steps, double p0, double sigma, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0xC0FFEE));
  std::vector<double> prices;
  prices.reserve(steps + 1);
  double log_p = std::log(p0);
  prices.push_back(p0);
  for (std::size_t i = 0; i < steps; ++i) {
    log_p += rng.normal(0.0, sigma);
    prices.push_back(std::exp(log_p));
  }
  return prices;
}

ValidationReport validate_stylized_facts(const SimConfig& cfg, const ValidationOptions& options) {
  if (options.seeds.empty()) throw ConfigError("validation needs at least one seed");
  ValidationReport report;
  for (std::uint64_t seed : options.seeds) {
    SimConfig c = cfg;
    c.seed = seed;
    std::vector<double> prices;
    if (options.synthetic_gaussian) {
      c.validate();
      prices = gaussian_price_walk(static_cast<std::size_t>(c.t_end), c.p_f, 1e-3, seed);
    } else {
      prices = run(c, fee_schedule_from_rebate(Rate{}, c.re_m, c.r_ex)).prices;
    }
    SeedValidation v;
    v.seed = seed;
    v.stats = stylized_stats(prices, options.interval);
    if (v.stats) {
      v.fat_tail = v.stats->excess_kurtosis > 0.0;
      v.clustering = std::all_of(v.stats->acf_sq.begin(), v.stats->acf_sq.end(), [](double a) { return a > 0.0; });
    }
    if (v.pass()) ++report.passed;
    report.seeds.push_back(v);
  }
  const double needed = options.required_pass_fraction * static_cast<double>(report.seeds.size());
  report.pass = static_cast<double>(report.passed) >= needed - 1e-12;
  return report;
}

void print_validation_report(std::ostream& out, const ValidationReport& report) {
  constexpr std::array<double, 5> reference{0.045, 0.045, 0.044, 0.042, 0.040};
  out << "Stylized facts (log returns every 100 steps, zero rebate)\n";
  out << std::fixed << std::setprecision(3);
  out << "reference: kurtosis 17.54  acf_sq";
  for (double a : reference) out << ' ' << a;
  out << '\n' << std::setprecision(4);
  for (const SeedValidation& v : report.seeds) {
    out << "seed " << v.seed << ": ";
    if (!v.stats) {
      out << "insufficient or degenerate data  FAIL\n";
      continue;
    }
    out << "kurtosis " << v.stats->excess_kurtosis << "  acf_sq";
    for (double a : v.stats->acf_sq) out << ' ' << a;
    out << "  (n=" << v.stats->samples << ")  " << (v.pass() ? "PASS" : "FAIL") << '\n';
  }
  out << std::defaultfloat;
  out << "seeds passing: " << report.passed << '/' << report.seeds.size() << "  overall "
      << (report.pass ? "PASS" : "FAIL") << '\n';
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  auto parse_u64 = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ConfigError("invalid seed '" + std::string(s) + "'");
    }
    return v;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_u64(item));
    } else {
      const std::uint64_t lo = parse_u64(item.substr(0, dash));
      const std::uint64_t hi = parse_u64(item.substr(dash + 1));
      if (hi < lo || hi - lo > 1'000'000) throw ConfigError("invalid seed range '" + std::string(item) + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    }
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

std::vector<Rate> parse_rate_list(std::string_view text) {
  std::vector<Rate> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    try {
      out.push_back(Rate::parse(item));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (out.empty()) throw ConfigError("empty rate list");
  return out;
}

}  // namespace mtsim
