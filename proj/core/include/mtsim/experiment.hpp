#pragma once

#include "mtsim/config.hpp"
#include "mtsim/fees.hpp"
#include "mtsim/metrics.hpp"
#include "mtsim/simulation.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtsim {

/// One market setting of a sweep: a rebate under maker-taker fees, or the
/// market without the fee structure.
struct GridPoint {
  bool fees_enabled = true;
  Rate maker_rebate;

  static GridPoint with_rebate(Rate r_m) { return {true, r_m}; }
  static GridPoint baseline() { return {false, Rate{}}; }

  [[nodiscard]] FeeSchedule schedule(const SimConfig& cfg) const;
  [[nodiscard]] std::string label() const;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// The twelve standard rebate rows followed by the no-fee baseline.
[[nodiscard]] std::vector<GridPoint> default_grid();

struct SweepSpec {
  std::vector<GridPoint> grid = default_grid();
  std::vector<std::uint64_t> seeds = default_seeds();
  SimConfig config;

  static std::vector<std::uint64_t> default_seeds();  // 1..30

  /// Throws ConfigError if the seed list is empty or any point has theta_M <= 0.
  void validate() const;
};

enum class Column : std::size_t {
  Volatility,
  MarketImpact,
  MieAbs,
  MieSigned,
  TotalCostRatio,
  ExcessKurtosis,
  AcfSq1,
  AcfSq2,
  AcfSq3,
  AcfSq4,
  AcfSq5,
  NBuy,
  Trades,
  MakerPnl,
  ExchangeRevenue,
  Count_
};

inline constexpr std::size_t kValueColumns = static_cast<std::size_t>(Column::Count_);

/// One CSV row: a (grid point, seed) result or a per-point aggregate, where the
/// seed column reads "mean" or "se".
struct MetricsRow {
  bool fees_enabled = true;
  Rate r_m;
  Rate c_t;
  Rate theta_m;
  std::string seed;
  std::array<std::optional<double>, kValueColumns> values{};

  [[nodiscard]] std::optional<double> operator[](Column c) const noexcept {
    return values[static_cast<std::size_t>(c)];
  }
  std::optional<double>& operator[](Column c) noexcept { return values[static_cast<std::size_t>(c)]; }

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

[[nodiscard]] const std::vector<std::string_view>& csv_header();

[[nodiscard]] MetricsRow make_row(const RunResult& result);

/// Mean and standard error (sample std-dev / sqrt(k)) of each column over rows
/// sharing one grid point. Missing values are skipped.
[[nodiscard]] std::pair<MetricsRow, MetricsRow> aggregate(const std::vector<MetricsRow>& rows);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const MetricsRow& row);

struct SweepResult {
  std::vector<GridPoint> grid;
  std::vector<std::vector<MetricsRow>> per_seed;  // [grid index][seed index]
  std::vector<MetricsRow> means;
  std::vector<MetricsRow> standard_errors;

  /// Per-seed rows of each point followed by its mean and se rows.
  void write_csv(std::ostream& out) const;
};

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (grid point, seed) pair on `jobs` worker threads. Output order
/// and values do not depend on `jobs`.
[[nodiscard]] SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 1, SweepProgress progress = {});

struct ValidationOptions {
  std::vector<std::uint64_t> seeds{1};
  std::size_t interval = 100;
  /// Replace the simulated prices by an i.i.d. Gaussian log-return walk.
  bool synthetic_gaussian = false;
  /// Fraction of seeds that must show both stylized facts.
  double required_pass_fraction = 0.8;
};

struct SeedValidation {
  std::uint64_t seed = 0;
  std::optional<StylizedStats> stats;
  bool fat_tail = false;
  bool clustering = false;

  [[nodiscard]] bool pass() const noexcept { return fat_tail && clustering; }
};

struct ValidationReport {
  std::vector<SeedValidation> seeds;
  std::size_t passed = 0;
  bool pass = false;
};

/// Runs the market at zero rebate (theta_M = Re_M) per seed and checks for
/// positive excess kurtosis and positive squared-return autocorrelation at
/// lags 1..5.
[[nodiscard]] ValidationReport validate_stylized_facts(const SimConfig& cfg, const ValidationOptions& options);

void print_validation_report(std::ostream& out, const ValidationReport& report);

/// Geometric random walk with i.i.d. N(0, sigma) log returns, P^0 = p0.
[[nodiscard]] std::vector<double> gaussian_price_walk(std::size_t steps, double p0, double sigma,
                                                      std::uint64_t seed);

/// "1-5,9,12" -> {1,2,3,4,5,9,12}. Throws ConfigError.
[[nodiscard]] std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Comma-separated rates, each accepted by Rate::parse. Throws ConfigError.
[[nodiscard]] std::vector<Rate> parse_rate_list(std::string_view text);

}  // namespace mtsim
