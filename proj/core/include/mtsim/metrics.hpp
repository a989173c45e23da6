#pragma once

#include "mtsim/agents.hpp"
#include "mtsim/fees.hpp"

#include <array>
#include <optional>
#include <span>

namespace mtsim {

/// Population standard deviation of per-step log returns. Empty for fewer
/// than two prices.
[[nodiscard]] std::optional<double> volatility(std::span<const double> prices);

/// Mean premium of algorithm-agent buys over P_f, as a fraction of P_f.
/// Empty when there were no buys (distinct from a zero impact).
[[nodiscard]] std::optional<double> market_impact(std::span<const AlgoFill> fills, double p_f);

struct MarketInefficiency {
  double absolute = 0.0;  // mean |P^t - P_f| / P_f
  double signed_ = 0.0;   // mean (P^t - P_f) / P_f
};

/// Time-averaged deviation of the market price from P_f over t = 0..t_e.
/// Empty for an empty series.
[[nodiscard]] std::optional<MarketInefficiency> market_inefficiency(std::span<const double> prices,
                                                                    double p_f);

/// Mean over algorithm-agent buys of cost / (cost + price), where cost is the
/// premium paid over P_f plus the taker fee C_T * P_f.
[[nodiscard]] std::optional<double> total_cost_ratio(std::span<const AlgoFill> fills,
                                                     const FeeSchedule& fee, double p_f);

struct StylizedStats {
  double excess_kurtosis = 0.0;
  std::array<double, 5> acf_sq{};  // lags 1..5
  std::size_t samples = 0;         // number of subsampled returns
};

/// Moments of log returns (population, about the mean).
[[nodiscard]] std::optional<double> excess_kurtosis(std::span<const double> returns);

/// Sample autocorrelation at `lag`, normalised by the lag-0 sum of squares.
[[nodiscard]] std::optional<double> autocorrelation(std::span<const double> xs, std::size_t lag);

/// Fat-tail and volatility-clustering statistics of log returns taken every
/// `interval` steps. Empty when there are fewer than 30 subsampled returns or
/// the returns have zero variance.
[[nodiscard]] std::optional<StylizedStats> stylized_stats(std::span<const double> prices,
                                                          std::size_t interval = 100);

/// Same statistics computed directly from a return series.
[[nodiscard]] std::optional<StylizedStats> stylized_stats_from_returns(std::span<const double> returns);

/// Spearman rank correlation with average ranks for ties. Empty if either
/// input is constant or the sizes differ.
[[nodiscard]] std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

struct MetricsBundle {
  std::optional<double> volatility;
  std::optional<double> market_impact;
  std::optional<double> m_ie_abs;
  std::optional<double> m_ie_signed;
  std::optional<double> total_cost_ratio;
  std::optional<double> excess_kurtosis;
  std::array<std::optional<double>, 5> acf_sq{};
  std::int64_t n_buy = 0;

  friend bool operator==(const MetricsBundle&, const MetricsBundle&) = default;
};

[[nodiscard]] MetricsBundle compute_metrics(std::span<const double> prices, std::span<const AlgoFill> fills,
                                            const FeeSchedule& fee, double p_f);

}  // namespace mtsim
