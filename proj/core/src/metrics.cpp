#include "mtsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mtsim {

namespace {

std::vector<double> log_returns(std::span<const double> prices, std::size_t interval) {
  std::vector<double> r;
  if (prices.size() < interval + 1) return r;
  r.reserve((prices.size() - 1) / interval);
  for (std::size_t i = interval; i < prices.size(); i += interval) r.push_back(std::log(prices[i] / prices[i - interval]));
  return r;
}

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

std::optional<double> volatility(std::span<const double> prices) {
  if (prices.size() < 2) return std::nullopt;
  const std::vector<double> r = log_returns(prices, 1);
  const double mu = mean(r);
  double ss = 0.0;
  for (double x : r) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(r.size()));
}

std::optional<double> market_impact(std::span<const AlgoFill> fills, double p_f) {
  if (fills.empty()) return std::nullopt;
  double sum = 0.0;
  for (const AlgoFill& f : fills) sum += (f.price - p_f) / p_f;
  return sum / static_cast<double>(fills.size());
}

std::optional<MarketInefficiency> market_inefficiency(std::span<const double> prices, double p_f) {
  if (prices.empty()) return std::nullopt;
  MarketInefficiency m;
  for (double p : prices) {
    const double d = (p - p_f) / p_f;
    m.absolute += std::abs(d);
    m.signed_ += d;
  }
  const auto count = static_cast<double>(prices.size());
  m.absolute /= count;
  m.signed_ /= count;
  return m;
}

std::optional<double> total_cost_ratio(std::span<const AlgoFill> fills, const FeeSchedule& fee, double p_f) {
  if (fills.empty()) return std::nullopt;
  const double taker_fee = fee.enabled ? fee.taker_fee.fraction() * p_f : 0.0;
  double sum = 0.0;
  for (const AlgoFill& f : fills) {
    const double cost = (f.price - p_f) + taker_fee;
    sum += cost / (cost + f.price);
  }
  return sum / static_cast<double>(fills.size());
}

std::optional<double> excess_kurtosis(std::span<const double> returns) {
  if (returns.size() < 2) return std::nullopt;
  const double mu = mean(returns);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : returns) {
    const double d2 = (x - mu) * (x - mu);
    m2 += d2;
    m4 += d2 * d2;
  }
  const auto n = static_cast<double>(returns.size());
  m2 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return std::nullopt;
  return m4 / (m2 * m2) - 3.0;
}

std::optional<double> autocorrelation(std::span<const double> xs, std::size_t lag) {
  if (xs.size() <= lag || xs.size() < 2) return std::nullopt;
  const double mu = mean(xs);
  double denom = 0.0;
  for (double x : xs) denom += (x - mu) * (x - mu);
  if (!(denom > 0.0)) return std::nullopt;
  double num = 0.0;
  for (std::size_t i = 0; i + lag < xs.size(); ++i) num += (xs[i] - mu) * (xs[i + lag] - mu);
  return num / denom;
}

std::optional<StylizedStats> stylized_stats_from_returns(std::span<const double> returns) {
  if (returns.size() < 30) return std::nullopt;
  StylizedStats s;
  s.samples = returns.size();
  const auto k = excess_kurtosis(returns);
  if (!k) return std::nullopt;
  s.excess_kurtosis = *k;
  std::vector<double> sq(returns.size());
  std::transform(returns.begin(), returns.end(), sq.begin(), [](double r) { return r * r; });
  for (std::size_t lag = 1; lag <= s.acf_sq.size(); ++lag) {
    const auto a = autocorrelation(sq, lag);
    if (!a) return std::nullopt;
    s.acf_sq[lag - 1] = *a;
  }
  return s;
}

std::optional<StylizedStats> stylized_stats(std::span<const double> prices, std::size_t interval) {
  if (interval == 0) return std::nullopt;
  const std::vector<double> r = log_returns(prices, interval);
  return stylized_stats_from_returns(r);
}

namespace {

std::vector<double> ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

MetricsBundle compute_metrics(std::span<const double> prices, std::span<const AlgoFill> fills, const FeeSchedule& fee,
                              double p_f) {
  MetricsBundle b;
  b.volatility = volatility(prices);
  b.market_impact = market_impact(fills, p_f);
  if (auto mie = market_inefficiency(prices, p_f)) {
    b.m_ie_abs = mie->absolute;
    b.m_ie_signed = mie->signed_;
  }
  b.total_cost_ratio = total_cost_ratio(fills, fee, p_f);
  if (auto s = stylized_stats(prices, 100)) {
    b.excess_kurtosis = s->excess_kurtosis;
    for (std::size_t i = 0; i < s->acf_sq.size(); ++i) b.acf_sq[i] = s->acf_sq[i];
  }
  b.n_buy = static_cast<std::int64_t>(fills.size());
  return b;
}

}  // namespace mtsim
