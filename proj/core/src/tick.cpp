#include "mtsim/tick.hpp"

#include "mtsim/fees.hpp"

#include <cmath>

namespace mtsim {

TickGrid::TickGrid(double tick_size) : tick_(tick_size) {
  if (!(tick_size > 0.0) || !std::isfinite(tick_size)) throw ConfigError("tick size must be positive");
}

std::optional<Ticks> TickGrid::round(double raw_price, Side side) const noexcept {
  if (!(raw_price > 0.0) || !std::isfinite(raw_price)) return std::nullopt;
  const double q = raw_price / tick_;
  const double nearest = std::nearbyint(q);
  double ticks;
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q))) {
    ticks = nearest;
  } else {
    ticks = side == Side::Sell ? std::ceil(q) : std::floor(q);
  }
  if (ticks < 1.0) return std::nullopt;
  return static_cast<Ticks>(ticks);
}

Ticks TickGrid::nearest(double price) const noexcept { return static_cast<Ticks>(std::llround(price / tick_)); }

std::optional<double> round_to_tick(double raw_price, Side side, double tick_size) {
  TickGrid grid(tick_size);
  auto t = grid.round(raw_price, side);
  if (!t) return std::nullopt;
  return grid.to_price(*t);
}

}  // namespace mtsim
