#pragma once

#include "mtsim/types.hpp"

#include <optional>

namespace mtsim {

/// Conversion between real prices and integer tick counts.
class TickGrid {
 public:
  explicit TickGrid(double tick_size);

  [[nodiscard]] double tick_size() const noexcept { return tick_; }
  [[nodiscard]] double to_price(Ticks t) const noexcept { return static_cast<double>(t) * tick_; }

  /// Sells round up to the next tick, buys round down. Values within 1e-9 ticks
  /// of a multiple snap to it. Empty when the result is not a positive price.
  [[nodiscard]] std::optional<Ticks> round(double raw_price, Side side) const noexcept;

  /// Nearest tick, used for values already on the grid (e.g. P_f).
  [[nodiscard]] Ticks nearest(double price) const noexcept;

 private:
  double tick_;
};

/// Free-function form of TickGrid::round returning the rounded real price.
[[nodiscard]] std::optional<double> round_to_tick(double raw_price, Side side, double tick_size);

}  // namespace mtsim
