#pragma once

#include "mtsim/rate.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace mtsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maker-taker fee schedule. All rates are fractions of the fundamental price.
///
/// When enabled the exchange keeps the difference between what the taker pays
/// and what the maker receives, and the market maker narrows its base spread by
/// twice the rebate since it may collect it on both sides of a round trip.
struct FeeSchedule {
  Rate exchange_fee;           // R_EX
  Rate maker_rebate;           // R_M, negative means the maker pays
  Rate taker_fee;              // C_T, negative means the taker is paid
  Rate maker_base_spread;      // theta_M
  Rate maker_expected_return;  // Re_M
  bool enabled = false;

  friend bool operator==(const FeeSchedule&, const FeeSchedule&) = default;
};

/// Enabled schedule for the given rebate. Throws ConfigError when the
/// resulting base spread would not be positive.
[[nodiscard]] FeeSchedule fee_schedule_from_rebate(Rate maker_rebate, Rate maker_expected_return,
                                                   Rate exchange_fee);

/// Market without maker-taker fees: nothing is charged or paid and the maker
/// quotes its plain expected return as spread.
[[nodiscard]] FeeSchedule no_fee_schedule(Rate maker_expected_return);

/// The twelve rebate rows used for the rebate sweep, from -0.100% to 0.145%.
[[nodiscard]] const std::array<Rate, 12>& standard_rebate_grid();

}  // namespace mtsim
