#include "mtsim/fees.hpp"

namespace mtsim {

FeeSchedule fee_schedule_from_rebate(Rate maker_rebate, Rate maker_expected_return, Rate exchange_fee) {
  FeeSchedule fee;
  fee.enabled = true;
  fee.exchange_fee = exchange_fee;
  fee.maker_rebate = maker_rebate;
  fee.maker_expected_return = maker_expected_return;
  fee.taker_fee = exchange_fee + maker_rebate;
  fee.maker_base_spread = maker_expected_return - maker_rebate * 2;
  if (fee.maker_base_spread <= Rate{}) {
    throw ConfigError("maker rebate " + maker_rebate.to_percent_string() + " leaves base spread " +
                      fee.maker_base_spread.to_percent_string() + " (must be positive)");
  }
  return fee;
}

FeeSchedule no_fee_schedule(Rate maker_expected_return) {
  if (maker_expected_return <= Rate{}) {
    throw ConfigError("maker expected return must be positive");
  }
  FeeSchedule fee;
  fee.enabled = false;
  fee.maker_expected_return = maker_expected_return;
  fee.maker_base_spread = maker_expected_return;
  return fee;
}

const std::array<Rate, 12>& standard_rebate_grid() {
  // In units of 0.005%.
  static const std::array<Rate, 12> grid = [] {
    constexpr std::array<std::int64_t, 12> steps{-20, -15, -10, -5, 0, 5, 10, 15, 20, 25, 28, 29};
    std::array<Rate, 12> g{};
    for (std::size_t i = 0; i < steps.size(); ++i) g[i] = percent_rate(steps[i] * 5, 1000);
    return g;
  }();
  return grid;
}

}  // namespace mtsim
