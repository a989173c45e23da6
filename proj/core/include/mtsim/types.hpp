#pragma once

#include <cstdint>
#include <string_view>

namespace mtsim {

/// Price in integer multiples of the tick size. The book never sees raw reals.
using Ticks = std::int64_t;
/// Simulation time; advances once per normal or algorithm agent order.
using Step = std::int64_t;
using OrderId = std::uint64_t;

enum class Side : std::uint8_t { Buy, Sell };

[[nodiscard]] constexpr Side opposite(Side s) noexcept {
  return s == Side::Buy ? Side::Sell : Side::Buy;
}

[[nodiscard]] constexpr std::string_view to_string(Side s) noexcept {
  return s == Side::Buy ? "buy" : "sell";
}

enum class AgentClass : std::uint8_t { Normal, Algorithm, MarketMaker };

[[nodiscard]] constexpr std::string_view to_string(AgentClass c) noexcept {
  switch (c) {
    case AgentClass::Normal: return "normal";
    case AgentClass::Algorithm: return "algo";
    case AgentClass::MarketMaker: return "maker";
  }
  return "?";
}

struct AgentId {
  AgentClass kind = AgentClass::Normal;
  std::uint32_t index = 0;

  static constexpr AgentId normal(std::uint32_t j) noexcept { return {AgentClass::Normal, j}; }
  static constexpr AgentId algorithm(std::uint32_t k) noexcept { return {AgentClass::Algorithm, k}; }
  static constexpr AgentId market_maker() noexcept { return {AgentClass::MarketMaker, 0}; }

  [[nodiscard]] constexpr bool is_maker() const noexcept { return kind == AgentClass::MarketMaker; }

  friend constexpr bool operator==(AgentId, AgentId) noexcept = default;
};

/// One-share order. Every order in the market moves exactly one share.
struct Order {
  static constexpr int quantity = 1;

  OrderId id = 0;
  Side side = Side::Buy;
  Ticks price = 0;
  AgentId owner{};
  Step placed_at = 0;
  Step expires_at = 0;
};

struct Trade {
  Step step = 0;
  Ticks price = 0;  // the resting order's price
  AgentId buyer{};
  AgentId seller{};
  Side taker_side = Side::Buy;
  OrderId resting_id = 0;
  OrderId taker_id = 0;

  [[nodiscard]] constexpr AgentId taker() const noexcept {
    return taker_side == Side::Buy ? buyer : seller;
  }
  [[nodiscard]] constexpr AgentId maker() const noexcept {
    return taker_side == Side::Buy ? seller : buyer;
  }

  friend constexpr bool operator==(const Trade&, const Trade&) noexcept = default;
};

}  // namespace mtsim
