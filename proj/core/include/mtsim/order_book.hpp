#pragma once

#include "mtsim/types.hpp"

#include <deque>
#include <functional>
#include <list>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mtsim {

enum class BookEventType : std::uint8_t { Submit, Rest, Trade, Cancel, Expire, Reject };

[[nodiscard]] std::string_view to_string(BookEventType t) noexcept;

struct BookEvent {
  Step step = 0;
  BookEventType type = BookEventType::Submit;
  OrderId order_id = 0;
  Side side = Side::Buy;
  Ticks price = 0;
  AgentId owner{};
};

struct OrderRequest {
  Side side = Side::Buy;
  Ticks price = 0;
  AgentId owner{};
};

struct SubmitOutcome {
  enum class Kind : std::uint8_t { Filled, Rested, Rejected };

  Kind kind = Kind::Rejected;
  OrderId id = 0;
  std::optional<Trade> trade;

  [[nodiscard]] bool filled() const noexcept { return kind == Kind::Filled; }
  [[nodiscard]] bool rested() const noexcept { return kind == Kind::Rested; }
};

/// Continuous double auction over one-share orders with price-time priority.
///
/// An incoming order that crosses the opposite best executes immediately
/// against the oldest order at that price, at the resting price. Since every
/// order is one share, one submit produces at most one trade and never leaves
/// a remainder. Resting orders live exactly `order_lifetime` steps.
class OrderBook {
 public:
  using EventSink = std::function<void(const BookEvent&)>;

  explicit OrderBook(Step order_lifetime);
  // The index holds iterators into the level queues, so copies would alias.
  OrderBook(const OrderBook&) = delete;
  OrderBook& operator=(const OrderBook&) = delete;
  OrderBook(OrderBook&&) noexcept = default;
  OrderBook& operator=(OrderBook&&) noexcept = default;

  SubmitOutcome submit(const OrderRequest& request, Step now);
  bool cancel(OrderId id, Step now = 0);
  /// Removes every order with placed_at + lifetime <= now.
  std::size_t expire(Step now);

  [[nodiscard]] std::optional<Ticks> best_bid() const noexcept;
  [[nodiscard]] std::optional<Ticks> best_ask() const noexcept;

  [[nodiscard]] bool contains(OrderId id) const noexcept { return index_.contains(id); }
  [[nodiscard]] const Order* find(OrderId id) const noexcept;
  [[nodiscard]] std::size_t size() const noexcept { return index_.size(); }
  [[nodiscard]] bool empty() const noexcept { return index_.empty(); }
  [[nodiscard]] std::size_t depth(Side side) const noexcept;
  [[nodiscard]] Step order_lifetime() const noexcept { return lifetime_; }

  /// Resting orders of one side in priority order (best price first, oldest first).
  [[nodiscard]] std::vector<Order> orders(Side side) const;

  /// No-cross and expiry invariants; true when the book is consistent at `now`.
  [[nodiscard]] bool check_invariants(Step now) const;

  void set_event_sink(EventSink sink) { sink_ = std::move(sink); }

 private:
  using Queue = std::list<Order>;
  using BidLevels = std::map<Ticks, Queue, std::greater<>>;
  using AskLevels = std::map<Ticks, Queue, std::less<>>;

  struct Locator {
    Side side;
    Ticks price;
    Queue::iterator it;
  };

  template <typename Levels>
  std::optional<Trade> match(Levels& levels, const Order& incoming, Step now);
  void rest(const Order& order);
  void erase(const Locator& loc);
  void emit(BookEventType type, const Order& o, Step now) const;

  Step lifetime_;
  OrderId next_id_ = 1;
  BidLevels bids_;
  AskLevels asks_;
  std::unordered_map<OrderId, Locator> index_;
  // Orders in placement order; expiry times are monotone because the lifetime is fixed.
  std::deque<std::pair<Step, OrderId>> expiry_queue_;
  EventSink sink_;
};

}  // namespace mtsim
