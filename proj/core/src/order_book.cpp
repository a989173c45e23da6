#include "mtsim/order_book.hpp"

#include <cassert>
#include <limits>

namespace mtsim {

std::string_view to_string(BookEventType t) noexcept {
  switch (t) {
    case BookEventType::Submit: return "submit";
    case BookEventType::Rest: return "rest";
    case BookEventType::Trade: return "trade";
    case BookEventType::Cancel: return "cancel";
    case BookEventType::Expire: return "expire";
    case BookEventType::Reject: return "reject";
  }
  return "?";
}

OrderBook::OrderBook(Step order_lifetime) : lifetime_(order_lifetime) {}

void OrderBook::emit(BookEventType type, const Order& o, Step now) const {
  if (sink_) sink_(BookEvent{now, type, o.id, o.side, o.price, o.owner});
}

template <typename Levels>
std::optional<Trade> OrderBook::match(Levels& levels, const Order& incoming, Step now) {
  if (levels.empty()) return std::nullopt;
  auto level = levels.begin();
  const bool crosses = incoming.side == Side::Buy ? incoming.price >= level->first : incoming.price <= level->first;
  if (!crosses) return std::nullopt;

  Queue& queue = level->second;
  assert(!queue.empty());
  const Order resting = queue.front();
  queue.pop_front();
  if (queue.empty()) levels.erase(level);
  index_.erase(resting.id);

  Trade trade;
  trade.step = now;
  trade.price = resting.price;
  trade.taker_side = incoming.side;
  trade.buyer = incoming.side == Side::Buy ? incoming.owner : resting.owner;
  trade.seller = incoming.side == Side::Buy ? resting.owner : incoming.owner;
  trade.resting_id = resting.id;
  trade.taker_id = incoming.id;
  if (sink_) {
    sink_(BookEvent{now, BookEventType::Trade, resting.id, resting.side, resting.price, resting.owner});
    sink_(BookEvent{now, BookEventType::Trade, incoming.id, incoming.side, resting.price, incoming.owner});
  }
  return trade;
}

void OrderBook::rest(const Order& order) {
  Queue* queue;
  if (order.side == Side::Buy) {
    queue = &bids_[order.price];
  } else {
    queue = &asks_[order.price];
  }
  queue->push_back(order);
  index_.emplace(order.id, Locator{order.side, order.price, std::prev(queue->end())});
  expiry_queue_.emplace_back(order.expires_at, order.id);
}

SubmitOutcome OrderBook::submit(const OrderRequest& request, Step now) {
  Order order;
  order.id = next_id_++;
  order.side = request.side;
  order.price = request.price;
  order.owner = request.owner;
  order.placed_at = now;
  order.expires_at = now + lifetime_;

  SubmitOutcome out;
  out.id = order.id;
  emit(BookEventType::Submit, order, now);
  if (order.price <= 0) {
    out.kind = SubmitOutcome::Kind::Rejected;
    emit(BookEventType::Reject, order, now);
    return out;
  }

  std::optional<Trade> trade =
      order.side == Side::Buy ? match(asks_, order, now) : match(bids_, order, now);
  if (trade) {
    out.kind = SubmitOutcome::Kind::Filled;
    out.trade = trade;
    return out;
  }
  rest(order);
  out.kind = SubmitOutcome::Kind::Rested;
  emit(BookEventType::Rest, order, now);
  return out;
}

void OrderBook::erase(const Locator& loc) {
  if (loc.side == Side::Buy) {
    auto level = bids_.find(loc.price);
    level->second.erase(loc.it);
    if (level->second.empty()) bids_.erase(level);
  } else {
    auto level = asks_.find(loc.price);
    level->second.erase(loc.it);
    if (level->second.empty()) asks_.erase(level);
  }
}

bool OrderBook::cancel(OrderId id, Step now) {
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  if (sink_) emit(BookEventType::Cancel, *it->second.it, now);
  erase(it->second);
  index_.erase(it);
  return true;
}

std::size_t OrderBook::expire(Step now) {
  std::size_t removed = 0;
  while (!expiry_queue_.empty() && expiry_queue_.front().first <= now) {
    const OrderId id = expiry_queue_.front().second;
    expiry_queue_.pop_front();
    auto it = index_.find(id);
    if (it == index_.end()) continue;  // already filled or cancelled
    if (sink_) emit(BookEventType::Expire, *it->second.it, now);
    erase(it->second);
    index_.erase(it);
    ++removed;
  }
  return removed;
}

std::optional<Ticks> OrderBook::best_bid() const noexcept {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Ticks> OrderBook::best_ask() const noexcept {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

const Order* OrderBook::find(OrderId id) const noexcept {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &*it->second.it;
}

std::size_t OrderBook::depth(Side side) const noexcept {
  std::size_t total = 0;
  if (side == Side::Buy) {
    for (const auto& [p, q] : bids_) total += q.size();
  } else {
    for (const auto& [p, q] : asks_) total += q.size();
  }
  return total;
}

std::vector<Order> OrderBook::orders(Side side) const {
  std::vector<Order> out;
  auto collect = [&](const auto& levels) {
    for (const auto& [p, q] : levels) out.insert(out.end(), q.begin(), q.end());
  };
  if (side == Side::Buy) {
    collect(bids_);
  } else {
    collect(asks_);
  }
  return out;
}

bool OrderBook::check_invariants(Step now) const {
  if (!bids_.empty() && !asks_.empty() && bids_.begin()->first >= asks_.begin()->first) return false;
  std::size_t count = 0;
  auto scan = [&](const auto& levels, Side side) {
    for (const auto& [price, queue] : levels) {
      if (queue.empty()) return false;
      Step prev_placed = std::numeric_limits<Step>::min();
      for (const Order& o : queue) {
        if (o.side != side || o.price != price) return false;
        if (o.expires_at <= now) return false;
        if (o.expires_at - o.placed_at != lifetime_) return false;
        if (o.placed_at < prev_placed) return false;
        prev_placed = o.placed_at;
        ++count;
      }
    }
    return true;
  };
  if (!scan(bids_, Side::Buy) || !scan(asks_, Side::Sell)) return false;
  return count == index_.size();
}

}  // namespace mtsim
