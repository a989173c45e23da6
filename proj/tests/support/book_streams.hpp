#pragma once

// Random operation streams for OrderBook vs ReferenceMatcher comparison.

#include "reference_matcher.hpp"

#include "mtsim/order_book.hpp"
#include "mtsim/rng.hpp"

#include <sstream>
#include <string>

namespace mtsim::testing {

struct StreamMismatch {
  bool ok = true;
  std::string detail;
};

/// Replays one random stream of at most `max_ops` submit/cancel/expire
/// operations with prices drawn from a `band`-tick window, on both engines.
inline StreamMismatch compare_random_stream(std::uint64_t seed, int max_ops = 50, Ticks band = 20) {
  Rng rng(derive_seed(seed, 7));
  const Step lifetime = rng.uniform_int(1, 8);
  OrderBook book(lifetime);
  ReferenceMatcher ref(lifetime);
  Step now = 0;
  OrderId max_id = 0;
  const auto n_ops = static_cast<int>(rng.uniform_int(1, max_ops));

  auto fail = [&](int op, const std::string& what) {
    std::ostringstream ss;
    ss << "seed " << seed << " op " << op << ": " << what;
    return StreamMismatch{false, ss.str()};
  };

  for (int op = 0; op < n_ops; ++op) {
    const double kind = rng.uniform();
    if (kind < 0.7) {
      OrderRequest req;
      req.side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
      req.price = 10'000 + rng.uniform_int(0, band - 1);
      req.owner = AgentId::normal(static_cast<std::uint32_t>(rng.uniform_int(0, 9)));
      const SubmitOutcome a = book.submit(req, now);
      const SubmitOutcome b = ref.submit(req, now);
      max_id = a.id;
      if (a.kind != b.kind || a.id != b.id) return fail(op, "submit outcome differs");
      if (a.trade != b.trade) return fail(op, "trade differs");
    } else if (kind < 0.85) {
      const auto id = static_cast<OrderId>(rng.uniform_int(1, static_cast<std::int64_t>(max_id) + 2));
      if (book.cancel(id, now) != ref.cancel(id)) return fail(op, "cancel result differs");
    } else {
      now += rng.uniform_int(0, 3);
      if (book.expire(now) != ref.expire(now)) return fail(op, "expired count differs");
    }
    if (book.best_bid() != ref.best(Side::Buy) || book.best_ask() != ref.best(Side::Sell)) {
      return fail(op, "best prices differ");
    }
    if (book.size() != ref.size()) return fail(op, "resting count differs");
    if (!book.check_invariants(now)) return fail(op, "book invariants violated");
  }
  return {};
}

}  // namespace mtsim::testing
