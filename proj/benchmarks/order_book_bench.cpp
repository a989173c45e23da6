#include "mtsim/order_book.hpp"
#include "mtsim/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mtsim;

// Resting book of `depth` orders per side spread over a band around 10000.
OrderBook seeded_book(std::int64_t depth, Rng& rng) {
  OrderBook book(1'000'000);
  for (std::int64_t i = 0; i < depth; ++i) {
    book.submit({Side::Buy, 9'999 - rng.uniform_int(0, 50), AgentId::normal(0)}, 0);
    book.submit({Side::Sell, 10'001 + rng.uniform_int(0, 50), AgentId::normal(1)}, 0);
  }
  return book;
}

void BM_SubmitMixed(benchmark::State& state) {
  Rng rng(1);
  OrderBook book = seeded_book(state.range(0), rng);
  Step now = 1;
  for (auto _ : state) {
    const Side side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
    benchmark::DoNotOptimize(book.submit({side, 9'975 + rng.uniform_int(0, 50), AgentId::normal(2)}, now++));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SubmitMixed)->Arg(100)->Arg(10'000);

void BM_SubmitCancel(benchmark::State& state) {
  Rng rng(2);
  OrderBook book = seeded_book(state.range(0), rng);
  for (auto _ : state) {
    const auto out = book.submit({Side::Buy, 9'990, AgentId::market_maker()}, 0);
    benchmark::DoNotOptimize(book.cancel(out.id));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SubmitCancel)->Arg(100)->Arg(10'000);

void BM_Expire(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    OrderBook book(10);
    Rng rng(3);
    for (Step t = 0; t < state.range(0); ++t) {
      book.submit({Side::Buy, 9'000 + rng.uniform_int(0, 500), AgentId::normal(0)}, t);
    }
    state.ResumeTiming();
    benchmark::DoNotOptimize(book.expire(state.range(0) + 10));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Expire)->Arg(10'000);

}  // namespace
