// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "flashcard/deck.hpp"

namespace {

template <class DeckT>
void BM_RandomMoves(benchmark::State& state) {
  const auto width = static_cast<flashcard::Position>(state.range(0));
  DeckT deck;
  std::mt19937_64 gen(1);
  for (auto _ : state) {
    deck.remove_front_insert(1 + gen() % width);
    benchmark::DoNotOptimize(deck.front());
  }
  state.SetItemsProcessed(state.iterations());
}

template <class DeckT>
void BM_PositionOf(benchmark::State& state) {
  const auto width = static_cast<flashcard::Position>(state.range(0));
  DeckT deck;
  std::mt19937_64 gen(2);
  for (flashcard::Position i = 0; i < width; ++i) deck.remove_front_insert(1 + gen() % width);
  for (auto _ : state) benchmark::DoNotOptimize(deck.position_of(1 + gen() % width));
}

BENCHMARK(BM_RandomMoves<flashcard::Deck>)->Range(64, 1 << 20);
BENCHMARK(BM_RandomMoves<flashcard::NaiveDeck>)->Range(64, 1 << 14);
BENCHMARK(BM_PositionOf<flashcard::Deck>)->Range(64, 1 << 20);
BENCHMARK(BM_PositionOf<flashcard::NaiveDeck>)->Range(64, 1 << 14);

}  // namespace
