// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flashcard/deck.hpp"
#include "flashcard/schedule.hpp"
#include "flashcard/types.hpp"

namespace flashcard {

/// One clock tick: at time t card `card` is at the front for the count-th time.
struct ViewEvent {
  Time t = 0;
  Card card = 0;
  ViewCount count = 0;

  friend bool operator==(const ViewEvent&, const ViewEvent&) = default;
};

/// Sparse (n, k) -> T_n(k), filled from the event stream.
///
/// Holds an append-only event log and per-card arrays of viewing times;
/// either can be switched off for long runs that only need counters.
class TimeTable {
 public:
  explicit TimeTable(bool keep_log = true, bool keep_times = true)
      : keep_log_(keep_log), keep_times_(keep_times) {}

  void record(const ViewEvent& event);

  /// T_n(k) if it has happened (and times are kept).
  std::optional<Time> time_of(Card n, ViewCount k) const;
  /// All recorded viewing times of card n, increasing.
  std::span<const Time> times(Card n) const;
  std::span<const ViewEvent> events() const { return log_; }

  /// Clock value of the last recorded event.
  Time last_time() const { return last_time_; }
  /// Largest card with at least one recorded viewing.
  Card max_card() const { return static_cast<Card>(per_card_.size()); }
  bool keeps_log() const { return keep_log_; }
  bool keeps_times() const { return keep_times_; }

 private:
  bool keep_log_;
  bool keep_times_;
  Time last_time_ = 0;
  std::vector<ViewEvent> log_;
  std::vector<std::vector<Time>> per_card_;  // index n - 1
};

struct GameOptions {
  Position max_position = kDefaultMaxPosition;
  bool keep_event_log = true;
  bool keep_times = true;
};

/// A flashcard game: a deck driven by a schedule under the clock convention
/// that t = 1 is already the first viewing of card 1.
///
/// Single-owner and mutable; independent games can run on separate threads.
template <DeckLike DeckT>
class BasicGame {
 public:
  explicit BasicGame(Schedule schedule, GameOptions options = {});

  Time time() const { return current_.t; }
  const ViewEvent& current() const { return current_; }
  const DeckT& deck() const { return deck_; }
  const Schedule& schedule() const { return schedule_; }
  const TimeTable& timetable() const { return timetable_; }

  /// c_n(t) at the current time.
  ViewCount count_of(Card n) const {
    return n >= 1 && n <= counts_.size() ? counts_[n - 1] : 0;
  }
  /// counts()[n - 1] = c_n(t) for every card seen so far.
  std::span<const ViewCount> counts() const { return counts_; }

  /// Inserts the front card at p_k and advances the clock by one.
  ViewEvent step();

  /// Generic step: `move(deck, k, t)` rearranges the deck, given the front
  /// card's view count k and the current time t; then the clock advances and
  /// the new front card is counted.
  template <class Move>
  ViewEvent advance(Move&& move);

  void run_until_time(Time t_stop);
  /// Steps until card n has been seen k times and returns T_n(k).
  /// Throws BudgetExhausted after `step_budget` further steps.
  Time run_until_seen(Card n, ViewCount k, std::uint64_t step_budget = kDefaultStepBudget);

 private:
  void observe_front();

  DeckT deck_;
  Schedule schedule_;
  TimeTable timetable_;
  std::vector<ViewCount> counts_;
  ViewEvent current_;
};

using Game = BasicGame<Deck>;
using NaiveGame = BasicGame<NaiveDeck>;

extern template class BasicGame<Deck>;
extern template class BasicGame<NaiveDeck>;

/// (V_1, ..., V_len): the card seen at each time.
std::vector<Card> viewing_prefix(const Schedule& schedule, std::size_t length);
/// (C_1, ..., C_len): the view count of the card seen at each time.
std::vector<ViewCount> counting_prefix(const Schedule& schedule, std::size_t length);

/// CSV with header `t,card,k`.
void write_event_log(std::ostream& out, std::span<const ViewEvent> events);

/// Times t2 <= t_max at which the deck order equals its order at an earlier
/// time t1, reported as (t1, t2) pairs. Diagnostic scan only.
std::vector<std::pair<Time, Time>> find_deck_repetitions(const Schedule& schedule, Time t_max);

// ---------------------------------------------------------------------------

template <DeckLike DeckT>
BasicGame<DeckT>::BasicGame(Schedule schedule, GameOptions options)
    : deck_(options.max_position),
      schedule_(std::move(schedule)),
      timetable_(options.keep_event_log, options.keep_times) {
  current_.t = 1;
  observe_front();
}

template <DeckLike DeckT>
void BasicGame<DeckT>::observe_front() {
  const Card front = deck_.front();
  if (front > counts_.size()) counts_.resize(front, 0);
  current_.card = front;
  current_.count = ++counts_[front - 1];
  timetable_.record(current_);
}

template <DeckLike DeckT>
template <class Move>
ViewEvent BasicGame<DeckT>::advance(Move&& move) {
  move(deck_, current_.count, current_.t);
  ++current_.t;
  observe_front();
  return current_;
}

template <DeckLike DeckT>
ViewEvent BasicGame<DeckT>::step() {
  return advance([this](DeckT& deck, ViewCount k, Time t) {
    deck.remove_front_insert(schedule_.position(k, t));
  });
}

template <DeckLike DeckT>
void BasicGame<DeckT>::run_until_time(Time t_stop) {
  while (current_.t < t_stop) step();
}

template <DeckLike DeckT>
Time BasicGame<DeckT>::run_until_seen(Card n, ViewCount k, std::uint64_t step_budget) {
  if (count_of(n) >= k) {
    if (const auto t = timetable_.time_of(n, k)) return *t;
    throw std::logic_error("T_n(k) already passed and viewing times are not kept");
  }
  for (std::uint64_t i = 0; i < step_budget; ++i) {
    const ViewEvent& e = step();
    if (e.card == n && e.count == k) return e.t;
  }
  throw BudgetExhausted("card " + std::to_string(n) + " not seen " + std::to_string(k) +
                        " times within " + std::to_string(step_budget) + " steps");
}

}  // namespace flashcard
