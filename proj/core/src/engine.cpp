// SPDX-License-Identifier: Apache-2.0
#include "flashcard/engine.hpp"

#include <map>
#include <ostream>

namespace flashcard {

template class BasicGame<Deck>;
template class BasicGame<NaiveDeck>;

void TimeTable::record(const ViewEvent& event) {
  last_time_ = event.t;
  if (keep_log_) log_.push_back(event);
  if (keep_times_) {
    if (event.card > per_card_.size()) per_card_.resize(event.card);
    per_card_[event.card - 1].push_back(event.t);
  } else if (event.card > per_card_.size()) {
    per_card_.resize(event.card);  // still track max_card()
  }
}

std::optional<Time> TimeTable::time_of(Card n, ViewCount k) const {
  if (n == 0 || k == 0 || n > per_card_.size()) return std::nullopt;
  const auto& row = per_card_[n - 1];
  if (k > row.size()) return std::nullopt;
  return row[k - 1];
}

std::span<const Time> TimeTable::times(Card n) const {
  if (n == 0 || n > per_card_.size()) return {};
  return per_card_[n - 1];
}

std::vector<Card> viewing_prefix(const Schedule& schedule, std::size_t length) {
  std::vector<Card> out;
  if (length == 0) return out;
  out.reserve(length);
  Game game(schedule, {.keep_event_log = false, .keep_times = false});
  out.push_back(game.current().card);
  while (out.size() < length) out.push_back(game.step().card);
  return out;
}

std::vector<ViewCount> counting_prefix(const Schedule& schedule, std::size_t length) {
  std::vector<ViewCount> out;
  if (length == 0) return out;
  out.reserve(length);
  Game game(schedule, {.keep_event_log = false, .keep_times = false});
  out.push_back(game.current().count);
  while (out.size() < length) out.push_back(game.step().count);
  return out;
}

void write_event_log(std::ostream& out, std::span<const ViewEvent> events) {
  out << "t,card,k\n";
  for (const auto& e : events) out << e.t << ',' << e.card << ',' << e.count << '\n';
}

std::vector<std::pair<Time, Time>> find_deck_repetitions(const Schedule& schedule, Time t_max) {
  // Orders are compared on the active prefix with its trailing fixed points
  // trimmed, so materialization depth does not matter.
  std::vector<std::pair<Time, Time>> hits;
  std::map<std::vector<Card>, Time> first_seen;
  Game game(schedule, {.keep_event_log = false, .keep_times = false});
  for (;;) {
    auto prefix = game.deck().active_prefix();
    while (!prefix.empty() && prefix.back() == prefix.size()) prefix.pop_back();
    const auto [it, inserted] = first_seen.emplace(std::move(prefix), game.time());
    if (!inserted) hits.emplace_back(it->second, game.time());
    if (game.time() >= t_max) break;
    game.step();
  }
  return hits;
}

}  // namespace flashcard
