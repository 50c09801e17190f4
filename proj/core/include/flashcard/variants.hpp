// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flashcard/analysis.hpp"
#include "flashcard/engine.hpp"
#include "flashcard/schedule.hpp"

namespace flashcard {

/// k -> sigma_k, each a permutation of a finite prefix of positions given in
/// one-line form: after the move, position i holds the card that was at
/// position sigma(i). Positions past the prefix are fixed.
class SigmaFamily {
 public:
  using Rule = std::function<std::vector<Position>(ViewCount k, std::uint64_t draw)>;

  /// sigma_k = (1, 2, ..., p_k): the ordinary game under `schedule`.
  static SigmaFamily cycle(Schedule schedule);
  /// sigma_k = (1, k+1).
  static SigmaFamily transposition();
  /// Reverses positions 1..k+1.
  static SigmaFamily reversal();
  /// Swaps blocks [1..k] and [k+1..2k].
  static SigmaFamily cut();
  /// Interleaves the first 2k positions as k+1, 1, k+2, 2, ..., 2k, k.
  static SigmaFamily shuffle();
  /// User rule; every result is checked to be a permutation of 1..s.
  static SigmaFamily custom(std::string name, Rule rule);

  /// transposition | reversal | cut | shuffle | cycle:<schedule shorthand>.
  static SigmaFamily parse(std::string_view text, std::uint64_t seed = 0);

  std::vector<Position> one_line(ViewCount k, std::uint64_t draw = 0) const;
  const std::string& name() const { return name_; }

 private:
  SigmaFamily(std::string name, Rule rule, bool trusted)
      : name_(std::move(name)), rule_(std::move(rule)), trusted_(trusted) {}

  std::string name_;
  Rule rule_;
  bool trusted_;
};

/// Permutation games run on the flat deck; the game's own schedule is unused.
using SigmaGame = NaiveGame;

SigmaGame make_sigma_game(GameOptions options = {});
/// Multiplies the deck by sigma_k for the front card's count k.
ViewEvent sigma_step(SigmaGame& game, const SigmaFamily& family);
std::vector<Card> sigma_viewing_prefix(const SigmaFamily& family, std::size_t length,
                                       Position max_position = kDefaultMaxPosition);

/// Transposition family: T_n(k) - T_n(k-1) = n + k - 1 for n <= n_max,
/// 2 <= k <= k_max.
CheckReport variant_gap_check(Card n_max, ViewCount k_max,
                              std::uint64_t step_budget = kDefaultStepBudget);

struct DeckStats {
  Time t = 0;
  std::uint64_t inversions = 0;
  std::uint64_t descents = 0;

  friend bool operator==(const DeckStats&, const DeckStats&) = default;
};

/// Inversions of a sequence by merge counting.
std::uint64_t count_inversions(std::span<const Card> cards);
std::uint64_t count_descents(std::span<const Card> cards);

/// Statistics of the whole infinite deck: the active prefix holds exactly the
/// cards below tail_start, so the tail adds nothing beyond the boundary
/// comparison, which is included for completeness.
template <DeckLike DeckT>
DeckStats deck_stats(const DeckT& deck, Time t) {
  const auto prefix = deck.active_prefix();
  DeckStats out{t, count_inversions(prefix), count_descents(prefix)};
  if (!prefix.empty() && prefix.back() > deck.tail_start()) ++out.descents;
  return out;
}

/// One DeckStats per time 1..t_max.
std::vector<DeckStats> stats_timeseries(const Schedule& schedule, Time t_max,
                                        Position max_position = kDefaultMaxPosition);
/// CSV with header `t,inv,des`.
void write_stats_csv(std::ostream& out, std::span<const DeckStats> stats);

/// uniform: p_k uniform on {1, ..., 2k+1}; poisson: Poisson(k), 0 read as 1.
Schedule random_schedule(ScheduleKind kind, std::uint64_t seed);

}  // namespace flashcard
