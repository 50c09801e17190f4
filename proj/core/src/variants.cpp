// SPDX-License-Identifier: Apache-2.0
#include "flashcard/variants.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "tally.hpp"

namespace flashcard {

namespace {

void require_permutation(std::span<const Position> one_line) {
  std::vector<bool> used(one_line.size(), false);
  for (const Position v : one_line) {
    if (v == 0 || v > one_line.size() || used[v - 1]) {
      throw std::invalid_argument("sigma_k is not a permutation of 1..s");
    }
    used[v - 1] = true;
  }
}

std::uint64_t merge_count(std::vector<Card>& v, std::vector<Card>& buf, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t out = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      buf[out++] = v[j++];
    } else {
      buf[out++] = v[i++];
    }
  }
  while (i < mid) buf[out++] = v[i++];
  while (j < hi) buf[out++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

SigmaFamily SigmaFamily::cycle(Schedule schedule) {
  std::string name = "cycle:" + schedule.describe();
  return SigmaFamily(
      std::move(name),
      [s = std::move(schedule)](ViewCount k, std::uint64_t draw) {
        const Position p = s.position(k, draw);
        if (p > kDefaultMaxPosition) throw CapacityError("cycle length " + std::to_string(p) + " too large");
        std::vector<Position> out(p);
        std::iota(out.begin(), out.end(), Position{2});
        out.back() = 1;
        return out;
      },
      true);
}

SigmaFamily SigmaFamily::transposition() {
  return SigmaFamily(
      "transposition",
      [](ViewCount k, std::uint64_t) {
        std::vector<Position> out(k + 1);
        std::iota(out.begin(), out.end(), Position{1});
        std::swap(out.front(), out.back());
        return out;
      },
      true);
}

SigmaFamily SigmaFamily::reversal() {
  return SigmaFamily(
      "reversal",
      [](ViewCount k, std::uint64_t) {
        std::vector<Position> out(k + 1);
        std::iota(out.rbegin(), out.rend(), Position{1});
        return out;
      },
      true);
}

SigmaFamily SigmaFamily::cut() {
  return SigmaFamily(
      "cut",
      [](ViewCount k, std::uint64_t) {
        std::vector<Position> out(2 * k);
        std::iota(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), k + 1);
        std::iota(out.begin() + static_cast<std::ptrdiff_t>(k), out.end(), Position{1});
        return out;
      },
      true);
}

SigmaFamily SigmaFamily::shuffle() {
  return SigmaFamily(
      "shuffle",
      [](ViewCount k, std::uint64_t) {
        std::vector<Position> out(2 * k);
        for (Position j = 1; j <= k; ++j) {
          out[2 * j - 2] = k + j;
          out[2 * j - 1] = j;
        }
        return out;
      },
      true);
}

SigmaFamily SigmaFamily::custom(std::string name, Rule rule) {
  if (!rule) throw std::invalid_argument("custom sigma family needs a rule");
  return SigmaFamily(std::move(name), std::move(rule), false);
}

SigmaFamily SigmaFamily::parse(std::string_view text, std::uint64_t seed) {
  if (text == "transposition") return transposition();
  if (text == "reversal") return reversal();
  if (text == "cut") return cut();
  if (text == "shuffle") return shuffle();
  if (text.starts_with("cycle:")) return cycle(Schedule::parse(text.substr(6), seed));
  throw std::invalid_argument("unknown sigma family '" + std::string(text) +
                              "' (expected transposition, reversal, cut, shuffle or cycle:<schedule>)");
}

std::vector<Position> SigmaFamily::one_line(ViewCount k, std::uint64_t draw) const {
  auto out = rule_(k, draw);
  if (!trusted_) require_permutation(out);
  return out;
}

SigmaGame make_sigma_game(GameOptions options) { return SigmaGame(Schedule::slow(), options); }

ViewEvent sigma_step(SigmaGame& game, const SigmaFamily& family) {
  return game.advance([&](NaiveDeck& deck, ViewCount k, Time t) {
    const auto one_line = family.one_line(k, t);
    deck.permute_prefix(one_line);
  });
}

std::vector<Card> sigma_viewing_prefix(const SigmaFamily& family, std::size_t length,
                                       Position max_position) {
  std::vector<Card> out;
  if (length == 0) return out;
  out.reserve(length);
  SigmaGame game = make_sigma_game({max_position, false, false});
  out.push_back(game.current().card);
  while (out.size() < length) out.push_back(sigma_step(game, family).card);
  return out;
}

CheckReport variant_gap_check(Card n_max, ViewCount k_max, std::uint64_t step_budget) {
  if (n_max == 0 || k_max == 0) throw std::invalid_argument("variant_gap_check: empty range");
  const auto family = SigmaFamily::transposition();
  SigmaGame game = make_sigma_game({kDefaultMaxPosition, false, true});
  auto done = [&] {
    for (Card n = 1; n <= n_max; ++n) {
      if (game.count_of(n) < k_max) return false;
    }
    return true;
  };
  CheckReport report;
  report.suite = "variant-gap";
  std::uint64_t steps = 0;
  while (!done()) {
    if (steps++ == step_budget) {
      report.notes.push_back("step budget exhausted at t=" + std::to_string(game.time()));
      break;
    }
    sigma_step(game, family);
  }
  detail::Tally tally("T_n(k)-T_n(k-1) = n+k-1 (transposition)",
                      "n<=" + std::to_string(n_max) + ", 2<=k<=" + std::to_string(k_max));
  const TimeTable& tt = game.timetable();
  for (Card n = 1; n <= n_max; ++n) {
    for (ViewCount k = 2; k <= k_max; ++k) {
      const auto a = tt.time_of(n, k - 1);
      const auto b = tt.time_of(n, k);
      if (!a || !b) {
        tally.missing("T_" + std::to_string(n) + "(" + std::to_string(k) + ")");
        continue;
      }
      const double off = double(*b - *a) - double(n + k - 1);
      tally.observe(-std::abs(off), [&] {
        return "T_" + std::to_string(n) + "(" + std::to_string(k) + ")-T_" + std::to_string(n) + "(" +
               std::to_string(k - 1) + ")=" + std::to_string(*b - *a);
      });
    }
  }
  report.results.push_back(std::move(tally).finish());
  return report;
}

std::uint64_t count_inversions(std::span<const Card> cards) {
  std::vector<Card> v(cards.begin(), cards.end());
  std::vector<Card> buf(v.size());
  return merge_count(v, buf, 0, v.size());
}

std::uint64_t count_descents(std::span<const Card> cards) {
  std::uint64_t count = 0;
  for (std::size_t i = 1; i < cards.size(); ++i) count += cards[i - 1] > cards[i] ? 1 : 0;
  return count;
}

std::vector<DeckStats> stats_timeseries(const Schedule& schedule, Time t_max, Position max_position) {
  std::vector<DeckStats> out;
  if (t_max == 0) return out;
  out.reserve(t_max);
  Game game(schedule, {max_position, false, false});
  out.push_back(deck_stats(game.deck(), game.time()));
  while (game.time() < t_max) {
    game.step();
    out.push_back(deck_stats(game.deck(), game.time()));
  }
  return out;
}

void write_stats_csv(std::ostream& out, std::span<const DeckStats> stats) {
  out << "t,inv,des\n";
  for (const auto& s : stats) out << s.t << ',' << s.inversions << ',' << s.descents << '\n';
}

Schedule random_schedule(ScheduleKind kind, std::uint64_t seed) {
  switch (kind) {
    case ScheduleKind::uniform:
      return Schedule::uniform(seed);
    case ScheduleKind::poisson:
      return Schedule::poisson(seed);
    default:
      throw std::invalid_argument("random_schedule: kind must be uniform or poisson");
  }
}

}  // namespace flashcard
