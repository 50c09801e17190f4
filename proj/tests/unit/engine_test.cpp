// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "brute_force.hpp"
#include "flashcard/engine.hpp"

using namespace flashcard;

TEST(Game, InitialState) {
  for (const auto& s : {Schedule::slow(), Schedule::recap()}) {
    Game game(s);
    EXPECT_EQ(game.current(), (ViewEvent{1, 1, 1}));
    EXPECT_EQ(game.deck().front(), 1u);
    EXPECT_EQ(game.count_of(1), 1u);
    EXPECT_EQ(game.count_of(7), 0u);
    EXPECT_EQ(game.timetable().time_of(1, 1), 1u);
  }
}

TEST(Game, FirstSlowSteps) {
  Game game(Schedule::slow());
  EXPECT_EQ(game.step(), (ViewEvent{2, 2, 1}));
  EXPECT_EQ(game.step(), (ViewEvent{3, 1, 2}));
  EXPECT_EQ(game.count_of(1), 2u);
}

TEST(Game, ConstantOneShowsCardOneForever) {
  Game game(Schedule::constant(1));
  for (Time t = 2; t <= 50; ++t) EXPECT_EQ(game.step(), (ViewEvent{t, 1, t}));
}

TEST(Game, SlowPrefixesMatchPrintedListing) {
  const auto v = viewing_prefix(Schedule::slow(), 30);
  const auto c = counting_prefix(Schedule::slow(), 30);
  EXPECT_EQ(std::vector<std::uint64_t>(v.begin(), v.end()), oracle::kSlowViewing30);
  EXPECT_EQ(std::vector<std::uint64_t>(c.begin(), c.end()), oracle::kSlowCounting30);
  EXPECT_TRUE(viewing_prefix(Schedule::slow(), 0).empty());
}

TEST(Game, RunUntilSeen) {
  Game game(Schedule::slow());
  EXPECT_EQ(game.run_until_seen(1, 2), 3u);
  EXPECT_EQ(game.run_until_seen(1, 3), 6u);
  EXPECT_EQ(game.run_until_seen(2, 1), 2u);  // already happened
  Game bounded(Schedule::constant(3));
  EXPECT_THROW(bounded.run_until_seen(4, 1, 1000), BudgetExhausted);
  Game forgetful(Schedule::slow(), {.keep_event_log = false, .keep_times = false});
  forgetful.run_until_time(10);
  EXPECT_THROW(forgetful.run_until_seen(1, 1), std::logic_error);
}

TEST(Game, CapacityErrorPropagates) {
  Game game(Schedule::recap(), {.max_position = 64});
  EXPECT_THROW(game.run_until_time(1000), CapacityError);
}

TEST(Game, EventLogCsv) {
  Game game(Schedule::slow());
  game.run_until_time(3);
  std::ostringstream out;
  write_event_log(out, game.timetable().events());
  EXPECT_EQ(out.str(), "t,card,k\n1,1,1\n2,2,1\n3,1,2\n");
}

TEST(Game, MatchesListOracle) {
  struct Case {
    Schedule schedule;
    std::function<oracle::u64(oracle::u64, oracle::u64)> p;
  };
  const auto uniform = Schedule::uniform(31);
  const auto poisson = Schedule::poisson(32);
  std::vector<Case> cases = {
      {Schedule::slow(), oracle::slow},
      {Schedule::recap(), [](oracle::u64 k, oracle::u64) { return oracle::u64{1} << k; }},
      {Schedule::constant(5), [](oracle::u64, oracle::u64) { return oracle::u64{5}; }},
      {Schedule::affine(3, 1), [](oracle::u64 k, oracle::u64) { return 3 * k + 1; }},
      {Schedule::table({3, 1, 4, 1, 5}), [](oracle::u64 k, oracle::u64) {
         const oracle::u64 v[] = {3, 1, 4, 1, 5};
         return v[std::min<oracle::u64>(k, 5) - 1];
       }},
      {uniform, [&](oracle::u64 k, oracle::u64 t) { return uniform.position(k, t); }},
      {poisson, [&](oracle::u64 k, oracle::u64 t) { return poisson.position(k, t); }},
  };
  for (const auto& c : cases) {
    oracle::ListGame list(c.p);
    Game game(c.schedule);
    const Time steps = c.schedule.kind() == ScheduleKind::recap ? 3000 : 5000;
    while (game.time() < steps) {
      game.step();
      list.step();
    }
    const auto& events = game.timetable().events();
    ASSERT_EQ(events.size(), list.viewing.size()) << c.schedule.describe();
    for (std::size_t i = 0; i < events.size(); ++i) {
      ASSERT_EQ(events[i].card, list.viewing[i]) << c.schedule.describe() << " t=" << i + 1;
      ASSERT_EQ(events[i].count, list.counting[i]);
    }
  }
}

TEST(Game, EfficientAndNaiveDecksAgree) {
  for (const auto& s : {Schedule::slow(), Schedule::recap(), Schedule::uniform(3), Schedule::poisson(4)}) {
    Game fast(s);
    NaiveGame naive(s);
    const Time steps = s.kind() == ScheduleKind::recap ? 20'000 : 100'000;
    while (fast.time() < steps) {
      ASSERT_EQ(fast.step(), naive.step()) << s.describe();
    }
    ASSERT_EQ(fast.deck().active_prefix(), naive.deck().active_prefix());
  }
}

TEST(TimeTable, Invariants) {
  Game game(Schedule::slow());
  game.run_until_time(5000);
  const auto& tt = game.timetable();
  std::vector<bool> hit(5001, false);
  for (Card n = 1; n <= tt.max_card(); ++n) {
    const auto times = tt.times(n);
    for (std::size_t k = 0; k < times.size(); ++k) {
      ASSERT_FALSE(hit[times[k]]);
      hit[times[k]] = true;
      if (k > 0) ASSERT_LT(times[k - 1], times[k]);
      if (n > 1) {
        const auto above = tt.time_of(n - 1, k + 1);
        ASSERT_TRUE(above.has_value());
        ASSERT_LT(*above, times[k]);
      }
    }
  }
  for (Time t = 1; t <= 5000; ++t) ASSERT_TRUE(hit[t]);
  EXPECT_FALSE(tt.time_of(0, 1).has_value());
  EXPECT_FALSE(tt.time_of(1, 0).has_value());
  EXPECT_TRUE(tt.times(100000).empty());
}

TEST(Game, CountConservationAndDominance) {
  Game game(Schedule::slow(), {.keep_event_log = false, .keep_times = false});
  while (game.time() < 100'000) {
    game.step();
    const auto counts = game.counts();
    ASSERT_EQ(std::accumulate(counts.begin(), counts.end(), Time{0}), game.time());
    if (game.time() % 97 == 0) {
      for (std::size_t i = 1; i < std::min<std::size_t>(counts.size(), 200); ++i) {
        ASSERT_GE(counts[i - 1], counts[i]) << "t=" << game.time();
      }
    }
    ASSERT_GE(game.count_of(game.deck().front()), 1u);
  }
}

TEST(Game, NoPassingAndPositionFloor) {
  // If card i is ahead of card j at time t, i is seen next before j; a card at
  // position m is not seen before t + m - 1.
  std::mt19937_64 gen(8);
  for (const auto& s : {Schedule::slow(), Schedule::affine(2, 1)}) {
    Game game(s);
    game.run_until_time(40'000);
    const auto& tt = game.timetable();
    for (int sample = 0; sample < 20; ++sample) {
      Game probe(s);
      const Time t = 1 + gen() % 30'000;
      probe.run_until_time(t);
      const auto prefix = probe.deck().active_prefix();
      auto next_view = [&](Card c) {
        const auto times = tt.times(c);
        const auto it = std::upper_bound(times.begin(), times.end(), t - 1);
        return it == times.end() ? Time{0} : *it;
      };
      for (std::size_t pos = 0; pos + 1 < std::min<std::size_t>(prefix.size(), 40); ++pos) {
        const Time a = next_view(prefix[pos]);
        const Time b = next_view(prefix[pos + 1]);
        if (a && b) ASSERT_LT(a, b);
        if (a) ASSERT_GE(a, t + pos);
      }
    }
  }
}

TEST(Game, BoundedScheduleNeverShowsHighCards) {
  Game game(Schedule::constant(5), {.keep_event_log = false});
  game.run_until_time(10'000);
  EXPECT_EQ(game.timetable().max_card(), 5u);
}

TEST(Game, SlowGameShowsEveryCardInTime) {
  Game game(Schedule::slow(), {.keep_event_log = false});
  game.run_until_time(49 * 49 + 1);
  for (Card n = 1; n <= 50; ++n) EXPECT_TRUE(game.timetable().time_of(n, 1).has_value()) << n;
}

TEST(Game, RandomRunsReplayFromSeed) {
  for (const auto& s : {Schedule::uniform(7), Schedule::poisson(7)}) {
    EXPECT_EQ(viewing_prefix(s, 10'000), viewing_prefix(s, 10'000));
  }
  EXPECT_NE(viewing_prefix(Schedule::uniform(7), 200), viewing_prefix(Schedule::uniform(8), 200));
}

TEST(DeckRepetitions, FindsTheEarlyRepeat) {
  // The deck at t = 3 equals the deck at t = 1. Whether that is the only
  // repeat is open, so the scan's other output is not asserted.
  const auto hits = find_deck_repetitions(Schedule::slow(), 3000);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits.front(), (std::pair<Time, Time>{1, 3}));
}
