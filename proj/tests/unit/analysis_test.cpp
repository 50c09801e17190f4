// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "brute_force.hpp"
#include "flashcard/analysis.hpp"

using namespace flashcard;

namespace {

const Game& slow_reference() {
  static const Game game = simulate_slow_reference(300);
  return game;
}

}  // namespace

TEST(SlowChecks, PassOnTheSlowGame) {
  const auto& tt = slow_reference().timetable();
  const auto report = check_slow_theorems(tt, 300);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.results.size(), 7u);
  for (const auto& r : report.results) EXPECT_GT(r.evaluated, 0u) << r.name;
  EXPECT_TRUE(check_min_gap(tt, 300).passed());
  EXPECT_TRUE(check_root2k(tt, 299).passed());
}

TEST(SlowChecks, ReferenceValuesAgreeWithOracle) {
  oracle::ListGame list(oracle::slow);
  list.run_to(3000);
  const auto& tt = slow_reference().timetable();
  for (const auto& [key, t] : list.times) {
    ASSERT_EQ(tt.time_of(key.first, key.second), t);
  }
  EXPECT_EQ(tt.time_of(1, 3), 6u);  // <= 3^2 - 3 + 1
  EXPECT_EQ(tt.time_of(2, 1), 2u);
  EXPECT_EQ(tt.time_of(2, 2), 4u);
  EXPECT_EQ(*tt.time_of(10, 2) - *tt.time_of(10, 1), 2u);
  EXPECT_EQ(*tt.time_of(10, 4) - *tt.time_of(10, 3), 4u);
  EXPECT_LT(*tt.time_of(50, 8), *tt.time_of(1, 51));
}

TEST(SlowChecks, MissingDataRequiresRange) {
  Game game(Schedule::slow());
  game.run_until_time(10);
  EXPECT_THROW(check_slow_theorems(game.timetable(), 50), std::invalid_argument);
  EXPECT_THROW(check_root2k(game.timetable(), 50), std::invalid_argument);
}

TEST(SlowChecks, DetectViolations) {
  // A fabricated table in which card 1 is seen at t = 1 and t = 10.
  TimeTable tt;
  tt.record({1, 1, 1});
  for (Time t = 2; t < 10; ++t) tt.record({t, 2, t - 1});
  tt.record({10, 1, 2});
  const auto report = check_slow_theorems(tt, 2);
  EXPECT_FALSE(report.passed());
  const auto* upper = report.find("T_1(n) <= n^2-n+1");
  ASSERT_NE(upper, nullptr);
  EXPECT_EQ(upper->violations, 1u);
  EXPECT_NE(upper->witness.find("VIOLATION T_1(2)=10"), std::string::npos);
  const auto* tie = report.find("|c_i-c_j|<=1 after a tie");
  ASSERT_NE(tie, nullptr);
  EXPECT_FALSE(tie->passed());
  EXPECT_FALSE(check_min_gap(tt, 3).passed());
}

TEST(Root2k, CalibratedOffset) {
  Game game = run_until_card_one(Schedule::slow(), 502, {.keep_event_log = false});
  const auto needed = calibrate_root2k_offset(game.timetable(), 500);
  EXPECT_LE(needed, kRoot2kOffset);
  EXPECT_TRUE(check_root2k(game.timetable(), 500, needed).passed());
  EXPECT_FALSE(check_root2k(game.timetable(), 500, needed - 1).passed());
}

TEST(GeneralChecks, PassForValidSchedules) {
  GeneralCheckOptions options;
  options.game.max_position = Position{1} << 16;
  const auto recap = check_general(Schedule::recap(), 25, options);
  EXPECT_TRUE(recap.passed());
  EXPECT_FALSE(recap.notes.empty());  // stopped by the cap
  EXPECT_TRUE(check_general(Schedule::affine(3, 1), 200).passed());
  EXPECT_TRUE(check_general(Schedule::slow(), 150).passed());
  EXPECT_TRUE(check_general(Schedule::power(3), 9).passed());
  EXPECT_TRUE(check_general(Schedule::table({2, 5, 3, 9, 4, 12, 20, 30, 40, 50}), 10).passed());
  const auto constant = check_general(Schedule::constant(5), 10);
  EXPECT_TRUE(constant.passed());
  const auto* never = constant.find("no card above max p_k is seen");
  ASSERT_NE(never, nullptr);
  EXPECT_TRUE(never->passed());
  EXPECT_THROW(check_general(Schedule::uniform(1), 10), std::invalid_argument);
}

TEST(GeneralChecks, RecapFirstValues) {
  Game game(Schedule::recap());
  game.run_until_seen(1, 4);
  EXPECT_LE(*game.timetable().time_of(1, 4), 1u + 3 * 8);
  oracle::ListGame list([](oracle::u64 k, oracle::u64) { return oracle::u64{1} << k; });
  list.run_to(game.time());
  EXPECT_EQ(list.times.at({1, 4}), *game.timetable().time_of(1, 4));
}

TEST(Probes, SmallValues) {
  const auto& tt = slow_reference().timetable();
  const auto one = estimate_c(tt, 1, 1);
  EXPECT_DOUBLE_EQ(one.mean, 1.0);
  const auto wide = estimate_c(tt, 50, 300);
  EXPECT_GT(wide.min, 0.5);
  EXPECT_LE(wide.max, 1.0);
  const auto gap = gap_probe(tt, 1, 1);
  EXPECT_EQ(gap.margin, 0);  // T_1(2) - T_1(1) = 2
  EXPECT_EQ(gap.evaluated, 1u);
  const auto intercept = curve_intercept_probe(tt, 1, 2);
  EXPECT_DOUBLE_EQ(intercept.ratios[0], 1.0);
  EXPECT_NEAR(intercept.ratios[1], std::sqrt(2.0), 1e-12);
  EXPECT_THROW(estimate_c(tt, 0, 3), std::invalid_argument);
}

TEST(Probes, Stabilization) {
  EXPECT_EQ(stabilization_probe(1, 10), 1u);
  // c_2(2) = c_1(2) = 1 already at the first viewing of card 2.
  EXPECT_EQ(stabilization_probe(2, 10), 2u);
  EXPECT_EQ(stabilization_probe(3, 100), 10u);
  EXPECT_FALSE(stabilization_probe(10, 50).has_value());
  // Brute force: first t with equal counts.
  oracle::ListGame list(oracle::slow);
  for (oracle::u64 card = 3; card <= 8; ++card) {
    while (!(list.count(card) == list.count(1))) list.step();
    EXPECT_EQ(stabilization_probe(card, 100'000), list.t) << card;
  }
}

TEST(Reports, MergeAndWriters) {
  CheckReport a{"x", {{"c1", "n<=2", 2, 0, "tightest"}}, {"note a"}};
  CheckReport b{"y", {{"c2", "k<=3", 3, 1, "VIOLATION w, \"q\""}}, {}};
  CheckReport c{"y", {}, {"note c"}};
  CheckReport left = a;
  left.merge(b);
  left.merge(c);
  CheckReport bc = b;
  bc.merge(c);
  CheckReport right = a;
  right.merge(bc);
  EXPECT_EQ(left.results.size(), right.results.size());
  EXPECT_EQ(left.notes, right.notes);
  EXPECT_EQ(left.suite, right.suite);
  EXPECT_FALSE(left.passed());
  EXPECT_EQ(left.violations(), 1u);
  EXPECT_EQ(left.find("nope"), nullptr);
  std::ostringstream csv;
  write_report_csv(csv, b);
  EXPECT_EQ(csv.str(), "suite,check,range,evaluated,violations,witness\ny,c2,k<=3,3,1,\"VIOLATION w, \"\"q\"\"\"\n");
  std::ostringstream text;
  write_report_text(text, a);
  EXPECT_NE(text.str().find("PASS"), std::string::npos);
}

TEST(Cloud, PointsAndBounds) {
  Game game(Schedule::slow());
  game.run_until_time(2000);
  const auto small = point_cloud(game.timetable(), 1, 2);
  ASSERT_EQ(small.points.size(), 2u);
  EXPECT_EQ(small.points[0].n, 1u);
  EXPECT_DOUBLE_EQ(small.points[0].x + small.points[0].y, 2.0);
  EXPECT_NEAR(small.points[1].x + small.points[1].y, 3 / std::sqrt(2.0), 1e-12);
  const auto cloud = point_cloud(game.timetable(), 500, 2000);
  EXPECT_EQ(cloud.points.size(), 1501u);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    ASSERT_EQ(cloud.points[i].t, 500 + i);
    ASSERT_GT(cloud.points[i].x, 0);
    ASSERT_GT(cloud.points[i].y, 0);
  }
  const auto report = check_cloud_bounds(cloud, circle_epsilon(500), 500);
  EXPECT_TRUE(report.passed());
  EXPECT_THROW(point_cloud(game.timetable(), 100, 5000), std::invalid_argument);
  EXPECT_NEAR(circle_epsilon(20000), 0.025, 1e-12);
}

TEST(Cloud, LineBoundIsExact) {
  // (n + k)^2 = T sits exactly on the line and must fail.
  PointCloud cloud{1, 100, {{3, 7, 100, 0.3, 0.7}, {3, 8, 100, 0.3, 0.8}}};
  const auto report = check_cloud_bounds(cloud, 0.1);
  const auto* line = report.find("x+y > 1");
  ASSERT_NE(line, nullptr);
  EXPECT_EQ(line->violations, 1u);
}

TEST(Cloud, Writers) {
  PointCloud cloud{1, 2, {{1, 1, 1, 1.0, 1.0}, {2, 1, 2, std::sqrt(2.0), 1 / std::sqrt(2.0)}}};
  std::ostringstream csv;
  write_cloud_csv(csv, cloud);
  EXPECT_TRUE(csv.str().starts_with("n,k,T,x,y\n1,1,1,1,1\n"));
  std::ostringstream svg;
  write_cloud_svg(svg, cloud);
  const auto s = svg.str();
  EXPECT_NE(s.find("width=\"800\" height=\"800\""), std::string::npos);
  EXPECT_NE(s.find("<line"), std::string::npos);
  EXPECT_NE(s.find("<path"), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - 7), "</svg>\n");
}
