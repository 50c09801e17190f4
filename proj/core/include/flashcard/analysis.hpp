// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flashcard/engine.hpp"
#include "flashcard/schedule.hpp"

namespace flashcard {

/// Outcome of one inequality family over its parameter range.
struct CheckResult {
  std::string name;
  std::string range;
  std::uint64_t evaluated = 0;
  std::uint64_t violations = 0;
  /// First violation if any, otherwise the tightest case observed.
  std::string witness;

  bool passed() const { return violations == 0; }
};

struct CheckReport {
  std::string suite;
  std::vector<CheckResult> results;
  std::vector<std::string> notes;

  bool passed() const;
  std::uint64_t violations() const;
  /// Concatenates results and notes; merging is associative.
  void merge(const CheckReport& other);
  const CheckResult* find(std::string_view name) const;
};

void write_report_text(std::ostream& out, const CheckReport& report);
/// CSV with header `suite,check,range,evaluated,violations,witness`.
void write_report_csv(std::ostream& out, const CheckReport& report);

/// Runs `schedule` until card 1 has been seen `views` times.
Game run_until_card_one(const Schedule& schedule, ViewCount views, GameOptions options = {},
                        std::uint64_t step_budget = kDefaultStepBudget);

// ---------------------------------------------------------------------------
// Slow game (p_k = k + 1) theorem checks. Each takes a timetable from the slow
// game; values the inequalities need but the timetable lacks count as
// violations. These are proved results: any violation is a bug.

struct SlowCheckOptions {
  std::size_t corollary_samples = 10'000;  // (i, k) pairs for T_i(1+k) < T_1(i+k)
  Card after_pair_limit = 48;              // all pairs i < j <= limit ...
  std::size_t after_random_pairs = 500;    // ... plus this many random pairs
  std::uint64_t seed = 1;
};

/// Requires T_1(n_max) in the timetable. Checks, for n <= n_max:
/// T_1(n) <= n^2 - n + 1, T_1(n) >= C(n+1, 2), T_1(n-1) + n - 1 <= T_n(1),
/// T_n(1) < T_1(n), T_n(1) <= (n-1)^2 + 1, T_i(1+k) < T_1(i+k) for sampled
/// i >= 2, k >= 1, and that once c_i = c_j > 0 the two counts never differ
/// by more than one.
CheckReport check_slow_theorems(const TimeTable& timetable, Card n_max,
                                const SlowCheckOptions& options = {});

/// T_k(l) < T_1(k + 1) for all l <= floor(sqrt(2k)) - offset, k <= k_max.
/// Requires T_1(k_max + 1).
inline constexpr std::int64_t kRoot2kOffset = 2;
CheckReport check_root2k(const TimeTable& timetable, Card k_max,
                         std::int64_t offset = kRoot2kOffset);
/// Smallest offset for which check_root2k has no violation over k <= k_max.
std::int64_t calibrate_root2k_offset(const TimeTable& timetable, Card k_max);

/// T_k(i+1) - T_k(i) = i + 1 whenever C(i+1, 2) < k, for k <= k_max.
CheckReport check_min_gap(const TimeTable& timetable, Card k_max);

/// Slow game timetable covering everything the slow checks above need for
/// parameters up to n_max (runs to T_1(n_max + 1), then tops up min-gap
/// cells).
Game simulate_slow_reference(Card n_max, GameOptions options = {});

// ---------------------------------------------------------------------------
// General schedules.

struct GeneralCheckOptions {
  GameOptions game{.max_position = kDefaultMaxPosition, .keep_event_log = false, .keep_times = true};
  std::uint64_t step_budget = kDefaultStepBudget;
  Time bounded_steps = 10'000;          // run length for bounded schedules
  std::size_t corollary_samples = 10'000;
  std::uint64_t seed = 1;
};

/// Increasing schedules: T_1(n) + p_n - 1 <= T_{p_n}(1) < T_1(n+1),
/// T_{p_{n-1}}(1+k) < T_1(n+k), T_1(n+1) <= 1 + n p_n.
/// All schedules: T_n(1) <= 1 + (n-1) min{j : p_j >= n} and
/// T_i(n+1) - T_i(n) <= (p_n - 1) n + 1.
/// Bounded schedules additionally: no card above the bound is ever seen.
///
/// When the run hits the materialization cap or the step budget, the checks
/// cover what was reached and the report notes where it stopped.
CheckReport check_general(const Schedule& schedule, Card n_max,
                          const GeneralCheckOptions& options = {});

// ---------------------------------------------------------------------------
// Conjecture probes: reported, never asserted.

struct RatioSummary {
  double min = 0;
  double max = 0;
  double mean = 0;
  std::size_t count = 0;
};

/// Statistics of T_1(n) / n^2 over n in [n_lo, n_hi].
RatioSummary estimate_c(const TimeTable& timetable, Card n_lo, Card n_hi);

struct GapProbe {
  std::int64_t margin = 0;  // max over n of (T_i(n+1) - T_i(n)) - 2n
  ViewCount at = 0;         // the maximizing n
  ViewCount evaluated = 0;
};
GapProbe gap_probe(const TimeTable& timetable, Card card, ViewCount n_max);

/// Least t with c_i(t) = c_1(t) in the slow game, within `budget` steps.
std::optional<Time> stabilization_probe(Card card, Time budget);

struct InterceptProbe {
  std::vector<double> ratios;   // n / sqrt(T_n(1)) for n = n_lo..n_hi
  RatioSummary summary;
  double implied_by_c = 0;      // 1 / sqrt(mean T_1(n)/n^2) over the same range
};
InterceptProbe curve_intercept_probe(const TimeTable& timetable, Card n_lo, Card n_hi);

// ---------------------------------------------------------------------------
// Rescaled point cloud (n, k) / sqrt(T_n(k)).

struct CloudPoint {
  Card n = 0;
  ViewCount k = 0;
  Time t = 0;
  double x = 0;
  double y = 0;
};

struct PointCloud {
  Time lo = 0;
  Time hi = 0;
  std::vector<CloudPoint> points;  // ordered by t
};

/// Every (n, k) with T_n(k) in [lo, hi]; the timetable must reach hi.
PointCloud point_cloud(const TimeTable& timetable, Time lo, Time hi);

/// Heuristic envelope for the circle bound at times >= m: 2.5 / sqrt(m / 2).
double circle_epsilon(Time m);

/// x + y > 1 for every point (exact integer test), and x^2 + y^2 <= 2 + epsilon
/// for points with T >= circle_from.
CheckReport check_cloud_bounds(const PointCloud& cloud, double epsilon, Time circle_from = 1);

/// CSV with header `n,k,T,x,y`.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
/// 800x800 SVG of [0, 2.5]^2 with the line x + y = 1 and circle x^2 + y^2 = 2.
void write_cloud_svg(std::ostream& out, const PointCloud& cloud);

}  // namespace flashcard
