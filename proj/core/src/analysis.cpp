// SPDX-License-Identifier: Apache-2.0
#include "flashcard/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "flashcard/rng.hpp"
#include "tally.hpp"

namespace flashcard {

using detail::Tally;

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

double slack(double bound, double value) { return bound - value; }

std::string fmt_t(Card n, ViewCount k, Time t) {
  std::ostringstream out;
  out << "T_" << n << "(" << k << ")=" << t;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Pairs (a, b) with a in [a_lo, a_hi] and b in [b_lo, b_hi(a)]: enumerated
// when there are at most `samples` of them, otherwise drawn at random.
template <class BHi, class Visit>
void for_pairs(std::uint64_t a_lo, std::uint64_t a_hi, std::uint64_t b_lo, BHi b_hi,
               std::size_t samples, std::uint64_t seed, Visit visit) {
  if (a_hi < a_lo) return;
  std::uint64_t total = 0;
  for (std::uint64_t a = a_lo; a <= a_hi && total <= samples; ++a) {
    const std::uint64_t hi = b_hi(a);
    if (hi >= b_lo) total += hi - b_lo + 1;
  }
  if (total <= samples) {
    for (std::uint64_t a = a_lo; a <= a_hi; ++a) {
      for (std::uint64_t b = b_lo; b <= b_hi(a); ++b) visit(a, b);
    }
    return;
  }
  CounterRng rng(seed, 0);
  for (std::size_t drawn = 0; drawn < samples;) {
    const std::uint64_t a = uniform_int(rng, a_lo, a_hi);
    const std::uint64_t hi = b_hi(a);
    if (hi < b_lo) continue;
    visit(a, uniform_int(rng, b_lo, hi));
    ++drawn;
  }
}

// Max |c_i - c_j| observed after the first time both are equal and positive;
// 0 if they never tie.
std::uint64_t spread_after_tie(std::span<const Time> ti, std::span<const Time> tj, Time* at) {
  std::size_t a = 0;
  std::size_t b = 0;
  bool tied = false;
  std::uint64_t worst = 0;
  while (a < ti.size() || b < tj.size()) {
    Time now;
    if (b == tj.size() || (a < ti.size() && ti[a] < tj[b])) {
      now = ti[a++];
    } else {
      now = tj[b++];
    }
    if (tied) {
      const std::uint64_t spread = a > b ? a - b : b - a;
      if (spread > worst) {
        worst = spread;
        *at = now;
      }
    }
    if (a == b && a > 0) tied = true;
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reports

bool CheckReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed(); });
}

std::uint64_t CheckReport::violations() const {
  std::uint64_t total = 0;
  for (const auto& r : results) total += r.violations;
  return total;
}

void CheckReport::merge(const CheckReport& other) {
  // Suite names join as a set of '+'-separated parts, in first-seen order.
  std::size_t start = 0;
  while (start < other.suite.size()) {
    std::size_t end = other.suite.find('+', start);
    if (end == std::string::npos) end = other.suite.size();
    const std::string part = other.suite.substr(start, end - start);
    bool present = false;
    for (std::size_t s = 0; s <= suite.size() && !present;) {
      std::size_t e = suite.find('+', s);
      if (e == std::string::npos) e = suite.size();
      present = suite.compare(s, e - s, part) == 0;
      s = e + 1;
    }
    if (!present && !part.empty()) suite += (suite.empty() ? "" : "+") + part;
    start = end + 1;
  }
  results.insert(results.end(), other.results.begin(), other.results.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

const CheckResult* CheckReport::find(std::string_view name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

void write_report_text(std::ostream& out, const CheckReport& report) {
  out << "suite " << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << " ("
      << report.violations() << " violations)\n";
  for (const auto& r : report.results) {
    out << "  [" << (r.passed() ? "pass" : "FAIL") << "] " << r.name << "  range " << r.range
        << "  evaluated " << r.evaluated << "  violations " << r.violations;
    if (!r.witness.empty()) out << "  " << r.witness;
    out << '\n';
  }
  for (const auto& note : report.notes) out << "  note: " << note << '\n';
}

void write_report_csv(std::ostream& out, const CheckReport& report) {
  out << "suite,check,range,evaluated,violations,witness\n";
  for (const auto& r : report.results) {
    out << csv_field(report.suite) << ',' << csv_field(r.name) << ',' << csv_field(r.range) << ','
        << r.evaluated << ',' << r.violations << ',' << csv_field(r.witness) << '\n';
  }
}

Game run_until_card_one(const Schedule& schedule, ViewCount views, GameOptions options,
                        std::uint64_t step_budget) {
  Game game(schedule, options);
  game.run_until_seen(1, views, step_budget);
  return game;
}

// ---------------------------------------------------------------------------
// Slow game

CheckReport check_slow_theorems(const TimeTable& tt, Card n_max, const SlowCheckOptions& options) {
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  if (!tt.time_of(1, n_max)) {
    throw std::invalid_argument("timetable does not reach T_1(" + std::to_string(n_max) + ")");
  }
  CheckReport report;
  report.suite = "slow";
  const std::string range = "n<=" + std::to_string(n_max);

  Tally upper("T_1(n) <= n^2-n+1", range);
  Tally lower("T_1(n) >= C(n+1,2)", range);
  Tally first_lower("T_1(n-1)+n-1 <= T_n(1)", "2<=" + range);
  Tally first_upper("T_n(1) < T_1(n)", "2<=" + range);
  Tally first_quadratic("T_n(1) <= (n-1)^2+1", range);

  for (Card n = 1; n <= n_max; ++n) {
    const Time t1n = *tt.time_of(1, n);
    upper.observe(slack(double(n * n - n + 1), double(t1n)), [&] { return fmt_t(1, n, t1n); });
    lower.observe(slack(double(t1n), double(choose2(n + 1))), [&] { return fmt_t(1, n, t1n); });

    const auto tn1 = tt.time_of(n, 1);
    if (!tn1) {
      first_quadratic.missing("T_" + std::to_string(n) + "(1)");
      if (n >= 2) {
        first_lower.missing("T_" + std::to_string(n) + "(1)");
        first_upper.missing("T_" + std::to_string(n) + "(1)");
      }
      continue;
    }
    first_quadratic.observe(slack(double((n - 1) * (n - 1) + 1), double(*tn1)),
                            [&] { return fmt_t(n, 1, *tn1); });
    if (n >= 2) {
      const Time t1prev = *tt.time_of(1, n - 1);
      first_lower.observe(slack(double(*tn1), double(t1prev + n - 1)),
                          [&] { return fmt_t(n, 1, *tn1) + " " + fmt_t(1, n - 1, t1prev); });
      first_upper.observe(slack(double(t1n) - 1, double(*tn1)),
                          [&] { return fmt_t(n, 1, *tn1) + " " + fmt_t(1, n, t1n); });
    }
  }

  // T_i(1+k) < T_1(i+k), i >= 2, k >= 1, i + k <= n_max.
  Tally corollary("T_i(1+k) < T_1(i+k)", "2<=i, 1<=k, i+k<=" + std::to_string(n_max));
  for_pairs(2, n_max - 1, 1, [&](std::uint64_t i) { return n_max - i; }, options.corollary_samples,
            options.seed, [&](std::uint64_t i, std::uint64_t k) {
              const Time bound = *tt.time_of(1, i + k);
              const auto value = tt.time_of(i, 1 + k);
              if (!value) {
                corollary.missing(fmt_t(i, 1 + k, 0));
                return;
              }
              corollary.observe(slack(double(bound) - 1, double(*value)), [&] {
                return fmt_t(i, 1 + k, *value) + " " + fmt_t(1, i + k, bound);
              });
            });

  // Once c_i(t) = c_j(t) > 0, |c_i - c_j| <= 1 forever after.
  Tally after("|c_i-c_j|<=1 after a tie", "");
  const Card pair_limit = std::min<Card>(options.after_pair_limit, tt.max_card());
  auto check_pair = [&](Card i, Card j) {
    Time at = 0;
    const auto spread = spread_after_tie(tt.times(i), tt.times(j), &at);
    after.observe(1.0 - double(spread), [&] {
      return "cards " + std::to_string(i) + "," + std::to_string(j) + " spread " +
             std::to_string(spread) + " at t=" + std::to_string(at);
    });
  };
  for (Card i = 1; i <= pair_limit; ++i) {
    for (Card j = i + 1; j <= pair_limit; ++j) check_pair(i, j);
  }
  if (tt.max_card() > 1 && options.after_random_pairs > 0) {
    CounterRng rng(options.seed, 1);
    for (std::size_t s = 0; s < options.after_random_pairs; ++s) {
      Card i = uniform_int(rng, 1, tt.max_card());
      Card j = uniform_int(rng, 1, tt.max_card());
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      check_pair(i, j);
    }
  }
  after.set_range("pairs i<j<=" + std::to_string(pair_limit) + " + " +
                  std::to_string(options.after_random_pairs) + " random, t<=" +
                  std::to_string(tt.last_time()));

  report.results.push_back(std::move(upper).finish());
  report.results.push_back(std::move(lower).finish());
  report.results.push_back(std::move(first_lower).finish());
  report.results.push_back(std::move(first_upper).finish());
  report.results.push_back(std::move(first_quadratic).finish());
  report.results.push_back(std::move(corollary).finish());
  report.results.push_back(std::move(after).finish());
  return report;
}

CheckReport check_root2k(const TimeTable& tt, Card k_max, std::int64_t offset) {
  if (!tt.time_of(1, k_max + 1)) {
    throw std::invalid_argument("timetable does not reach T_1(" + std::to_string(k_max + 1) + ")");
  }
  CheckReport report;
  report.suite = "root2k";
  Tally tally("T_k(l) < T_1(k+1), l <= floor(sqrt(2k)) - " + std::to_string(offset),
              "k<=" + std::to_string(k_max));
  for (Card k = 1; k <= k_max; ++k) {
    const std::int64_t limit = static_cast<std::int64_t>(isqrt(2 * k)) - offset;
    const Time bound = *tt.time_of(1, k + 1);
    for (std::int64_t l = 1; l <= limit; ++l) {
      const auto value = tt.time_of(k, static_cast<ViewCount>(l));
      if (!value) {
        tally.missing(fmt_t(k, static_cast<ViewCount>(l), 0));
        continue;
      }
      tally.observe(slack(double(bound) - 1, double(*value)), [&] {
        return fmt_t(k, static_cast<ViewCount>(l), *value) + " " + fmt_t(1, k + 1, bound);
      });
    }
  }
  report.results.push_back(std::move(tally).finish());
  return report;
}

std::int64_t calibrate_root2k_offset(const TimeTable& tt, Card k_max) {
  if (!tt.time_of(1, k_max + 1)) {
    throw std::invalid_argument("timetable does not reach T_1(" + std::to_string(k_max + 1) + ")");
  }
  std::int64_t needed = std::numeric_limits<std::int64_t>::min();
  for (Card k = 1; k <= k_max; ++k) {
    const Time bound = *tt.time_of(1, k + 1);
    const auto times = tt.times(k);
    const auto before = std::lower_bound(times.begin(), times.end(), bound) - times.begin();
    needed = std::max(needed, static_cast<std::int64_t>(isqrt(2 * k)) - before);
  }
  return needed;
}

CheckReport check_min_gap(const TimeTable& tt, Card k_max) {
  CheckReport report;
  report.suite = "min-gap";
  Tally tally("T_k(i+1)-T_k(i) = i+1 when C(i+1,2) < k", "k<=" + std::to_string(k_max));
  for (Card k = 2; k <= k_max; ++k) {
    for (ViewCount i = 1; choose2(i + 1) < k; ++i) {
      const auto a = tt.time_of(k, i);
      const auto b = tt.time_of(k, i + 1);
      if (!a || !b) {
        tally.missing(fmt_t(k, i + 1, 0));
        continue;
      }
      const double off = std::fabs(double(*b - *a) - double(i + 1));
      tally.observe(-off, [&] { return fmt_t(k, i, *a) + " " + fmt_t(k, i + 1, *b); });
    }
  }
  report.results.push_back(std::move(tally).finish());
  return report;
}

Game simulate_slow_reference(Card n_max, GameOptions options) {
  options.keep_times = true;
  Game game = run_until_card_one(Schedule::slow(), n_max + 1, options);
  for (Card k = 2; k <= n_max; ++k) {
    ViewCount i = 1;
    while (choose2(i + 2) < k) ++i;
    game.run_until_seen(k, i + 1);
  }
  return game;
}

// ---------------------------------------------------------------------------
// General schedules

CheckReport check_general(const Schedule& schedule, Card n_max, const GeneralCheckOptions& options) {
  if (schedule.stochastic()) throw std::invalid_argument("check_general needs a deterministic schedule");
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  CheckReport report;
  report.suite = "general:" + schedule.describe();

  GameOptions game_options = options.game;
  game_options.keep_times = true;
  Game game(schedule, game_options);
  const auto bound = schedule.bound();
  try {
    if (bound) {
      game.run_until_time(options.bounded_steps);
    } else if (schedule.increasing()) {
      game.run_until_seen(1, n_max + 1, options.step_budget);
    } else {
      game.run_until_seen(n_max, 1, options.step_budget);
    }
  } catch (const CapacityError& e) {
    report.notes.push_back("run stopped at t=" + std::to_string(game.time()) + ": " + e.what());
  } catch (const BudgetExhausted& e) {
    report.notes.push_back("run stopped at t=" + std::to_string(game.time()) + ": " + e.what());
  }
  const TimeTable& tt = game.timetable();
  const auto p = [&](ViewCount k) { return schedule.position(k); };

  if (bound) {
    Tally never("no card above max p_k is seen", "t<=" + std::to_string(tt.last_time()));
    never.observe(double(*bound) - double(tt.max_card()), [&] {
      return "max p_k=" + std::to_string(*bound) + " largest card seen " +
             std::to_string(tt.max_card());
    });
    report.results.push_back(std::move(never).finish());
  } else if (schedule.increasing()) {
    Card covered = 0;
    while (covered < n_max && tt.time_of(1, covered + 2)) ++covered;
    const std::string range = "n<=" + std::to_string(covered);
    if (covered < n_max) {
      report.notes.push_back("increasing-schedule checks cover n<=" + std::to_string(covered) +
                             " of requested " + std::to_string(n_max));
    }

    Tally interleave_lower("T_1(n)+p_n-1 <= T_{p_n}(1)", range);
    Tally interleave_upper("T_{p_n}(1) < T_1(n+1)", range);
    Tally first_card("T_1(n+1) <= 1+n*p_n", range);
    for (Card n = 1; n <= covered; ++n) {
      const Position pn = p(n);
      const Time t1n = *tt.time_of(1, n);
      const Time t1next = *tt.time_of(1, n + 1);
      first_card.observe(slack(double(sat_add(1, sat_mul(n, pn))), double(t1next)),
                         [&] { return fmt_t(1, n + 1, t1next) + " p_n=" + std::to_string(pn); });
      const auto tp = tt.time_of(pn, 1);
      if (!tp) {
        interleave_lower.missing(fmt_t(pn, 1, 0));
        interleave_upper.missing(fmt_t(pn, 1, 0));
        continue;
      }
      interleave_lower.observe(slack(double(*tp), double(t1n) + double(pn) - 1),
                               [&] { return fmt_t(pn, 1, *tp) + " " + fmt_t(1, n, t1n); });
      interleave_upper.observe(slack(double(t1next) - 1, double(*tp)),
                               [&] { return fmt_t(pn, 1, *tp) + " " + fmt_t(1, n + 1, t1next); });
    }

    // T_{p_{n-1}}(1+k) < T_1(n+k) for n >= 2, k >= 0, n + k <= covered + 1.
    Tally shifted("T_{p_{n-1}}(1+k) < T_1(n+k)", "2<=n, 0<=k, n+k<=" + std::to_string(covered + 1));
    if (covered >= 1) {
      for_pairs(2, covered + 1, 0, [&](std::uint64_t n) { return covered + 1 - n; },
                options.corollary_samples, options.seed, [&](std::uint64_t n, std::uint64_t k) {
                  const Position card = p(n - 1);
                  const Time limit = *tt.time_of(1, n + k);
                  const auto value = tt.time_of(card, 1 + k);
                  if (!value) {
                    shifted.missing(fmt_t(card, 1 + k, 0));
                    return;
                  }
                  shifted.observe(slack(double(limit) - 1, double(*value)), [&] {
                    return fmt_t(card, 1 + k, *value) + " " + fmt_t(1, n + k, limit);
                  });
                });
    }
    report.results.push_back(std::move(interleave_lower).finish());
    report.results.push_back(std::move(interleave_upper).finish());
    report.results.push_back(std::move(shifted).finish());
    report.results.push_back(std::move(first_card).finish());
  } else {
    report.notes.push_back("schedule is not increasing; increasing-only checks skipped");
  }

  // T_n(1) <= 1 + (n-1) min{j : p_j >= n}, every card seen.
  Tally first_view("T_n(1) <= 1+(n-1)*min{j: p_j>=n}", "n<=" + std::to_string(tt.max_card()));
  for (Card n = 1; n <= tt.max_card(); ++n) {
    const auto j = schedule.first_reaching(n);
    if (!j) continue;
    const Time tn1 = *tt.time_of(n, 1);
    first_view.observe(slack(double(sat_add(1, sat_mul(n - 1, *j))), double(tn1)),
                       [&] { return fmt_t(n, 1, tn1) + " j=" + std::to_string(*j); });
  }
  report.results.push_back(std::move(first_view).finish());

  // T_i(n+1) - T_i(n) <= (p_n - 1) n + 1, every recorded consecutive pair.
  Tally gaps("T_i(n+1)-T_i(n) <= (p_n-1)n+1",
             "all cards, t<=" + std::to_string(tt.last_time()));
  for (Card i = 1; i <= tt.max_card(); ++i) {
    const auto times = tt.times(i);
    for (std::size_t idx = 1; idx < times.size(); ++idx) {
      const ViewCount n = idx;
      const std::uint64_t limit = sat_add(sat_mul(p(n) - 1, n), 1);
      gaps.observe(slack(double(limit), double(times[idx] - times[idx - 1])), [&] {
        return fmt_t(i, n + 1, times[idx]) + " " + fmt_t(i, n, times[idx - 1]);
      });
    }
  }
  report.results.push_back(std::move(gaps).finish());
  return report;
}

// ---------------------------------------------------------------------------
// Probes

RatioSummary estimate_c(const TimeTable& tt, Card n_lo, Card n_hi) {
  if (n_lo == 0 || n_hi < n_lo) throw std::invalid_argument("estimate_c: bad range");
  RatioSummary out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  for (Card n = n_lo; n <= n_hi; ++n) {
    const auto t = tt.time_of(1, n);
    if (!t) throw std::invalid_argument("timetable does not reach T_1(" + std::to_string(n) + ")");
    const double ratio = double(*t) / (double(n) * double(n));
    out.min = std::min(out.min, ratio);
    out.max = std::max(out.max, ratio);
    sum += ratio;
    ++out.count;
  }
  out.mean = sum / double(out.count);
  return out;
}

GapProbe gap_probe(const TimeTable& tt, Card card, ViewCount n_max) {
  GapProbe out;
  out.margin = std::numeric_limits<std::int64_t>::min();
  const auto times = tt.times(card);
  for (ViewCount n = 1; n <= n_max && n < times.size(); ++n) {
    const auto gap = static_cast<std::int64_t>(times[n] - times[n - 1]);
    const std::int64_t margin = gap - 2 * static_cast<std::int64_t>(n);
    if (margin > out.margin) {
      out.margin = margin;
      out.at = n;
    }
    ++out.evaluated;
  }
  if (out.evaluated == 0) out.margin = 0;
  return out;
}

std::optional<Time> stabilization_probe(Card card, Time budget) {
  if (card == 0) throw std::invalid_argument("cards start at 1");
  if (card == 1) return Time{1};
  Game game(Schedule::slow(), {.keep_event_log = false, .keep_times = false});
  while (game.time() < budget) {
    const ViewEvent& e = game.step();
    if (e.card == card && game.count_of(card) == game.count_of(1)) return e.t;
  }
  return std::nullopt;
}

InterceptProbe curve_intercept_probe(const TimeTable& tt, Card n_lo, Card n_hi) {
  if (n_lo == 0 || n_hi < n_lo) throw std::invalid_argument("curve_intercept_probe: bad range");
  InterceptProbe out;
  out.summary.min = std::numeric_limits<double>::infinity();
  out.summary.max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  for (Card n = n_lo; n <= n_hi; ++n) {
    const auto t = tt.time_of(n, 1);
    if (!t) throw std::invalid_argument("timetable does not reach T_" + std::to_string(n) + "(1)");
    const double ratio = double(n) / std::sqrt(double(*t));
    out.ratios.push_back(ratio);
    out.summary.min = std::min(out.summary.min, ratio);
    out.summary.max = std::max(out.summary.max, ratio);
    sum += ratio;
  }
  out.summary.count = out.ratios.size();
  out.summary.mean = sum / double(out.summary.count);
  // T_n(1) and T_1(n) sandwich each other within O(n), so they share the
  // quadratic constant c and the intercept is 1/sqrt(c).
  const RatioSummary c = estimate_c(tt, n_lo, n_hi);
  out.implied_by_c = 1.0 / std::sqrt(c.mean);
  return out;
}

}  // namespace flashcard
