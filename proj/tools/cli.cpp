// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>

#include "flashcard/analysis.hpp"
#include "flashcard/codec.hpp"
#include "flashcard/engine.hpp"
#include "flashcard/schedule.hpp"
#include "flashcard/tableau.hpp"
#include "flashcard/variants.hpp"

namespace flashcard::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string schedule = "slow";
  std::uint64_t seed = 0;
  Position cap = kDefaultMaxPosition;
  std::uint64_t budget = kDefaultStepBudget;
  std::string config;
  std::string out = "-";

  Schedule make_schedule() const { return Schedule::parse(schedule, seed); }
};

void add_common(CLI::App* sub, Common& c, bool with_schedule = true) {
  if (with_schedule) {
    sub->add_option("--schedule", c.schedule,
                    "slow | recap | constant:N | affine:A:B | power:B | table:v,..[:error] | "
                    "uniform | poisson, or a JSON descriptor")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for random schedules")->capture_default_str();
  }
  sub->add_option("--cap", c.cap, "largest deck position that may be materialized")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--budget", c.budget, "step budget for open-ended runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--config", c.config, "JSON file of option values; flags given on the command line win");
  sub->add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
}

// "lo:hi" with 1 <= lo <= hi.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const auto lo = std::stoull(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const auto rest = text.substr(colon + 1);
    const auto hi = std::stoull(rest, &used);
    if (used != rest.size() || lo == 0 || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(what) + " must look like LO:HI with 1 <= LO <= HI, got '" + text + "'");
  }
}

void with_output(const std::string& path, std::ostream& stdout_stream,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(stdout_stream);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("error writing '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for reading");
  return file;
}

// Splices `--key value` pairs from a JSON config file in right after the
// subcommand name, so explicit flags (parsed later, last one wins) override.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (!path || args.empty()) return args;
  std::ifstream file = open_input(*path);
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + *path + "': " + e.what());
  }
  if (!config.is_object()) throw UsageError("config '" + *path + "' must be a JSON object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : config.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_string()) {
      injected.push_back(flag);
      injected.push_back(value.get<std::string>());
    } else if (value.is_number() || value.is_object()) {
      injected.push_back(flag);
      injected.push_back(value.dump());
    } else if (value.is_array()) {
      for (const auto& item : value) {
        injected.push_back(flag);
        injected.push_back(item.is_string() ? item.get<std::string>() : item.dump());
      }
    } else {
      throw UsageError("config key '" + key + "' has an unsupported value");
    }
  }
  std::vector<std::string> out;
  out.push_back(args.front());
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

GameOptions game_options(const Common& c, bool keep_times) {
  return {.max_position = c.cap, .keep_event_log = false, .keep_times = keep_times};
}

void print_event(std::ostream& out, const ViewEvent& e) {
  out << e.t << ',' << e.card << ',' << e.count << '\n';
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

// --- subcommands ------------------------------------------------------------

struct SimulateArgs {
  Common common;
  Time steps = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  Game game(a.common.make_schedule(), game_options(a.common, false));
  with_output(a.common.out, out, [&](std::ostream& os) {
    os << "t,card,k\n";
    print_event(os, game.current());
    while (game.time() < a.steps) print_event(os, game.step());
  });
  return kOk;
}

struct SequencesArgs {
  Common common;
  std::size_t length = 0;
  std::string kind = "viewing";
  std::string to_counting;
  std::string to_viewing;
};

int cmd_sequences(const SequencesArgs& a, std::ostream& out) {
  std::vector<std::uint64_t> values;
  if (!a.to_counting.empty()) {
    auto in = open_input(a.to_counting);
    values = viewing_to_counting(read_sequence(in));
  } else if (!a.to_viewing.empty()) {
    auto in = open_input(a.to_viewing);
    values = counting_to_viewing(read_sequence(in));
  } else {
    if (a.length == 0) throw UsageError("sequences needs --length, --to-counting or --to-viewing");
    const auto schedule = a.common.make_schedule();
    values = a.kind == "viewing" ? viewing_prefix(schedule, a.length) : counting_prefix(schedule, a.length);
  }
  with_output(a.common.out, out, [&](std::ostream& os) { write_sequence(os, values); });
  return kOk;
}

struct DecodeArgs {
  std::string input;
  std::string input_file;
  std::string out = "-";
};

int cmd_decode_times(const DecodeArgs& a, std::ostream& out) {
  std::string text = a.input;
  if (!a.input_file.empty()) {
    auto in = open_input(a.input_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) throw UsageError("decode-times needs --input or --input-file");
  const auto decoded = times_to_deck(parse_times_deck(text));
  with_output(a.out, out, [&](std::ostream& os) { os << format_decoded(decoded) << '\n'; });
  return kOk;
}

struct SnapshotArgs {
  Common common;
  Time time = 1;
};

int cmd_snapshot(const SnapshotArgs& a, std::ostream& out) {
  Game game(a.common.make_schedule(), game_options(a.common, false));
  game.run_until_time(a.time);
  const auto times = deck_to_times(game);
  Position depth = std::max<Position>(times.size(), 1);
  std::vector<Card> cards;
  for (Position p = 1; p <= depth; ++p) cards.push_back(game.deck().card_at(p));
  ViewCount sum = 0;
  for (auto v : times) sum += v;
  with_output(a.common.out, out, [&](std::ostream& os) {
    os << "t=" << game.time() << '\n';
    os << "deck=" << join(cards) << '\n';
    os << "times=" << format_times_deck(times) << '\n';
    os << "sum=" << sum << '\n';
  });
  return kOk;
}

struct TableauArgs {
  Common common;
  Time tmax = 0;
  std::string source = "staircase";
  std::string part = "recording";
};

int cmd_tableau(const TableauArgs& a, std::ostream& out) {
  const auto schedule = a.common.make_schedule();
  TableauRows rows;
  if (a.source == "staircase") {
    Game game(schedule, game_options(a.common, true));
    game.run_until_time(a.tmax);
    rows = build_staircase(game.timetable(), a.tmax).rows;
  } else {
    const auto seq = a.source == "viewing" ? viewing_prefix(schedule, a.tmax) : counting_prefix(schedule, a.tmax);
    auto pair = rsk_reversed(seq);
    rows = a.part == "recording" ? std::move(pair.recording) : std::move(pair.insertion);
  }
  with_output(a.common.out, out, [&](std::ostream& os) { write_rows(os, rows); });
  return kOk;
}

struct CheckArgs {
  Common common;
  std::vector<std::string> suites;
  Card n_max = 0;
  Card k_max = 0;
  std::int64_t offset = kRoot2kOffset;
  std::size_t samples = 10'000;
  Time steps = 10'000;
  std::string interval = "10000:100000";
  std::optional<double> epsilon;
  std::string n_range = "1000:2000";
  std::string format = "text";
};

void write_probes(std::ostream& os, const CheckArgs& a) {
  const auto [lo, hi] = parse_range(a.n_range, "--n-range");
  Game game = run_until_card_one(Schedule::slow(), hi + 1, game_options(a.common, true), a.common.budget);
  const auto& tt = game.timetable();
  const auto c = estimate_c(tt, lo, hi);
  os << "probe T_1(n)/n^2 over n in [" << lo << "," << hi << "]: min " << c.min << " max " << c.max
     << " mean " << c.mean << '\n';
  const auto intercept = curve_intercept_probe(tt, lo, hi);
  os << "probe n/sqrt(T_n(1)) over n in [" << lo << "," << hi << "]: min " << intercept.summary.min
     << " max " << intercept.summary.max << " band " << intercept.summary.max - intercept.summary.min
     << " 1/sqrt(c) " << intercept.implied_by_c << '\n';
  const ViewCount gap_n = std::min<ViewCount>(500, tt.times(5).size() - 1);
  for (Card i = 1; i <= 5; ++i) {
    const auto g = gap_probe(tt, i, gap_n);
    os << "probe gap card " << i << " n<=" << gap_n << ": max (T_i(n+1)-T_i(n))-2n = " << g.margin
       << " at n=" << g.at << '\n';
  }
  for (Card i = 1; i <= 10; ++i) {
    const auto t = stabilization_probe(i, a.common.budget);
    os << "probe first t with c_" << i << "(t)=c_1(t): " << (t ? std::to_string(*t) : "not found") << '\n';
  }
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  bool failed = false;
  std::ostringstream buffer;
  bool csv_header_written = false;
  auto emit = [&](const CheckReport& report) {
    failed = failed || !report.passed();
    if (a.format == "csv") {
      std::ostringstream csv;
      write_report_csv(csv, report);
      std::string body = csv.str();
      if (csv_header_written) body = body.substr(body.find('\n') + 1);
      csv_header_written = true;
      buffer << body;
    } else {
      write_report_text(buffer, report);
    }
  };
  for (const auto& suite : a.suites) {
    if (suite == "slow") {
      const Card n = a.n_max ? a.n_max : 500;
      Game game = simulate_slow_reference(n, game_options(a.common, true));
      SlowCheckOptions options;
      options.corollary_samples = a.samples;
      options.seed = a.common.seed ? a.common.seed : 1;
      auto report = check_slow_theorems(game.timetable(), n, options);
      report.merge(check_min_gap(game.timetable(), n));
      emit(report);
    } else if (suite == "root2k" || suite == "min-gap") {
      const Card k = a.k_max ? a.k_max : 500;
      Game game = suite == "root2k"
                      ? run_until_card_one(Schedule::slow(), k + 1, game_options(a.common, true), a.common.budget)
                      : simulate_slow_reference(k, game_options(a.common, true));
      emit(suite == "root2k" ? check_root2k(game.timetable(), k, a.offset)
                             : check_min_gap(game.timetable(), k));
    } else if (suite == "general") {
      GeneralCheckOptions options;
      options.game = game_options(a.common, true);
      options.step_budget = a.common.budget;
      options.bounded_steps = a.steps;
      options.corollary_samples = a.samples;
      emit(check_general(a.common.make_schedule(), a.n_max ? a.n_max : 200, options));
    } else if (suite == "cloud") {
      const auto [lo, hi] = parse_range(a.interval, "--interval");
      Game game(a.common.make_schedule(), game_options(a.common, true));
      game.run_until_time(hi);
      const double eps = a.epsilon ? *a.epsilon : circle_epsilon(lo);
      emit(check_cloud_bounds(point_cloud(game.timetable(), lo, hi), eps, lo));
    } else if (suite == "variant-gap") {
      emit(variant_gap_check(a.n_max ? a.n_max : 50, a.k_max ? a.k_max : 50, a.common.budget));
    } else if (suite == "probes") {
      write_probes(buffer, a);
    }
  }
  with_output(a.common.out, out, [&](std::ostream& os) { os << buffer.str(); });
  return failed ? kViolation : kOk;
}

struct CurveArgs {
  Common common;
  std::string interval = "100:10000";
  std::string csv = "curve.csv";
  std::string svg = "curve.svg";
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
  const auto [lo, hi] = parse_range(a.interval, "--interval");
  Game game(a.common.make_schedule(), game_options(a.common, true));
  game.run_until_time(hi);
  const auto cloud = point_cloud(game.timetable(), lo, hi);
  with_output(a.csv, out, [&](std::ostream& os) { write_cloud_csv(os, cloud); });
  with_output(a.svg, out, [&](std::ostream& os) { write_cloud_svg(os, cloud); });
  const auto report = check_cloud_bounds(cloud, circle_epsilon(lo), lo);
  const auto* line = report.find("x+y > 1");
  if (a.csv != "-" && a.svg != "-") {
    out << "points " << cloud.points.size() << " in T [" << lo << "," << hi << "]; x+y>1 "
        << (line->passed() ? "holds" : "VIOLATED") << "\n";
  }
  return line->passed() ? kOk : kViolation;
}

struct VariantsArgs {
  Common common;
  std::string family = "transposition";
  Time steps = 0;
};

int cmd_variants(const VariantsArgs& a, std::ostream& out) {
  const auto family = SigmaFamily::parse(a.family, a.common.seed);
  SigmaGame game = make_sigma_game(game_options(a.common, false));
  with_output(a.common.out, out, [&](std::ostream& os) {
    os << "t,card,k\n";
    print_event(os, game.current());
    while (game.time() < a.steps) print_event(os, sigma_step(game, family));
  });
  return kOk;
}

struct StatsArgs {
  Common common;
  Time steps = 0;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const auto stats = stats_timeseries(a.common.make_schedule(), a.steps, a.common.cap);
  with_output(a.common.out, out, [&](std::ostream& os) { write_stats_csv(os, stats); });
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flashcard game simulator: sequences, codecs, tableaux and bound checks", "flashcard"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  SimulateArgs simulate;
  auto* sim = app.add_subcommand("simulate", "write the event log t,card,k of a run");
  add_common(sim, simulate.common);
  sim->add_option("--steps", simulate.steps, "last clock time to write")->required()->check(CLI::PositiveNumber);

  SequencesArgs sequences;
  auto* seq = app.add_subcommand("sequences", "viewing or counting sequence, or convert between them");
  add_common(seq, sequences.common);
  seq->add_option("--length", sequences.length, "number of terms")->check(CLI::PositiveNumber);
  seq->add_option("--kind", sequences.kind, "viewing | counting")
      ->check(CLI::IsMember({"viewing", "counting"}))
      ->capture_default_str();
  seq->add_option("--to-counting", sequences.to_counting, "file holding a viewing sequence");
  seq->add_option("--to-viewing", sequences.to_viewing, "file holding a counting sequence");

  DecodeArgs decode;
  auto* dec = app.add_subcommand("decode-times", "recover t and the deck from a deck of times");
  dec->add_option("--input", decode.input, "comma-separated deck of times");
  dec->add_option("--input-file", decode.input_file, "file holding a deck of times");
  dec->add_option("--out", decode.out, "output file, - for stdout");
  std::string decode_config;
  dec->add_option("--config", decode_config, "JSON file of option values");

  SnapshotArgs snapshot;
  auto* snap = app.add_subcommand("snapshot", "deck of cards and deck of times at one time");
  snap->alias("times");
  add_common(snap, snapshot.common);
  snap->add_option("--time", snapshot.time, "clock time")->required()->check(CLI::PositiveNumber);

  TableauArgs tableau;
  auto* tab = app.add_subcommand("tableau", "staircase tableau or reversed-order RSK tableaux");
  add_common(tab, tableau.common);
  tab->add_option("--tmax", tableau.tmax, "largest entry / prefix length")->required()->check(CLI::PositiveNumber);
  tab->add_option("--source", tableau.source, "staircase | viewing | counting")
      ->check(CLI::IsMember({"staircase", "viewing", "counting"}))
      ->capture_default_str();
  tab->add_option("--part", tableau.part, "recording | insertion (RSK sources)")
      ->check(CLI::IsMember({"recording", "insertion"}))
      ->capture_default_str();

  CheckArgs check;
  auto* chk = app.add_subcommand("check", "bound checks; exit 1 on any violation");
  add_common(chk, check.common);
  chk->add_option("--suite", check.suites, "slow | root2k | min-gap | general | cloud | variant-gap | probes")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"slow", "root2k", "min-gap", "general", "cloud", "variant-gap", "probes"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  chk->add_option("--n-max", check.n_max, "largest n")->check(CLI::PositiveNumber);
  chk->add_option("--k-max", check.k_max, "largest k")->check(CLI::PositiveNumber);
  chk->add_option("--offset", check.offset, "root2k safety offset")->capture_default_str();
  chk->add_option("--samples", check.samples, "sampled (i,k) pairs")->capture_default_str();
  chk->add_option("--steps", check.steps, "run length for bounded schedules")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  chk->add_option("--interval", check.interval, "cloud time interval LO:HI")->capture_default_str();
  chk->add_option("--epsilon", check.epsilon, "circle slack (default 2.5/sqrt(LO/2))");
  chk->add_option("--n-range", check.n_range, "probe range LO:HI")->capture_default_str();
  chk->add_option("--format", check.format, "text | csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  CurveArgs curve;
  auto* cur = app.add_subcommand("curve", "rescaled point cloud as CSV and SVG");
  add_common(cur, curve.common);
  cur->add_option("--interval", curve.interval, "time interval LO:HI")->capture_default_str();
  cur->add_option("--csv", curve.csv, "CSV path")->capture_default_str();
  cur->add_option("--svg", curve.svg, "SVG path")->capture_default_str();

  VariantsArgs variants;
  auto* var = app.add_subcommand("variants", "event log of a permutation-multiplication game");
  add_common(var, variants.common);
  var->add_option("--family", variants.family, "transposition | reversal | cut | shuffle | cycle:<schedule>")
      ->capture_default_str();
  var->add_option("--steps", variants.steps, "last clock time to write")->required()->check(CLI::PositiveNumber);

  StatsArgs stats;
  auto* sta = app.add_subcommand("stats", "inversions and descents of the deck over time");
  add_common(sta, stats.common);
  sta->add_option("--steps", stats.steps, "last clock time")->required()->check(CLI::PositiveNumber);

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    if (sim->parsed()) return cmd_simulate(simulate, out);
    if (seq->parsed()) return cmd_sequences(sequences, out);
    if (dec->parsed()) return cmd_decode_times(decode, out);
    if (snap->parsed()) return cmd_snapshot(snapshot, out);
    if (tab->parsed()) return cmd_tableau(tableau, out);
    if (chk->parsed()) return cmd_check(check, out);
    if (cur->parsed()) return cmd_curve(curve, out);
    if (var->parsed()) return cmd_variants(variants, out);
    if (sta->parsed()) return cmd_stats(stats, out);
    return kUsage;
  } catch (const IoError& e) {
    err << "flashcard: " << e.what() << '\n';
    return kIo;
  } catch (const CapacityError& e) {
    err << "flashcard: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const BudgetExhausted& e) {
    err << "flashcard: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "flashcard: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "flashcard: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace flashcard::cli
