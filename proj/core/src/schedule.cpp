// SPDX-License-Identifier: Apache-2.0
#include "flashcard/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include <json.hpp>

#include "flashcard/rng.hpp"

namespace flashcard {

namespace {

constexpr Position kSaturated = std::numeric_limits<Position>::max();

Position saturating_mul(Position x, Position y) {
  if (x != 0 && y > kSaturated / x) return kSaturated;
  return x * y;
}

Position saturating_add(Position x, Position y) {
  return y > kSaturated - x ? kSaturated : x + y;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

template <class Int>
Int parse_int(std::string_view text, std::string_view what) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ScheduleError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ScheduleError(message);
}

}  // namespace

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::slow: return "slow";
    case ScheduleKind::recap: return "recap";
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::affine: return "affine";
    case ScheduleKind::power: return "power";
    case ScheduleKind::table: return "table";
    case ScheduleKind::uniform: return "uniform";
    case ScheduleKind::poisson: return "poisson";
  }
  return "?";
}

Schedule Schedule::slow() { return Schedule(ScheduleKind::slow); }

Schedule Schedule::recap() { return Schedule(ScheduleKind::recap); }

Schedule Schedule::constant(Position c) {
  require(c >= 1, "constant schedule needs c >= 1");
  Schedule s(ScheduleKind::constant);
  s.b_ = static_cast<std::int64_t>(c);
  return s;
}

Schedule Schedule::affine(std::int64_t a, std::int64_t b) {
  require(a >= 0, "affine schedule needs a >= 0");
  require(a + b >= 1, "affine schedule needs a + b >= 1 so that p_1 >= 1");
  Schedule s(ScheduleKind::affine);
  s.a_ = a;
  s.b_ = b;
  return s;
}

Schedule Schedule::power(std::uint64_t base) {
  require(base >= 1, "power schedule needs base >= 1");
  Schedule s(ScheduleKind::power);
  s.b_ = static_cast<std::int64_t>(base);
  return s;
}

Schedule Schedule::table(std::vector<Position> values, TableExtension extension) {
  require(!values.empty(), "table schedule needs at least one value");
  require(std::all_of(values.begin(), values.end(), [](Position p) { return p >= 1; }),
          "table schedule values must be >= 1");
  Schedule s(ScheduleKind::table);
  s.values_ = std::move(values);
  s.extension_ = extension;
  return s;
}

Schedule Schedule::uniform(std::uint64_t seed) {
  Schedule s(ScheduleKind::uniform);
  s.seed_ = seed;
  return s;
}

Schedule Schedule::poisson(std::uint64_t seed) {
  Schedule s(ScheduleKind::poisson);
  s.seed_ = seed;
  return s;
}

Position Schedule::position(ViewCount k, std::uint64_t draw) const {
  if (k == 0) throw std::invalid_argument("view counts start at 1");
  switch (kind_) {
    case ScheduleKind::slow:
      return saturating_add(k, 1);
    case ScheduleKind::recap:
      return k >= 64 ? kSaturated : Position{1} << k;
    case ScheduleKind::constant:
      return static_cast<Position>(b_);
    case ScheduleKind::affine: {
      const Position scaled = saturating_mul(static_cast<Position>(a_), k);
      if (b_ >= 0) return saturating_add(scaled, static_cast<Position>(b_));
      // a + b >= 1 and k >= 1 keep this positive.
      return scaled - static_cast<Position>(-b_);
    }
    case ScheduleKind::power: {
      Position result = 1;
      const auto base = static_cast<Position>(b_);
      for (ViewCount i = 0; i < k && result != kSaturated; ++i) {
        result = saturating_mul(result, base);
        if (base == 1) break;
      }
      return result;
    }
    case ScheduleKind::table:
      if (k <= values_.size()) return values_[k - 1];
      if (extension_ == TableExtension::error) {
        throw ScheduleError("table schedule has no entry for k = " + std::to_string(k));
      }
      return values_.back();
    case ScheduleKind::uniform: {
      CounterRng rng(seed_, draw);
      return uniform_int(rng, 1, saturating_add(saturating_mul(2, k), 1));
    }
    case ScheduleKind::poisson: {
      CounterRng rng(seed_, draw);
      return std::max<Position>(1, flashcard::poisson(rng, static_cast<double>(k)));
    }
  }
  return 1;
}

bool Schedule::increasing() const {
  switch (kind_) {
    case ScheduleKind::slow:
    case ScheduleKind::recap:
    case ScheduleKind::constant:
    case ScheduleKind::affine:
    case ScheduleKind::power:
      return true;
    case ScheduleKind::table:
      return std::is_sorted(values_.begin(), values_.end());
    case ScheduleKind::uniform:
    case ScheduleKind::poisson:
      return false;
  }
  return false;
}

std::optional<Position> Schedule::bound() const {
  switch (kind_) {
    case ScheduleKind::constant:
      return static_cast<Position>(b_);
    case ScheduleKind::affine:
      if (a_ == 0) return static_cast<Position>(b_);
      return std::nullopt;
    case ScheduleKind::power:
      if (b_ == 1) return 1;
      return std::nullopt;
    case ScheduleKind::table:
      // An erroring table is only defined on a finite prefix; treat as bounded.
      return *std::max_element(values_.begin(), values_.end());
    default:
      return std::nullopt;
  }
}

std::optional<ViewCount> Schedule::first_reaching(Position n, ViewCount search_limit) const {
  if (stochastic()) return std::nullopt;
  if (kind_ == ScheduleKind::slow) {
    const ViewCount j = n <= 2 ? 1 : n - 1;
    return j <= search_limit ? std::optional<ViewCount>(j) : std::nullopt;
  }
  const ViewCount limit =
      kind_ == ScheduleKind::table && extension_ == TableExtension::error
          ? std::min<ViewCount>(search_limit, values_.size())
          : search_limit;
  for (ViewCount j = 1; j <= limit; ++j) {
    if (position(j) >= n) return j;
  }
  return std::nullopt;
}

Schedule Schedule::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ScheduleError(std::string("schedule JSON: ") + e.what());
  }
  require(doc.is_object() && doc.contains("kind") && doc["kind"].is_string(),
          "schedule JSON needs a string \"kind\"");

  auto get_int = [&](const char* key) -> std::int64_t {
    require(doc.contains(key) && doc[key].is_number_integer(),
            std::string("schedule JSON needs integer \"") + key + "\"");
    return doc[key].get<std::int64_t>();
  };
  auto get_positive = [&](const char* key) -> std::uint64_t {
    const std::int64_t v = get_int(key);
    require(v >= 1, std::string("\"") + key + "\" must be >= 1");
    return static_cast<std::uint64_t>(v);
  };
  const std::uint64_t seed =
      doc.contains("seed") ? static_cast<std::uint64_t>(get_int("seed")) : 0;

  const auto kind = doc["kind"].get<std::string>();
  if (kind == "slow") return slow();
  if (kind == "recap") return recap();
  if (kind == "constant") return constant(get_positive("c"));
  if (kind == "affine") return affine(get_int("a"), get_int("b"));
  if (kind == "power") return power(get_positive("b"));
  if (kind == "uniform") return uniform(seed);
  if (kind == "poisson") return poisson(seed);
  if (kind == "table") {
    require(doc.contains("values") && doc["values"].is_array(),
            "table schedule needs a \"values\" array");
    std::vector<Position> values;
    for (const auto& v : doc["values"]) {
      require(v.is_number_integer() && v.get<std::int64_t>() >= 1,
              "table values must be integers >= 1");
      values.push_back(v.get<Position>());
    }
    TableExtension extension = TableExtension::repeat_last;
    if (doc.contains("extend")) {
      require(doc["extend"].is_string(), "\"extend\" must be a string");
      const auto ext = doc["extend"].get<std::string>();
      if (ext == "error") {
        extension = TableExtension::error;
      } else {
        require(ext == "repeat-last", "\"extend\" must be repeat-last or error");
      }
    }
    return table(std::move(values), extension);
  }
  throw ScheduleError("unknown schedule kind '" + kind + "'");
}

Schedule Schedule::parse(std::string_view text, std::uint64_t seed) {
  if (!text.empty() && text.front() == '{') {
    Schedule s = from_json(text);
    if (s.stochastic() && text.find("\"seed\"") == std::string_view::npos) s.seed_ = seed;
    return s;
  }
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  auto arity = [&](std::size_t n) {
    require(parts.size() == n + 1, "schedule '" + std::string(text) + "' expects " +
                                       std::to_string(n) + " parameter(s)");
  };
  if (kind == "slow") {
    arity(0);
    return slow();
  }
  if (kind == "recap") {
    arity(0);
    return recap();
  }
  if (kind == "uniform") {
    arity(0);
    return uniform(seed);
  }
  if (kind == "poisson") {
    arity(0);
    return poisson(seed);
  }
  if (kind == "constant") {
    arity(1);
    return constant(parse_int<Position>(parts[1], "constant"));
  }
  if (kind == "affine") {
    arity(2);
    return affine(parse_int<std::int64_t>(parts[1], "affine a"),
                  parse_int<std::int64_t>(parts[2], "affine b"));
  }
  if (kind == "power") {
    arity(1);
    return power(parse_int<std::uint64_t>(parts[1], "power base"));
  }
  if (kind == "table") {
    require(parts.size() == 2 || parts.size() == 3, "table schedule: table:v1,v2,...[:error]");
    std::vector<Position> values;
    for (auto v : split(parts[1], ',')) values.push_back(parse_int<Position>(v, "table value"));
    TableExtension extension = TableExtension::repeat_last;
    if (parts.size() == 3) {
      if (parts[2] == "error") {
        extension = TableExtension::error;
      } else {
        require(parts[2] == "repeat-last", "table extension must be repeat-last or error");
      }
    }
    return table(std::move(values), extension);
  }
  throw ScheduleError("unknown schedule '" + std::string(text) + "'");
}

std::string Schedule::to_json() const {
  nlohmann::json doc;
  doc["kind"] = std::string(to_string(kind_));
  switch (kind_) {
    case ScheduleKind::constant: doc["c"] = b_; break;
    case ScheduleKind::affine: doc["a"] = a_; doc["b"] = b_; break;
    case ScheduleKind::power: doc["b"] = b_; break;
    case ScheduleKind::table:
      doc["values"] = values_;
      doc["extend"] = extension_ == TableExtension::error ? "error" : "repeat-last";
      break;
    case ScheduleKind::uniform:
    case ScheduleKind::poisson: doc["seed"] = seed_; break;
    default: break;
  }
  return doc.dump();
}

std::string Schedule::describe() const {
  std::string out(to_string(kind_));
  switch (kind_) {
    case ScheduleKind::constant: out += ":" + std::to_string(b_); break;
    case ScheduleKind::affine: out += ":" + std::to_string(a_) + ":" + std::to_string(b_); break;
    case ScheduleKind::power: out += ":" + std::to_string(b_); break;
    case ScheduleKind::table: {
      out += ":";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values_[i]);
      }
      if (extension_ == TableExtension::error) out += ":error";
      break;
    }
    default: break;
  }
  return out;
}

}  // namespace flashcard
