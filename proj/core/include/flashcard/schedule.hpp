// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flashcard/types.hpp"

namespace flashcard {

enum class ScheduleKind {
  slow,       // p_k = k + 1
  recap,      // p_k = 2^k
  constant,   // p_k = c
  affine,     // p_k = a*k + b
  power,      // p_k = b^k
  table,      // p_k = values[k-1], then repeat-last or error
  uniform,    // p_k ~ Uniform{1, ..., 2k+1}
  poisson,    // p_k ~ max(1, Poisson(k))
};

enum class TableExtension { repeat_last, error };

/// Insertion sequence k -> p_k.
///
/// Deterministic kinds ignore the draw index. Stochastic kinds are pure
/// functions of (seed, draw); the engine passes the clock time of the viewing
/// as the draw index, so a whole run replays from its seed.
///
/// Values that would overflow saturate at UINT64_MAX; the deck's
/// materialization cap turns those into CapacityError.
class Schedule {
 public:
  static Schedule slow();
  static Schedule recap();
  static Schedule constant(Position c);
  static Schedule affine(std::int64_t a, std::int64_t b);
  static Schedule power(std::uint64_t base);
  static Schedule table(std::vector<Position> values,
                        TableExtension extension = TableExtension::repeat_last);
  static Schedule uniform(std::uint64_t seed = 0);
  static Schedule poisson(std::uint64_t seed = 0);

  /// Parses either a JSON descriptor ({"kind":"constant","c":5}) or the
  /// shorthand used on the command line: slow, recap, constant:5,
  /// affine:3:1, power:3, table:2,3,5[:error], uniform, poisson.
  /// `seed` applies to stochastic kinds unless the JSON carries its own.
  static Schedule parse(std::string_view text, std::uint64_t seed = 0);
  static Schedule from_json(std::string_view json_text);

  std::string to_json() const;
  /// Shorthand form accepted by parse().
  std::string describe() const;

  Position position(ViewCount k, std::uint64_t draw = 0) const;

  ScheduleKind kind() const { return kind_; }
  bool stochastic() const {
    return kind_ == ScheduleKind::uniform || kind_ == ScheduleKind::poisson;
  }
  std::uint64_t seed() const { return seed_; }

  /// Weakly increasing in k (deterministic kinds only).
  bool increasing() const;
  /// max_k p_k when the sequence is bounded.
  std::optional<Position> bound() const;
  /// min{ j : p_j >= n }, searching j <= search_limit.
  std::optional<ViewCount> first_reaching(Position n, ViewCount search_limit = 1u << 20) const;

 private:
  Schedule(ScheduleKind kind) : kind_(kind) {}

  ScheduleKind kind_;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::vector<Position> values_;
  TableExtension extension_ = TableExtension::repeat_last;
  std::uint64_t seed_ = 0;
};

std::string_view to_string(ScheduleKind kind);

}  // namespace flashcard
