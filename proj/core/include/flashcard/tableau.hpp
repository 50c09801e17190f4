// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "flashcard/engine.hpp"

namespace flashcard {

/// Row-major tableau; rows[i][j] is the box in row i + 1, column j + 1.
using TableauRows = std::vector<std::vector<std::uint64_t>>;

/// The quarter-plane tableau with T_i(j) in box (i, j), cut down to the
/// boxes whose entry is at most tmax.
struct StaircaseTableau {
  TableauRows rows;
  Time tmax = 0;

  std::vector<std::size_t> shape() const;
  friend bool operator==(const StaircaseTableau&, const StaircaseTableau&) = default;
};

/// Throws std::invalid_argument when the timetable has not reached tmax or
/// does not keep per-card times.
StaircaseTableau build_staircase(const TimeTable& timetable, Time tmax);

StaircaseTableau transpose(const StaircaseTableau& tableau);
TableauRows transpose(const TableauRows& rows);

struct TableauPair {
  TableauRows insertion;  // P
  TableauRows recording;  // Q
};

inline constexpr std::size_t kDefaultRskMaxLength = 10'000;

/// Row-insertion RSK under the reversed order 1 > 2 > 3 > ...: an inserted
/// value bumps the leftmost entry numerically smaller than it. Verification
/// path only; lengths above max_length throw std::invalid_argument.
TableauPair rsk_reversed(std::span<const std::uint64_t> sequence,
                         std::size_t max_length = kDefaultRskMaxLength);

/// One row per line, entries comma-separated.
void write_rows(std::ostream& out, const TableauRows& rows);

}  // namespace flashcard
