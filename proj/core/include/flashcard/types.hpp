// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flashcard {

/// Cards are the positive integers 1, 2, 3, ...
using Card = std::uint64_t;
/// Deck positions are 1-based.
using Position = std::uint64_t;
/// Clock values; t = 1 is the first viewing of card 1.
using Time = std::uint64_t;
/// How many times a card has been seen.
using ViewCount = std::uint64_t;

inline constexpr Position kDefaultMaxPosition = Position{1} << 24;
inline constexpr std::uint64_t kDefaultStepBudget = 100'000'000;

/// An insertion or query needed more of the deck materialized than allowed.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run ran out of steps before reaching its target.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed schedule descriptor or a table schedule read past its end.
class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input to a decoder is not a reachable game state.
class CodecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace flashcard
