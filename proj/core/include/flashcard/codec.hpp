// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flashcard/engine.hpp"
#include "flashcard/types.hpp"

namespace flashcard {

// Viewing sequence V_t: the card seen at time t.
// Counting sequence C_t: how many times that card has been seen so far.

/// C_i = #{ j <= i : V_j = V_i }.
std::vector<ViewCount> viewing_to_counting(std::span<const Card> viewing);

/// Labels the occurrences of each value k left to right with 1, 2, 3, ...
/// Throws CodecError when the j-th occurrence of k (k > 1) does not come after
/// the j-th occurrence of k - 1, which no game can produce.
std::vector<Card> counting_to_viewing(std::span<const ViewCount> counting);

/// Deck of times: entry i is c_{u_i}(t) for the card u_i at position i,
/// truncated after the last nonzero entry.
using TimesDeck = std::vector<ViewCount>;

template <DeckLike DeckT>
TimesDeck deck_to_times(const DeckT& deck, std::span<const ViewCount> counts);

template <DeckLike DeckT>
TimesDeck deck_to_times(const BasicGame<DeckT>& game) {
  return deck_to_times(game.deck(), game.counts());
}

struct DecodedDeck {
  Time t = 0;
  std::vector<Card> cards;  // one card per entry of the times deck

  friend bool operator==(const DecodedDeck&, const DecodedDeck&) = default;
};

/// Slow game only. Recovers t and the deck prefix: decrement the front entry, then hand out
/// card numbers to the largest value's positions left to right, then the
/// next largest, down to the zeros. Throws CodecError for inputs that cannot
/// be a game state.
DecodedDeck times_to_deck(std::span<const ViewCount> times);

/// Partial information from the deck of cards alone: after card 1's latest
/// move, c_1 = k - 1 with k the largest card not at position k. While card 1
/// is itself at the front (already counted, not yet moved) that is one short.
/// Empty for t <= 3, where the deck is still the identity.
template <DeckLike DeckT>
std::optional<ViewCount> first_card_count_from_deck(const DeckT& deck, Time t);

/// For a card that has been seen, c_i(t) >= j - 1 where j is its position.
template <DeckLike DeckT>
ViewCount seen_count_lower_bound(const DeckT& deck, Card card) {
  return deck.position_of(card) - 1;
}

// Plain-text formats: sequences are one integer per line; a times deck is
// comma-separated.
std::vector<std::uint64_t> read_sequence(std::istream& in);
void write_sequence(std::ostream& out, std::span<const std::uint64_t> values);
TimesDeck parse_times_deck(std::string_view text);
std::string format_times_deck(std::span<const ViewCount> times);
std::string format_decoded(const DecodedDeck& decoded);

// ---------------------------------------------------------------------------

template <DeckLike DeckT>
TimesDeck deck_to_times(const DeckT& deck, std::span<const ViewCount> counts) {
  // Seen cards are exactly 1..counts.size(); the deepest of them bounds the
  // nonzero part. A card can be seen while still in the identity tail (e.g.
  // under p_k = 1), so the tail is consulted too.
  Position depth = deck.active_length();
  if (!counts.empty()) depth = std::max(depth, deck.position_of(counts.size()));
  TimesDeck out;
  out.reserve(depth);
  for (Position p = 1; p <= depth; ++p) {
    const Card c = deck.card_at(p);
    out.push_back(c <= counts.size() ? counts[c - 1] : 0);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

template <DeckLike DeckT>
std::optional<ViewCount> first_card_count_from_deck(const DeckT& deck, Time t) {
  if (t <= 2) return std::nullopt;
  const auto prefix = deck.active_prefix();
  Card largest = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] != i + 1) largest = std::max(largest, prefix[i]);
  }
  if (largest == 0) return std::nullopt;
  return largest - 1 + (deck.front() == 1 ? 1 : 0);
}

}  // namespace flashcard
