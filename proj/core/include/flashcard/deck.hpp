// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "flashcard/types.hpp"

namespace flashcard {

// An infinite deck is an explicit active prefix (positions 1..L) followed by
// the untouched tail tail_start, tail_start + 1, ... in increasing order.
// Every card below tail_start lives in the active prefix.

/// Order-maintenance deck: an implicit treap whose nodes are runs of
/// consecutive cards, plus a run index for card -> position lookups.
///
/// Runs keep the cost of materializing far positions (p_k = 2^k) at one node
/// instead of one node per card. Unseen cards never change relative order,
/// so the number of runs stays O(number of cards ever moved).
///
/// remove_front_insert, card_at and position_of are O(log R) expected, R the
/// number of runs.
class Deck {
 public:
  explicit Deck(Position max_position = kDefaultMaxPosition);

  Card front() const { return card_at(1); }
  Card card_at(Position p) const;
  Position position_of(Card c) const;

  /// Moves the front card to position m; cards at 2..m shift forward by one.
  /// Throws CapacityError if m exceeds max_position().
  void remove_front_insert(Position m);

  Position active_length() const { return total(root_); }
  Card tail_start() const { return tail_start_; }
  Position max_position() const { return max_position_; }
  std::size_t run_count() const { return run_index_.size(); }

  std::vector<Card> active_prefix() const;

 private:
  using NodeId = std::uint32_t;
  static constexpr NodeId kNil = 0;

  struct Node {
    Card first = 0;
    Position length = 0;
    Position total = 0;
    NodeId left = kNil;
    NodeId right = kNil;
    NodeId parent = kNil;
    std::uint32_t priority = 0;
  };

  Position total(NodeId id) const { return nodes_[id].total; }
  NodeId make_node(Card first, Position length);
  void pull(NodeId id);
  NodeId merge(NodeId a, NodeId b);
  // First `count` cards go left; a run straddling the cut is split in two.
  std::pair<NodeId, NodeId> split(NodeId id, Position count);
  void set_root(NodeId id);
  void materialize_through(Position m);

  std::vector<Node> nodes_;               // nodes_[0] is the nil sentinel
  std::map<Card, NodeId> run_index_;      // first card of run -> node
  NodeId root_ = kNil;
  Card tail_start_ = 1;
  Position max_position_;
  std::uint64_t priority_state_ = 0x9e3779b97f4a7c15ULL;
};

/// Flat-array deck with linear-time operations; the testing oracle for Deck.
class NaiveDeck {
 public:
  explicit NaiveDeck(Position max_position = kDefaultMaxPosition);

  Card front() const { return card_at(1); }
  Card card_at(Position p) const;
  Position position_of(Card c) const;
  void remove_front_insert(Position m);

  /// Replaces positions 1..s (s = one_line.size()) so that the card now at
  /// position i is the one previously at position one_line[i-1].
  /// one_line must be a permutation of 1..s.
  void permute_prefix(std::span<const Position> one_line);

  Position active_length() const { return active_.size(); }
  Card tail_start() const { return tail_start_; }
  Position max_position() const { return max_position_; }
  std::vector<Card> active_prefix() const { return active_; }

 private:
  void materialize_through(Position m);

  std::vector<Card> active_;
  Card tail_start_ = 1;
  Position max_position_;
  std::vector<Card> scratch_;
};

template <class D>
concept DeckLike = requires(D deck, const D& cdeck, Position p, Card c) {
  { cdeck.front() } -> std::same_as<Card>;
  { cdeck.card_at(p) } -> std::same_as<Card>;
  { cdeck.position_of(c) } -> std::same_as<Position>;
  { cdeck.active_length() } -> std::same_as<Position>;
  { cdeck.tail_start() } -> std::same_as<Card>;
  { cdeck.active_prefix() } -> std::same_as<std::vector<Card>>;
  deck.remove_front_insert(p);
};

}  // namespace flashcard
