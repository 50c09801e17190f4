// SPDX-License-Identifier: Apache-2.0
#include "flashcard/deck.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <string>

#include "flashcard/rng.hpp"

namespace flashcard {

namespace {

void check_position(Position p) {
  if (p == 0) throw std::invalid_argument("deck positions start at 1");
}

void check_card(Card c) {
  if (c == 0) throw std::invalid_argument("cards start at 1");
}

[[noreturn]] void throw_capacity(Position m, Position cap) {
  throw CapacityError("insertion position " + std::to_string(m) +
                      " exceeds the materialization cap " + std::to_string(cap));
}

}  // namespace

// ---------------------------------------------------------------------------
// Deck

Deck::Deck(Position max_position) : max_position_(max_position) {
  if (max_position == 0) throw std::invalid_argument("max_position must be positive");
  nodes_.emplace_back();  // sentinel
}

Deck::NodeId Deck::make_node(Card first, Position length) {
  if (nodes_.size() >= std::numeric_limits<NodeId>::max()) {
    throw CapacityError("deck run storage exhausted");
  }
  priority_state_ = splitmix64(priority_state_);
  Node node;
  node.first = first;
  node.length = length;
  node.total = length;
  node.priority = static_cast<std::uint32_t>(priority_state_ >> 32);
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(node);
  run_index_.emplace(first, id);
  return id;
}

void Deck::pull(NodeId id) {
  Node& node = nodes_[id];
  node.total = nodes_[node.left].total + node.length + nodes_[node.right].total;
  if (node.left != kNil) nodes_[node.left].parent = id;
  if (node.right != kNil) nodes_[node.right].parent = id;
}

void Deck::set_root(NodeId id) {
  root_ = id;
  if (id != kNil) nodes_[id].parent = kNil;
}

Deck::NodeId Deck::merge(NodeId a, NodeId b) {
  if (a == kNil) return b;
  if (b == kNil) return a;
  if (nodes_[a].priority > nodes_[b].priority) {
    const NodeId merged = merge(nodes_[a].right, b);
    nodes_[a].right = merged;
    pull(a);
    return a;
  }
  const NodeId merged = merge(a, nodes_[b].left);
  nodes_[b].left = merged;
  pull(b);
  return b;
}

std::pair<Deck::NodeId, Deck::NodeId> Deck::split(NodeId id, Position count) {
  if (id == kNil) return {kNil, kNil};
  const Position left_total = total(nodes_[id].left);
  const Position length = nodes_[id].length;

  if (count <= left_total) {
    const auto [a, b] = split(nodes_[id].left, count);
    nodes_[id].left = b;
    pull(id);
    return {a, id};
  }
  if (count >= left_total + length) {
    const auto [a, b] = split(nodes_[id].right, count - left_total - length);
    nodes_[id].right = a;
    pull(id);
    return {id, b};
  }

  // The cut falls inside this run.
  const Position keep = count - left_total;
  const NodeId rest = make_node(nodes_[id].first + keep, length - keep);
  const NodeId right = nodes_[id].right;
  nodes_[id].length = keep;
  nodes_[id].right = kNil;
  pull(id);
  return {id, merge(rest, right)};
}

void Deck::materialize_through(Position m) {
  const Position length = active_length();
  if (length >= m) return;
  const Position extra = m - length;

  if (root_ != kNil) {
    NodeId last = root_;
    while (nodes_[last].right != kNil) last = nodes_[last].right;
    if (nodes_[last].first + nodes_[last].length == tail_start_) {
      nodes_[last].length += extra;
      for (NodeId id = last; id != kNil; id = nodes_[id].parent) nodes_[id].total += extra;
      tail_start_ += extra;
      return;
    }
  }
  const NodeId fresh = make_node(tail_start_, extra);
  set_root(merge(root_, fresh));
  tail_start_ += extra;
}

void Deck::remove_front_insert(Position m) {
  check_position(m);
  if (m > max_position_) throw_capacity(m, max_position_);
  if (m == 1) return;
  materialize_through(m);

  const auto [front, rest] = split(root_, 1);
  const auto [head, tail] = split(rest, m - 1);
  set_root(merge(merge(head, front), tail));
}

Card Deck::card_at(Position p) const {
  check_position(p);
  const Position length = active_length();
  if (p > length) return tail_start_ + (p - length - 1);

  NodeId id = root_;
  for (;;) {
    const Node& node = nodes_[id];
    const Position left_total = total(node.left);
    if (p <= left_total) {
      id = node.left;
    } else if (p <= left_total + node.length) {
      return node.first + (p - left_total - 1);
    } else {
      p -= left_total + node.length;
      id = node.right;
    }
  }
}

Position Deck::position_of(Card c) const {
  check_card(c);
  if (c >= tail_start_) return active_length() + (c - tail_start_) + 1;

  auto it = run_index_.upper_bound(c);
  --it;  // runs partition [1, tail_start)
  NodeId id = it->second;
  Position rank = total(nodes_[id].left) + (c - nodes_[id].first);
  for (NodeId parent = nodes_[id].parent; parent != kNil; id = parent, parent = nodes_[id].parent) {
    if (nodes_[parent].right == id) rank += total(nodes_[parent].left) + nodes_[parent].length;
  }
  return rank + 1;
}

std::vector<Card> Deck::active_prefix() const {
  std::vector<Card> out;
  out.reserve(active_length());
  std::vector<NodeId> stack;
  NodeId id = root_;
  while (id != kNil || !stack.empty()) {
    while (id != kNil) {
      stack.push_back(id);
      id = nodes_[id].left;
    }
    id = stack.back();
    stack.pop_back();
    for (Position i = 0; i < nodes_[id].length; ++i) out.push_back(nodes_[id].first + i);
    id = nodes_[id].right;
  }
  return out;
}

// ---------------------------------------------------------------------------
// NaiveDeck

NaiveDeck::NaiveDeck(Position max_position) : max_position_(max_position) {
  if (max_position == 0) throw std::invalid_argument("max_position must be positive");
}

void NaiveDeck::materialize_through(Position m) {
  while (active_.size() < m) active_.push_back(tail_start_++);
}

Card NaiveDeck::card_at(Position p) const {
  check_position(p);
  if (p > active_.size()) return tail_start_ + (p - active_.size() - 1);
  return active_[p - 1];
}

Position NaiveDeck::position_of(Card c) const {
  check_card(c);
  if (c >= tail_start_) return active_.size() + (c - tail_start_) + 1;
  const auto it = std::find(active_.begin(), active_.end(), c);
  return static_cast<Position>(std::distance(active_.begin(), it)) + 1;
}

void NaiveDeck::remove_front_insert(Position m) {
  check_position(m);
  if (m > max_position_) throw_capacity(m, max_position_);
  if (m == 1) return;
  materialize_through(m);
  std::rotate(active_.begin(), active_.begin() + 1, active_.begin() + static_cast<std::ptrdiff_t>(m));
}

void NaiveDeck::permute_prefix(std::span<const Position> one_line) {
  const Position size = one_line.size();
  if (size > max_position_) throw_capacity(size, max_position_);
  materialize_through(size);
  std::vector<bool> used(size, false);
  for (const Position source : one_line) {
    if (source == 0 || source > size || used[source - 1]) {
      throw std::invalid_argument("not a permutation of 1..s");
    }
    used[source - 1] = true;
  }
  scratch_.assign(active_.begin(), active_.begin() + static_cast<std::ptrdiff_t>(size));
  for (Position i = 0; i < size; ++i) active_[i] = scratch_[one_line[i] - 1];
}

}  // namespace flashcard
