// SPDX-License-Identifier: Apache-2.0
#include "flashcard/codec.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace flashcard {

std::vector<ViewCount> viewing_to_counting(std::span<const Card> viewing) {
  std::vector<ViewCount> seen;
  std::vector<ViewCount> out;
  out.reserve(viewing.size());
  for (const Card card : viewing) {
    if (card == 0) throw CodecError("viewing sequence contains card 0");
    if (card > seen.size()) seen.resize(card, 0);
    out.push_back(++seen[card - 1]);
  }
  return out;
}

std::vector<Card> counting_to_viewing(std::span<const ViewCount> counting) {
  std::vector<ViewCount> occurrences;  // occurrences[k - 1] of value k so far
  std::vector<Card> out;
  out.reserve(counting.size());
  for (std::size_t i = 0; i < counting.size(); ++i) {
    const ViewCount k = counting[i];
    if (k == 0) throw CodecError("counting sequence contains 0 at index " + std::to_string(i + 1));
    if (k > occurrences.size()) occurrences.resize(k, 0);
    const Card card = ++occurrences[k - 1];
    // Card j's k-th viewing needs its (k-1)-th viewing first.
    if (k > 1 && occurrences[k - 2] < card) {
      throw CodecError("counting sequence is inconsistent at index " + std::to_string(i + 1) +
                       ": occurrence " + std::to_string(card) + " of " + std::to_string(k) +
                       " precedes occurrence " + std::to_string(card) + " of " +
                       std::to_string(k - 1));
    }
    out.push_back(card);
  }
  return out;
}

DecodedDeck times_to_deck(std::span<const ViewCount> times) {
  std::size_t length = times.size();
  while (length > 0 && times[length - 1] == 0) --length;
  if (length == 0) throw CodecError("deck of times has no nonzero entry");
  if (times[0] == 0) throw CodecError("the front card must have been seen");

  DecodedDeck decoded;
  decoded.t = std::accumulate(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(length),
                              Time{0});

  // The front card's count already includes the current viewing.
  std::vector<ViewCount> adjusted(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(length));
  adjusted[0] -= 1;

  std::vector<std::size_t> order(length);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return adjusted[a] > adjusted[b]; });

  decoded.cards.assign(length, 0);
  Card next = 1;
  for (const std::size_t index : order) decoded.cards[index] = next++;
  return decoded;
}

std::vector<std::uint64_t> read_sequence(std::istream& in) {
  std::vector<std::uint64_t> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::uint64_t value = 0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
      throw CodecError("line " + std::to_string(line_number) + ": not a non-negative integer");
    }
    out.push_back(value);
  }
  return out;
}

void write_sequence(std::ostream& out, std::span<const std::uint64_t> values) {
  for (const auto v : values) out << v << '\n';
}

TimesDeck parse_times_deck(std::string_view text) {
  TimesDeck out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto field = text.substr(start, end - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                              field.back() == '\n' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    ViewCount value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw CodecError("deck of times: bad entry '" + std::string(field) + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

std::string format_times_deck(std::span<const ViewCount> times) {
  std::ostringstream out;
  for (std::size_t i = 0; i < times.size(); ++i) out << (i ? "," : "") << times[i];
  return out.str();
}

std::string format_decoded(const DecodedDeck& decoded) {
  std::ostringstream out;
  out << "t=" << decoded.t << "; deck=";
  for (std::size_t i = 0; i < decoded.cards.size(); ++i) out << (i ? "," : "") << decoded.cards[i];
  return out.str();
}

}  // namespace flashcard
