// SPDX-License-Identifier: Apache-2.0
#include "flashcard/tableau.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace flashcard {

std::vector<std::size_t> StaircaseTableau::shape() const {
  std::vector<std::size_t> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.size());
  return out;
}

StaircaseTableau build_staircase(const TimeTable& timetable, Time tmax) {
  if (!timetable.keeps_times()) throw std::invalid_argument("timetable does not keep viewing times");
  if (timetable.last_time() < tmax) {
    throw std::invalid_argument("timetable only reaches t = " + std::to_string(timetable.last_time()) +
                                ", need " + std::to_string(tmax));
  }
  StaircaseTableau out;
  out.tmax = tmax;
  for (Card n = 1; n <= timetable.max_card(); ++n) {
    const auto times = timetable.times(n);
    const auto end = std::upper_bound(times.begin(), times.end(), tmax);
    if (end == times.begin()) break;  // rows are nested: card n unseen => n + 1 unseen
    out.rows.emplace_back(times.begin(), end);
  }
  return out;
}

TableauRows transpose(const TableauRows& rows) {
  TableauRows out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j >= out.size()) out.resize(j + 1);
      out[j].push_back(rows[i][j]);
    }
  }
  return out;
}

StaircaseTableau transpose(const StaircaseTableau& tableau) {
  return {transpose(tableau.rows), tableau.tmax};
}

TableauPair rsk_reversed(std::span<const std::uint64_t> sequence, std::size_t max_length) {
  if (sequence.size() > max_length) {
    throw std::invalid_argument("rsk_reversed: sequence longer than " + std::to_string(max_length));
  }
  TableauPair out;
  auto& p = out.insertion;
  auto& q = out.recording;
  for (std::size_t step = 0; step < sequence.size(); ++step) {
    std::uint64_t value = sequence[step];
    std::size_t row = 0;
    for (;; ++row) {
      if (row == p.size()) {
        p.emplace_back();
        q.emplace_back();
      }
      auto& r = p[row];
      // Rows are weakly decreasing numerically; find the first entry < value.
      const auto it = std::upper_bound(r.begin(), r.end(), value, std::greater<>{});
      if (it == r.end()) {
        r.push_back(value);
        q[row].push_back(step + 1);
        break;
      }
      std::swap(value, *it);
    }
  }
  return out;
}

void write_rows(std::ostream& out, const TableauRows& rows) {
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
    out << '\n';
  }
}

}  // namespace flashcard
