// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>
#include <utility>

#include "flashcard/analysis.hpp"

namespace flashcard::detail {

// Accumulates one CheckResult. A slack >= 0 means the inequality held with
// that much room; a negative slack is a violation.
class Tally {
 public:
  Tally(std::string name, std::string range) {
    result_.name = std::move(name);
    result_.range = std::move(range);
  }

  template <class Describe>
  void observe(double slack, Describe&& describe) {
    ++result_.evaluated;
    if (slack < 0) {
      if (result_.violations++ == 0) result_.witness = "VIOLATION " + describe();
      return;
    }
    if (result_.violations == 0 && slack < tightest_) {
      tightest_ = slack;
      result_.witness = "tightest " + describe();
    }
  }

  void missing(const std::string& what) {
    ++result_.evaluated;
    if (result_.violations++ == 0) result_.witness = "VIOLATION missing " + what;
  }

  void set_range(std::string range) { result_.range = std::move(range); }

  CheckResult finish() && { return std::move(result_); }

 private:
  CheckResult result_;
  double tightest_ = std::numeric_limits<double>::infinity();
};

}  // namespace flashcard::detail
