// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "flashcard/analysis.hpp"
#include "tally.hpp"

namespace flashcard {

PointCloud point_cloud(const TimeTable& tt, Time lo, Time hi) {
  if (lo == 0 || hi < lo) throw std::invalid_argument("point_cloud: bad interval");
  if (!tt.keeps_times()) throw std::invalid_argument("point_cloud needs viewing times");
  if (tt.last_time() < hi) {
    throw std::invalid_argument("timetable stops at t=" + std::to_string(tt.last_time()) +
                                ", interval ends at " + std::to_string(hi));
  }
  PointCloud cloud{lo, hi, {}};
  for (Card n = 1; n <= tt.max_card(); ++n) {
    const auto times = tt.times(n);
    auto it = std::lower_bound(times.begin(), times.end(), lo);
    for (; it != times.end() && *it <= hi; ++it) {
      const auto k = static_cast<ViewCount>(it - times.begin()) + 1;
      const double root = std::sqrt(double(*it));
      cloud.points.push_back({n, k, *it, double(n) / root, double(k) / root});
    }
  }
  std::sort(cloud.points.begin(), cloud.points.end(),
            [](const CloudPoint& a, const CloudPoint& b) { return a.t < b.t; });
  return cloud;
}

double circle_epsilon(Time m) {
  if (m == 0) throw std::invalid_argument("circle_epsilon: m must be positive");
  return 2.5 / std::sqrt(double(m) / 2.0);
}

CheckReport check_cloud_bounds(const PointCloud& cloud, double epsilon, Time circle_from) {
  CheckReport report;
  report.suite = "cloud";
  const std::string range = "T in [" + std::to_string(cloud.lo) + "," + std::to_string(cloud.hi) + "]";
  detail::Tally line("x+y > 1", range);
  std::ostringstream eps;
  eps << epsilon;
  detail::Tally circle("x^2+y^2 <= 2+" + eps.str(),
                       range + ", T>=" + std::to_string(std::max(circle_from, cloud.lo)));
  auto describe = [](const CloudPoint& p) {
    std::ostringstream out;
    out << "(n,k,T)=(" << p.n << "," << p.k << "," << p.t << ") x=" << p.x << " y=" << p.y;
    return out.str();
  };
  for (const auto& p : cloud.points) {
    // (n + k)^2 > T exactly, as n + k > floor(sqrt(T)); the slack is reported in the rescaled units.
    auto root = static_cast<std::uint64_t>(std::sqrt(double(p.t)));
    while (root * root > p.t) --root;
    while ((root + 1) * (root + 1) <= p.t) ++root;
    const bool above = p.n + p.k > root;
    const double line_slack = p.x + p.y - 1.0;
    line.observe(above ? std::max(line_slack, 0.0) : std::min(line_slack, -1e-300),
                 [&] { return describe(p); });
    if (p.t >= circle_from) {
      circle.observe(2.0 + epsilon - (p.x * p.x + p.y * p.y), [&] { return describe(p); });
    }
  }
  report.results.push_back(std::move(line).finish());
  report.results.push_back(std::move(circle).finish());
  return report;
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  out << "n,k,T,x,y\n";
  const auto precision = out.precision(10);
  for (const auto& p : cloud.points) {
    out << p.n << ',' << p.k << ',' << p.t << ',' << p.x << ',' << p.y << '\n';
  }
  out.precision(precision);
}

void write_cloud_svg(std::ostream& out, const PointCloud& cloud) {
  constexpr double kSize = 800;
  constexpr double kExtent = 2.5;
  constexpr double kScale = kSize / kExtent;
  auto sx = [&](double x) { return x * kScale; };
  auto sy = [&](double y) { return kSize - y * kScale; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(1) << "\" x2=\"" << sx(1) << "\" y2=\"" << sy(0)
      << "\" stroke=\"red\" stroke-width=\"1\"/>\n";
  const double r = std::sqrt(2.0) * kScale;
  out << "<path d=\"M " << sx(std::sqrt(2.0)) << ' ' << sy(0) << " A " << r << ' ' << r << " 0 0 0 "
      << sx(0) << ' ' << sy(std::sqrt(2.0)) << "\" fill=\"none\" stroke=\"blue\" stroke-width=\"1\"/>\n";
  out << "<g fill=\"black\">\n";
  const auto precision = out.precision(6);
  for (const auto& p : cloud.points) {
    if (p.x > kExtent || p.y > kExtent) continue;
    out << "<rect x=\"" << sx(p.x) << "\" y=\"" << sy(p.y) << "\" width=\"1\" height=\"1\"/>\n";
  }
  out.precision(precision);
  out << "</g>\n</svg>\n";
}

}  // namespace flashcard
