// Copyright 2026 The qaaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "qaaug/stats.hpp"

namespace qaaug {

namespace {

std::vector<std::size_t> rank_order(const RankingResult& r) {
  std::vector<std::size_t> order(r.average_ranks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r.average_ranks[a] < r.average_ranks[b]; });
  return order;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_cd_ascii(const RankingResult& r) {
  const auto order = rank_order(r);
  std::size_t width = 4;
  for (const auto& t : r.treatments) width = std::max(width, t.size());
  std::string out = fmt::format("CD = {:.4f} (alpha = {}, N = {}), lower rank is better\n", r.cd, r.alpha, r.n);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t j = order[pos];
    std::string bars;
    for (const auto& g : r.groups) {
      if (g.size() < 2) {
        bars += "  ";
        continue;
      }
      const auto first = std::find(order.begin(), order.end(), g.front()) - order.begin();
      const auto last = std::find(order.begin(), order.end(), g.back()) - order.begin();
      const auto p = static_cast<std::ptrdiff_t>(pos);
      if (p == first && p == last) bars += " |";
      else if (p == first) bars += " +";
      else if (p == last) bars += " +";
      else if (p > first && p < last) bars += " |";
      else bars += "  ";
    }
    out += fmt::format("{:>8.4f}  {:<{}}{}\n", r.average_ranks[j], r.treatments[j], width, bars);
  }
  return out;
}

std::string render_cd_svg(const RankingResult& r) {
  const auto order = rank_order(r);
  const std::size_t k = order.size();
  const double left = 160.0;
  const double right = 160.0;
  const double axis_width = 480.0;
  const double width = left + axis_width + right;
  const double axis_y = 60.0;
  const double row = 22.0;
  const std::size_t half = (k + 1) / 2;
  std::size_t bar_rows = 0;
  for (const auto& g : r.groups) bar_rows += g.size() > 1 ? 1 : 0;
  const double height = axis_y + 40.0 + row * static_cast<double>(half) + 12.0 * static_cast<double>(bar_rows) + 20.0;
  const double lo = 1.0;
  const double hi = std::max<double>(2.0, static_cast<double>(k));
  auto x_of = [&](double rank) { return left + (rank - lo) / (hi - lo) * axis_width; };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height, width, height);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n", x_of(lo), axis_y,
                   x_of(hi), axis_y);
  for (std::size_t t = 1; t <= static_cast<std::size_t>(hi); ++t) {
    const double x = x_of(static_cast<double>(t));
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n", x,
                     axis_y - 5.0, x, axis_y);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x, axis_y - 9.0, t);
  }
  // CD reference bar above the axis.
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"20\" x2=\"{:.2f}\" y2=\"20\" stroke=\"black\" stroke-width=\"2\"/>\n",
                   x_of(lo), x_of(lo + r.cd));
  s += fmt::format("<text x=\"{:.2f}\" y=\"15\" text-anchor=\"middle\">CD = {:.3f}</text>\n",
                   (x_of(lo) + x_of(lo + r.cd)) / 2.0, r.cd);

  const double bars_top = axis_y + 10.0;
  const double labels_top = bars_top + 12.0 * static_cast<double>(bar_rows) + 12.0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::size_t j = order[pos];
    const double x = x_of(r.average_ranks[j]);
    const bool on_left = pos < half;
    const std::size_t slot = on_left ? pos : k - 1 - pos;
    const double y = labels_top + row * static_cast<double>(slot);
    const double lx = on_left ? left - 10.0 : left + axis_width + 10.0;
    s += fmt::format("<polyline points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                     x, axis_y, x, y, lx, y);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"{}\">{} ({:.2f})</text>\n",
                     on_left ? lx - 4.0 : lx + 4.0, y + 4.0, on_left ? "end" : "start",
                     xml_escape(r.treatments[j]), r.average_ranks[j]);
  }
  std::size_t bar = 0;
  for (const auto& g : r.groups) {
    if (g.size() < 2) continue;
    double a = r.average_ranks[g.front()];
    double b = a;
    for (auto j : g) {
      a = std::min(a, r.average_ranks[j]);
      b = std::max(b, r.average_ranks[j]);
    }
    const double y = bars_top + 12.0 * static_cast<double>(bar++);
    s += fmt::format(
        "<line class=\"group\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\" "
        "stroke-width=\"4\"/>\n",
        x_of(a) - 3.0, y, x_of(b) + 3.0, y);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace qaaug
