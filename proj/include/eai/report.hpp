#pragma once

// Text renderers: campaign tables, correlation CSV, SVG trajectory plots.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eai/campaign.hpp"
#include "eai/dataset.hpp"

namespace eai {

/// Aligned table: Iteration | MSF | Accuracy | LI | UI | flag. Rows whose
/// accuracy fell outside the previous band end in '*'.
inline std::string render_campaign_table(const CampaignReport& r) {
  struct Row {
    std::string cells[5];
    bool out = false;
  };
  std::vector<Row> rows;
  rows.push_back({{"Iteration", "MSF", "Accuracy", "LI", "UI"}, false});
  for (const auto& rec : r.records) {
    Row row;
    row.cells[0] = std::to_string(rec.iteration);
    row.cells[1] = rec.msf;
    row.cells[2] = detail::fixed4(rec.accuracy);
    if (rec.band) {
      row.cells[3] = detail::fixed4(rec.band->lower);
      row.cells[4] = detail::fixed4(rec.band->upper);
    }
    row.out = rec.within_previous_band.has_value() && !*rec.within_previous_band;
    rows.push_back(std::move(row));
  }
  std::size_t width[5] = {};
  for (const auto& row : rows)
    for (int c = 0; c < 5; ++c) width[c] = std::max(width[c], row.cells[c].size());

  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (int c = 0; c < 5; ++c) {
      std::string cell = row.cells[c];
      cell.resize(width[c], ' ');
      line += cell;
      line += " | ";
    }
    line += row.out ? "*" : "";
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

/// Square matrix as CSV with names on the header row and first column,
/// entries to 4 decimals.
inline std::string render_corr_csv(const Matrix& m, const std::vector<std::string>& names) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != names.size())
    throw DataError("render_corr_csv: matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " but " + std::to_string(names.size()) +
                    " names were given");
  std::string out;
  for (const auto& n : names) out += ',' + n;
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += names[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += ',' + detail::fixed4(m(i, j));
    out += '\n';
  }
  return out;
}

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
};

struct BandPoint {
  double x = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<std::string, std::vector<PlotPoint>>> series;
  std::vector<BandPoint> band;
  int width = 640;
  int height = 400;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

}  // namespace detail

/// Standalone SVG: one polyline per series, one shaded polygon for the band
/// when present, labeled axes.
inline std::string render_trajectory_svg(const PlotSpec& spec) {
  if (spec.series.empty()) throw DataError("render_trajectory_svg: no series");
  for (const auto& [name, pts] : spec.series) {
    if (pts.empty()) throw DataError("render_trajectory_svg: series '" + name + "' is empty");
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (!(pts[i].x > pts[i - 1].x))
        throw DataError("render_trajectory_svg: x must increase within series '" + name + "'");
  }

  double x_min = spec.series.front().second.front().x, x_max = x_min;
  double y_min = spec.series.front().second.front().y, y_max = y_min;
  auto grow = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  };
  for (const auto& s : spec.series)
    for (const auto& p : s.second) grow(p.x, p.y);
  for (const auto& b : spec.band) {
    grow(b.x, b.lower);
    grow(b.x, b.upper);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = spec.width - left - right;
  const double plot_h = spec.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  std::ostringstream svg;
  svg.imbue(std::locale::classic());
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << detail::num(spec.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << detail::xml_escape(spec.title) << "</text>\n";

  if (!spec.band.empty()) {
    svg << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
    for (const auto& b : spec.band) svg << detail::num(sx(b.x)) << ',' << detail::num(sy(b.upper)) << ' ';
    for (auto it = spec.band.rbegin(); it != spec.band.rend(); ++it)
      svg << detail::num(sx(it->x)) << ',' << detail::num(sy(it->lower)) << ' ';
    svg << "\"/>\n";
  }

  // Axes.
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << detail::num(left + plot_w / 2) << "\" y=\"" << spec.height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << detail::xml_escape(spec.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << detail::num(top + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << detail::num(top + plot_h / 2) << ")\">"
      << detail::xml_escape(spec.y_label) << "</text>\n"
      << "<text x=\"" << left - 4 << "\" y=\"" << detail::num(top + plot_h) << "\" text-anchor=\"end\" font-size=\"10\">"
      << detail::fixed4(y_min) << "</text>\n"
      << "<text x=\"" << left - 4 << "\" y=\"" << detail::num(top + 10) << "\" text-anchor=\"end\" font-size=\"10\">"
      << detail::fixed4(y_max) << "</text>\n";

  static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e"};
  std::size_t s_idx = 0;
  for (const auto& [name, pts] : spec.series) {
    svg << "<polyline fill=\"none\" stroke=\"" << colors[s_idx % 4] << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : pts)
      if (std::isfinite(p.y)) svg << detail::num(sx(p.x)) << ',' << detail::num(sy(p.y)) << ' ';
    svg << "\"/>\n";
    svg << "<text x=\"" << detail::num(left + plot_w - 4) << "\" y=\"" << 40 + 14 * (s_idx + 1)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << colors[s_idx % 4] << "\">"
        << detail::xml_escape(name) << "</text>\n";
    ++s_idx;
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Accuracy per iteration, with each band drawn at the iteration it predicts.
inline PlotSpec trajectory_plot(const CampaignReport& r, const std::string& title) {
  PlotSpec spec;
  spec.title = title;
  spec.x_label = "Iteration";
  spec.y_label = r.task == Task::Classification ? "F1" : "R2";
  std::vector<PlotPoint> acc;
  for (const auto& rec : r.records) {
    acc.push_back({static_cast<double>(rec.iteration), rec.accuracy});
    if (rec.band) spec.band.push_back({static_cast<double>(rec.iteration + 1), rec.band->lower, rec.band->upper});
  }
  spec.series.emplace_back("accuracy", std::move(acc));
  return spec;
}

/// Copy of `r` with every band clamped to the metric's attainable range:
/// [0, 1] for F1, (-inf, 1] for R2. Within-band flags are left as computed.
inline CampaignReport clamp_bands(CampaignReport r) {
  const double floor = r.task == Task::Classification ? 0.0 : -std::numeric_limits<double>::infinity();
  for (auto& rec : r.records)
    if (rec.band) rec.band = clamp_band(*rec.band, floor, 1.0);
  return r;
}

}  // namespace eai
