#include "minsel/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minsel {

namespace {

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::string fixed6(double value) { return fixed(value, 6); }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
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

void write_selection_report(const SelectionReport& report, const std::filesystem::path& path) {
  std::vector<const SelectionRow*> rows;
  rows.reserve(report.rows.size());
  for (const SelectionRow& row : report.rows) rows.push_back(&row);
  std::sort(rows.begin(), rows.end(), [](const SelectionRow* a, const SelectionRow* b) {
    return a->rank_combined != b->rank_combined ? a->rank_combined < b->rank_combined
                                                : a->setting_id < b->setting_id;
  });

  std::ostringstream out;
  out << "setting,a_norm,f_norm,c_norm,pareto,distance,weighted_score,rank_d,rank_w,"
         "rank_combined\n";
  for (const SelectionRow* row : rows) {
    out << row->setting_id << ',' << fixed6(row->a_norm) << ',' << fixed6(row->f_norm) << ','
        << fixed6(row->c_norm) << ',' << (row->pareto ? 1 : 0) << ',' << fixed6(row->distance)
        << ',' << fixed6(row->weighted) << ',' << fixed6(row->rank_d) << ','
        << fixed6(row->rank_w) << ',' << fixed6(row->rank_combined) << '\n';
  }
  write_text_file(path, out.str());
}

void write_dominance_matrix(const MetricTable& table, const std::filesystem::path& path) {
  const int n = table.size();
  std::ostringstream out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) out << ',';
      out << (i != j && dominates(table.record(i), table.record(j)) ? 1 : 0);
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

namespace {

// In-plane dominance: at least as good in both axis objectives (higher
// auc, lower privacy) and strictly better in one.
bool dominates_2d(const ProjectionPoint& a, const ProjectionPoint& b) {
  return a.x >= b.x && a.y <= b.y && (a.x > b.x || a.y < b.y);
}

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

AxisRange padded_range(double lo, double hi) {
  if (lo == hi) return {lo - 1.0, hi + 1.0};  // keep a singleton visible
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

ProjectionPlot build_projection(const MetricTable& table, ProjectionPlane plane) {
  const std::vector<bool> flags3d = pareto_flags(table);

  ProjectionPlot plot;
  plot.plane = plane;
  for (int i = 0; i < table.size(); ++i) {
    const MetricRecord& r = table.record(i);
    ProjectionPoint point;
    point.setting_id = r.setting_id;
    point.x = r.auc;
    point.y = plane == ProjectionPlane::AucCmap ? r.cmap : r.f1;
    point.pareto3d = flags3d[static_cast<std::size_t>(i)];
    plot.points.push_back(std::move(point));
  }
  for (std::size_t i = 0; i < plot.points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < plot.points.size(); ++j)
      if (j != i && dominates_2d(plot.points[j], plot.points[i])) {
        dominated = true;
        break;
      }
    plot.points[i].pareto2d = !dominated;
  }
  return plot;
}

std::string render_projection_svg(const ProjectionPlot& plot) {
  const bool cmap_plane = plot.plane == ProjectionPlane::AucCmap;
  const std::string y_label = cmap_plane ? "cMAP (%)" : "F1";
  const int y_decimals = cmap_plane ? 1 : 3;

  const double margin_x = plot.width * 0.10;
  const double margin_y = plot.height * 0.10;
  const double plot_w = plot.width - 2.0 * margin_x;
  const double plot_h = plot.height - 2.0 * margin_y;

  double x_min = plot.points.front().x, x_max = x_min;
  double y_min = plot.points.front().y, y_max = y_min;
  for (const ProjectionPoint& p : plot.points) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  const AxisRange xr = padded_range(x_min, x_max);
  const AxisRange yr = padded_range(y_min, y_max);

  // Privacy axis inverted: the smallest value sits at the top, so the
  // preferred region is the upper right.
  const auto px = [&](double v) {
    return margin_x + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double v) {
    return margin_y + (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << plot.width
      << "\" height=\"" << plot.height << "\" viewBox=\"0 0 " << plot.width << " "
      << plot.height << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << fixed(plot.width / 2.0, 2)
      << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
      << "Utility vs privacy: AUC / " << (cmap_plane ? "cMAP" : "F1") << "</text>\n";

  // Axes.
  svg << "  <line x1=\"" << fixed(margin_x, 2) << "\" y1=\"" << fixed(margin_y, 2) << "\" x2=\""
      << fixed(margin_x, 2) << "\" y2=\"" << fixed(margin_y + plot_h, 2)
      << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << fixed(margin_x, 2) << "\" y1=\"" << fixed(margin_y + plot_h, 2)
      << "\" x2=\"" << fixed(margin_x + plot_w, 2) << "\" y2=\"" << fixed(margin_y + plot_h, 2)
      << "\" stroke=\"black\"/>\n";

  // Ticks and grid, five per axis.
  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double x = px(xv);
    const double y = py(yv);
    svg << "  <line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(margin_y + plot_h, 2)
        << "\" x2=\"" << fixed(x, 2) << "\" y2=\"" << fixed(margin_y + plot_h + 6, 2)
        << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << fixed(x, 2) << "\" y=\"" << fixed(margin_y + plot_h + 20, 2)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << fixed(xv, 1) << "</text>\n";
    svg << "  <line x1=\"" << fixed(margin_x - 6, 2) << "\" y1=\"" << fixed(y, 2) << "\" x2=\""
        << fixed(margin_x, 2) << "\" y2=\"" << fixed(y, 2) << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << fixed(margin_x - 10, 2) << "\" y=\"" << fixed(y + 4, 2)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << fixed(yv, y_decimals) << "</text>\n";
  }

  // Axis titles.
  svg << "  <text x=\"" << fixed(margin_x + plot_w / 2.0, 2) << "\" y=\""
      << fixed(plot.height - 12.0, 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">AUC (%)"
      << "</text>\n";
  svg << "  <text x=\"18\" y=\"" << fixed(margin_y + plot_h / 2.0, 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << fixed(margin_y + plot_h / 2.0, 2) << ")\">"
      << xml_escape(y_label) << " (lower is better, axis inverted)</text>\n";

  // In-plane frontier polyline, left to right.
  std::vector<const ProjectionPoint*> frontier;
  for (const ProjectionPoint& p : plot.points)
    if (p.pareto2d) frontier.push_back(&p);
  std::sort(frontier.begin(), frontier.end(), [](const ProjectionPoint* a, const ProjectionPoint* b) {
    return a->x != b->x ? a->x < b->x : a->setting_id < b->setting_id;
  });
  if (frontier.size() > 1) {
    svg << "  <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\" "
        << "stroke-dasharray=\"4 3\" points=\"";
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << fixed(px(frontier[i]->x), 2) << ',' << fixed(py(frontier[i]->y), 2);
    }
    svg << "\"/>\n";
  }

  // Points: triangles for 3D-Pareto settings, circles otherwise; members
  // of the in-plane frontier get the frontier stroke.
  for (const ProjectionPoint& p : plot.points) {
    const double x = px(p.x);
    const double y = py(p.y);
    const std::string stroke = p.pareto2d ? "#d62728" : "#555555";
    if (p.pareto3d) {
      svg << "  <polygon points=\"" << fixed(x, 2) << ',' << fixed(y - 6, 2) << ' '
          << fixed(x - 5.2, 2) << ',' << fixed(y + 4, 2) << ' ' << fixed(x + 5.2, 2) << ','
          << fixed(y + 4, 2) << "\" fill=\"#1f77b4\" stroke=\"" << stroke
          << "\" stroke-width=\"1.5\"/>\n";
    } else {
      svg << "  <circle cx=\"" << fixed(x, 2) << "\" cy=\"" << fixed(y, 2)
          << "\" r=\"4\" fill=\"#9ca3af\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
    }
    svg << "  <text x=\"" << fixed(x + 7, 2) << "\" y=\"" << fixed(y - 7, 2)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(p.setting_id)
        << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void render_pareto_projection(const MetricTable& table, ProjectionPlane plane,
                              const std::filesystem::path& path) {
  write_text_file(path, render_projection_svg(build_projection(table, plane)));
}

}  // namespace minsel
