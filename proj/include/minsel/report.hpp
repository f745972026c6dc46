#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "minsel/select.hpp"

namespace minsel {

// 2D plane a metric table is projected onto: utility (auc) against one
// privacy metric.
enum class ProjectionPlane { AucCmap, AucF1 };

struct ProjectionPoint {
  std::string setting_id;
  double x = 0.0;  // auc
  double y = 0.0;  // privacy metric of the plane
  bool pareto3d = false;  // non-dominated in the full triplet space
  bool pareto2d = false;  // non-dominated within this plane
};

struct ProjectionPlot {
  ProjectionPlane plane = ProjectionPlane::AucCmap;
  int width = 800;
  int height = 600;
  std::vector<ProjectionPoint> points;  // table order, one per setting
};

ProjectionPlot build_projection(const MetricTable& table, ProjectionPlane plane);

// Self-contained SVG document for a projection plot. auc grows to the
// right; the privacy axis is inverted so the preferred region is the
// upper right. Triangles mark 3D-Pareto settings, circles everything
// else; the in-plane frontier is traced with a polyline. Byte-stable for
// identical input.
std::string render_projection_svg(const ProjectionPlot& plot);

void render_pareto_projection(const MetricTable& table, ProjectionPlane plane,
                              const std::filesystem::path& path);

// CSV with one row per setting, sorted by ascending combined rank then
// id; reals carry 6 decimals. Byte-stable for identical input.
void write_selection_report(const SelectionReport& report, const std::filesystem::path& path);

// N x N 0/1 matrix in table order; cell (i,j) is 1 iff record i dominates
// record j. Column sums of zero identify the Pareto members.
void write_dominance_matrix(const MetricTable& table, const std::filesystem::path& path);

}  // namespace minsel
