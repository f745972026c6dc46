#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minsel/metrics.hpp"

namespace minsel {

// Whether min-max normalization ranges come from the whole table or only
// from its non-dominated members.
enum class NormScope { All, ParetoOnly };

NormScope parse_scope(const std::string& name);  // "all" | "pareto"

// Per-setting triplet rescaled to [0,1] with 1 best in every coordinate
// (privacy metrics are reversed).
struct NormalizedRecord {
  std::string setting_id;
  double a_norm = 0.0;
  double f_norm = 0.0;
  double c_norm = 0.0;
};

// Convex aggregation weights; must sum to 1 (within 1e-9).
struct SelectionWeights {
  double w_a = 1.0 / 3.0;
  double w_f = 1.0 / 3.0;
  double w_c = 1.0 / 3.0;

  void validate() const;
};

// Feasibility bounds on the raw privacy metrics; infinity disables one.
struct PrivacyThresholds {
  double tau_f = std::numeric_limits<double>::infinity();
  double tau_c = std::numeric_limits<double>::infinity();

  void validate() const;
};

// True iff `a` is at least as good as `b` in all three objectives and
// strictly better in at least one (higher auc, lower f1, lower cmap).
bool dominates(const MetricRecord& a, const MetricRecord& b);

// Per-record non-domination flags, in table order.
std::vector<bool> pareto_flags(const MetricTable& table);

// The non-dominated settings; never empty.
std::set<std::string> pareto_set(const MetricTable& table);

// Min-max normalization over the chosen scope, privacy coordinates
// reversed so 1 is always best. A degenerate coordinate (max == min)
// normalizes to 1 everywhere. Under ParetoOnly scope dominated records
// can fall below the Pareto range and are clamped into [0,1].
std::vector<NormalizedRecord> normalize(const MetricTable& table, NormScope scope);

// Euclidean distance to the ideal point (1,1,1).
double distance_to_ideal(const NormalizedRecord& record);

double weighted_score(const NormalizedRecord& record, const SelectionWeights& weights);

// Non-dominated setting closest to the ideal point; ties break to the
// lexicographically smallest id.
std::string select_by_distance(const MetricTable& table, NormScope scope = NormScope::All);

// Non-dominated setting with the highest weighted score; ties break to
// the lexicographically smallest id.
std::string select_by_weight(const MetricTable& table, const SelectionWeights& weights,
                             NormScope scope = NormScope::All);

// Highest-auc setting among all records satisfying both privacy
// thresholds; nullopt when nothing is feasible.
std::optional<std::string> select_by_constraint(const MetricTable& table,
                                                const PrivacyThresholds& thresholds);

// Fractional ranks (average over ties) of ascending `values`; result[i]
// is in [1, N].
std::vector<double> fractional_ranks(const std::vector<double>& values);

// Mean of each setting's distance rank (ascending) and weighted-score
// rank (descending), over all settings; lower is better.
std::map<std::string, double> combined_rank(const MetricTable& table,
                                            const SelectionWeights& weights,
                                            NormScope scope = NormScope::All);

struct SelectionRow {
  std::string setting_id;
  double a_norm = 0.0;
  double f_norm = 0.0;
  double c_norm = 0.0;
  bool pareto = false;
  double distance = 0.0;
  double weighted = 0.0;
  double rank_d = 0.0;
  double rank_w = 0.0;
  double rank_combined = 0.0;
};

// Everything the selection strategies produce for one table, rows in
// table order.
struct SelectionReport {
  std::vector<SelectionRow> rows;
  std::array<double, 3> ideal_point{1.0, 1.0, 1.0};
  std::string by_distance;
  std::string by_weight;
  std::optional<std::string> by_constraint;  // nullopt = empty feasible set
};

SelectionReport build_selection_report(const MetricTable& table, const SelectionWeights& weights,
                                       const PrivacyThresholds& thresholds,
                                       NormScope scope = NormScope::All);

}  // namespace minsel
