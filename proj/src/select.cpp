#include "minsel/select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minsel/threading.hpp"

namespace minsel {

void SelectionWeights::validate() const {
  if (w_a < 0.0 || w_f < 0.0 || w_c < 0.0) throw Error("selection weights must be non-negative");
  if (std::abs(w_a + w_f + w_c - 1.0) > 1e-9)
    throw Error("selection weights must sum to 1");
}

void PrivacyThresholds::validate() const {
  if (!(tau_f >= 0.0) || !(tau_c >= 0.0))
    throw Error("privacy thresholds must be non-negative");
}

NormScope parse_scope(const std::string& name) {
  if (name == "all") return NormScope::All;
  if (name == "pareto") return NormScope::ParetoOnly;
  throw Error("unknown normalization scope '" + name + "' (expected 'all' or 'pareto')");
}

bool dominates(const MetricRecord& a, const MetricRecord& b) {
  const bool at_least_as_good = a.auc >= b.auc && a.f1 <= b.f1 && a.cmap <= b.cmap;
  const bool strictly_better = a.auc > b.auc || a.f1 < b.f1 || a.cmap < b.cmap;
  return at_least_as_good && strictly_better;
}

std::vector<bool> pareto_flags(const MetricTable& table) {
  const int n = table.size();
  std::vector<unsigned char> dominated(static_cast<std::size_t>(n), 0);
  const int threads = worker_threads();

#pragma omp parallel for num_threads(threads) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && dominates(table.record(j), table.record(i))) {
        dominated[static_cast<std::size_t>(i)] = 1;
        break;
      }
    }
  }

  std::vector<bool> flags(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) flags[static_cast<std::size_t>(i)] = !dominated[static_cast<std::size_t>(i)];
  return flags;
}

std::set<std::string> pareto_set(const MetricTable& table) {
  const std::vector<bool> flags = pareto_flags(table);
  std::set<std::string> ids;
  for (int i = 0; i < table.size(); ++i)
    if (flags[static_cast<std::size_t>(i)]) ids.insert(table.record(i).setting_id);
  return ids;
}

namespace {

struct Extremes {
  double min_a, max_a, min_f, max_f, min_c, max_c;
};

Extremes scope_extremes(const MetricTable& table, const std::vector<bool>& in_scope) {
  Extremes e{};
  bool first = true;
  for (int i = 0; i < table.size(); ++i) {
    if (!in_scope[static_cast<std::size_t>(i)]) continue;
    const MetricRecord& r = table.record(i);
    if (first) {
      e = {r.auc, r.auc, r.f1, r.f1, r.cmap, r.cmap};
      first = false;
    } else {
      e.min_a = std::min(e.min_a, r.auc);
      e.max_a = std::max(e.max_a, r.auc);
      e.min_f = std::min(e.min_f, r.f1);
      e.max_f = std::max(e.max_f, r.f1);
      e.min_c = std::min(e.min_c, r.cmap);
      e.max_c = std::max(e.max_c, r.cmap);
    }
  }
  return e;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Degenerate coordinate (max == min) normalizes to 1 so it contributes
// no ideal-point distance and cannot distort rankings.
double norm_higher_better(double v, double lo, double hi) {
  return hi == lo ? 1.0 : clamp01((v - lo) / (hi - lo));
}

double norm_lower_better(double v, double lo, double hi) {
  return hi == lo ? 1.0 : clamp01((hi - v) / (hi - lo));
}

std::vector<std::size_t> pareto_member_indices(const MetricTable& table,
                                               const std::vector<NormalizedRecord>& normalized) {
  const std::vector<bool> flags = pareto_flags(table);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < normalized.size(); ++i)
    if (flags[i]) members.push_back(i);
  return members;
}

}  // namespace

std::vector<NormalizedRecord> normalize(const MetricTable& table, NormScope scope) {
  std::vector<bool> in_scope(static_cast<std::size_t>(table.size()), true);
  if (scope == NormScope::ParetoOnly) in_scope = pareto_flags(table);
  const Extremes e = scope_extremes(table, in_scope);

  std::vector<NormalizedRecord> out;
  out.reserve(static_cast<std::size_t>(table.size()));
  for (const MetricRecord& r : table.records())
    out.push_back({r.setting_id, norm_higher_better(r.auc, e.min_a, e.max_a),
                   norm_lower_better(r.f1, e.min_f, e.max_f),
                   norm_lower_better(r.cmap, e.min_c, e.max_c)});
  return out;
}

double distance_to_ideal(const NormalizedRecord& record) {
  const double da = 1.0 - record.a_norm;
  const double df = 1.0 - record.f_norm;
  const double dc = 1.0 - record.c_norm;
  return std::sqrt(da * da + df * df + dc * dc);
}

double weighted_score(const NormalizedRecord& record, const SelectionWeights& weights) {
  weights.validate();
  return weights.w_a * record.a_norm + weights.w_f * record.f_norm + weights.w_c * record.c_norm;
}

std::string select_by_distance(const MetricTable& table, NormScope scope) {
  const std::vector<NormalizedRecord> normalized = normalize(table, scope);
  const std::vector<std::size_t> members = pareto_member_indices(table, normalized);

  std::size_t best = members.front();
  double best_distance = distance_to_ideal(normalized[best]);
  for (std::size_t i : members) {
    const double d = distance_to_ideal(normalized[i]);
    if (d < best_distance ||
        (d == best_distance && normalized[i].setting_id < normalized[best].setting_id)) {
      best = i;
      best_distance = d;
    }
  }
  return normalized[best].setting_id;
}

std::string select_by_weight(const MetricTable& table, const SelectionWeights& weights,
                             NormScope scope) {
  weights.validate();
  const std::vector<NormalizedRecord> normalized = normalize(table, scope);
  const std::vector<std::size_t> members = pareto_member_indices(table, normalized);

  std::size_t best = members.front();
  double best_score = weighted_score(normalized[best], weights);
  for (std::size_t i : members) {
    const double s = weighted_score(normalized[i], weights);
    if (s > best_score ||
        (s == best_score && normalized[i].setting_id < normalized[best].setting_id)) {
      best = i;
      best_score = s;
    }
  }
  return normalized[best].setting_id;
}

std::optional<std::string> select_by_constraint(const MetricTable& table,
                                                const PrivacyThresholds& thresholds) {
  thresholds.validate();
  const MetricRecord* best = nullptr;
  for (const MetricRecord& r : table.records()) {
    if (r.f1 > thresholds.tau_f || r.cmap > thresholds.tau_c) continue;
    if (!best || r.auc > best->auc || (r.auc == best->auc && r.setting_id < best->setting_id))
      best = &r;
  }
  if (!best) return std::nullopt;
  return best->setting_id;
}

std::vector<double> fractional_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double average = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = average;
    i = j + 1;
  }
  return ranks;
}

std::map<std::string, double> combined_rank(const MetricTable& table,
                                            const SelectionWeights& weights, NormScope scope) {
  weights.validate();
  const std::vector<NormalizedRecord> normalized = normalize(table, scope);

  std::vector<double> distances, negated_scores;
  distances.reserve(normalized.size());
  negated_scores.reserve(normalized.size());
  for (const NormalizedRecord& r : normalized) {
    distances.push_back(distance_to_ideal(r));
    negated_scores.push_back(-weighted_score(r, weights));  // descending score rank
  }
  const std::vector<double> rank_d = fractional_ranks(distances);
  const std::vector<double> rank_w = fractional_ranks(negated_scores);

  std::map<std::string, double> out;
  for (std::size_t i = 0; i < normalized.size(); ++i)
    out[normalized[i].setting_id] = (rank_d[i] + rank_w[i]) / 2.0;
  return out;
}

SelectionReport build_selection_report(const MetricTable& table, const SelectionWeights& weights,
                                       const PrivacyThresholds& thresholds, NormScope scope) {
  weights.validate();
  thresholds.validate();

  const std::vector<NormalizedRecord> normalized = normalize(table, scope);
  const std::vector<bool> flags = pareto_flags(table);

  std::vector<double> distances, negated_scores;
  for (const NormalizedRecord& r : normalized) {
    distances.push_back(distance_to_ideal(r));
    negated_scores.push_back(-weighted_score(r, weights));
  }
  const std::vector<double> rank_d = fractional_ranks(distances);
  const std::vector<double> rank_w = fractional_ranks(negated_scores);

  SelectionReport report;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    SelectionRow row;
    row.setting_id = normalized[i].setting_id;
    row.a_norm = normalized[i].a_norm;
    row.f_norm = normalized[i].f_norm;
    row.c_norm = normalized[i].c_norm;
    row.pareto = flags[i];
    row.distance = distances[i];
    row.weighted = -negated_scores[i];
    row.rank_d = rank_d[i];
    row.rank_w = rank_w[i];
    row.rank_combined = (rank_d[i] + rank_w[i]) / 2.0;
    report.rows.push_back(std::move(row));
  }
  report.by_distance = select_by_distance(table, scope);
  report.by_weight = select_by_weight(table, weights, scope);
  report.by_constraint = select_by_constraint(table, thresholds);
  return report;
}

}  // namespace minsel
