#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "minsel/common.hpp"

namespace minsel {

// One experimental setting's measurement triplet: detection utility
// (auc, percent) plus the two privacy-leakage scores (f1 fraction,
// cmap percent). Higher auc is better; lower f1/cmap is better.
struct MetricRecord {
  std::string setting_id;
  double auc = 0.0;   // [0, 100]
  double f1 = 0.0;    // [0, 1]
  double cmap = 0.0;  // [0, 100]
};

class MetricTable {
 public:
  explicit MetricTable(std::vector<MetricRecord> records);

  int size() const { return static_cast<int>(records_.size()); }
  const MetricRecord& record(int i) const { return records_[static_cast<std::size_t>(i)]; }
  const std::vector<MetricRecord>& records() const { return records_; }

  // CSV with header `setting,auc,cmap,f1`; duplicate ids are rejected.
  static MetricTable from_csv(const std::filesystem::path& path);
  static MetricTable from_csv_text(const std::string& text);

 private:
  std::vector<MetricRecord> records_;
};

}  // namespace minsel
