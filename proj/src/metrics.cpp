#include "minsel/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace minsel {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_metric(const std::string& text, const std::string& column, int line_no) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size())
    throw Error("metrics CSV line " + std::to_string(line_no) + ": bad " + column + " value '" +
                text + "'");
  return value;
}

void check_range(double value, double lo, double hi, const std::string& column, int line_no) {
  if (!(value >= lo && value <= hi))
    throw Error("metrics CSV line " + std::to_string(line_no) + ": " + column +
                " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

MetricTable::MetricTable(std::vector<MetricRecord> records) : records_(std::move(records)) {
  if (records_.empty()) throw Error("metric table requires at least one record");
  std::set<std::string> seen;
  for (const MetricRecord& r : records_) {
    if (r.setting_id.empty()) throw Error("metric record with empty setting id");
    if (!seen.insert(r.setting_id).second)
      throw Error("duplicate setting id '" + r.setting_id + "'");
    if (!(r.auc >= 0.0 && r.auc <= 100.0))
      throw Error("auc out of range [0, 100] for '" + r.setting_id + "'");
    if (!(r.f1 >= 0.0 && r.f1 <= 1.0))
      throw Error("f1 out of range [0, 1] for '" + r.setting_id + "'");
    if (!(r.cmap >= 0.0 && r.cmap <= 100.0))
      throw Error("cmap out of range [0, 100] for '" + r.setting_id + "'");
  }
}

MetricTable MetricTable::from_csv_text(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;

  std::vector<MetricRecord> records;
  bool saw_header = false;
  while (std::getline(stream, line)) {
    ++line_no;
    // Tolerate a UTF-8 byte order mark on the first line.
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    if (!saw_header) {
      if (stripped != "setting,auc,cmap,f1")
        throw Error("metrics CSV must start with header 'setting,auc,cmap,f1', got '" +
                    stripped + "'");
      saw_header = true;
      continue;
    }

    const std::vector<std::string> fields = split_fields(stripped);
    if (fields.size() != 4)
      throw Error("metrics CSV line " + std::to_string(line_no) + ": expected 4 fields, got " +
                  std::to_string(fields.size()));

    MetricRecord record;
    record.setting_id = fields[0];
    if (record.setting_id.empty())
      throw Error("metrics CSV line " + std::to_string(line_no) + ": empty setting id");
    record.auc = parse_metric(fields[1], "auc", line_no);
    record.cmap = parse_metric(fields[2], "cmap", line_no);
    record.f1 = parse_metric(fields[3], "f1", line_no);
    check_range(record.auc, 0.0, 100.0, "auc", line_no);
    check_range(record.cmap, 0.0, 100.0, "cmap", line_no);
    check_range(record.f1, 0.0, 1.0, "f1", line_no);
    records.push_back(std::move(record));
  }
  if (!saw_header) throw Error("metrics CSV is empty");
  return MetricTable(std::move(records));
}

MetricTable MetricTable::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open metrics CSV: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_csv_text(buffer.str());
}

}  // namespace minsel
