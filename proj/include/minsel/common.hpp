#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace minsel {

// Runtime failure while loading, validating, or transforming data.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Diagnostic events that do not abort processing, one string per event
// (missing mask file, truncated downsample block, dropped clip tail).
using WarningList = std::vector<std::string>;

// Appends to `sink` when given, otherwise prints one line to stderr.
void warn(WarningList* sink, std::string message);

}  // namespace minsel
