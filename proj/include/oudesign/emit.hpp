#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oudesign::emit {

// 15 significant digits, '.' decimal, no locale dependence.  Both the CSV
// and JSON emitters route every number through this.
std::string fmt15(double v);

// '#'-prefixed key: value lines placed before the CSV header.
class Metadata {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, long long value);
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Full CSV document: metadata block, header row, data rows.
std::string csv_document(const Metadata& meta,
                         const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows);

// Writes to a temporary file in the target directory and renames into
// place, so a consumer never observes partial output.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace oudesign::emit
