#include "oudesign/emit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oudesign::emit {

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void Metadata::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

void Metadata::add(std::string key, double value) {
  entries_.emplace_back(std::move(key), fmt15(value));
}

void Metadata::add(std::string key, long long value) {
  entries_.emplace_back(std::move(key), std::to_string(value));
}

std::string csv_document(const Metadata& meta,
                         const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (const auto& [k, v] : meta.entries()) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt15(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp =
      dir / ("." + path.filename().string() + ".tmp." +
             std::to_string(static_cast<long long>(::getpid())));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("atomic_write: short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("atomic_write: rename failed: " + ec.message());
  }
}

}  // namespace oudesign::emit
