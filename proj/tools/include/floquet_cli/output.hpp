#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace floquet::cli {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);

/// Comma-separated table with a header row; every number is written with
/// format_double so reruns produce identical bytes.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace floquet::cli
