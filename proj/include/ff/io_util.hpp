#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace ff {

/// 17-significant-digit formatting: round-trips doubles and keeps CSV bodies
/// byte-identical across runs.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ",";
      out_ << header[i];
    }
    out_ << "\n";
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ",";
      out_ << fmt17(values[i]);
    }
    out_ << "\n";
  }

  void raw_row(const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ",";
      out_ << values[i];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace ff
