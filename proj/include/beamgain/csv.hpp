#pragma once

#include <string>
#include <vector>

namespace beamgain {

/// Numeric CSV with a mandatory header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses numeric CSV text. The header must equal `expected_header` exactly
/// (after trimming whitespace); blank lines are skipped.
CsvTable parse_csv(const std::string& text, const std::vector<std::string>& expected_header);

std::string read_text_file(const std::string& path);

/// Writes `contents` to `path` through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace beamgain
