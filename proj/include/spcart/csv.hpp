#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spcart/matrix_input.hpp"

namespace spcart {

/// Dense matrix CSV: comma-separated decimal floats, one row per line,
/// row-major. Lines starting with '#' are comments. An optional single
/// header row (any non-numeric first line) is kept as column names.
enum class CsvHeader { Auto, Present, Absent };

struct CsvMatrix {
  Matrix values;
  std::vector<std::string> header;
  std::vector<std::string> comments;  // without the leading '#'
};

CsvMatrix parse_matrix_csv(std::string_view text, CsvHeader header = CsvHeader::Auto);
CsvMatrix read_matrix_csv(const std::filesystem::path& path, CsvHeader header = CsvHeader::Auto);

/// Writes 17 significant digits so every double round-trips exactly.
std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& header = {},
                              const std::vector<std::string>& comments = {});
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path,
                      const std::vector<std::string>& header = {},
                      const std::vector<std::string>& comments = {});

}  // namespace spcart
