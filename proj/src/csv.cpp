#include "spcart/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spcart/errors.hpp"

namespace spcart {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

}  // namespace

CsvMatrix parse_matrix_csv(std::string_view text, CsvHeader header) {
  CsvMatrix out;
  std::vector<std::vector<double>> rows;
  bool first_content = true;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      out.comments.emplace_back(trim(line.substr(1)));
      continue;
    }
    const auto fields = split_fields(line);
    if (first_content) {
      first_content = false;
      double probe = 0.0;
      const bool numeric = parse_double(fields.front(), probe);
      if (header == CsvHeader::Present || (header == CsvHeader::Auto && !numeric)) {
        for (auto f : fields) out.header.emplace_back(f);
        continue;
      }
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (size_t k = 0; k < fields.size(); ++k) {
      double v = 0.0;
      if (!parse_double(fields[k], v))
        throw InputError("csv line " + std::to_string(line_no) + ", field " +
                         std::to_string(k + 1) + ": not a number: '" + std::string(fields[k]) + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InputError("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("csv contains no data rows");
  if (!out.header.empty() && out.header.size() != rows.front().size())
    throw InputError("csv header has " + std::to_string(out.header.size()) + " names for " +
                     std::to_string(rows.front().size()) + " columns");
  out.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return out;
}

CsvMatrix read_matrix_csv(const std::filesystem::path& path, CsvHeader header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_csv(buf.str(), header);
}

std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& header,
                              const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  if (!header.empty()) out += '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, m(i, j), std::chars_format::general, 17);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::string>& comments) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw InputError("cannot write '" + path.string() + "'");
  outf << format_matrix_csv(m, header, comments);
  if (!outf) throw InputError("write failed for '" + path.string() + "'");
}

}  // namespace spcart
