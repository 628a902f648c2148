#include "etlasso/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "etlasso/errors.hpp"

namespace etlasso {

namespace {

// Splits the file into records of fields. Quoted fields may contain the
// delimiter, newlines, and doubled quotes.
std::vector<std::vector<std::string>> tokenize(const std::string& text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&]() {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&]() {
    end_field();
    // A lone newline (completely empty record) is skipped, e.g. a trailing one.
    if (record.size() > 1 || !record.front().empty()) records.push_back(std::move(record));
    record = {};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (!field.empty() || !record.empty()) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    end_record();
  }
  return records;
}

double parse_cell(const std::string& cell, int row, int col) {
  std::size_t begin = cell.find_first_not_of(" \t");
  std::size_t finish = cell.find_last_not_of(" \t");
  if (begin == std::string::npos) throw ParseError(row, col, "empty cell");
  double value = 0.0;
  const char* first = cell.data() + begin;
  const char* last = cell.data() + finish + 1;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(row, col, "not a number: '" + cell + "'");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

CsvTable read_csv(const std::string& path, char delimiter, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto records = tokenize(buffer.str(), delimiter);
  if (records.empty()) throw ParseError(1, 1, "file has no records");

  CsvTable table;
  std::size_t first_data = 0;
  if (has_header) {
    table.columns = records[0];
    first_data = 1;
    if (records.size() == 1) throw ParseError(2, 1, "file has a header but no data rows");
  } else {
    for (std::size_t j = 0; j < records[0].size(); ++j)
      table.columns.push_back("x" + std::to_string(j + 1));
  }

  const std::size_t width = table.columns.size();
  const std::size_t n_rows = records.size() - first_data;
  table.values.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(width));

  std::vector<int> non_finite_rows;
  for (std::size_t r = 0; r < n_rows; ++r) {
    const auto& record = records[r + first_data];
    const int file_row = static_cast<int>(r + first_data) + 1;
    if (record.size() != width)
      throw ParseError(file_row, static_cast<int>(record.size()),
                       "expected " + std::to_string(width) + " fields, got " +
                           std::to_string(record.size()));
    bool row_finite = true;
    for (std::size_t c = 0; c < width; ++c) {
      const double v = parse_cell(record[c], file_row, static_cast<int>(c) + 1);
      if (!std::isfinite(v)) row_finite = false;
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
    if (!row_finite) non_finite_rows.push_back(file_row);
  }
  if (!non_finite_rows.empty()) {
    std::string rows;
    for (std::size_t i = 0; i < non_finite_rows.size(); ++i)
      rows += (i ? ", " : "") + std::to_string(non_finite_rows[i]);
    throw ParseError(non_finite_rows.front(), 1, "non-finite values in rows: " + rows);
  }
  return table;
}

void write_path_csv(const std::string& path, const std::vector<double>& lambdas,
                    const std::vector<Vector>& coefs, const Vector& entry_values) {
  if (lambdas.size() != coefs.size())
    throw DimensionMismatch("one coefficient vector per grid point required");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");

  const Eigen::Index p = entry_values.size();
  out << "lambda";
  for (Eigen::Index j = 0; j < p; ++j) out << ",beta_" << (j + 1);
  out << "\n";
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    if (coefs[t].size() != p) throw DimensionMismatch("coefficient vector length mismatch");
    out << format_double(lambdas[t]);
    for (Eigen::Index j = 0; j < p; ++j) out << "," << format_double(coefs[t][j]);
    out << "\n";
  }
  out << "Z";
  for (Eigen::Index j = 0; j < p; ++j) out << "," << format_double(entry_values[j]);
  out << "\n";
}

}  // namespace etlasso
