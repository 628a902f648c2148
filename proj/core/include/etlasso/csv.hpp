#pragma once

#include <string>
#include <vector>

#include "etlasso/types.hpp"

namespace etlasso {

// A rectangular numeric table read from a delimited file.
struct CsvTable {
  std::vector<std::string> columns;
  Matrix values;
};

// Reads a delimited numeric file. Quoted fields may contain the delimiter,
// doubled quotes, and newlines. Every data cell must parse as a finite
// number; rows containing non-finite values are rejected with their row
// numbers. Without a header, columns are named x1..xp. Row/column numbers in
// errors are 1-based and count the header row.
CsvTable read_csv(const std::string& path, char delimiter = ',', bool has_header = true);

// Writes a coefficient path: header "lambda,beta_1,...,beta_p", one row per
// grid point, and a trailing row "Z,<entry values>". Values use shortest
// round-trip formatting so the file reproduces the doubles exactly.
void write_path_csv(const std::string& path, const std::vector<double>& lambdas,
                    const std::vector<Vector>& coefs, const Vector& entry_values);

}  // namespace etlasso
