#pragma once

#include <stdexcept>
#include <string>

namespace etlasso {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input shapes disagree (e.g. length of y vs rows of X).
struct DimensionMismatch : Error {
  using Error::Error;
};

// A precondition on values was violated (non-finite input, too few rows, ...).
struct InvalidInput : Error {
  using Error::Error;
};

// A column is constant and cannot be scaled to unit norm.
struct ZeroVarianceColumn : Error {
  int column;
  explicit ZeroVarianceColumn(int j)
      : Error("column " + std::to_string(j) + " has zero variance"), column(j) {}
};

// Penalty grid parameters out of range (count < 2, ratio outside (0,1), ...).
struct InvalidGridSpec : Error {
  using Error::Error;
};

// A row permutation is not a bijection on {0,...,n-1}.
struct InvalidPermutation : Error {
  using Error::Error;
};

// A design with zero columns where at least one is required.
struct EmptyDesign : Error {
  using Error::Error;
};

// Least-squares refit (or an inverse Gram) on a rank-deficient column set.
struct RankDeficient : Error {
  using Error::Error;
};

struct InvalidFoldCount : Error {
  using Error::Error;
};

// Correlation parameter outside the valid range for the covariance family.
struct InvalidRho : Error {
  using Error::Error;
};

// Malformed cell in a delimited text file; row and column are 1-based.
// Row 0 means the error has no cell location (e.g. the file cannot be read).
struct ParseError : Error {
  int row;
  int col;
  ParseError(int r, int c, const std::string& what)
      : Error(r > 0 ? "row " + std::to_string(r) + ", column " + std::to_string(c) + ": " + what
                    : what),
        row(r),
        col(c) {}
};

// Inconsistent or unusable run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace etlasso
