#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathscreen {

/// Input matrices/vectors have incompatible shapes.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A column is constant: it carries no signal and cannot be scaled to unit
/// root-mean-square.
class ZeroVarianceColumn : public std::invalid_argument {
 public:
  explicit ZeroVarianceColumn(std::size_t column)
      : std::invalid_argument("column " + std::to_string(column) +
                              " is constant (zero variance)"),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// A group's columns are linearly dependent after centering, so the group
/// block cannot be orthonormalized.
class RankDeficientGroup : public std::invalid_argument {
 public:
  explicit RankDeficientGroup(std::size_t group)
      : std::invalid_argument("group " + std::to_string(group) +
                              " is rank deficient after centering"),
        group_(group) {}
  std::size_t group() const { return group_; }

 private:
  std::size_t group_;
};

/// Invalid grid request (K = 0, ratio outside (0,1), non-decreasing values).
class InvalidPathSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A screening rule was evaluated outside its valid range (0, lambda_max].
class LambdaOutOfRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sequential rule needs strictly decreasing penalties (λ_to < λ_from).
class NonDecreasingLambda : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Elastic-net mixing parameter outside (0, 1].
class InvalidAlpha : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quantity that is a squared length in exact arithmetic came out negative
/// beyond what rounding can explain.
class NegativeRadicand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iteration cap reached before the convergence criterion (oracle solver).
class MaxIterExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed numeric text input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Rows of a delimited file disagree on column count.
class RaggedRows : public std::runtime_error {
 public:
  RaggedRows(std::size_t line, std::size_t expected, std::size_t got)
      : std::runtime_error("line " + std::to_string(line) + ": expected " +
                           std::to_string(expected) + " columns, got " +
                           std::to_string(got)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pathscreen
