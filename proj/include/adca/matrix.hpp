#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adca {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kProductTolerance = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix violates its stochasticity invariants. `row()` is the
/// zero-based offending row (or column, for column-stochastic matrices), or
/// -1 when the failure is not tied to a single line.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, long row = -1)
      : std::invalid_argument(what), row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

using StateVector = std::vector<double>;

/// Dense N x N matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n);
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * n_, n_}; }

  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix transpose(const SquareMatrix& a);
StateVector operator*(const SquareMatrix& a, std::span<const double> x);

/// Largest absolute entrywise difference.
double max_abs_difference(const SquareMatrix& a, const SquareMatrix& b);

/// Row-stochastic matrix: nonnegative entries, unit row sums.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(SquareMatrix entries, double tolerance = kRowSumTolerance);
  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                    double tolerance = kRowSumTolerance);
  static StochasticMatrix identity(std::size_t n);

  std::size_t size() const { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  std::span<const double> row(std::size_t i) const { return entries_.row(i); }
  const SquareMatrix& entries() const { return entries_; }

  /// Minimal strictly positive entry.
  double delta() const;

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

 private:
  SquareMatrix entries_;
};

/// Column-stochastic matrix; entry (i, j) is the probability of moving from
/// state j to state i.
class ColumnStochasticMatrix {
 public:
  explicit ColumnStochasticMatrix(SquareMatrix entries, double tolerance = kRowSumTolerance);

  std::size_t size() const { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const SquareMatrix& entries() const { return entries_; }

 private:
  SquareMatrix entries_;
};

/// Delta(x) = max_i x_i - min_i x_i.
double max_discrepancy(std::span<const double> x);

/// lambda(A) = 1 - min_{i != j} sum_k min(a_ik, a_jk). Zero when N = 1.
double ergodic_coefficient(const StochasticMatrix& a);

/// True iff every pair of rows shares a strictly positive column.
bool is_scrambling(const StochasticMatrix& a);

/// sgn(a_ij) == sgn(b_ij) for every entry.
bool same_type(const SquareMatrix& a, const SquareMatrix& b);
inline bool same_type(const StochasticMatrix& a, const StochasticMatrix& b) {
  return same_type(a.entries(), b.entries());
}

/// Ordinary product a * b. In products of iteration matrices the later time
/// stands on the left.
StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b);

StateVector apply(const StochasticMatrix& a, std::span<const double> x);

/// Diagnostic only: Euclidean norm of x under the mean-deviation projection
/// I - (1/N) 11^T and under I - (1/N^2) 11^T. Consensus decisions use
/// max_discrepancy instead.
struct ProjectionNorms {
  double mean_deviation = 0.0;
  double inverse_square = 0.0;
};
ProjectionNorms projection_norms(std::span<const double> x);

}  // namespace adca
