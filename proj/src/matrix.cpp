#include "adca/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace adca {

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DimensionError("row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(rows.size()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<std::vector<double>> SquareMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) {
    throw DimensionError("matrix product of " + std::to_string(a.size()) + "x" +
                         std::to_string(a.size()) + " and " + std::to_string(b.size()) + "x" +
                         std::to_string(b.size()));
  }
  const std::size_t n = a.size();
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

SquareMatrix transpose(const SquareMatrix& a) {
  SquareMatrix t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t(j, i) = a(i, j);
  return t;
}

StateVector operator*(const SquareMatrix& a, std::span<const double> x) {
  if (a.size() != x.size()) {
    throw DimensionError("state vector has length " + std::to_string(x.size()) +
                         ", matrix is " + std::to_string(a.size()) + "x" +
                         std::to_string(a.size()));
  }
  StateVector y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

double max_abs_difference(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("matrix sizes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

namespace {

void check_entries(const SquareMatrix& m, bool by_column, double tolerance) {
  if (m.size() == 0) throw ValidationError("matrix must have at least one node");
  const char* line = by_column ? "column " : "row ";
  for (std::size_t i = 0; i < m.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double v = by_column ? m(j, i) : m(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError(std::string(line) + std::to_string(i + 1) +
                                  " has a negative or non-finite entry",
                              static_cast<long>(i));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance) {
      throw ValidationError(std::string(line) + std::to_string(i + 1) + " sums to " +
                                std::to_string(sum) + ", expected 1",
                            static_cast<long>(i));
    }
  }
}

}  // namespace

StochasticMatrix::StochasticMatrix(SquareMatrix entries, double tolerance)
    : entries_(std::move(entries)) {
  check_entries(entries_, false, tolerance);
}

StochasticMatrix StochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                             double tolerance) {
  return StochasticMatrix(SquareMatrix::from_rows(rows), tolerance);
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  return StochasticMatrix(SquareMatrix::identity(n));
}

double StochasticMatrix::delta() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i)
    for (double v : row(i))
      if (v > 0.0) best = std::min(best, v);
  return best;
}

ColumnStochasticMatrix::ColumnStochasticMatrix(SquareMatrix entries, double tolerance)
    : entries_(std::move(entries)) {
  check_entries(entries_, true, tolerance);
}

double max_discrepancy(std::span<const double> x) {
  if (x.empty()) throw DimensionError("maximal discrepancy of an empty vector");
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

double ergodic_coefficient(const StochasticMatrix& a) {
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  double min_overlap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double overlap = 0.0;
      for (std::size_t k = 0; k < n; ++k) overlap += std::min(a(i, k), a(j, k));
      min_overlap = std::min(min_overlap, overlap);
    }
  }
  return std::clamp(1.0 - min_overlap, 0.0, 1.0);
}

bool is_scrambling(const StochasticMatrix& a) {
  return ergodic_coefficient(a) < 1.0 - kRowSumTolerance;
}

bool same_type(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("same_type on matrices of different size");
  const auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (sgn(a(i, j)) != sgn(b(i, j))) return false;
  return true;
}

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  return StochasticMatrix(a.entries() * b.entries(), kProductTolerance);
}

StateVector apply(const StochasticMatrix& a, std::span<const double> x) {
  return a.entries() * x;
}

ProjectionNorms projection_norms(std::span<const double> x) {
  if (x.empty()) throw DimensionError("projection of an empty vector");
  const double n = static_cast<double>(x.size());
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  ProjectionNorms norms;
  for (double v : x) {
    norms.mean_deviation += (v - sum / n) * (v - sum / n);
    norms.inverse_square += (v - sum / (n * n)) * (v - sum / (n * n));
  }
  norms.mean_deviation = std::sqrt(norms.mean_deviation);
  norms.inverse_square = std::sqrt(norms.inverse_square);
  return norms;
}

}  // namespace adca
