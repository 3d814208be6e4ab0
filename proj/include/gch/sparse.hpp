#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gch/rational.hpp"

namespace gch {

struct Triplet {
  int row;
  int col;
  Rational val;
};

using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column, no zeros
using Column = std::vector<Rational>;

class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int nrows, int ncols);

  // Duplicate coordinates are summed; zeros are dropped.
  static SparseMat from_triplets(int nrows, int ncols, const std::vector<Triplet>& t);
  static SparseMat from_dense(const std::vector<std::vector<Rational>>& rows);
  static SparseMat identity(int n);

  int nrows() const { return nrows_; }
  int ncols() const { return ncols_; }
  const SparseRow& row(int r) const { return rows_[r]; }
  void set_row(int r, SparseRow row);  // row must be sorted with no zeros
  Rational at(int r, int c) const;
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  std::vector<Triplet> entries() const;  // row-major order
  SparseMat transpose() const;
  Column apply(const Column& x) const;
  SparseMat hstack(const SparseMat& o) const;

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b);
  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
  }

 private:
  int nrows_ = 0, ncols_ = 0;
  std::vector<SparseRow> rows_;
};

struct RrefResult {
  SparseMat reduced;
  std::vector<int> pivots;
};

// Gauss-Jordan elimination. For each column in increasing order the pivot is
// the lowest-index remaining row with a nonzero entry there.
RrefResult rref(const SparseMat& m);
int rank(const SparseMat& m);
std::optional<Column> solve_in_column_span(const SparseMat& m, const Column& b);
std::vector<Column> kernel_basis(const SparseMat& m);

// Incremental row reduction. Pivot rows are kept fully reduced with leading
// coefficient 1, so an incoming row is reduced in one pass. Rows are
// processed strictly in insertion order, which makes the result
// deterministic.
class RowReducer {
 public:
  explicit RowReducer(int ncols);
  // Reduces `row` against the stored pivots. Returns the reduced row.
  SparseRow reduce(const SparseRow& row) const;
  // Reduces and stores; returns true when a new pivot was created.
  bool insert(const SparseRow& row);
  int rank() const { return static_cast<int>(pivot_cols_.size()); }
  // Pivot rows as (pivot column, row).
  std::vector<std::pair<int, SparseRow>> pivot_rows() const;

 private:
  int ncols_;
  std::vector<int> pivot_of_col_;  // -1 if none
  std::vector<int> pivot_cols_;
  std::vector<SparseRow> pivots_;
};

std::string to_matrix_market(const SparseMat& m);
SparseMat from_matrix_market(const std::string& text);
std::string to_json_triplets(const SparseMat& m);

}  // namespace gch
