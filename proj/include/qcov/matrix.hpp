#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qcov/field.hpp"

namespace qcov {

using Vec = std::vector<fp_t>;

// Dense row-major matrix over F_p. 0xN and Nx0 matrices are valid and act as
// the unique linear maps to/from the zero space.
class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(std::size_t rows, std::size_t cols, std::vector<Vec> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  fp_t& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  fp_t operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_); }
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const;

private:
  std::size_t rows_, cols_;
  std::vector<fp_t> e_;
};

Mat mat_add(const PrimeField& F, const Mat& a, const Mat& b);
Mat mat_sub(const PrimeField& F, const Mat& a, const Mat& b);
Mat mat_scale(const PrimeField& F, fp_t c, const Mat& a);
Mat mat_mul(const PrimeField& F, const Mat& a, const Mat& b);
Vec mat_vec(const PrimeField& F, const Mat& a, const Vec& x);
Mat transpose(const Mat& a);

Vec vec_add(const PrimeField& F, const Vec& a, const Vec& b);
Vec vec_sub(const PrimeField& F, const Vec& a, const Vec& b);
Vec vec_scale(const PrimeField& F, fp_t c, const Vec& a);
// a += c * b
void vec_axpy(const PrimeField& F, Vec& a, fp_t c, const Vec& b);
bool vec_is_zero(const Vec& a);

// Reduced row echelon form, computed by Gaussian elimination with
// first-nonzero pivoting. Deterministic: identical inputs give identical
// output bit for bit.
struct Echelon {
  Mat rref;
  std::vector<std::size_t> pivots;  // pivot column per row, strictly increasing
  std::size_t rank() const { return pivots.size(); }
};

Echelon row_echelon(const PrimeField& F, Mat a);

std::size_t rank(const PrimeField& F, const Mat& a);

// Columns form a basis of {x : Ax = 0}.
Mat kernel_basis(const PrimeField& F, const Mat& a);

// Inverse of a square matrix, or nullopt if singular. Throws on non-square.
std::optional<Mat> inverse(const PrimeField& F, const Mat& a);

struct LinSolve {
  bool consistent = false;
  Vec particular;  // one solution of Ax = b when consistent
  Mat kernel;      // columns span the homogeneous solutions
};

// Completes a matrix with independent columns to an invertible [U | C];
// returns the completed matrix and its inverse. Throws on dependent columns.
std::pair<Mat, Mat> complete_basis(const PrimeField& F, const Mat& u);

// Solves Ax = b. Dimension mismatch throws; inconsistency is reported in the
// result, not thrown.
LinSolve solve_linear(const PrimeField& F, const Mat& a, const Vec& b);

// Incremental row-space container used for fixpoint closures: keeps a row
// echelon basis and reports whether an inserted vector enlarged the span.
class RowSpace {
public:
  explicit RowSpace(const PrimeField& F, std::size_t width) : F_(&F), width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Reduces v against the basis; returns true if the span grew.
  bool insert(Vec v);
  bool contains(Vec v) const;
  // Fully reduced residue of v modulo the row space.
  Vec residue(Vec v) const;

private:
  const PrimeField* F_;
  std::size_t width_;
  std::vector<Vec> rows_;            // kept in reduced echelon form
  std::vector<std::size_t> pivots_;  // sorted pivot columns, rows_[k] pivots at pivots_[k]
};

}  // namespace qcov
