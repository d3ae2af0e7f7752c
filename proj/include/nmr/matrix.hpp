#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace nmr {

// Dense column-major matrix of doubles. Column-major keeps the columns of the
// regression system contiguous, which is what the inner kernels want.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, double fill);

  static Matrix identity(std::size_t n);
  // Row-major convenience constructor for literals in tests and small fixtures.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* col(std::size_t c) { return data_.data() + c * rows_; }
  const double* col(std::size_t c) const { return data_.data() + c * rows_; }

  void fill(double value);
  Matrix transposed() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Column-stacking: vec(M) reads the matrix column by column, which for the
// storage order above is just a copy of the raw buffer.
std::vector<double> vectorize(const Matrix& m);
Matrix unvectorize(const std::vector<double>& v, std::size_t rows, std::size_t cols);

double frobenius_norm(const Matrix& m);
double euclidean_norm(const std::vector<double>& v);

// Largest absolute entry difference; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);
bool all_finite(const std::vector<double>& v);

// Throws Error{DimensionMismatch} unless the shapes agree.
void require_same_shape(const Matrix& a, const Matrix& b, const std::string& context);

// out = M * v for a column-major matrix (length rows), and the transposed
// product Mᵀ * v (length cols). Both are thin wrappers over the kernel table.
void matvec(const Matrix& m, const double* v, double* out);
void matvec_transposed(const Matrix& m, const double* v, double* out);

}  // namespace nmr
