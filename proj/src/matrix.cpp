#include "nmr/matrix.hpp"

#include <cmath>
#include <cstring>

#include "nmr/errors.hpp"
#include "nmr/kernels.hpp"

namespace nmr {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c)
      fail(ErrorCode::DimensionMismatch, "from_rows: ragged row lengths");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

void Matrix::fill(double value) {
  std::fill(data_.begin(), data_.end(), value);
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) t(c, r) = (*this)(r, c);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "matrix addition");
  kernels::active().axpy(1.0, other.data(), data(), size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "matrix subtraction");
  kernels::active().axpy(-1.0, other.data(), data(), size());
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  kernels::active().scal(s, data(), size());
  return *this;
}

std::vector<double> vectorize(const Matrix& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

Matrix unvectorize(const std::vector<double>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    fail(ErrorCode::DimensionMismatch,
         "unvectorize: vector length " + std::to_string(v.size()) +
             " does not factor as " + std::to_string(rows) + "x" + std::to_string(cols));
  Matrix m(rows, cols);
  std::memcpy(m.data(), v.data(), v.size() * sizeof(double));
  return m;
}

double frobenius_norm(const Matrix& m) {
  return std::sqrt(kernels::active().sumsq(m.data(), m.size()));
}

double euclidean_norm(const std::vector<double>& v) {
  return std::sqrt(kernels::active().sumsq(v.data(), v.size()));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(pa[i] - pb[i]));
  return worst;
}

bool all_finite(const Matrix& m) {
  const double* p = m.data();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!std::isfinite(p[i])) return false;
  return true;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void require_same_shape(const Matrix& a, const Matrix& b, const std::string& context) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch,
         context + ": shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
             " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " differ");
}

void matvec(const Matrix& m, const double* v, double* out) {
  const auto& k = kernels::active();
  std::memset(out, 0, m.rows() * sizeof(double));
  for (std::size_t c = 0; c < m.cols(); ++c)
    k.axpy(v[c], m.col(c), out, m.rows());
}

void matvec_transposed(const Matrix& m, const double* v, double* out) {
  const auto& k = kernels::active();
  for (std::size_t c = 0; c < m.cols(); ++c)
    out[c] = k.dot(m.col(c), v, m.rows());
}

}  // namespace nmr
