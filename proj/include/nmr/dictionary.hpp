#pragma once

#include <string>
#include <vector>

#include "nmr/matrix.hpp"

namespace nmr {

struct LabeledImage {
  Matrix image;
  std::string label;
};

// The training set as a linear operator: n same-shaped regressor matrices
// A_1..A_n plus the p·q × n design matrix H whose column j is
// vectorize(A_j). Labels are optional and only the classifier consults them.
class Dictionary {
 public:
  Dictionary(std::vector<Matrix> regressors, std::vector<std::string> labels = {});

  std::size_t n() const { return regressors_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t m() const { return rows_ * cols_; }

  const Matrix& regressor(std::size_t j) const { return regressors_[j]; }
  const Matrix& h() const { return h_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<Matrix> regressors_;
  std::vector<std::string> labels_;
  Matrix h_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

Dictionary make_dictionary(const std::vector<LabeledImage>& samples);

// x_1·A_1 + … + x_n·A_n.
Matrix apply_operator(const Dictionary& dict, const std::vector<double>& x);
// Same, accumulated into a caller-provided matrix (resized to p×q, zeroed).
void apply_operator(const Dictionary& dict, const double* x, Matrix& out);

}  // namespace nmr
