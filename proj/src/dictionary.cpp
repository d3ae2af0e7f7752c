#include "nmr/dictionary.hpp"

#include <cstring>

#include "nmr/errors.hpp"
#include "nmr/kernels.hpp"

namespace nmr {

Dictionary::Dictionary(std::vector<Matrix> regressors, std::vector<std::string> labels)
    : regressors_(std::move(regressors)), labels_(std::move(labels)) {
  if (regressors_.empty())
    fail(ErrorCode::InvalidArgument, "dictionary: needs at least one regressor");
  rows_ = regressors_[0].rows();
  cols_ = regressors_[0].cols();
  if (rows_ == 0 || cols_ == 0)
    fail(ErrorCode::InvalidArgument, "dictionary: regressors must be non-empty matrices");
  for (const auto& r : regressors_)
    require_same_shape(regressors_[0], r, "dictionary regressors");
  if (!labels_.empty() && labels_.size() != regressors_.size())
    fail(ErrorCode::InvalidArgument,
         "dictionary: " + std::to_string(labels_.size()) + " labels for " +
             std::to_string(regressors_.size()) + " regressors");

  h_ = Matrix(m(), n());
  for (std::size_t j = 0; j < n(); ++j)
    std::memcpy(h_.col(j), regressors_[j].data(), m() * sizeof(double));
}

Dictionary make_dictionary(const std::vector<LabeledImage>& samples) {
  std::vector<Matrix> images;
  std::vector<std::string> labels;
  images.reserve(samples.size());
  labels.reserve(samples.size());
  for (const auto& s : samples) {
    images.push_back(s.image);
    labels.push_back(s.label);
  }
  return Dictionary(std::move(images), std::move(labels));
}

Matrix apply_operator(const Dictionary& dict, const std::vector<double>& x) {
  if (x.size() != dict.n())
    fail(ErrorCode::DimensionMismatch,
         "apply_operator: " + std::to_string(x.size()) + " coefficients for " +
             std::to_string(dict.n()) + " regressors");
  Matrix out(dict.rows(), dict.cols());
  apply_operator(dict, x.data(), out);
  return out;
}

void apply_operator(const Dictionary& dict, const double* x, Matrix& out) {
  if (out.rows() != dict.rows() || out.cols() != dict.cols())
    out = Matrix(dict.rows(), dict.cols());
  else
    out.fill(0.0);
  const auto& k = kernels::active();
  for (std::size_t j = 0; j < dict.n(); ++j)
    k.axpy(x[j], dict.h().col(j), out.data(), dict.m());
}

}  // namespace nmr
