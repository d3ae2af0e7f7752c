#pragma once

#include "nmr/classifier.hpp"
#include "nmr/dictionary.hpp"
#include "nmr/matrix.hpp"
#include "nmr/solver.hpp"

namespace nmr {

// Ridge baseline: x is the closed-form ridge solution min ‖Hx − vec(B)‖² + λ‖x‖²,
// and class errors swap the nuclear norm for the Euclidean (Frobenius) one:
// e_label = ‖A(x) − A(δ_label(x))‖_F. The report's solver field carries x, the
// residual image B − A(x), and the ridge objective; iterations is 0 (closed form).
ClassificationReport ridge_baseline_classify(const Dictionary& dict, const Matrix& b,
                                             double lambda);
// Reuses a prebuilt map; map.lambda_over_mu must equal lambda.
ClassificationReport ridge_baseline_classify(const Dictionary& dict, const RidgeMap& map,
                                             const Matrix& b, double lambda);

BatchResult ridge_baseline_batch(const Dictionary& dict, const std::vector<LabeledImage>& tests,
                                 double lambda);
BatchResult ridge_baseline_batch(const Dictionary& dict, const RidgeMap& map,
                                 const std::vector<LabeledImage>& tests, double lambda);

}  // namespace nmr
