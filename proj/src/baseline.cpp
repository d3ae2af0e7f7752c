#include "nmr/baseline.hpp"

#include <cmath>
#include <set>
#include <string>

#include "nmr/errors.hpp"
#include "nmr/kernels.hpp"

namespace nmr {
namespace {

double frobenius_reconstruction_error(const Dictionary& dict, const std::vector<double>& x,
                                      const std::string& label) {
  std::vector<double> rest = x;
  const auto selected = class_select(x, label, dict.labels());
  for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= selected[j];
  return frobenius_norm(apply_operator(dict, rest));
}

}  // namespace

ClassificationReport ridge_baseline_classify(const Dictionary& dict, const Matrix& b,
                                             double lambda) {
  const RidgeMap map = precompute_ridge_map(dict, lambda, 1.0);
  return ridge_baseline_classify(dict, map, b, lambda);
}

ClassificationReport ridge_baseline_classify(const Dictionary& dict, const RidgeMap& map,
                                             const Matrix& b, double lambda) {
  if (!dict.has_labels()) fail(ErrorCode::InvalidArgument, "ridge baseline: dictionary has no labels");
  const std::set<std::string> classes(dict.labels().begin(), dict.labels().end());
  if (classes.size() < 2)
    fail(ErrorCode::InvalidArgument, "ridge baseline: needs at least two distinct classes");
  if (b.rows() != dict.rows() || b.cols() != dict.cols())
    fail(ErrorCode::DimensionMismatch, "ridge baseline: image shape does not match dictionary");
  if (std::fabs(map.lambda_over_mu - lambda) > 1e-12 * std::max(1.0, std::fabs(lambda)))
    fail(ErrorCode::InvalidArgument, "ridge baseline: map was built for a different lambda");

  ClassificationReport report;
  report.solver.x = map.apply(vectorize(b));
  report.solver.residual_image = b;
  report.solver.residual_image -= apply_operator(dict, report.solver.x);
  const auto& kern = kernels::active();
  const double fit = frobenius_norm(report.solver.residual_image);
  const double xsq = kern.sumsq(report.solver.x.data(), report.solver.x.size());
  report.solver.objective = 0.5 * fit * fit + 0.5 * lambda * xsq;
  report.solver.converged = true;  // closed form, nothing iterative
  report.solver.iterations = 0;

  for (const auto& label : classes)
    report.class_errors[label] = frobenius_reconstruction_error(dict, report.solver.x, label);

  double best = 0.0, second = 0.0;
  bool have_best = false, have_second = false;
  for (const auto& [label, err] : report.class_errors) {
    if (!have_best || err < best) {
      if (have_best) {
        second = best;
        have_second = true;
      }
      best = err;
      report.predicted_label = label;
      have_best = true;
    } else if (!have_second || err < second) {
      second = err;
      have_second = true;
    }
  }
  report.margin = second - best;
  return report;
}

BatchResult ridge_baseline_batch(const Dictionary& dict, const std::vector<LabeledImage>& tests,
                                 double lambda) {
  const RidgeMap map = precompute_ridge_map(dict, lambda, 1.0);
  return ridge_baseline_batch(dict, map, tests, lambda);
}

BatchResult ridge_baseline_batch(const Dictionary& dict, const RidgeMap& map,
                                 const std::vector<LabeledImage>& tests, double lambda) {
  if (tests.empty()) fail(ErrorCode::InvalidArgument, "ridge baseline: empty test set");
  BatchResult out;
  out.reports.reserve(tests.size());
  out.true_labels.reserve(tests.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    try {
      out.reports.push_back(ridge_baseline_classify(dict, map, tests[i].image, lambda));
    } catch (const Error& e) {
      fail(e.code(), "test item " + std::to_string(i) + ": " + e.what());
    }
    out.true_labels.push_back(tests[i].label);
    if (out.reports.back().predicted_label == tests[i].label) ++correct;
  }
  out.recognition_rate = static_cast<double>(correct) / static_cast<double>(tests.size());
  return out;
}

}  // namespace nmr
