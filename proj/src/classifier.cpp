#include "nmr/classifier.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "nmr/errors.hpp"
#include "nmr/svd.hpp"
#include "nmr/text.hpp"

namespace nmr {
namespace {

void require_labels(const Dictionary& dict) {
  if (!dict.has_labels())
    fail(ErrorCode::InvalidArgument, "classifier: dictionary has no labels");
}

std::set<std::string> distinct_labels(const Dictionary& dict) {
  return std::set<std::string>(dict.labels().begin(), dict.labels().end());
}

}  // namespace

std::vector<double> class_select(const std::vector<double>& x, const std::string& label,
                                 const std::vector<std::string>& labels) {
  if (labels.size() != x.size())
    fail(ErrorCode::DimensionMismatch,
         "class_select: " + std::to_string(labels.size()) + " labels for " +
             std::to_string(x.size()) + " coefficients");
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    fail(ErrorCode::InvalidArgument, "class_select: unknown label '" + label + "'");
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (labels[j] == label) out[j] = x[j];
  return out;
}

double class_reconstruction_error(const Dictionary& dict, const std::vector<double>& x,
                                  const std::string& label) {
  require_labels(dict);
  // A(x) − A(δ(x)) = A(x − δ(x)): apply the operator to the complement support.
  std::vector<double> rest = x;
  const auto selected = class_select(x, label, dict.labels());
  for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= selected[j];
  return nuclear_norm(apply_operator(dict, rest));
}

ClassificationReport classify(const Dictionary& dict, const Matrix& b, const SolverConfig& config) {
  const RidgeMap map = precompute_ridge_map(dict, config.lambda, config.mu);
  return classify(dict, map, b, config);
}

ClassificationReport classify(const Dictionary& dict, const RidgeMap& map, const Matrix& b,
                              const SolverConfig& config) {
  require_labels(dict);
  const auto classes = distinct_labels(dict);
  if (classes.size() < 2)
    fail(ErrorCode::InvalidArgument, "classify: needs at least two distinct classes");

  ClassificationReport report;
  report.solver = solve_nmr(dict, map, b, config);

  for (const auto& label : classes)
    report.class_errors[label] = class_reconstruction_error(dict, report.solver.x, label);

  // std::map iterates labels in canonical (lexicographic) order, so taking
  // the strictly smallest error breaks ties toward the smallest label.
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

BatchResult batch_classify(const Dictionary& dict, const std::vector<LabeledImage>& tests,
                           const SolverConfig& config) {
  const RidgeMap map = precompute_ridge_map(dict, config.lambda, config.mu);
  return batch_classify(dict, map, tests, config);
}

BatchResult batch_classify(const Dictionary& dict, const RidgeMap& map,
                           const std::vector<LabeledImage>& tests, const SolverConfig& config) {
  if (tests.empty()) fail(ErrorCode::InvalidArgument, "batch_classify: empty test set");
  BatchResult out;
  out.reports.reserve(tests.size());
  out.true_labels.reserve(tests.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    try {
      out.reports.push_back(classify(dict, map, tests[i].image, config));
    } catch (const Error& e) {
      fail(e.code(), "test item " + std::to_string(i) + ": " + e.what());
    }
    out.true_labels.push_back(tests[i].label);
    if (out.reports.back().predicted_label == tests[i].label) ++correct;
  }
  out.recognition_rate = static_cast<double>(correct) / static_cast<double>(tests.size());
  return out;
}

void write_report_csv(const std::string& path, const BatchResult& batch) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  out << "test_id,predicted,true,correct,margin,converged\n";
  for (std::size_t i = 0; i < batch.reports.size(); ++i) {
    const auto& r = batch.reports[i];
    out << i << ',' << r.predicted_label << ',' << batch.true_labels[i] << ','
        << (r.predicted_label == batch.true_labels[i] ? 1 : 0) << ',' << format_double(r.margin)
        << ',' << (r.solver.converged ? "true" : "false") << '\n';
  }
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

void write_class_errors_csv(const std::string& path, const BatchResult& batch) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  if (batch.reports.empty()) fail(ErrorCode::InvalidArgument, "no reports to write");
  out << "test_id";
  for (const auto& [label, err] : batch.reports.front().class_errors) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < batch.reports.size(); ++i) {
    out << i;
    for (const auto& [label, err] : batch.reports[i].class_errors) out << ',' << format_double(err);
    out << '\n';
  }
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

}  // namespace nmr
