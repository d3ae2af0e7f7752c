#pragma once

#include <map>
#include <string>
#include <vector>

#include "nmr/dictionary.hpp"
#include "nmr/solver.hpp"

namespace nmr {

struct ClassificationReport {
  std::string predicted_label;
  std::map<std::string, double> class_errors;  // one entry per distinct label
  double margin = 0.0;                         // second-smallest error − smallest
  SolverResult solver;
};

// δ_label(x): copy of x with entries zeroed wherever labels[j] ≠ label.
std::vector<double> class_select(const std::vector<double>& x, const std::string& label,
                                 const std::vector<std::string>& labels);

// ‖A(x) − A(δ_label(x))‖_*: the gap between the full reconstruction and the
// class-only reconstruction.
double class_reconstruction_error(const Dictionary& dict, const std::vector<double>& x,
                                  const std::string& label);

// One pooled solve, then per-class reconstruction errors; the predicted label
// is the argmin, ties broken toward the lexicographically smallest label.
// A non-converged solve still produces a report (solver.converged = false).
ClassificationReport classify(const Dictionary& dict, const Matrix& b, const SolverConfig& config);
ClassificationReport classify(const Dictionary& dict, const RidgeMap& map, const Matrix& b,
                              const SolverConfig& config);

struct BatchResult {
  std::vector<ClassificationReport> reports;  // one per test item, in input order
  std::vector<std::string> true_labels;
  double recognition_rate = 0.0;  // fraction of items with predicted == true label
};

BatchResult batch_classify(const Dictionary& dict, const std::vector<LabeledImage>& tests,
                           const SolverConfig& config);
BatchResult batch_classify(const Dictionary& dict, const RidgeMap& map,
                           const std::vector<LabeledImage>& tests, const SolverConfig& config);

// Row per item: test_id,predicted,true,correct,margin,converged
void write_report_csv(const std::string& path, const BatchResult& batch);
// Wide table: test_id plus one error column per class label.
void write_class_errors_csv(const std::string& path, const BatchResult& batch);

}  // namespace nmr
