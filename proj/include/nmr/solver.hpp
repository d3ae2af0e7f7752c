#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nmr/dictionary.hpp"
#include "nmr/matrix.hpp"

namespace nmr {

enum class YInit { NegativeB, Zero };
enum class ZInit { Zero };

struct SolverConfig {
  double lambda = 1.0;   // ridge weight on ‖x‖²
  double mu = 1.0;       // augmented-Lagrangian penalty, fixed across iterations
  double eps_abs = 1e-6;
  double eps_rel = 1e-4;
  std::size_t max_iters = 500;
  YInit y_init = YInit::NegativeB;
  ZInit z_init = ZInit::Zero;
};

// Cached x-update map M = (HᵀH + (λ/μ)I)⁻¹Hᵀ. Stored transposed (p·q × n)
// so each output coefficient is a single contiguous dot product; built once
// per (dictionary, λ/μ) and shared across iterations and test images.
struct RidgeMap {
  Matrix mt;  // Mᵀ
  double lambda_over_mu = 0.0;

  std::size_t n() const { return mt.cols(); }
  std::size_t m() const { return mt.rows(); }

  // x = M·g for a length-m vector g.
  void apply(const double* g, double* x) const;
  std::vector<double> apply(const std::vector<double>& g) const;
};

RidgeMap precompute_ridge_map(const Dictionary& dict, double lambda, double mu);

// One ADMM step each: the ridge solve, the shrinkage, the multiplier ascent.
std::vector<double> update_x(const RidgeMap& map, const Matrix& b, const Matrix& y,
                             const Matrix& z, double mu);
Matrix update_y(const Dictionary& dict, const std::vector<double>& x, const Matrix& b,
                const Matrix& z, double mu);
Matrix update_z(const Matrix& z, const Dictionary& dict, const std::vector<double>& x,
                const Matrix& y, const Matrix& b, double mu);

struct TerminationCheck {
  bool should_stop = false;
  double primal_norm = 0.0;
  double dual_norm = 0.0;
  double eps_pri = 0.0;
  double eps_dual = 0.0;
};

TerminationCheck check_termination(const Dictionary& dict, const std::vector<double>& x,
                                   const Matrix& y, const Matrix& y_prev, const Matrix& z,
                                   const Matrix& b, const SolverConfig& config);

// ‖A(x) − B‖_* + (λ/2)‖x‖².
double objective(const Dictionary& dict, const std::vector<double>& x, const Matrix& b,
                 double lambda);

struct TraceRow {
  std::size_t iter = 0;
  double primal = 0.0;
  double dual = 0.0;
  double eps_pri = 0.0;
  double eps_dual = 0.0;
  double objective = 0.0;
};

struct SolverResult {
  std::vector<double> x;
  Matrix y;
  Matrix z;
  Matrix residual_image;  // E = B − A(x)
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::string diagnostic;  // empty on convergence
  std::vector<TraceRow> trace;
};

SolverResult solve_nmr(const Dictionary& dict, const Matrix& b, const SolverConfig& config);
// Reuses a prebuilt map; map.lambda_over_mu must equal config.lambda/config.mu.
SolverResult solve_nmr(const Dictionary& dict, const RidgeMap& map, const Matrix& b,
                       const SolverConfig& config);

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);
void write_coefficients_csv(const std::string& path, const std::vector<double>& x);

}  // namespace nmr
