#include "nmr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nmr/errors.hpp"
#include "nmr/kernels.hpp"
#include "nmr/svd.hpp"
#include "nmr/text.hpp"

namespace nmr {
namespace {

void validate_config(const SolverConfig& c) {
  if (!(c.mu > 0.0))
    fail(ErrorCode::InvalidArgument, "solver: mu must be positive, got " + std::to_string(c.mu));
  if (!(c.lambda >= 0.0))
    fail(ErrorCode::InvalidArgument, "solver: lambda must be nonnegative, got " + std::to_string(c.lambda));
  if (!(c.eps_abs > 0.0) || !(c.eps_rel > 0.0))
    fail(ErrorCode::InvalidArgument, "solver: tolerances must be positive");
  if (c.max_iters == 0)
    fail(ErrorCode::InvalidArgument, "solver: max_iters must be at least 1");
}

// Lower-triangular Cholesky factor of the n×n column-major matrix, in place.
// Returns false on a non-positive (numerically singular) pivot.
bool cholesky_in_place(std::vector<double>& a, std::size_t n) {
  double max_diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) max_diag = std::max(max_diag, a[j * n + j]);
  const double pivot_floor = 1e-13 * std::max(max_diag, 1e-300);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[k * n + j] * a[k * n + j];
    if (!(d > pivot_floor)) return false;
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[j * n + i];
      for (std::size_t k = 0; k < j; ++k) v -= a[k * n + i] * a[k * n + j];
      a[j * n + i] = v / ljj;
    }
  }
  return true;
}

// Solves L·Lᵀ·w = e_col for one column of the inverse.
void cholesky_inverse_column(const std::vector<double>& l, std::size_t n, std::size_t col,
                             std::vector<double>& w) {
  w.assign(n, 0.0);
  w[col] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = w[i];
    for (std::size_t k = 0; k < i; ++k) v -= l[k * n + i] * w[k];
    w[i] = v / l[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = w[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= l[i * n + k] * w[k];
    w[i] = v / l[i * n + i];
  }
}

void require_image_shape(const Dictionary& dict, const Matrix& m, const char* what) {
  if (m.rows() != dict.rows() || m.cols() != dict.cols())
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": expected " + std::to_string(dict.rows()) + "x" +
             std::to_string(dict.cols()) + ", got " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()));
}

}  // namespace

void RidgeMap::apply(const double* g, double* x) const {
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < n(); ++i) x[i] = k.dot(mt.col(i), g, m());
}

std::vector<double> RidgeMap::apply(const std::vector<double>& g) const {
  if (g.size() != m())
    fail(ErrorCode::DimensionMismatch, "ridge map: vector length " + std::to_string(g.size()) +
                                           ", expected " + std::to_string(m()));
  std::vector<double> x(n());
  apply(g.data(), x.data());
  return x;
}

RidgeMap precompute_ridge_map(const Dictionary& dict, double lambda, double mu) {
  if (!(mu > 0.0))
    fail(ErrorCode::InvalidArgument, "ridge map: mu must be positive");
  if (!(lambda >= 0.0))
    fail(ErrorCode::InvalidArgument, "ridge map: lambda must be nonnegative");

  const std::size_t n = dict.n();
  const std::size_t m = dict.m();
  const auto& k = kernels::active();
  const Matrix& h = dict.h();

  std::vector<double> normal(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = k.dot(h.col(i), h.col(j), m);
      normal[j * n + i] = v;
      normal[i * n + j] = v;
    }
  const double ratio = lambda / mu;
  for (std::size_t i = 0; i < n; ++i) normal[i * n + i] += ratio;

  if (!cholesky_in_place(normal, n))
    fail(ErrorCode::IllPosed,
         "ridge map: normal matrix HᵀH is numerically singular; use lambda > 0 to regularize");

  RidgeMap map;
  map.lambda_over_mu = ratio;
  map.mt = Matrix(m, n);
  std::vector<double> w;
  for (std::size_t i = 0; i < n; ++i) {
    cholesky_inverse_column(normal, n, i, w);
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] != 0.0) k.axpy(w[j], h.col(j), map.mt.col(i), m);
  }
  return map;
}

std::vector<double> update_x(const RidgeMap& map, const Matrix& b, const Matrix& y,
                             const Matrix& z, double mu) {
  if (!(mu > 0.0)) fail(ErrorCode::InvalidArgument, "update_x: mu must be positive");
  require_same_shape(b, y, "update_x");
  require_same_shape(b, z, "update_x");
  if (b.size() != map.m())
    fail(ErrorCode::DimensionMismatch, "update_x: image size does not match the ridge map");
  std::vector<double> g(b.size());
  kernels::active().lincomb3(g.data(), 1.0, b.data(), 1.0, y.data(), -1.0 / mu, z.data(), b.size());
  std::vector<double> x(map.n());
  map.apply(g.data(), x.data());
  return x;
}

Matrix update_y(const Dictionary& dict, const std::vector<double>& x, const Matrix& b,
                const Matrix& z, double mu) {
  if (!(mu > 0.0)) fail(ErrorCode::InvalidArgument, "update_y: mu must be positive");
  require_image_shape(dict, b, "update_y");
  require_image_shape(dict, z, "update_y");
  Matrix arg = apply_operator(dict, x);
  kernels::active().lincomb3(arg.data(), 1.0, arg.data(), -1.0, b.data(), 1.0 / mu, z.data(),
                             arg.size());
  return svt(arg, 1.0 / mu);
}

Matrix update_z(const Matrix& z, const Dictionary& dict, const std::vector<double>& x,
                const Matrix& y, const Matrix& b, double mu) {
  require_image_shape(dict, z, "update_z");
  require_image_shape(dict, y, "update_z");
  require_image_shape(dict, b, "update_z");
  Matrix ax = apply_operator(dict, x);
  Matrix out = z;
  // Z + μ·(A(x) − Y − B)
  kernels::active().lincomb3(ax.data(), 1.0, ax.data(), -1.0, y.data(), -1.0, b.data(), ax.size());
  kernels::active().axpy(mu, ax.data(), out.data(), out.size());
  return out;
}

TerminationCheck check_termination(const Dictionary& dict, const std::vector<double>& x,
                                   const Matrix& y, const Matrix& y_prev, const Matrix& z,
                                   const Matrix& b, const SolverConfig& config) {
  validate_config(config);
  require_image_shape(dict, y, "check_termination");
  require_image_shape(dict, y_prev, "check_termination");
  require_image_shape(dict, z, "check_termination");
  require_image_shape(dict, b, "check_termination");

  const auto& k = kernels::active();
  const std::size_t m = dict.m();
  const std::size_t n = dict.n();

  Matrix ax = apply_operator(dict, x);
  const double ax_norm = frobenius_norm(ax);

  // r_pri = A(x) − Y − B
  Matrix r = ax;
  k.lincomb3(r.data(), 1.0, ax.data(), -1.0, y.data(), -1.0, b.data(), m);
  TerminationCheck out;
  out.primal_norm = frobenius_norm(r);

  // s_dual = μ·Hᵀ·vec(Y − Y_prev)
  std::vector<double> ydiff(m), s(n);
  k.lincomb2(ydiff.data(), 1.0, y.data(), -1.0, y_prev.data(), m);
  matvec_transposed(dict.h(), ydiff.data(), s.data());
  out.dual_norm = config.mu * euclidean_norm(s);

  out.eps_pri = std::sqrt(static_cast<double>(m)) * config.eps_abs +
                config.eps_rel * std::max({ax_norm, frobenius_norm(y), frobenius_norm(b)});
  std::vector<double> htz(n);
  matvec_transposed(dict.h(), z.data(), htz.data());
  out.eps_dual = std::sqrt(static_cast<double>(n)) * config.eps_abs +
                 config.eps_rel * euclidean_norm(htz);

  out.should_stop = out.primal_norm <= out.eps_pri && out.dual_norm <= out.eps_dual;
  return out;
}

double objective(const Dictionary& dict, const std::vector<double>& x, const Matrix& b,
                 double lambda) {
  require_image_shape(dict, b, "objective");
  Matrix diff = apply_operator(dict, x);
  diff -= b;
  const double ridge = kernels::active().sumsq(x.data(), x.size());
  return nuclear_norm(diff) + 0.5 * lambda * ridge;
}

SolverResult solve_nmr(const Dictionary& dict, const Matrix& b, const SolverConfig& config) {
  validate_config(config);
  const RidgeMap map = precompute_ridge_map(dict, config.lambda, config.mu);
  return solve_nmr(dict, map, b, config);
}

SolverResult solve_nmr(const Dictionary& dict, const RidgeMap& map, const Matrix& b,
                       const SolverConfig& config) {
  validate_config(config);
  require_image_shape(dict, b, "solve_nmr");
  if (map.m() != dict.m() || map.n() != dict.n())
    fail(ErrorCode::DimensionMismatch, "solve_nmr: ridge map does not match the dictionary");
  const double want_ratio = config.lambda / config.mu;
  if (std::abs(map.lambda_over_mu - want_ratio) > 1e-12 * std::max(1.0, want_ratio))
    fail(ErrorCode::InvalidArgument, "solve_nmr: ridge map was built for a different lambda/mu");

  const auto& k = kernels::active();
  const std::size_t m = dict.m();
  const std::size_t n = dict.n();
  const double mu = config.mu;
  const double b_norm = frobenius_norm(b);
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  SolverResult res;
  res.y = Matrix(dict.rows(), dict.cols());
  if (config.y_init == YInit::NegativeB) {
    res.y = b;
    res.y *= -1.0;
  }
  res.z = Matrix(dict.rows(), dict.cols());
  res.x.assign(n, 0.0);

  Matrix y_prev(dict.rows(), dict.cols());
  Matrix ax(dict.rows(), dict.cols());
  Matrix svt_arg(dict.rows(), dict.cols());
  Matrix scratch(dict.rows(), dict.cols());
  std::vector<double> g(m), ydiff(m), dual(n), htz(n);
  SvdWorkspace ws;

  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    // x ← M·vec(B + Y − Z/μ)
    k.lincomb3(g.data(), 1.0, b.data(), 1.0, res.y.data(), -1.0 / mu, res.z.data(), m);
    map.apply(g.data(), res.x.data());
    apply_operator(dict, res.x.data(), ax);

    // Y ← shrink(A(x) − B + Z/μ, 1/μ)
    std::swap(y_prev, res.y);
    k.lincomb3(svt_arg.data(), 1.0, ax.data(), -1.0, b.data(), 1.0 / mu, res.z.data(), m);
    res.y = svt(svt_arg, 1.0 / mu, ws);

    // Z ← Z + μ·(A(x) − Y − B); the step direction is the primal residual.
    k.lincomb3(scratch.data(), 1.0, ax.data(), -1.0, res.y.data(), -1.0, b.data(), m);
    k.axpy(mu, scratch.data(), res.z.data(), m);

    TraceRow row;
    row.iter = iter;
    row.primal = frobenius_norm(scratch);
    k.lincomb2(ydiff.data(), 1.0, res.y.data(), -1.0, y_prev.data(), m);
    matvec_transposed(dict.h(), ydiff.data(), dual.data());
    row.dual = mu * euclidean_norm(dual);
    row.eps_pri = sqrt_m * config.eps_abs +
                  config.eps_rel * std::max({frobenius_norm(ax), frobenius_norm(res.y), b_norm});
    matvec_transposed(dict.h(), res.z.data(), htz.data());
    row.eps_dual = sqrt_n * config.eps_abs + config.eps_rel * euclidean_norm(htz);
    k.lincomb2(scratch.data(), 1.0, ax.data(), -1.0, b.data(), m);
    row.objective = nuclear_norm(scratch, ws) + 0.5 * config.lambda * k.sumsq(res.x.data(), n);
    res.trace.push_back(row);

    if (row.primal <= row.eps_pri && row.dual <= row.eps_dual) {
      res.converged = true;
      break;
    }
  }

  res.iterations = res.trace.size();
  const TraceRow& last = res.trace.back();
  res.objective = last.objective;
  if (!res.converged)
    res.diagnostic = "no convergence in " + std::to_string(config.max_iters) +
                     " iterations (primal " + format_double(last.primal) + " vs " +
                     format_double(last.eps_pri) + ", dual " + format_double(last.dual) + " vs " +
                     format_double(last.eps_dual) + ")";

  // E = B − A(x) for the final coefficients.
  apply_operator(dict, res.x.data(), ax);
  res.residual_image = Matrix(dict.rows(), dict.cols());
  k.lincomb2(res.residual_image.data(), 1.0, b.data(), -1.0, ax.data(), m);
  return res;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  out << "iter,primal,dual,eps_pri,eps_dual,objective\n";
  for (const auto& row : trace)
    out << row.iter << ',' << format_double(row.primal) << ',' << format_double(row.dual) << ','
        << format_double(row.eps_pri) << ',' << format_double(row.eps_dual) << ','
        << format_double(row.objective) << '\n';
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

void write_coefficients_csv(const std::string& path, const std::vector<double>& x) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  for (double v : x) out << format_double(v) << '\n';
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

}  // namespace nmr
