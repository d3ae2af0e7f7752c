#include "nmr/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "nmr/errors.hpp"
#include "nmr/kernels.hpp"

namespace nmr {
namespace {

constexpr double kOrthTol = 1e-14;   // relative column-orthogonality target
constexpr double kRankTol = 1e-12;   // σ below kRankTol·σ_max are dropped
constexpr int kMaxSweeps = 30;

// One-sided Jacobi (Hestenes): orthogonalizes the columns of w in place by
// plane rotations until every pair is orthogonal to kOrthTol relative. On
// exit column j equals σ_j·u_j. When v is non-null it must hold an identity
// matrix of order cols and accumulates the right rotations, so w = Q·v
// throughout and Q = w·vᵀ at exit. sq caches squared column norms; it is
// refreshed from the data at each sweep and updated analytically per
// rotation in between.
void hestenes_sweeps(double* w, std::size_t rows, std::size_t cols, double* v, double* sq) {
  const auto& k = kernels::active();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t j = 0; j < cols; ++j) sq[j] = k.sumsq(w + j * rows, rows);
    bool rotated = false;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      for (std::size_t kk = j + 1; kk < cols; ++kk) {
        double* wj = w + j * rows;
        double* wk = w + kk * rows;
        const double off = k.dot(wj, wk, rows);
        const double bound = kOrthTol * std::sqrt(sq[j] * sq[kk]);
        if (!(std::abs(off) > bound)) continue;  // also skips zero columns
        const double zeta = (sq[kk] - sq[j]) / (2.0 * off);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        k.rot(wj, wk, cs, sn, rows);
        if (v != nullptr) k.rot(v + j * cols, v + kk * cols, cs, sn, cols);
        sq[j] -= t * off;
        sq[kk] += t * off;
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

void require_finite(const Matrix& q, const char* op) {
  if (!all_finite(q))
    fail(ErrorCode::InvalidArgument, std::string(op) + ": matrix has non-finite entries");
}

// Copies q (or its transpose) into ws.w so the working matrix has
// rows ≥ cols, runs the sweeps, and leaves fresh column norms in ws.values
// (unsorted). Returns true when the transpose was taken.
bool decompose(const Matrix& q, SvdWorkspace& ws, bool want_vectors) {
  const bool transposed = q.cols() > q.rows();
  const std::size_t rows = transposed ? q.cols() : q.rows();
  const std::size_t cols = transposed ? q.rows() : q.cols();

  ws.w.resize(rows * cols);
  if (transposed) {
    for (std::size_t r = 0; r < q.rows(); ++r)
      for (std::size_t c = 0; c < q.cols(); ++c) ws.w[r * rows + c] = q(r, c);
  } else {
    std::memcpy(ws.w.data(), q.data(), q.size() * sizeof(double));
  }

  double* vptr = nullptr;
  if (want_vectors) {
    ws.v.assign(cols * cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) ws.v[j * cols + j] = 1.0;
    vptr = ws.v.data();
  }

  ws.sq.resize(cols);
  hestenes_sweeps(ws.w.data(), rows, cols, vptr, ws.sq.data());

  const auto& k = kernels::active();
  ws.values.resize(cols);
  for (std::size_t j = 0; j < cols; ++j)
    ws.values[j] = std::sqrt(k.sumsq(ws.w.data() + j * rows, rows));
  return transposed;
}

void sort_descending(SvdWorkspace& ws) {
  const std::size_t cols = ws.values.size();
  ws.order.resize(cols);
  std::iota(ws.order.begin(), ws.order.end(), std::size_t{0});
  std::stable_sort(ws.order.begin(), ws.order.end(),
                   [&](std::size_t a, std::size_t b) { return ws.values[a] > ws.values[b]; });
}

}  // namespace

ThinSvd thin_svd(const Matrix& q, SvdWorkspace& ws) {
  require_finite(q, "thin_svd");
  const bool transposed = decompose(q, ws, /*want_vectors=*/true);
  sort_descending(ws);

  const std::size_t cols = ws.values.size();
  const std::size_t wrows = transposed ? q.cols() : q.rows();
  const double sigma_max = cols == 0 ? 0.0 : ws.values[ws.order[0]];
  std::size_t rank = 0;
  if (sigma_max > 0.0) {
    const double cutoff = kRankTol * sigma_max;
    while (rank < cols && ws.values[ws.order[rank]] >= cutoff) ++rank;
  }

  ThinSvd out;
  out.u = Matrix(q.rows(), rank);
  out.v = Matrix(q.cols(), rank);
  out.singular_values.resize(rank);
  for (std::size_t j = 0; j < rank; ++j) {
    const std::size_t src = ws.order[j];
    const double sigma = ws.values[src];
    out.singular_values[j] = sigma;
    const double* wcol = ws.w.data() + src * wrows;
    const double* vcol = ws.v.data() + src * cols;
    // In transpose mode the working matrix held Qᵀ, so its columns carry the
    // right singular vectors and the rotation accumulator carries the left.
    double* ucol = out.u.col(j);
    double* vout = out.v.col(j);
    if (transposed) {
      for (std::size_t i = 0; i < q.rows(); ++i) ucol[i] = vcol[i];
      for (std::size_t i = 0; i < q.cols(); ++i) vout[i] = wcol[i] / sigma;
    } else {
      for (std::size_t i = 0; i < q.rows(); ++i) ucol[i] = wcol[i] / sigma;
      for (std::size_t i = 0; i < q.cols(); ++i) vout[i] = vcol[i];
    }
  }
  return out;
}

ThinSvd thin_svd(const Matrix& q) {
  SvdWorkspace ws;
  return thin_svd(q, ws);
}

void singular_values(const Matrix& q, std::vector<double>& out, SvdWorkspace& ws) {
  require_finite(q, "singular_values");
  decompose(q, ws, /*want_vectors=*/false);
  sort_descending(ws);
  out.resize(ws.values.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = ws.values[ws.order[j]];
}

std::vector<double> singular_values(const Matrix& q) {
  SvdWorkspace ws;
  std::vector<double> out;
  singular_values(q, out, ws);
  return out;
}

double nuclear_norm(const Matrix& q, SvdWorkspace& ws) {
  require_finite(q, "nuclear_norm");
  decompose(q, ws, /*want_vectors=*/false);
  double sum = 0.0;
  for (double s : ws.values) sum += s;
  return sum;
}

double nuclear_norm(const Matrix& q) {
  thread_local SvdWorkspace ws;
  return nuclear_norm(q, ws);
}

Matrix svt(const Matrix& q, double tau, SvdWorkspace& ws) {
  if (!(tau >= 0.0))
    fail(ErrorCode::InvalidArgument, "svt: threshold must be nonnegative, got " + std::to_string(tau));
  if (tau == 0.0) return q;

  const ThinSvd s = thin_svd(q, ws);
  Matrix out(q.rows(), q.cols());
  const auto& k = kernels::active();
  for (std::size_t j = 0; j < s.rank(); ++j) {
    const double d = s.singular_values[j] - tau;
    if (d <= 0.0) break;  // values are non-increasing
    const double* ucol = s.u.col(j);
    for (std::size_t c = 0; c < out.cols(); ++c)
      k.axpy(d * s.v(c, j), ucol, out.col(c), out.rows());
  }
  return out;
}

Matrix svt(const Matrix& q, double tau) {
  SvdWorkspace ws;
  return svt(q, tau, ws);
}

}  // namespace nmr
