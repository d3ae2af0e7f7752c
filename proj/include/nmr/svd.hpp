#pragma once

#include <cstddef>
#include <vector>

#include "nmr/matrix.hpp"

namespace nmr {

// Thin SVD truncated to numerical rank: Q ≈ U·diag(σ)·Vᵀ with σ strictly
// positive and non-increasing. Singular values below 1e-12·σ_max are dropped,
// so U is p×r and V is q×r with r = singular_values.size().
struct ThinSvd {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;

  std::size_t rank() const { return singular_values.size(); }
};

// Scratch buffers for the Jacobi sweeps. Reusing one workspace across many
// decompositions of same-shaped matrices avoids per-call allocation; the hot
// paths (solver iterations, batched norm evaluations) all pass one in.
struct SvdWorkspace {
  std::vector<double> w;          // working copy of the matrix
  std::vector<double> v;          // accumulated right rotations
  std::vector<double> sq;         // cached squared column norms
  std::vector<double> values;     // scratch singular values
  std::vector<std::size_t> order; // descending sort permutation
};

ThinSvd thin_svd(const Matrix& q, SvdWorkspace& ws);
ThinSvd thin_svd(const Matrix& q);

// All min(p,q) singular values in non-increasing order (zeros included).
// Values-only path: no singular vectors are accumulated.
void singular_values(const Matrix& q, std::vector<double>& out, SvdWorkspace& ws);
std::vector<double> singular_values(const Matrix& q);

// Sum of singular values.
double nuclear_norm(const Matrix& q, SvdWorkspace& ws);
double nuclear_norm(const Matrix& q);

// Singular value shrinkage: U·diag(max(0, σ_j − tau))·Vᵀ, the proximal
// operator of tau·‖·‖_*. tau must be nonnegative; tau = 0 returns Q itself.
Matrix svt(const Matrix& q, double tau, SvdWorkspace& ws);
Matrix svt(const Matrix& q, double tau);

}  // namespace nmr
