#include "doctest.h"

#include <cmath>
#include <vector>

#include "nmr/errors.hpp"
#include "nmr/matrix.hpp"
#include "nmr/rng.hpp"
#include "nmr/svd.hpp"
#include "oracles.hpp"

using nmr::CounterRng;
using nmr::Matrix;

namespace {

Matrix reconstruct(const nmr::ThinSvd& s) {
  Matrix out(s.u.rows(), s.v.rows());
  for (std::size_t j = 0; j < s.rank(); ++j)
    for (std::size_t c = 0; c < out.cols(); ++c)
      for (std::size_t r = 0; r < out.rows(); ++r)
        out(r, c) += s.singular_values[j] * s.u(r, j) * s.v(c, j);
  return out;
}

double max_gram_identity_error(const Matrix& m) {
  // ‖MᵀM − I‖_max, to verify column orthonormality.
  double worst = 0.0;
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) acc += m(r, i) * m(r, j);
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double prox_objective(const Matrix& x, const Matrix& q, double tau) {
  Matrix diff = x - q;
  return tau * nmr::nuclear_norm(x) + 0.5 * nmr::frobenius_norm(diff) * nmr::frobenius_norm(diff);
}

}  // namespace

TEST_CASE("matrix construction, indexing, arithmetic") {
  Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == 3.0);

  Matrix t = m.transposed();
  CHECK(t(0, 1) == 3.0);
  CHECK(t(1, 0) == 2.0);

  Matrix i2 = Matrix::identity(2);
  Matrix sum = m + i2;
  CHECK(sum(0, 0) == 2.0);
  CHECK(sum(1, 1) == 5.0);
  Matrix diff = sum - i2;
  CHECK(nmr::max_abs_diff(diff, m) == 0.0);
  Matrix scaled = m * 2.0;
  CHECK(scaled(1, 1) == 8.0);

  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {3}}), nmr::Error);
  CHECK_THROWS_AS(m + Matrix(3, 3), nmr::Error);
}

TEST_CASE("vectorize is column-major stacking") {
  Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  CHECK(nmr::vectorize(m) == std::vector<double>{1, 3, 2, 4});

  CHECK(nmr::vectorize(Matrix(3, 3)) == std::vector<double>(9, 0.0));

  Matrix row = Matrix::from_rows({{5, 6, 7}});
  CHECK(nmr::vectorize(row) == std::vector<double>{5, 6, 7});

  Matrix back = nmr::unvectorize(nmr::vectorize(m), 2, 2);
  CHECK(nmr::max_abs_diff(back, m) == 0.0);
  CHECK_THROWS_AS(nmr::unvectorize({1, 2, 3}, 2, 2), nmr::Error);
}

TEST_CASE("matvec products match plain loops") {
  CounterRng rng(5);
  Matrix m = oracle::random_matrix(rng, 7, 4);
  std::vector<double> v = {0.5, -1.25, 2.0, 0.75};
  std::vector<double> out(7), want(7, 0.0);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 4; ++c) want[r] += m(r, c) * v[c];
  nmr::matvec(m, v.data(), out.data());
  for (std::size_t r = 0; r < 7; ++r) CHECK(out[r] == doctest::Approx(want[r]).epsilon(1e-13));

  std::vector<double> w = {1, -2, 3, -4, 5, -6, 7};
  std::vector<double> outt(4), wantt(4, 0.0);
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 7; ++r) wantt[c] += m(r, c) * w[r];
  nmr::matvec_transposed(m, w.data(), outt.data());
  for (std::size_t c = 0; c < 4; ++c) CHECK(outt[c] == doctest::Approx(wantt[c]).epsilon(1e-13));
}

TEST_CASE("thin svd of a diagonal matrix") {
  Matrix q = Matrix::from_rows({{3, 0}, {0, 1}});
  auto s = nmr::thin_svd(q);
  REQUIRE(s.rank() == 2);
  CHECK(s.singular_values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.singular_values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nmr::max_abs_diff(s.u, Matrix::identity(2)) <= 1e-14);
  CHECK(nmr::max_abs_diff(s.v, Matrix::identity(2)) <= 1e-14);
}

TEST_CASE("thin svd of the zero matrix has empty rank") {
  auto s = nmr::thin_svd(Matrix(4, 3));
  CHECK(s.rank() == 0);
  CHECK(s.singular_values.empty());
  CHECK(s.u.rows() == 4);
  CHECK(s.u.cols() == 0);
  CHECK(s.v.rows() == 3);
  CHECK(s.v.cols() == 0);
}

TEST_CASE("thin svd matches the symmetric-eigen oracle across shapes") {
  CounterRng rng(1001);
  const std::size_t shapes[][2] = {{4, 3}, {3, 4}, {1, 1}, {1, 5}, {5, 1}, {2, 2},
                                   {6, 6}, {9, 4}, {4, 9}, {12, 7}, {7, 12}, {10, 10}};
  for (auto [p, q] : shapes) {
    for (int rep = 0; rep < 8; ++rep) {
      Matrix m = oracle::random_matrix(rng, p, q, -3.0, 3.0);
      auto s = nmr::thin_svd(m);

      const double scale = std::max(1.0, nmr::frobenius_norm(m));
      CHECK(nmr::max_abs_diff(reconstruct(s), m) <= 1e-10 * scale);
      if (s.rank() > 0) {
        CHECK(max_gram_identity_error(s.u) <= 1e-12);
        CHECK(max_gram_identity_error(s.v) <= 1e-12);
      }

      auto ref = oracle::singular_values(m);
      REQUIRE(s.rank() <= ref.size());
      for (std::size_t j = 0; j < s.rank(); ++j) {
        CHECK(std::abs(s.singular_values[j] - ref[j]) <= 1e-9 * scale);
        if (j > 0) CHECK(s.singular_values[j] <= s.singular_values[j - 1]);
        CHECK(s.singular_values[j] > 0.0);
      }

      // Values-only path agrees with the full decomposition.
      auto vals = nmr::singular_values(m);
      REQUIRE(vals.size() == std::min(p, q));
      for (std::size_t j = 0; j < s.rank(); ++j)
        CHECK(std::abs(vals[j] - s.singular_values[j]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("thin svd detects numerical rank") {
  CounterRng rng(77);
  // 6×5 matrix assembled from two outer products: rank exactly 2.
  Matrix a = oracle::random_matrix(rng, 6, 1);
  Matrix b = oracle::random_matrix(rng, 6, 1);
  Matrix c = oracle::random_matrix(rng, 5, 1);
  Matrix d = oracle::random_matrix(rng, 5, 1);
  Matrix m(6, 5);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = a(i, 0) * c(j, 0) + b(i, 0) * d(j, 0);

  auto s = nmr::thin_svd(m);
  CHECK(s.rank() == 2);
  CHECK(nmr::max_abs_diff(reconstruct(s), m) <= 1e-10 * std::max(1.0, nmr::frobenius_norm(m)));
}

TEST_CASE("svd rejects non-finite input") {
  Matrix m(2, 2);
  m(0, 0) = std::nan("");
  CHECK_THROWS_AS(nmr::thin_svd(m), nmr::Error);
  CHECK_THROWS_AS(nmr::nuclear_norm(m), nmr::Error);
  try {
    nmr::thin_svd(m);
  } catch (const nmr::Error& e) {
    CHECK(e.code() == nmr::ErrorCode::InvalidArgument);
  }
}

TEST_CASE("nuclear norm closed forms and oracle agreement") {
  CHECK(nmr::nuclear_norm(Matrix::from_rows({{3, 0}, {0, 1}})) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(nmr::nuclear_norm(Matrix::from_rows({{1, 1}, {1, 1}})) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(nmr::nuclear_norm(Matrix(3, 4)) == 0.0);

  CounterRng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix m = oracle::random_matrix(rng, 5, 4, -2.0, 2.0);
    CHECK(nmr::nuclear_norm(m) == doctest::Approx(oracle::nuclear_norm(m)).epsilon(1e-9));
  }
}

TEST_CASE("nuclear norm unitary invariance, ordering, triangle inequality") {
  CounterRng rng(31337);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix q = oracle::random_matrix(rng, 6, 4, -2.0, 2.0);
    Matrix p = oracle::random_orthogonal(rng, 6);
    Matrix r = oracle::random_orthogonal(rng, 4);
    const double base = nmr::nuclear_norm(q);
    CHECK(nmr::nuclear_norm(oracle::matmul(oracle::matmul(p, q), r)) ==
          doctest::Approx(base).epsilon(1e-9));

    const double fro = nmr::frobenius_norm(q);
    CHECK(fro <= base + 1e-9);
    CHECK(base <= 2.0 * fro + 1e-9);  // √min(6,4) = 2

    Matrix q2 = oracle::random_matrix(rng, 6, 4, -2.0, 2.0);
    CHECK(nmr::nuclear_norm(q + q2) <= base + nmr::nuclear_norm(q2) + 1e-9);
  }
}

TEST_CASE("svt closed forms") {
  Matrix q = Matrix::from_rows({{3, 0}, {0, 1}});
  Matrix want = Matrix::from_rows({{2, 0}, {0, 0}});
  CHECK(nmr::max_abs_diff(nmr::svt(q, 1.0), want) <= 1e-12);

  CounterRng rng(9);
  Matrix r = oracle::random_matrix(rng, 4, 5, -2.0, 2.0);
  CHECK(nmr::max_abs_diff(nmr::svt(r, 0.0), r) == 0.0);

  auto vals = nmr::singular_values(r);
  Matrix zeroed = nmr::svt(r, vals[0] + 1e-9);
  CHECK(nmr::frobenius_norm(zeroed) <= 1e-10);

  CHECK_THROWS_AS(nmr::svt(r, -0.5), nmr::Error);
  try {
    nmr::svt(r, -0.5);
  } catch (const nmr::Error& e) {
    CHECK(e.code() == nmr::ErrorCode::InvalidArgument);
  }
}

TEST_CASE("svt output singular values are shrunk exactly") {
  CounterRng rng(404);
  for (int rep = 0; rep < 12; ++rep) {
    Matrix q = oracle::random_matrix(rng, 6, 5, -2.0, 2.0);
    auto before = nmr::singular_values(q);
    const double tau = rng.next_range(0.05, 1.5);
    auto after = nmr::singular_values(nmr::svt(q, tau));
    REQUIRE(after.size() == before.size());
    const double scale = std::max(1.0, before[0]);
    for (std::size_t j = 0; j < after.size(); ++j)
      CHECK(std::abs(after[j] - std::max(0.0, before[j] - tau)) <= 1e-10 * scale);
  }
}

TEST_CASE("svt minimizes the prox objective against random perturbations") {
  CounterRng rng(555);
  Matrix q = oracle::random_matrix(rng, 3, 3, -1.0, 1.0);
  const double tau = 0.5;
  Matrix hat = nmr::svt(q, tau);
  const double best = prox_objective(hat, q, tau);
  for (int rep = 0; rep < 1000; ++rep) {
    Matrix pert = hat;
    const double radius = 0.1 * rng.next_unit();
    Matrix noise = oracle::random_matrix(rng, 3, 3, -1.0, 1.0);
    const double norm = nmr::frobenius_norm(noise);
    if (norm > 0.0) {
      noise *= radius / norm;
      pert += noise;
    }
    CHECK(best <= prox_objective(pert, q, tau) + 1e-10);
  }
}

TEST_CASE("svt is nonexpansive") {
  CounterRng rng(808);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix q1 = oracle::random_matrix(rng, 5, 4, -2.0, 2.0);
    Matrix q2 = oracle::random_matrix(rng, 5, 4, -2.0, 2.0);
    const double tau = rng.next_range(0.0, 2.0);
    Matrix d1 = nmr::svt(q1, tau) - nmr::svt(q2, tau);
    Matrix d2 = q1 - q2;
    CHECK(nmr::frobenius_norm(d1) <= nmr::frobenius_norm(d2) + 1e-9);
  }
}

TEST_CASE("svd is deterministic across repeated calls") {
  CounterRng rng(606);
  Matrix q = oracle::random_matrix(rng, 8, 6, -2.0, 2.0);
  auto a = nmr::thin_svd(q);
  auto b = nmr::thin_svd(q);
  REQUIRE(a.rank() == b.rank());
  for (std::size_t j = 0; j < a.rank(); ++j)
    CHECK(a.singular_values[j] == b.singular_values[j]);
  CHECK(nmr::max_abs_diff(a.u, b.u) == 0.0);
  CHECK(nmr::max_abs_diff(a.v, b.v) == 0.0);
}
