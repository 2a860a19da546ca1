#include <cmath>
#include <random>

#include "doctest.h"
#include "trp/error.hpp"
#include "trp/linalg.hpp"

using namespace trp;

namespace {

template <std::size_t N>
Matrix<N> random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix<N> m;
  for (auto& z : m.a) z = complex(g(rng), g(rng));
  return m;
}

template <std::size_t N>
Matrix<N> random_hermitian(std::mt19937_64& rng) {
  const Matrix<N> m = random_matrix<N>(rng);
  return 0.5 * (m + adjoint(m));
}

}  // namespace

TEST_CASE("kron of small matrices") {
  CHECK(kron(pauli::I, pauli::I) == Mat4::identity());
  CHECK(kron(pauli::Z, pauli::I) == Mat4::diagonal({1.0, 1.0, -1.0, -1.0}));
  const Mat4 xx = kron(pauli::X, pauli::X);
  CHECK(xx * xx == Mat4::identity());
}

TEST_CASE("kron is associative on integer matrices") {
  const Mat2 a{{complex(1, 2), complex(-3, 0), complex(0, 1), complex(4, -1)}};
  const Mat2 b{{complex(2, 0), complex(1, 1), complex(-1, 0), complex(0, -2)}};
  const Mat2 c{{complex(0, 3), complex(5, 0), complex(1, -1), complex(2, 2)}};
  const Matrix<8> left = kron(kron(a, b), c);
  const Matrix<8> right = kron(a, kron(b, c));
  CHECK(left == right);
}

TEST_CASE("adjoint of adjoint is the original") {
  std::mt19937_64 rng(7);
  const Mat4 m = random_matrix<4>(rng);
  CHECK(adjoint(adjoint(m)) == m);
}

TEST_CASE("trace of a product is cyclic") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Mat4 a = random_matrix<4>(rng);
    const Mat4 b = random_matrix<4>(rng);
    const complex ab = trace(a * b);
    const complex ba = trace(b * a);
    CHECK(std::abs(ab - ba) <= 1e-12 * std::max(1.0, std::abs(ab)));
  }
}

TEST_CASE("eigh on Pauli matrices") {
  const auto z = eigh(pauli::Z);
  CHECK(z.values[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(z.values[1] == doctest::Approx(1.0).epsilon(1e-15));

  const auto x = eigh(pauli::X);
  CHECK(x.values[0] == doctest::Approx(-1.0));
  CHECK(x.values[1] == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  // (|0> - |1>)/sqrt2 and (|0> + |1>)/sqrt2, first component real positive.
  CHECK(std::abs(x.vectors(0, 0) - r) < 1e-14);
  CHECK(std::abs(x.vectors(1, 0) + r) < 1e-14);
  CHECK(std::abs(x.vectors(0, 1) - r) < 1e-14);
  CHECK(std::abs(x.vectors(1, 1) - r) < 1e-14);
}

TEST_CASE("eigh sorts a diagonal input") {
  const auto es = eigh(Mat4::diagonal({3.0, 1.0, 2.0, 0.0}));
  for (int k = 0; k < 4; ++k) CHECK(es.values[k] == doctest::Approx(k));
  CHECK(std::abs(es.vectors(3, 0) - 1.0) < 1e-15);
  CHECK(std::abs(es.vectors(0, 3) - 1.0) < 1e-15);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const Mat4 h = random_hermitian<4>(rng);
    const auto es = eigh(h);
    Mat4 lambda = Mat4::zero();
    for (std::size_t i = 0; i < 4; ++i) lambda(i, i) = es.values[i];
    CHECK(max_abs_diff(es.vectors * lambda * adjoint(es.vectors), h) < 1e-11);
    CHECK(max_abs_diff(adjoint(es.vectors) * es.vectors, Mat4::identity()) < 1e-12);
    for (std::size_t i = 0; i + 1 < 4; ++i) CHECK(es.values[i] <= es.values[i + 1]);
    const double norm = max_abs(h);
    for (std::size_t c = 0; c < 4; ++c) {
      const Vector<4> v = column(es.vectors, c);
      const Vector<4> hv = h * v;
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(hv[i] - es.values[c] * v[i]) < 1e-12 * 4 * norm);
    }
  }
}

TEST_CASE("eigh phase convention and determinism") {
  std::mt19937_64 rng(5);
  const Mat4 h = random_hermitian<4>(rng);
  const auto a = eigh(h);
  const auto b = eigh(h);
  CHECK(a.vectors == b.vectors);
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t lead = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (std::abs(a.vectors(i, c)) > std::abs(a.vectors(lead, c))) lead = i;
    CHECK(a.vectors(lead, c).imag() == 0.0);
    CHECK(a.vectors(lead, c).real() > 0.0);
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  Mat2 m = pauli::X;
  m(0, 1) = complex(1.0, 1e-6);
  try {
    eigh(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_hermitian);
  }
}

TEST_CASE("unitarity defect") {
  CHECK(unitarity_defect(Mat2::identity()) == 0.0);
  CHECK(unitarity_defect(2.0 * Mat2::identity()) == doctest::Approx(3.0));
  const Mat2 h = (1.0 / std::sqrt(2.0)) * (pauli::X + pauli::Z);
  CHECK(unitarity_defect(h) < 1e-15);
}
