#pragma once

// Fixed-size dense complex matrices for one- and two-qubit work.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace trp {

using complex = std::complex<double>;

template <std::size_t N>
using Vector = std::array<complex, N>;

// Row-major N x N complex matrix.
template <std::size_t N>
struct Matrix {
  static constexpr std::size_t dim = N;
  std::array<complex, N * N> a{};

  complex& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

  static Matrix zero() { return Matrix{}; }
  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix diagonal(const std::array<complex, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  bool operator==(const Matrix&) const = default;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
Matrix<N> operator+(const Matrix<N>& x, const Matrix<N>& y) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N>& x, const Matrix<N>& y) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N>& x) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = -x.a[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(complex s, const Matrix<N>& x) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = s * x.a[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(double s, const Matrix<N>& x) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = s * x.a[i];
  return r;
}

template <std::size_t N>
Matrix<N>& operator+=(Matrix<N>& x, const Matrix<N>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.a[i] += y.a[i];
  return x;
}

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& x, const Matrix<N>& y) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      const complex xik = x(i, k);
      for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
    }
  }
  return r;
}

template <std::size_t N>
Vector<N> operator*(const Matrix<N>& m, const Vector<N>& v) {
  Vector<N> r{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) r[i] += m(i, j) * v[j];
  }
  return r;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& m) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  }
  return r;
}

template <std::size_t N>
complex trace(const Matrix<N>& m) {
  complex t = 0.0;
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

// Tr(x^dagger y) without forming the product.
template <std::size_t N>
complex trace_adjoint_product(const Matrix<N>& x, const Matrix<N>& y) {
  complex t = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) t += std::conj(x.a[i]) * y.a[i];
  return t;
}

template <std::size_t A, std::size_t B>
Matrix<A * B> kron(const Matrix<A>& x, const Matrix<B>& y) {
  Matrix<A * B> r;
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < A; ++j)
      for (std::size_t k = 0; k < B; ++k)
        for (std::size_t l = 0; l < B; ++l) r(i * B + k, j * B + l) = x(i, j) * y(k, l);
  return r;
}

template <std::size_t N>
Matrix<N> outer(const Vector<N>& u, const Vector<N>& v) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

template <std::size_t N>
Vector<N> column(const Matrix<N>& m, std::size_t c) {
  Vector<N> v;
  for (std::size_t i = 0; i < N; ++i) v[i] = m(i, c);
  return v;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& x, const Matrix<N>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

template <std::size_t N>
double max_abs(const Matrix<N>& x) {
  double d = 0.0;
  for (const auto& z : x.a) d = std::max(d, std::abs(z));
  return d;
}

// Induced 1-norm (maximum absolute column sum).
template <std::size_t N>
double max_column_sum(const Matrix<N>& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& m, double tol = 1e-10) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

// max_ij |(U^dagger U - I)_ij|
template <std::size_t N>
double unitarity_defect(const Matrix<N>& u) {
  return max_abs_diff(adjoint(u) * u, Matrix<N>::identity());
}

namespace pauli {
inline const Mat2 I = Mat2::identity();
inline const Mat2 X{{complex(0, 0), complex(1, 0), complex(1, 0), complex(0, 0)}};
inline const Mat2 Y{{complex(0, 0), complex(0, -1), complex(0, 1), complex(0, 0)}};
inline const Mat2 Z{{complex(1, 0), complex(0, 0), complex(0, 0), complex(-1, 0)}};
}  // namespace pauli

// hx X + hy Y + hz Z with real coefficients.
inline Mat2 bloch_matrix(double hx, double hy, double hz) {
  return Mat2{{complex(hz, 0), complex(hx, -hy), complex(hx, hy), complex(-hz, 0)}};
}

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values{};  // ascending
  Matrix<N> vectors;               // column k pairs with values[k]
};

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Each eigenvector's largest-magnitude component is made real positive.
// Throws Error(not_hermitian) when any |h_ij - conj(h_ji)| exceeds 1e-10.
template <std::size_t N>
EigenSystem<N> eigh(const Matrix<N>& h);

extern template EigenSystem<2> eigh<2>(const Matrix<2>&);
extern template EigenSystem<4> eigh<4>(const Matrix<4>&);

}  // namespace trp
