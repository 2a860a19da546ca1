#include "trp/linalg.hpp"

#include <numeric>
#include <sstream>

#include "trp/error.hpp"

namespace trp {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr int kMaxSweeps = 64;

template <std::size_t N>
double off_diagonal_norm2(const Matrix<N>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(m(i, j));
  return s;
}

// Zero a(p,q) with V = diag(1, e^{-i alpha}) R(c, s) acting on rows/columns p, q.
template <std::size_t N>
void rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const complex phase = apq / r;  // e^{i alpha}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const complex vpp = c;
  const complex vpq = s;
  const complex vqp = -s * std::conj(phase);
  const complex vqq = c * std::conj(phase);

  for (std::size_t k = 0; k < N; ++k) {
    const complex akp = a(k, p);
    const complex akq = a(k, q);
    a(k, p) = akp * vpp + akq * vqp;
    a(k, q) = akp * vpq + akq * vqq;
  }
  for (std::size_t k = 0; k < N; ++k) {
    const complex apk = a(p, k);
    const complex aqk = a(q, k);
    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const complex vkp = v(k, p);
    const complex vkq = v(k, q);
    v(k, p) = vkp * vpp + vkq * vqp;
    v(k, q) = vkp * vpq + vkq * vqq;
  }
}

}  // namespace

template <std::size_t N>
EigenSystem<N> eigh(const Matrix<N>& h) {
  if (!is_hermitian(h, kHermitianTolerance)) {
    std::ostringstream os;
    os << "matrix deviates from its adjoint by more than " << kHermitianTolerance;
    throw Error(ErrorCode::not_hermitian, os.str());
  }

  // Work on the exactly Hermitian part.
  Matrix<N> a = 0.5 * (h + adjoint(h));
  Matrix<N> v = Matrix<N>::identity();

  double scale = 0.0;
  for (const auto& z : a.a) scale += std::norm(z);
  const double stop = scale * 1e-30;

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();

    std::size_t lead = 0;
    for (std::size_t i = 1; i < N; ++i)
      if (std::abs(v(i, src)) > std::abs(v(lead, src))) lead = i;
    const complex fix = std::abs(v(lead, src)) / v(lead, src);
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, src) * fix;
    out.vectors(lead, k) = std::abs(v(lead, src));
  }
  return out;
}

template EigenSystem<2> eigh<2>(const Matrix<2>&);
template EigenSystem<4> eigh<4>(const Matrix<4>&);

}  // namespace trp
