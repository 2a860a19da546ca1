#include "trp/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "trp/error.hpp"

namespace trp {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << v;
    throw Error(ErrorCode::non_positive_parameter, os.str());
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::non_positive_parameter, std::string(name) + " must be finite");
  }
}

const Mat4 kZ1 = kron(pauli::Z, pauli::I);
const Mat4 kX1 = kron(pauli::X, pauli::I);
const Mat4 kY1 = kron(pauli::Y, pauli::I);
const Mat4 kZ2 = kron(pauli::I, pauli::Z);
const Mat4 kX2 = kron(pauli::I, pauli::X);
const Mat4 kY2 = kron(pauli::I, pauli::Y);
const Mat4 kZZ = kron(pauli::Z, pauli::Z);

}  // namespace

void validate(const OneQubitSweep& s) {
  require_positive(s.lambda, "lambda");
  require_positive(s.eta4, "eta4");
  require_positive(s.tau0, "tau0");
}

void validate(const TwoQubitSweep& s) {
  require_positive(s.lambda, "lambda");
  require_positive(s.eta4, "eta4");
  require_positive(s.tau0, "tau0");
  require_finite(s.c4, "c4");
  require_finite(s.d1, "d1");
  require_finite(s.d2, "d2");
  require_finite(s.d3, "d3");
  require_finite(s.d4, "d4");
}

OneQubitSweep to_dimensionless(const PhysicalSweep& p) {
  require_positive(p.a, "a");
  require_positive(p.b, "b");
  require_positive(p.B, "B");
  require_positive(p.T0, "T0");
  require_positive(p.hbar, "hbar");
  OneQubitSweep s;
  s.lambda = p.hbar * p.a / (p.b * p.b);
  s.eta4 = p.hbar * p.B * p.b * p.b / (p.a * p.a * p.a);
  s.tau0 = (p.a / p.b) * p.T0;
  return s;
}

double twist_phase(double tau, double lambda, double eta4) {
  const double t2 = tau * tau;
  return eta4 / (2.0 * lambda) * t2 * t2;
}

std::vector<double> resonance_times(double eta4) {
  require_positive(eta4, "eta4");
  const double r = 1.0 / std::sqrt(eta4);
  std::vector<double> out{-r, 0.0, r};
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Interval sweep_interval(double tau0) {
  require_positive(tau0, "tau0");
  return Interval{-tau0, tau0};
}

double field_azimuth(double tau, const OneQubitSweep& s, TwistSense sense) {
  const double phi = twist_phase(tau, s);
  return sense == TwistSense::resonant ? -phi : phi;
}

Mat2 hamiltonian_1q(double tau, const OneQubitSweep& s, TwistSense sense) {
  const double az = field_azimuth(tau, s, sense);
  const double inv = 1.0 / s.lambda;
  return bloch_matrix(-inv * std::cos(az), -inv * std::sin(az), -inv * tau);
}

Mat2 readout_basis_1q(double tau, const OneQubitSweep& s, TwistSense sense) {
  const double az = field_azimuth(tau, s, sense);
  // Polar angle of the field direction (cos az, sin az, tau).
  const double theta = std::atan2(1.0, tau);
  const complex lo = std::polar(1.0, -0.5 * az);
  const complex hi = std::polar(1.0, 0.5 * az);
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);

  const Vector<2> plus{lo * c, hi * sn};
  const Vector<2> minus{lo * sn, -hi * c};
  const bool plus_first = std::abs(plus[0]) >= std::abs(minus[0]);
  const Vector<2>& first = plus_first ? plus : minus;
  const Vector<2>& second = plus_first ? minus : plus;

  Mat2 m;
  for (std::size_t i = 0; i < 2; ++i) {
    m(i, 0) = first[i];
    m(i, 1) = second[i];
  }
  return m;
}

Mat4 hamiltonian_2q_pauli_part(double tau, const TwoQubitSweep& s) {
  const double phi = twist_phase(tau, s.lambda, s.eta4);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  const double sweep = tau / s.lambda;

  Mat4 h = (-(s.d1 + s.d2) / 2.0 + sweep) * kZ1;
  h += (-(s.d3 / s.lambda) * cp) * kX1;
  h += (-(s.d3 / s.lambda) * sp) * kY1;
  h += (-s.d2 / 2.0 + sweep) * kZ2;
  h += (-cp / s.lambda) * kX2;
  h += (-sp / s.lambda) * kY2;
  h += (-std::numbers::pi * s.d4 / 2.0) * kZZ;
  return h;
}

Mat4 hamiltonian_2q(double tau, const TwoQubitSweep& s) {
  Mat4 h = hamiltonian_2q_pauli_part(tau, s);
  if (s.c4 == 0.0) return h;
  const auto es = eigh(h);
  h += s.c4 * outer(column(es.vectors, 3), column(es.vectors, 3));
  return h;
}

}  // namespace trp
