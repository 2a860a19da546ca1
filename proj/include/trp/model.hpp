#pragma once

// Twisted-rapid-passage sweep parameters and the dimensionless Hamiltonians.
//
// Time is the dimensionless tau = (a/b) t, and evolution follows
// i dU/dtau = H(tau) U. The transverse control field twists with the quartic
// profile phi4(tau) = (eta4 / 2 lambda) tau^4.

#include <vector>

#include "trp/linalg.hpp"

namespace trp {

struct OneQubitSweep {
  double lambda = 0.0;  // hbar a / b^2
  double eta4 = 0.0;    // hbar B b^2 / a^3
  double tau0 = 0.0;    // inversion time; the sweep runs over [-tau0, tau0]
};

// Physical control-field parameters, F(t) = a t z + b cos(phi) x + b sin(phi) y.
// Under the simulated window tau in [-tau0, tau0], T0 is the half-duration
// of the physical sweep.
struct PhysicalSweep {
  double a = 0.0;
  double b = 0.0;
  double B = 0.0;
  double T0 = 0.0;
  double hbar = 1.0;
};

struct TwoQubitSweep {
  double lambda = 0.0;
  double eta4 = 0.0;
  double tau0 = 0.0;
  double c4 = 0.0;  // weight of the |E4><E4| level-splitting term
  double d1 = 0.0;  // (omega1 - omega2) b2 / a
  double d2 = 0.0;  // (Delta / a) b2
  double d3 = 0.0;  // b1 / b2
  double d4 = 0.0;  // (J / a) b2
};

// Sense in which the transverse field of the one-qubit Hamiltonian twists.
//
// resonant: field azimuth -phi4(tau). In the frame co-rotating with the field
//   the longitudinal term is -(tau - eta4 tau^3)/lambda, which vanishes at
//   tau = 0 and +-eta4^{-1/2}: three resonances per sweep.
// literal: field azimuth +phi4(tau), i.e. -(1/lambda)(tau Z + cos X + sin Y).
//   The co-rotating longitudinal term -(tau + eta4 tau^3)/lambda has a single
//   root, so the sweep is a plain Landau-Zener crossing.
enum class TwistSense { resonant, literal };

struct Interval {
  double begin = 0.0;
  double end = 0.0;
  double length() const { return end - begin; }
};

// Throws Error(non_positive_parameter) unless lambda, eta4, tau0 > 0.
void validate(const OneQubitSweep& s);
void validate(const TwoQubitSweep& s);

// lambda = hbar a / b^2, eta4 = hbar B b^2 / a^3, tau0 = (a/b) T0.
OneQubitSweep to_dimensionless(const PhysicalSweep& p);

// phi4(tau) = (eta4 / 2 lambda) tau^4, in radians. General polynomial twist
// phi_n(t) = (2/n) B t^n is not exposed; only n = 4 is simulated.
double twist_phase(double tau, double lambda, double eta4);
inline double twist_phase(double tau, const OneQubitSweep& s) {
  return twist_phase(tau, s.lambda, s.eta4);
}

// Real roots of tau - eta4 tau^3 = 0, ascending: {-eta4^{-1/2}, 0, eta4^{-1/2}}.
// Exact duplicates are merged.
std::vector<double> resonance_times(double eta4);
inline std::vector<double> resonance_times(const OneQubitSweep& s) { return resonance_times(s.eta4); }

// Symmetric simulation window [-tau0, tau0].
Interval sweep_interval(double tau0);

// (1/lambda) { -tau Z - cos(az) X - sin(az) Y } with az = -+phi4(tau).
Mat2 hamiltonian_1q(double tau, const OneQubitSweep& s, TwistSense sense = TwistSense::resonant);

// Field azimuth of the one-qubit control field at tau.
double field_azimuth(double tau, const OneQubitSweep& s, TwistSense sense = TwistSense::resonant);

// Columns are the computational readout states at tau: eigenvectors of the
// field direction n(tau).sigma in the spinor gauge
//   |+n> = (e^{-i az/2} cos(theta/2),  e^{i az/2} sin(theta/2))
//   |-n> = (e^{-i az/2} sin(theta/2), -e^{i az/2} cos(theta/2)),
// ordered so that column 0 is the one closer to spin-up.
Mat2 readout_basis_1q(double tau, const OneQubitSweep& s, TwistSense sense = TwistSense::resonant);

// The five Pauli-sum terms of the two-qubit Hamiltonian (everything except
// the c4 projector).
Mat4 hamiltonian_2q_pauli_part(double tau, const TwoQubitSweep& s);

// Pauli part plus c4 |E4><E4|, where E4 is the highest-energy eigenvector of
// the Pauli part at the same tau.
Mat4 hamiltonian_2q(double tau, const TwoQubitSweep& s);

}  // namespace trp
