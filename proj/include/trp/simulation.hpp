#pragma once

// Simulate-and-score: propagate a sweep and compare the applied gate with its target.

#include "trp/gates.hpp"
#include "trp/model.hpp"
#include "trp/propagator.hpp"

namespace trp {

template <std::size_t N>
struct GateRun {
  Matrix<N> u_applied = Matrix<N>::identity();
  GateScore score;
  PropagationResult<N> propagation;
};

// One-qubit gate. The computational states at the start and end of the sweep
// are the instantaneous field eigenstates (see readout_basis_1q), so the
// applied gate is B(tau0)^dagger U(tau0, -tau0) B(-tau0).
GateRun<2> simulate_gate(Gate g, const OneQubitSweep& s, const IntegratorConfig& cfg = {},
                         TwistSense sense = TwistSense::resonant);

// Two-qubit gate, read out in the fixed computational (Z1, Z2) basis.
GateRun<4> simulate_gate(Gate g, const TwoQubitSweep& s, const IntegratorConfig& cfg = {});

// Applied one-qubit gate in the readout frame for a lab-frame propagator over [-tau0, tau0].
Mat2 readout_frame(const Mat2& u_lab, const OneQubitSweep& s, TwistSense sense = TwistSense::resonant);

}  // namespace trp
