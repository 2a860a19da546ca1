#include "trp/simulation.hpp"

#include "trp/error.hpp"

namespace trp {

Mat2 readout_frame(const Mat2& u_lab, const OneQubitSweep& s, TwistSense sense) {
  const Interval w = sweep_interval(s.tau0);
  return adjoint(readout_basis_1q(w.end, s, sense)) * u_lab * readout_basis_1q(w.begin, s, sense);
}

GateRun<2> simulate_gate(Gate g, const OneQubitSweep& s, const IntegratorConfig& cfg, TwistSense sense) {
  validate(s);
  const Mat2 target = target_matrix_1q(g);
  const Hamiltonian<2> h = [&s, sense](double tau) { return hamiltonian_1q(tau, s, sense); };
  GateRun<2> run;
  run.propagation = propagate<2>(h, s.tau0, cfg);
  run.u_applied = readout_frame(run.propagation.u_applied, s, sense);
  run.score = score(run.u_applied, target);
  return run;
}

GateRun<4> simulate_gate(Gate g, const TwoQubitSweep& s, const IntegratorConfig& cfg) {
  validate(s);
  const Mat4 target = target_matrix_2q(g);
  const Hamiltonian<4> h = [&s](double tau) { return hamiltonian_2q(tau, s); };
  GateRun<4> run;
  run.propagation = propagate<4>(h, s.tau0, cfg);
  run.u_applied = run.propagation.u_applied;
  run.score = score(run.u_applied, target);
  return run;
}

}  // namespace trp
