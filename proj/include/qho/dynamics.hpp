#pragma once

#include <utility>
#include <vector>

#include "qho/fock.hpp"
#include "qho/hamiltonians.hpp"

namespace qho {

struct EvolveOptions {
  double dt = 1e-2;              // substep target, in units of 1/omega0
  bool adaptive = true;          // halve dt until step-halving converges
  double convergence_tol = 1e-9; // fidelity change allowed under halving
  double norm_tol = 1e-10;       // max norm drift over the run
  double leakage_tol = 1e-6;     // max population of the top two levels
  int max_halvings = 8;
};

struct StateTrajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  double max_norm_drift = 0.0;
  double max_leakage = 0.0;
};

struct BogoliubovPair {
  Complex u{1.0, 0.0};
  Complex v{0.0, 0.0};
};

struct BogoliubovTrajectory {
  std::vector<double> times;
  std::vector<BogoliubovPair> pairs;
  double max_invariant_error = 0.0;  // | |u|^2 - |v|^2 - 1 |
};

struct AdiabaticPhases {
  int n = 0;
  double theta = 0.0;  // dynamical phase, -Integral E_n dt'
  double gamma = 0.0;  // geometric phase, vanishes for this system
};

std::vector<double> linspace(double a, double b, std::size_t n);

/// Propagates psi0 on the given grid with a 4th-order commutator-free
/// Magnus stepper (two midpoint-weighted exponentials per substep).
StateTrajectory evolve_schrodinger(HamiltonianKind kind, const FrequencyProtocol& p,
                                   const StateVector& psi0,
                                   const std::vector<double>& grid,
                                   const EvolveOptions& opts = {});

/// Full propagator U(t1 <- t0) with the same stepper.
Matrix propagator(HamiltonianKind kind, const FrequencyProtocol& p, double t0,
                  double t1, Index dim, const EvolveOptions& opts = {});

/// Heisenberg-picture coefficient ODE, a_H = u a0 + v a0^dag:
///   du/dt = -i w u + (wdot/2w) conj(v)
///   dv/dt = -i w v + (wdot/2w) conj(u)
/// Integrated independently of the matrix machinery (this is the oracle).
BogoliubovTrajectory evolve_bogoliubov(const FrequencyProtocol& p,
                                       const std::vector<double>& grid);

double photon_number_vacuum(const BogoliubovPair& pair);

/// sinh^2(eps w0 t / 2), the leading-order resonant growth law.
double casimir_growth_closed_form(double eps, double omega0, double t);

/// Instantaneous eigenstate of h0_xp at time t: S(r)|n> with
/// r = (1/2) ln(w(t)/w0).
StateVector instantaneous_eigenstate(int n, const FrequencyProtocol& p, double t,
                                     Index dim);

std::pair<StateVector, AdiabaticPhases> adiabatic_solution(int n,
                                                           const FrequencyProtocol& p,
                                                           double t, Index dim);

double fidelity(const StateVector& psi, const StateVector& phi);

/// Integral of the spectral norm of the counterdiabatic term over [t0, t1].
double sta_cost_diagnostic(const FrequencyProtocol& p, double t0, double t1, Index dim);

}  // namespace qho
