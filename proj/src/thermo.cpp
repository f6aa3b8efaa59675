#include "qho/thermo.hpp"

#include <cmath>

namespace qho {

void OttoCycleSpec::validate() const {
  if (!(omega1 > 0.0 && omega2 > 0.0))
    throw std::invalid_argument("OttoCycleSpec: frequencies must be positive");
  if (!(omega1 <= omega2))
    throw std::invalid_argument("OttoCycleSpec: requires omega1 <= omega2");
  if (!(Tc > 0.0 && Th > 0.0))
    throw std::invalid_argument("OttoCycleSpec: temperatures must be positive");
}

DensityMatrix thermal_state(double omega, double T, Index dim) {
  if (!(omega > 0.0 && T > 0.0))
    throw std::invalid_argument("thermal_state: omega and T must be positive");
  if (dim < 2) throw std::invalid_argument("thermal_state: dim must be >= 2");
  const double q = std::exp(-omega / T);
  // occupation tail beyond the basis: sum_{n>=dim} (1-q) q^n = q^dim
  if (std::pow(q, double(dim)) > 1e-10)
    throw truncation_error("thermal_state: dim too small for this T/omega");
  Vector weights(dim);
  for (Index n = 0; n < dim; ++n) weights(n) = std::pow(q, double(n));
  weights /= weights.sum();
  Matrix rho = Matrix::Zero(dim, dim);
  rho.diagonal() = weights;
  return DensityMatrix(std::move(rho));
}

double mean_photons_thermal(double omega, double T) {
  if (!(omega > 0.0 && T > 0.0))
    throw std::invalid_argument("mean_photons_thermal: omega and T must be positive");
  return 0.5 / std::tanh(omega / (2.0 * T)) - 0.5;
}

OttoWork otto_work_closed_form(const OttoCycleSpec& spec) {
  spec.validate();
  const double coth_c = 1.0 / std::tanh(spec.omega1 / (2.0 * spec.Tc));
  const double coth_h = 1.0 / std::tanh(spec.omega2 / (2.0 * spec.Th));
  OttoWork w;
  w.comp = 0.5 * (spec.omega2 - spec.omega1) * coth_c;
  w.expn = 0.5 * (spec.omega1 - spec.omega2) * coth_h;
  w.total = w.comp + w.expn;
  return w;
}

namespace {

double cycle_energy(const DensityMatrix& rho, double omega) {
  // E = w (<n> + 1/2)
  const double n = expectation(rho, make_number(rho.dim())).real();
  return omega * (n + 0.5);
}

DensityMatrix evolve_stroke(const DensityMatrix& rho, const FrequencyProtocol& ramp,
                            Index dim, const EvolveOptions& opts) {
  const Matrix u =
      propagator(HamiltonianKind::Cancelled, ramp, ramp.t0(), ramp.tf(), dim, opts);
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

}  // namespace

CycleLedger otto_cycle_simulate(const OttoCycleSpec& spec, RampShape shape,
                                double t_f, Index dim, const EvolveOptions& opts) {
  spec.validate();
  if (!(t_f > 0.0)) throw std::invalid_argument("otto_cycle_simulate: t_f > 0");
  auto make_ramp = [&](double wa, double wb) {
    return shape == RampShape::Quintic
               ? FrequencyProtocol::smooth_ramp(wa, wb, 0.0, t_f)
               : FrequencyProtocol::linear_ramp(wa, wb, 0.0, t_f);
  };

  CycleLedger ledger;
  const DensityMatrix rho_cold = thermal_state(spec.omega1, spec.Tc, dim);
  ledger.corner_energy[0] = cycle_energy(rho_cold, spec.omega1);

  const DensityMatrix rho_compressed =
      evolve_stroke(rho_cold, make_ramp(spec.omega1, spec.omega2), dim, opts);
  ledger.corner_energy[1] = cycle_energy(rho_compressed, spec.omega2);
  ledger.W_comp = ledger.corner_energy[1] - ledger.corner_energy[0];

  const DensityMatrix rho_hot = thermal_state(spec.omega2, spec.Th, dim);
  ledger.corner_energy[2] = cycle_energy(rho_hot, spec.omega2);
  ledger.Q_h = ledger.corner_energy[2] - ledger.corner_energy[1];

  const DensityMatrix rho_expanded =
      evolve_stroke(rho_hot, make_ramp(spec.omega2, spec.omega1), dim, opts);
  ledger.corner_energy[3] = cycle_energy(rho_expanded, spec.omega1);
  ledger.W_exp = ledger.corner_energy[3] - ledger.corner_energy[2];

  ledger.Q_c = ledger.corner_energy[0] - ledger.corner_energy[3];
  ledger.W_total = ledger.W_comp + ledger.W_exp;
  ledger.first_law_residual =
      std::abs(ledger.W_comp + ledger.W_exp + ledger.Q_h + ledger.Q_c);
  ledger.eta = ledger.Q_h != 0.0 ? -ledger.W_total / ledger.Q_h : 0.0;
  return ledger;
}

double otto_efficiency(const OttoCycleSpec& spec) {
  spec.validate();
  return 1.0 - spec.omega1 / spec.omega2;
}

}  // namespace qho
