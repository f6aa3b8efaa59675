#pragma once

#include "qho/dynamics.hpp"
#include "qho/fock.hpp"

namespace qho {

/// Four-stroke Otto cycle: compression w1 -> w2 against the cold bath state,
/// hot isochore at w2, expansion w2 -> w1, cold isochore at w1.
struct OttoCycleSpec {
  double omega1;  // low frequency
  double omega2;  // high frequency
  double Tc;      // cold bath temperature
  double Th;      // hot bath temperature

  void validate() const;
  bool engine_regime() const { return Tc < Th && omega1 < omega2; }
};

struct OttoWork {
  double comp;
  double expn;
  double total;
};

/// Energy bookkeeping of one simulated cycle. Works and heats are energy
/// changes of the oscillator, so W_comp + W_exp + Q_h + Q_c = 0.
struct CycleLedger {
  double corner_energy[4];  // after: cold prep, compression, hot isochore, expansion
  double W_comp = 0.0;
  double W_exp = 0.0;
  double Q_h = 0.0;
  double Q_c = 0.0;
  double W_total = 0.0;
  double eta = 0.0;  // -W_total / Q_h in the engine regime
  double first_law_residual = 0.0;
};

enum class RampShape { Quintic, Linear };

/// Gibbs state exp(-w n / T)/Z on the truncated basis. Throws
/// truncation_error when the occupation tail beyond dim exceeds 1e-10.
DensityMatrix thermal_state(double omega, double T, Index dim);

/// (1/2) coth(w / 2T) - 1/2
double mean_photons_thermal(double omega, double T);

OttoWork otto_work_closed_form(const OttoCycleSpec& spec);

CycleLedger otto_cycle_simulate(const OttoCycleSpec& spec, RampShape shape,
                                double t_f, Index dim,
                                const EvolveOptions& opts = {});

/// 1 - w1/w2
double otto_efficiency(const OttoCycleSpec& spec);

}  // namespace qho
