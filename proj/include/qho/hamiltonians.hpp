#pragma once

#include <limits>
#include <string>

#include "qho/fock.hpp"

namespace qho {

enum class ProtocolKind { Constant, Resonant, LinearRamp, SmoothRamp };

/// Frequency drive omega(t) on [t0, tf] with its analytic derivative.
/// Outside the window omega is clamped to the endpoint values, matching a
/// protocol that starts and ends at constant frequency.
class FrequencyProtocol {
 public:
  static FrequencyProtocol constant(double omega0);
  /// omega(t) = omega0 [1 + eps sin(2 omega0 t)], eps < 0.5
  static FrequencyProtocol resonant(double omega0, double eps, double t0 = 0.0,
                                    double tf = std::numeric_limits<double>::infinity());
  static FrequencyProtocol linear_ramp(double omega0, double omegaf, double t0, double tf);
  /// Quintic interpolation of omega with zero slope at both endpoints.
  static FrequencyProtocol smooth_ramp(double omega0, double omegaf, double t0, double tf);

  double omega(double t) const;
  double omega_dot(double t) const;

  ProtocolKind kind() const { return kind_; }
  double omega0() const { return omega0_; }
  double omegaf() const { return omegaf_; }
  double eps() const { return eps_; }
  double t0() const { return t0_; }
  double tf() const { return tf_; }

  bool in_window(double t) const;
  void require_in_window(double t) const;  // throws std::invalid_argument

  std::string describe() const;

 private:
  FrequencyProtocol(ProtocolKind kind, double omega0, double omegaf, double eps,
                    double t0, double tf);
  void validate() const;

  ProtocolKind kind_;
  double omega0_, omegaf_, eps_, t0_, tf_;
};

enum class HamiltonianKind {
  ReferenceXP,      // p^2/2 + w^2(t) x^2/2
  Counterdiabatic,  // -(wdot/4w)(xp + px) = -i(wdot/4w)(a^dag^2 - a^2)
  StaXP,            // ReferenceXP + Counterdiabatic
  ReferenceLadder0, // ReferenceXP rewritten in the t=0 ladder operators
  Effective,        // w(t) a^dag a + i(wdot/4w)(a^dag^2 - a^2)
  Cancelled,        // w(t) a^dag a
  EffectivePlusCD   // Effective + Counterdiabatic (== Cancelled, exactly)
};

FockOperator h0_xp(const FrequencyProtocol& p, double t, Index dim);
FockOperator h1_counterdiabatic(const FrequencyProtocol& p, double t, Index dim);
FockOperator h_sta_xp(const FrequencyProtocol& p, double t, Index dim);
FockOperator h0_ladder0(const FrequencyProtocol& p, double t, Index dim);
FockOperator h_eff(const FrequencyProtocol& p, double t, Index dim);
FockOperator h_cancelled(const FrequencyProtocol& p, double t, Index dim);

FockOperator build_hamiltonian(HamiltonianKind kind, const FrequencyProtocol& p,
                               double t, Index dim);

}  // namespace qho
