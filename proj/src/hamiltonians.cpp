#include "qho/hamiltonians.hpp"

#include <cmath>
#include <sstream>

namespace qho {

FrequencyProtocol::FrequencyProtocol(ProtocolKind kind, double omega0, double omegaf,
                                     double eps, double t0, double tf)
    : kind_(kind), omega0_(omega0), omegaf_(omegaf), eps_(eps), t0_(t0), tf_(tf) {
  validate();
}

void FrequencyProtocol::validate() const {
  if (!(omega0_ > 0.0))
    throw std::invalid_argument("FrequencyProtocol: omega0 must be positive");
  if (!(tf_ > t0_))
    throw std::invalid_argument("FrequencyProtocol: tf must exceed t0");
  switch (kind_) {
    case ProtocolKind::Resonant:
      if (!(eps_ >= 0.0 && eps_ < 0.5))
        throw std::invalid_argument("FrequencyProtocol: resonant requires 0 <= eps < 0.5");
      break;
    case ProtocolKind::LinearRamp:
    case ProtocolKind::SmoothRamp:
      if (!(omegaf_ > 0.0))
        throw std::invalid_argument("FrequencyProtocol: omegaf must be positive");
      break;
    case ProtocolKind::Constant:
      break;
  }
  if (std::isfinite(t0_) && std::isfinite(tf_)) {
    for (int k = 0; k < 100; ++k) {
      const double t = t0_ + (tf_ - t0_) * (k + 0.5) / 100.0;
      if (!(omega(t) > 0.0))
        throw std::invalid_argument("FrequencyProtocol: omega(t) must stay positive");
    }
  }
}

FrequencyProtocol FrequencyProtocol::constant(double omega0) {
  return FrequencyProtocol(ProtocolKind::Constant, omega0, omega0, 0.0, 0.0,
                           std::numeric_limits<double>::infinity());
}

FrequencyProtocol FrequencyProtocol::resonant(double omega0, double eps, double t0,
                                              double tf) {
  return FrequencyProtocol(ProtocolKind::Resonant, omega0, omega0, eps, t0, tf);
}

FrequencyProtocol FrequencyProtocol::linear_ramp(double omega0, double omegaf,
                                                 double t0, double tf) {
  return FrequencyProtocol(ProtocolKind::LinearRamp, omega0, omegaf, 0.0, t0, tf);
}

FrequencyProtocol FrequencyProtocol::smooth_ramp(double omega0, double omegaf,
                                                 double t0, double tf) {
  return FrequencyProtocol(ProtocolKind::SmoothRamp, omega0, omegaf, 0.0, t0, tf);
}

double FrequencyProtocol::omega(double t) const {
  const double tc = std::clamp(t, t0_, tf_);
  switch (kind_) {
    case ProtocolKind::Constant:
      return omega0_;
    case ProtocolKind::Resonant:
      return omega0_ * (1.0 + eps_ * std::sin(2.0 * omega0_ * tc));
    case ProtocolKind::LinearRamp: {
      const double s = (tc - t0_) / (tf_ - t0_);
      return omega0_ + (omegaf_ - omega0_) * s;
    }
    case ProtocolKind::SmoothRamp: {
      const double s = (tc - t0_) / (tf_ - t0_);
      const double shape = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
      return omega0_ + (omegaf_ - omega0_) * shape;
    }
  }
  return omega0_;
}

double FrequencyProtocol::omega_dot(double t) const {
  if (t < t0_ || t > tf_) return 0.0;
  switch (kind_) {
    case ProtocolKind::Constant:
      return 0.0;
    case ProtocolKind::Resonant:
      return 2.0 * eps_ * omega0_ * omega0_ * std::cos(2.0 * omega0_ * t);
    case ProtocolKind::LinearRamp:
      return (omegaf_ - omega0_) / (tf_ - t0_);
    case ProtocolKind::SmoothRamp: {
      const double s = (t - t0_) / (tf_ - t0_);
      const double dshape = 30.0 * s * s * (1.0 + s * (-2.0 + s));
      return (omegaf_ - omega0_) * dshape / (tf_ - t0_);
    }
  }
  return 0.0;
}

bool FrequencyProtocol::in_window(double t) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(tf_ - t0_));
  return t >= t0_ - slack && (std::isinf(tf_) || t <= tf_ + slack);
}

void FrequencyProtocol::require_in_window(double t) const {
  if (!in_window(t)) {
    std::ostringstream msg;
    msg << "time " << t << " outside protocol window [" << t0_ << ", " << tf_ << "]";
    throw std::invalid_argument(msg.str());
  }
}

std::string FrequencyProtocol::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case ProtocolKind::Constant:
      s << "constant(omega0=" << omega0_ << ")";
      break;
    case ProtocolKind::Resonant:
      s << "resonant(omega0=" << omega0_ << ",eps=" << eps_ << ")";
      break;
    case ProtocolKind::LinearRamp:
      s << "linear(" << omega0_ << "->" << omegaf_ << ",t=[" << t0_ << "," << tf_ << "])";
      break;
    case ProtocolKind::SmoothRamp:
      s << "quintic(" << omega0_ << "->" << omegaf_ << ",t=[" << t0_ << "," << tf_ << "])";
      break;
  }
  return s.str();
}

FockOperator h0_xp(const FrequencyProtocol& p, double t, Index dim) {
  p.require_in_window(t);
  const Matrix x = make_position(dim, p.omega0()).matrix();
  const Matrix mom = make_momentum(dim, p.omega0()).matrix();
  const double w = p.omega(t);
  Matrix h = 0.5 * (mom * mom).eval() + (0.5 * w * w) * (x * x).eval();
  return FockOperator(std::move(h), true);
}

FockOperator h1_counterdiabatic(const FrequencyProtocol& p, double t, Index dim) {
  p.require_in_window(t);
  const Matrix a = make_annihilation(dim).matrix();
  const double c = p.omega_dot(t) / (4.0 * p.omega(t));
  // -i c (a^dag^2 - a^2), identical to -(c)(xp + px) at any reference frequency
  Matrix h = Complex(0.0, -c) * ((a.adjoint() * a.adjoint()).eval() - (a * a).eval());
  return FockOperator(std::move(h), true);
}

FockOperator h_sta_xp(const FrequencyProtocol& p, double t, Index dim) {
  return FockOperator(h0_xp(p, t, dim).matrix() + h1_counterdiabatic(p, t, dim).matrix(),
                      true);
}

FockOperator h0_ladder0(const FrequencyProtocol& p, double t, Index dim) {
  p.require_in_window(t);
  const Matrix a = make_annihilation(dim).matrix();
  const Matrix n = make_number(dim).matrix();
  const double w0 = p.omega0();
  const double ratio2 = p.omega(t) * p.omega(t) / (w0 * w0);
  const double diag_coeff = w0 * (0.5 * ratio2 + 0.5);
  const double sq_coeff = w0 * (0.25 * ratio2 - 0.25);
  Matrix h = diag_coeff * (n + 0.5 * Matrix::Identity(dim, dim)) +
             sq_coeff * ((a.adjoint() * a.adjoint()).eval() + (a * a).eval());
  return FockOperator(std::move(h), true);
}

FockOperator h_eff(const FrequencyProtocol& p, double t, Index dim) {
  p.require_in_window(t);
  const Matrix a = make_annihilation(dim).matrix();
  const double c = p.omega_dot(t) / (4.0 * p.omega(t));
  Matrix h = p.omega(t) * make_number(dim).matrix() +
             Complex(0.0, c) * ((a.adjoint() * a.adjoint()).eval() - (a * a).eval());
  return FockOperator(std::move(h), true);
}

FockOperator h_cancelled(const FrequencyProtocol& p, double t, Index dim) {
  p.require_in_window(t);
  return FockOperator(p.omega(t) * make_number(dim).matrix(), true);
}

FockOperator build_hamiltonian(HamiltonianKind kind, const FrequencyProtocol& p,
                               double t, Index dim) {
  switch (kind) {
    case HamiltonianKind::ReferenceXP:
      return h0_xp(p, t, dim);
    case HamiltonianKind::Counterdiabatic:
      return h1_counterdiabatic(p, t, dim);
    case HamiltonianKind::StaXP:
      return h_sta_xp(p, t, dim);
    case HamiltonianKind::ReferenceLadder0:
      return h0_ladder0(p, t, dim);
    case HamiltonianKind::Effective:
      return h_eff(p, t, dim);
    case HamiltonianKind::Cancelled:
      return h_cancelled(p, t, dim);
    case HamiltonianKind::EffectivePlusCD:
      return FockOperator(
          h_eff(p, t, dim).matrix() + h1_counterdiabatic(p, t, dim).matrix(), true);
  }
  throw std::invalid_argument("build_hamiltonian: unknown kind");
}

}  // namespace qho
