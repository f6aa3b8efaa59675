#include "qho/dynamics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <functional>

namespace qho {

namespace {

// 4th-order commutator-free Magnus stepper (Blanes & Moan), two Gauss nodes.
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kNode1 = 0.5 - kSqrt3 / 6.0;
constexpr double kNode2 = 0.5 + kSqrt3 / 6.0;
constexpr double kWeight1 = 0.25 + kSqrt3 / 6.0;
constexpr double kWeight2 = 0.25 - kSqrt3 / 6.0;

bool is_diagonal(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

// Precomputes the time-independent operator blocks so the inner stepping loop
// only scales and adds matrices; the per-call builders would redo the ladder
// products at every substep.
std::function<Matrix(double)> make_assembler(HamiltonianKind kind,
                                             const FrequencyProtocol& p, Index dim) {
  const Matrix a = make_annihilation(dim).matrix();
  const Matrix num = make_number(dim).matrix();
  const Matrix adag2 = (a.adjoint() * a.adjoint()).eval();
  const Matrix a2 = (a * a).eval();
  // -i (a^dag^2 - a^2); the counterdiabatic term is c(t) times this
  const Matrix gen = (Complex(0.0, -1.0) * (adag2 - a2)).eval();
  auto coeff = [&p](double t) { return p.omega_dot(t) / (4.0 * p.omega(t)); };

  switch (kind) {
    case HamiltonianKind::ReferenceXP:
    case HamiltonianKind::StaXP: {
      const Matrix x = make_position(dim, p.omega0()).matrix();
      const Matrix mom = make_momentum(dim, p.omega0()).matrix();
      const Matrix x2 = (x * x).eval();
      const Matrix p2 = (mom * mom).eval();
      const bool with_cd = kind == HamiltonianKind::StaXP;
      return [&p, coeff, x2, p2, gen, with_cd](double t) {
        const double w = p.omega(t);
        Matrix h = 0.5 * p2 + (0.5 * w * w) * x2;
        if (with_cd) h += coeff(t) * gen;
        return h;
      };
    }
    case HamiltonianKind::Counterdiabatic:
      return [coeff, gen](double t) { return Matrix(coeff(t) * gen); };
    case HamiltonianKind::ReferenceLadder0: {
      const Matrix shifted = (num + 0.5 * Matrix::Identity(dim, dim)).eval();
      const Matrix quad = (adag2 + a2).eval();
      return [&p, shifted, quad](double t) {
        const double w0 = p.omega0();
        const double ratio2 = p.omega(t) * p.omega(t) / (w0 * w0);
        return Matrix(w0 * (0.5 * ratio2 + 0.5) * shifted +
                      w0 * (0.25 * ratio2 - 0.25) * quad);
      };
    }
    case HamiltonianKind::Effective:
      return [&p, coeff, num, gen](double t) {
        return Matrix(p.omega(t) * num - coeff(t) * gen);
      };
    case HamiltonianKind::Cancelled:
      return [&p, num](double t) { return Matrix(p.omega(t) * num); };
    case HamiltonianKind::EffectivePlusCD:
      return [&p, coeff, num, gen](double t) {
        const double c = coeff(t);
        return Matrix((p.omega(t) * num - c * gen) + c * gen);
      };
  }
  throw std::invalid_argument("make_assembler: unknown kind");
}

using Assembler = std::function<Matrix(double)>;

std::pair<Matrix, Matrix> cf4_generators(const Assembler& at, double t, double h) {
  const Matrix h1 = at(t + kNode1 * h);
  const Matrix h2 = at(t + kNode2 * h);
  return {kWeight1 * h1 + kWeight2 * h2, kWeight2 * h1 + kWeight1 * h2};
}

// psi <- exp(-i tau H) psi without forming the full exponential
void apply_exp(const Matrix& h, double tau, Vector& psi) {
  if (is_diagonal(h)) {
    for (Index k = 0; k < psi.size(); ++k)
      psi(k) *= std::exp(Complex(0.0, -tau * h(k, k).real()));
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const double before = psi.norm();
  Vector rotated = es.eigenvectors().adjoint() * psi;
  for (Index k = 0; k < rotated.size(); ++k)
    rotated(k) *= std::exp(Complex(0.0, -tau * es.eigenvalues()(k)));
  psi = es.eigenvectors() * rotated;
  // the exact exponential is norm-preserving; project out rounding drift so
  // it cannot accumulate over long runs
  psi *= before / psi.norm();
}

void cf4_apply(const Assembler& at, double t, double h, Vector& psi) {
  const auto [b_first, b_second] = cf4_generators(at, t, h);
  apply_exp(b_first, h, psi);
  apply_exp(b_second, h, psi);
}

struct RawRun {
  std::vector<Vector> states;
  double max_norm_drift = 0.0;
  double max_leakage = 0.0;
};

RawRun run_fixed_step(const Assembler& at, const Vector& psi0,
                      const std::vector<double>& grid, double dt_sub) {
  RawRun run;
  Vector psi = psi0;
  run.states.push_back(psi);
  const Index d = psi.size();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double span = grid[i + 1] - grid[i];
    const int nsub = std::max(1, int(std::ceil(span / dt_sub)));
    const double h = span / nsub;
    for (int k = 0; k < nsub; ++k) cf4_apply(at, grid[i] + k * h, h, psi);
    run.states.push_back(psi);
    run.max_norm_drift = std::max(run.max_norm_drift, std::abs(psi.norm() - 1.0));
    const double leak = std::norm(psi(d - 1)) + std::norm(psi(d - 2));
    run.max_leakage = std::max(run.max_leakage, leak);
  }
  return run;
}

double overlap_fidelity(const Vector& a, const Vector& b) {
  return std::norm(a.dot(b));
}

}  // namespace

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a + (b - a) * double(i) / double(n - 1);
  return out;
}

StateTrajectory evolve_schrodinger(HamiltonianKind kind, const FrequencyProtocol& p,
                                   const StateVector& psi0,
                                   const std::vector<double>& grid,
                                   const EvolveOptions& opts) {
  if (grid.size() < 2) throw std::invalid_argument("evolve_schrodinger: short grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("evolve_schrodinger: grid must increase strictly");
  p.require_in_window(grid.front());
  p.require_in_window(grid.back());

  const Assembler at = make_assembler(kind, p, psi0.dim());
  double dt_sub = opts.dt / p.omega0();
  RawRun run = run_fixed_step(at, psi0.amplitudes(), grid, dt_sub);
  if (opts.adaptive) {
    for (int halving = 0; halving < opts.max_halvings; ++halving) {
      RawRun finer = run_fixed_step(at, psi0.amplitudes(), grid, dt_sub / 2.0);
      const double change =
          std::abs(1.0 - overlap_fidelity(run.states.back(), finer.states.back()));
      run = std::move(finer);
      dt_sub /= 2.0;
      if (change < opts.convergence_tol) break;
      if (halving + 1 == opts.max_halvings)
        throw accuracy_error("evolve_schrodinger: step halving did not converge");
    }
  }
  if (run.max_norm_drift > opts.norm_tol)
    throw accuracy_error("evolve_schrodinger: norm drift exceeds tolerance");
  if (run.max_leakage > opts.leakage_tol)
    throw truncation_error("evolve_schrodinger: top-level leakage exceeds tolerance");

  StateTrajectory traj;
  traj.times = grid;
  traj.max_norm_drift = run.max_norm_drift;
  traj.max_leakage = run.max_leakage;
  traj.states.reserve(run.states.size());
  for (auto& v : run.states) traj.states.emplace_back(std::move(v));
  return traj;
}

Matrix propagator(HamiltonianKind kind, const FrequencyProtocol& p, double t0,
                  double t1, Index dim, const EvolveOptions& opts) {
  p.require_in_window(t0);
  p.require_in_window(t1);
  const Assembler at = make_assembler(kind, p, dim);
  auto run = [&](double dt_sub) {
    Matrix u = Matrix::Identity(dim, dim);
    const double span = t1 - t0;
    const int nsub = std::max(1, int(std::ceil(std::abs(span) / dt_sub)));
    const double h = span / nsub;
    for (int k = 0; k < nsub; ++k) {
      const auto [b_first, b_second] = cf4_generators(at, t0 + k * h, h);
      const Matrix e1 = unitary_exp(b_first, h);
      const Matrix e2 = unitary_exp(b_second, h);
      if (is_diagonal(e1) && is_diagonal(e2)) {
        const Vector d = e2.diagonal().cwiseProduct(e1.diagonal());
        u.array().colwise() *= d.array();
      } else {
        u = e2 * (e1 * u).eval();
      }
    }
    return u;
  };
  double dt_sub = opts.dt / p.omega0();
  Matrix u = run(dt_sub);
  if (opts.adaptive) {
    for (int halving = 0; halving < opts.max_halvings; ++halving) {
      Matrix finer = run(dt_sub / 2.0);
      const double change = (u - finer).cwiseAbs().maxCoeff();
      u = std::move(finer);
      dt_sub /= 2.0;
      if (change < opts.convergence_tol) break;
      if (halving + 1 == opts.max_halvings)
        throw accuracy_error("propagator: step halving did not converge");
    }
  }
  return u;
}

BogoliubovTrajectory evolve_bogoliubov(const FrequencyProtocol& p,
                                       const std::vector<double>& grid) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<Complex, 2>;
  if (grid.size() < 2) throw std::invalid_argument("evolve_bogoliubov: short grid");
  p.require_in_window(grid.front());
  p.require_in_window(grid.back());

  auto rhs = [&p](const State& s, State& dsdt, double t) {
    const double w = p.omega(t);
    const double g = p.omega_dot(t) / (2.0 * w);
    dsdt[0] = Complex(0.0, -w) * s[0] + g * std::conj(s[1]);
    dsdt[1] = Complex(0.0, -w) * s[1] + g * std::conj(s[0]);
  };

  BogoliubovTrajectory traj;
  auto observe = [&traj](const State& s, double t) {
    traj.times.push_back(t);
    traj.pairs.push_back({s[0], s[1]});
    const double err = std::abs(std::norm(s[0]) - std::norm(s[1]) - 1.0);
    traj.max_invariant_error = std::max(traj.max_invariant_error, err);
  };

  State s{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  auto stepper = ode::make_controlled(1e-13, 1e-13,
                                      ode::runge_kutta_fehlberg78<State>());
  ode::integrate_times(stepper, rhs, s, grid.begin(), grid.end(),
                       1e-3 / p.omega0(), observe);
  if (traj.max_invariant_error > 1e-9)
    throw accuracy_error("evolve_bogoliubov: |u|^2 - |v|^2 invariant violated");
  return traj;
}

double photon_number_vacuum(const BogoliubovPair& pair) { return std::norm(pair.v); }

double casimir_growth_closed_form(double eps, double omega0, double t) {
  if (eps < 0.0) throw std::invalid_argument("casimir_growth_closed_form: eps >= 0");
  const double s = std::sinh(0.5 * eps * omega0 * t);
  return s * s;
}

StateVector instantaneous_eigenstate(int n, const FrequencyProtocol& p, double t,
                                     Index dim) {
  if (n < 0 || Index(n) > dim / 4)
    throw std::invalid_argument(
        "instantaneous_eigenstate: need n <= dim/4 for truncation headroom");
  const double r = 0.5 * std::log(p.omega(t) / p.omega0());
  const Matrix s = make_squeeze(dim, r).matrix();
  Vector amps = s.col(n);
  return StateVector(std::move(amps));
}

std::pair<StateVector, AdiabaticPhases> adiabatic_solution(int n,
                                                           const FrequencyProtocol& p,
                                                           double t, Index dim) {
  using boost::math::quadrature::gauss_kronrod;
  const double t0 = p.t0();
  const double energy_integral = gauss_kronrod<double, 61>::integrate(
      [&p](double tau) { return p.omega(tau); }, t0, t, 10, 1e-13);
  AdiabaticPhases phases;
  phases.n = n;
  phases.theta = -(n + 0.5) * energy_integral;

  // gamma = i Integral <n(tau)| d/dtau |n(tau)> dtau, evaluated numerically
  // (Richardson-extrapolated central differences, Simpson in tau).
  const double span = std::isfinite(p.tf()) ? (p.tf() - p.t0()) : 1.0;
  const double fd = 1e-4 * span;
  auto berry_connection = [&](double tau) {
    const Vector c = instantaneous_eigenstate(n, p, tau, dim).amplitudes();
    auto diff = [&](double h) {
      const Vector plus = instantaneous_eigenstate(n, p, tau + h, dim).amplitudes();
      const Vector minus = instantaneous_eigenstate(n, p, tau - h, dim).amplitudes();
      return Vector(((plus - minus) / (2.0 * h)).eval());
    };
    const Vector d = (4.0 * diff(fd / 2.0) - diff(fd)) / 3.0;
    return c.dot(d);  // <n | d_t n>
  };
  const int kSimpsonPanels = 50;
  Complex connection_integral(0.0, 0.0);
  if (t > t0) {
    const double h = (t - t0) / (2 * kSimpsonPanels);
    Complex acc = berry_connection(t0) + berry_connection(t);
    for (int k = 1; k < 2 * kSimpsonPanels; ++k)
      acc += (k % 2 == 1 ? 4.0 : 2.0) * berry_connection(t0 + k * h);
    connection_integral = acc * (h / 3.0);
  }
  phases.gamma = (Complex(0.0, 1.0) * connection_integral).real();

  Vector amps = instantaneous_eigenstate(n, p, t, dim).amplitudes();
  amps *= std::exp(Complex(0.0, phases.gamma + phases.theta));
  return {StateVector(std::move(amps)), phases};
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(psi.amplitudes().dot(phi.amplitudes()));
}

double sta_cost_diagnostic(const FrequencyProtocol& p, double t0, double t1,
                           Index dim) {
  using boost::math::quadrature::gauss_kronrod;
  const Matrix a = make_annihilation(dim).matrix();
  const Matrix m =
      Complex(0.0, -1.0) * ((a.adjoint() * a.adjoint()).eval() - (a * a).eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double op_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double coeff_integral = gauss_kronrod<double, 31>::integrate(
      [&p](double tau) { return std::abs(p.omega_dot(tau) / (4.0 * p.omega(tau))); },
      t0, t1, 12, 1e-12);
  return op_norm * coeff_integral;
}

}  // namespace qho
