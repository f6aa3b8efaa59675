#include "qho/fock.hpp"

#include <cmath>

namespace qho {

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

bool is_diagonal(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

FockOperator::FockOperator(Matrix entries, bool hermitian)
    : entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw std::invalid_argument("FockOperator: entries must be square");
  if (!entries_.allFinite())
    throw std::invalid_argument("FockOperator: entries must be finite");
  if (hermitian_) {
    const double scale = std::max(max_abs(entries_), 1.0);
    const double dist = max_abs(entries_ - entries_.adjoint().eval());
    if (dist > 1e-12 * scale)
      throw std::invalid_argument("FockOperator: hermitian flag violated");
  }
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1)
    throw std::invalid_argument("StateVector: empty amplitude vector");
  if (!amplitudes_.allFinite())
    throw std::invalid_argument("StateVector: amplitudes must be finite");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("StateVector: norm must be 1 within 1e-10");
}

StateVector StateVector::basis_state(Index dim, Index n) {
  if (n < 0 || n >= dim)
    throw std::invalid_argument("basis_state: level out of range");
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw std::invalid_argument("DensityMatrix: entries must be square");
  if (!entries_.allFinite())
    throw std::invalid_argument("DensityMatrix: entries must be finite");
  const double scale = std::max(max_abs(entries_), 1.0);
  if (max_abs(entries_ - entries_.adjoint().eval()) > 1e-12 * scale)
    throw std::invalid_argument("DensityMatrix: not hermitian within 1e-12");
  if (std::abs(entries_.trace().real() - 1.0) > 1e-10 ||
      std::abs(entries_.trace().imag()) > 1e-10)
    throw std::invalid_argument("DensityMatrix: trace must be 1 within 1e-10");
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue below -1e-10");
}

FockOperator make_annihilation(Index dim) {
  if (dim < 2) throw std::invalid_argument("make_annihilation: dim must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return FockOperator(std::move(a));
}

FockOperator make_creation(Index dim) { return dagger(make_annihilation(dim)); }

FockOperator make_number(Index dim) {
  if (dim < 2) throw std::invalid_argument("make_number: dim must be >= 2");
  Matrix n = Matrix::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) n(k, k) = double(k);
  return FockOperator(std::move(n), true);
}

FockOperator make_position(Index dim, double omega_ref) {
  if (!(omega_ref > 0.0))
    throw std::invalid_argument("make_position: omega_ref must be positive");
  const Matrix a = make_annihilation(dim).matrix();
  Matrix x = (a.adjoint() + a) / std::sqrt(2.0 * omega_ref);
  return FockOperator(std::move(x), true);
}

FockOperator make_momentum(Index dim, double omega_ref) {
  if (!(omega_ref > 0.0))
    throw std::invalid_argument("make_momentum: omega_ref must be positive");
  const Matrix a = make_annihilation(dim).matrix();
  Matrix p = Complex(0.0, 1.0) * std::sqrt(omega_ref / 2.0) * (a.adjoint() - a);
  return FockOperator(std::move(p), true);
}

FockOperator dagger(const FockOperator& op) {
  return FockOperator(op.matrix().adjoint(), op.hermitian());
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("commutator: dimension mismatch");
  return FockOperator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

FockOperator make_squeeze(Index dim, double r) {
  if (dim < 2) throw std::invalid_argument("make_squeeze: dim must be >= 2");
  if (std::abs(r) > 5.0)
    throw std::invalid_argument("make_squeeze: |r| must be <= 5");
  if (double(dim) < 8.0 * std::exp(2.0 * std::abs(r)))
    throw truncation_error("make_squeeze: dim too small for this squeeze strength");
  const Matrix a = make_annihilation(dim).matrix();
  // (r/2)(a^2 - a^dag^2) = -i K with K = i (r/2)(a^2 - a^dag^2) hermitian
  const Matrix k = Complex(0.0, 0.5 * r) * (a * a - (a.adjoint() * a.adjoint()).eval());
  return FockOperator(unitary_exp(k, 1.0));
}

Complex expectation(const StateVector& psi, const FockOperator& op) {
  if (psi.dim() != op.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

Complex expectation(const DensityMatrix& rho, const FockOperator& op) {
  if (rho.dim() != op.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  return (rho.matrix() * op.matrix()).trace();
}

Matrix unitary_exp(const Matrix& h, double tau) {
  const Index d = h.rows();
  if (is_diagonal(h)) {
    Matrix u = Matrix::Zero(d, d);
    for (Index k = 0; k < d; ++k)
      u(k, k) = std::exp(Complex(0.0, -tau * h(k, k).real()));
    return u;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(d);
  for (Index k = 0; k < d; ++k)
    phases(k) = std::exp(Complex(0.0, -tau * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qho
