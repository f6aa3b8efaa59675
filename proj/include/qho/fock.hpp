#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qho/errors.hpp"

namespace qho {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Dense operator on the truncated number basis |0>..|dim-1>.
/// Units: hbar = m = k_B = 1, entries are dimensionless.
class FockOperator {
 public:
  /// Takes ownership of `entries`. If `hermitian` is set the matrix must be
  /// self-adjoint within 1e-12 relative to its largest entry.
  explicit FockOperator(Matrix entries, bool hermitian = false);

  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  bool hermitian() const { return hermitian_; }

 private:
  Matrix entries_;
  bool hermitian_;
};

/// Pure state on the truncated basis; norm must be 1 within 1e-10.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  static StateVector basis_state(Index dim, Index n);

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  Vector amplitudes_;
};

/// Mixed state: hermitian within 1e-12, unit trace within 1e-10,
/// smallest eigenvalue >= -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

FockOperator make_annihilation(Index dim);
FockOperator make_creation(Index dim);
FockOperator make_number(Index dim);

// x = (a^dag + a)/sqrt(2 w_ref),  p = i sqrt(w_ref/2) (a^dag - a)
FockOperator make_position(Index dim, double omega_ref);
FockOperator make_momentum(Index dim, double omega_ref);

FockOperator dagger(const FockOperator& op);
FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// S(r) = exp[(r/2)(a^2 - a^dag^2)]. Requires |r| <= 5 and
/// dim >= 8 e^{2|r|} so the squeezed tails fit the basis.
FockOperator make_squeeze(Index dim, double r);

Complex expectation(const StateVector& psi, const FockOperator& op);
Complex expectation(const DensityMatrix& rho, const FockOperator& op);

/// exp(-i tau H) for hermitian H, unitary to machine precision
/// (eigendecomposition; diagonal H takes the O(dim) path).
Matrix unitary_exp(const Matrix& hermitian_generator, double tau);

}  // namespace qho
