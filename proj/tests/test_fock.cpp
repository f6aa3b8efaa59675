#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qho/fock.hpp"

using namespace qho;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Interior block: drop the top two levels, where a^dag-coupled products are
// unavoidably wrong on the truncated basis.
Matrix interior(const Matrix& m) {
  return m.topLeftCorner(m.rows() - 2, m.cols() - 2);
}

}  // namespace

TEST_CASE("annihilation matrix entries") {
  const Matrix a = make_annihilation(3).matrix();
  CHECK(a(0, 1) == Complex(1.0));
  CHECK(a(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(max_abs(a) == doctest::Approx(std::sqrt(2.0)));
  int nonzeros = 0;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (a(i, j) != Complex(0.0)) ++nonzeros;
  CHECK(nonzeros == 2);
}

TEST_CASE("a|1> = |0>") {
  const Matrix a = make_annihilation(2).matrix();
  const Vector one = StateVector::basis_state(2, 1).amplitudes();
  const Vector expect = StateVector::basis_state(2, 0).amplitudes();
  CHECK(max_abs(a * one - expect) <= 1e-15);
}

TEST_CASE("[a, a^dag] truncation defect sits at the bottom-right corner") {
  const Index dim = 16;
  const FockOperator a = make_annihilation(dim);
  const Matrix c = commutator(a, dagger(a)).matrix();
  Matrix expected = Matrix::Identity(dim, dim);
  expected(dim - 1, dim - 1) = 1.0 - double(dim);
  CHECK(max_abs(c - expected) <= 1e-12);
}

TEST_CASE("creation and number") {
  const Matrix n = make_number(3).matrix();
  CHECK(n(0, 0) == Complex(0.0));
  CHECK(n(1, 1) == Complex(1.0));
  CHECK(n(2, 2) == Complex(2.0));

  const Matrix adag = make_creation(4).matrix();
  const Vector vac = StateVector::basis_state(4, 0).amplitudes();
  CHECK(max_abs(adag * vac - StateVector::basis_state(4, 1).amplitudes()) <= 1e-15);

  // n = a^dag a holds exactly on the whole truncated basis
  const Matrix a = make_annihilation(8).matrix();
  CHECK(max_abs(a.adjoint() * a - make_number(8).matrix()) <= 1e-14);
}

TEST_CASE("quadratures") {
  const Index dim = 16;
  const Matrix x = make_position(dim, 2.0).matrix();
  const Matrix p = make_momentum(dim, 2.0).matrix();

  SUBCASE("canonical commutation away from the truncation edge") {
    const Matrix c = x * p - p * x;
    CHECK(max_abs(interior(c) - Complex(0.0, 1.0) *
                                    Matrix::Identity(dim - 2, dim - 2)) <= 1e-12);
  }

  SUBCASE("vacuum position variance is 1/(2 w_ref)") {
    const StateVector vac = StateVector::basis_state(dim, 0);
    CHECK(expectation(vac, FockOperator(x * x, true)).real() ==
          doctest::Approx(0.25).epsilon(1e-12));
  }

  SUBCASE("xp + px does not depend on the reference frequency") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> draw(0.1, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
      const double w1 = draw(rng), w2 = draw(rng);
      const Matrix x1 = make_position(dim, w1).matrix();
      const Matrix p1 = make_momentum(dim, w1).matrix();
      const Matrix x2 = make_position(dim, w2).matrix();
      const Matrix p2 = make_momentum(dim, w2).matrix();
      CHECK(max_abs((x1 * p1 + p1 * x1) - (x2 * p2 + p2 * x2)) <= 1e-12);
    }
  }
}

TEST_CASE("commutator identities") {
  const Index dim = 12;
  const FockOperator a = make_annihilation(dim);
  const FockOperator adag = dagger(a);
  const FockOperator adag2 = FockOperator(adag.matrix() * adag.matrix());

  SUBCASE("[a^dag^2, a] = -2 a^dag on interior levels") {
    const Matrix c = commutator(adag2, a).matrix();
    CHECK(max_abs(interior(c + 2.0 * adag.matrix())) <= 1e-12);
  }
  SUBCASE("[A, A] = 0") {
    CHECK(max_abs(commutator(adag2, adag2).matrix()) == 0.0);
  }
  SUBCASE("[n, a] = -a on interior levels") {
    const Matrix c = commutator(make_number(dim), a).matrix();
    CHECK(max_abs(interior(c + a.matrix())) <= 1e-12);
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(commutator(make_annihilation(4), make_annihilation(8)),
                    std::invalid_argument);
  }
}

TEST_CASE("squeeze operator") {
  const Index dim = 64;

  SUBCASE("r = 0 is the identity") {
    CHECK(max_abs(make_squeeze(dim, 0.0).matrix() - Matrix::Identity(dim, dim)) <=
          1e-12);
  }

  SUBCASE("unitarity for random r") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> draw(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix s = make_squeeze(dim, draw(rng)).matrix();
      CHECK(max_abs(s.adjoint() * s - Matrix::Identity(dim, dim)) <= 1e-10);
    }
  }

  SUBCASE("S(r) S(-r) = identity") {
    const Matrix s = make_squeeze(dim, 0.7).matrix();
    const Matrix si = make_squeeze(dim, -0.7).matrix();
    CHECK(max_abs(s * si - Matrix::Identity(dim, dim)) <= 1e-10);
  }

  SUBCASE("vacuum position variance scales by e^{-2r}") {
    const double r = 0.4;
    const Matrix x = make_position(dim, 1.0).matrix();
    const Matrix s = make_squeeze(dim, r).matrix();
    const Vector squeezed = s * StateVector::basis_state(dim, 0).amplitudes();
    const double var = (squeezed.adjoint() * x * x * squeezed)(0).real();
    CHECK(var == doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-9));
  }

  SUBCASE("truncation guard") {
    CHECK_THROWS_AS(make_squeeze(16, 1.5), truncation_error);
    CHECK_THROWS_AS(make_squeeze(1024, 5.5), std::invalid_argument);
  }
}

TEST_CASE("expectations") {
  const Index dim = 32;
  const FockOperator n = make_number(dim);
  CHECK(expectation(StateVector::basis_state(dim, 0), n).real() == 0.0);
  CHECK(expectation(StateVector::basis_state(dim, 1), n).real() == 1.0);

  // thermal occupation, checked against the Bose-Einstein form evaluated here
  const double q = std::exp(-1.0);
  Vector w(dim);
  for (Index k = 0; k < dim; ++k) w(k) = std::pow(q, double(k));
  w /= w.sum();
  Matrix rho = Matrix::Zero(dim, dim);
  rho.diagonal() = w;
  const double bose_einstein = 1.0 / std::expm1(1.0);
  CHECK(expectation(DensityMatrix(rho), n).real() ==
        doctest::Approx(bose_einstein).epsilon(1e-10));
  CHECK(bose_einstein == doctest::Approx(0.581977).epsilon(1e-6));

  CHECK_THROWS_AS(expectation(StateVector::basis_state(8, 0), n),
                  std::invalid_argument);
}

TEST_CASE("hermitian expectations are real") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index dim = 16;
  Vector amps(dim);
  for (Index k = 0; k < dim; ++k) amps(k) = Complex(gauss(rng), gauss(rng));
  amps /= amps.norm();
  const StateVector psi(amps);
  const FockOperator x = make_position(dim, 1.3);
  CHECK(std::abs(expectation(psi, x).imag()) <= 1e-10);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(make_annihilation(1), std::invalid_argument);
  CHECK_THROWS_AS(make_position(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_momentum(4, -1.0), std::invalid_argument);

  // hermitian flag on a non-hermitian matrix
  CHECK_THROWS_AS(FockOperator(make_annihilation(4).matrix(), true),
                  std::invalid_argument);

  // NaN entries
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(FockOperator{bad}, std::invalid_argument);

  // unnormalized state
  Vector v = Vector::Ones(3);
  CHECK_THROWS_AS(StateVector{v}, std::invalid_argument);

  // density matrix invariants
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2.0;
  CHECK_THROWS_AS(DensityMatrix{m}, std::invalid_argument);  // trace
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, std::invalid_argument);  // negativity
}
