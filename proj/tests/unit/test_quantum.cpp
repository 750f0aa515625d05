#include <doctest.h>

#include <cmath>
#include <numbers>

#include "relinc/error.hpp"
#include "relinc/quantum.hpp"
#include "relinc/rng.hpp"

using namespace relinc;

namespace {

ComplexVector ket(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("overlap_matrix of a basis with itself is the identity") {
  for (int d = 2; d <= 5; ++d) {
    const Basis b = haar_random_basis(d, 11 + d);
    const OverlapMatrix x = overlap_matrix(b, b);
    CHECK((x.matrix() - RealMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(x.stochasticity() == Stochasticity::Bistochastic);
  }
}

TEST_CASE("Fourier basis is unbiased to the computational basis") {
  for (int d = 2; d <= 6; ++d) {
    const OverlapMatrix x = overlap_matrix(fourier_basis(d), Basis::computational(d));
    CHECK((x.matrix().array() - 1.0 / d).abs().maxCoeff() < 1e-12);
  }
  CHECK(linalg::unitarity_defect(fourier_basis(4).unitary()) < 1e-12);
}

TEST_CASE("qubit basis at Bloch angle pi/3") {
  const OverlapMatrix x = overlap_matrix(qubit_rotated_basis(std::numbers::pi / 3), Basis::computational(2));
  RealMatrix expected(2, 2);
  expected << 0.75, 0.25, 0.25, 0.75;
  CHECK((x.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("overlap_matrix rejects mismatched dimensions") {
  CHECK_THROWS_AS(overlap_matrix(Basis::computational(2), Basis::computational(3)), DimensionMismatch);
  CHECK_THROWS_AS(overlap_matrix_povm(random_povm(2, 3, 1), Basis::computational(3)), DimensionMismatch);
}

TEST_CASE("overlap_matrix_povm examples") {
  const Basis b0 = haar_random_basis(3, 5);
  SUBCASE("projectors of B0") {
    const OverlapMatrix x = overlap_matrix_povm(Povm::from_basis(b0), b0);
    CHECK((x.matrix() - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(x.stochasticity() == Stochasticity::ColumnStochastic);
  }
  SUBCASE("trivial two-outcome POVM") {
    const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
    const Povm f = Povm::from_effects({half, half});
    const OverlapMatrix x = overlap_matrix_povm(f, haar_random_basis(2, 9));
    CHECK((x.matrix().array() - 0.5).abs().maxCoeff() < 1e-12);
  }
  SUBCASE("qubit trine") {
    std::vector<ComplexMatrix> effects;
    for (int k = 0; k < 3; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 3.0;
      const ComplexVector psi = ket({std::cos(th / 2), std::sin(th / 2)});
      effects.push_back((2.0 / 3.0) * psi * psi.adjoint());
    }
    const OverlapMatrix x = overlap_matrix_povm(Povm::from_effects(effects), Basis::computational(2));
    REQUIRE(x.rows() == 3);
    RealMatrix expected(3, 2);
    expected << 2.0 / 3.0, 0.0, 1.0 / 6.0, 0.5, 1.0 / 6.0, 0.5;
    CHECK((x.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((x.matrix().colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dephase examples and properties") {
  const Basis comp = Basis::computational(2);
  SUBCASE("|+><+| loses its coherences") {
    const DensityState plus = DensityState::pure(ket({1.0, 1.0}));
    const DensityState out = dephase(plus, comp);
    CHECK((out.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("diagonal states are fixed") {
    const Basis b = haar_random_basis(3, 3);
    const DensityState rho = DensityState::diagonal(b, random_simplex_point(3, 4));
    CHECK((dephase(rho, b).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("random qubit keeps its diagonal") {
    const DensityState rho = random_density_state(2, 77);
    const ComplexMatrix out = dephase(rho, comp).matrix();
    CHECK(std::abs(out(0, 0) - rho.matrix()(0, 0)) < 1e-12);
    CHECK(std::abs(out(1, 1) - rho.matrix()(1, 1)) < 1e-12);
    CHECK(std::abs(out(0, 1)) < 1e-12);
  }
  SUBCASE("trace preserving, Hermitian, idempotent, unital") {
    for (int s = 0; s < 50; ++s) {
      const int d = 2 + s % 5;
      const Basis b = haar_random_basis(d, 1000 + s);
      const DensityState rho = random_density_state(d, 2000 + s);
      const DensityState once = dephase(rho, b);
      const DensityState twice = dephase(once, b);
      CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-12);
      CHECK(linalg::hermiticity_defect(once.matrix()) < 1e-12);
      CHECK((twice.matrix() - once.matrix()).cwiseAbs().maxCoeff() < 1e-12);
      const DensityState mixed = DensityState::maximally_mixed(d);
      CHECK((dephase(mixed, b).matrix() - mixed.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("measure_distribution examples") {
  const Basis b0 = haar_random_basis(3, 21);
  const ProbabilityVector p = measure_distribution(DensityState::pure(b0.ket(0)), b0);
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(p[1]) < 1e-12);

  const ProbabilityVector u = measure_distribution(DensityState::maximally_mixed(3), haar_random_basis(3, 22));
  for (int i = 0; i < 3; ++i) CHECK(u[i] == doctest::Approx(1.0 / 3));

  const Basis comp = Basis::computational(2);
  RealVector w(2);
  w << 0.75, 0.25;
  const DensityState rho0 = DensityState::diagonal(comp, ProbabilityVector::from(w));
  const ProbabilityVector q = measure_distribution(rho0, qubit_rotated_basis(std::numbers::pi / 3));
  CHECK(q[0] == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("property: measured distribution of a diagonal state is X p") {
  for (int s = 0; s < 100; ++s) {
    const int d = 2 + s % 7;
    const Basis b0 = haar_random_basis(d, 300 + s);
    const Basis b1 = haar_random_basis(d, 400 + s);
    const ProbabilityVector p = random_simplex_point(d, 500 + s);
    const RealVector direct = measure_distribution(DensityState::diagonal(b0, p), b1).values();
    const RealVector via_x = overlap_matrix(b1, b0).matrix() * p.values();
    CHECK((direct - via_x).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("property: overlap matrices are valid and transpose under exchange") {
  for (int s = 0; s < 200; ++s) {
    const int d = 2 + s % 7;
    const Basis b0 = haar_random_basis(d, 7000 + s);
    const Basis b1 = haar_random_basis(d, 8000 + s);
    const OverlapMatrix x10 = overlap_matrix(b1, b0);  // validates invariants
    const OverlapMatrix x01 = overlap_matrix(b0, b1);
    CHECK((x10.matrix() - x01.matrix().transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("haar_random_basis") {
  CHECK((haar_random_basis(2, 42).unitary() - haar_random_basis(2, 42).unitary()).norm() == 0.0);
  CHECK((haar_random_basis(2, 42).unitary() - haar_random_basis(2, 43).unitary()).norm() > 0.0);
  CHECK(linalg::unitarity_defect(haar_random_basis(3, 1).unitary()) < 1e-12);
  CHECK_THROWS_AS(haar_random_basis(1, 0), InvalidArgument);

  // Mean overlap of a Haar qubit basis with a fixed basis is 1/2 per entry.
  const int n = 10000;
  double sum = 0.0;
  double sum2 = 0.0;
  const Basis comp = Basis::computational(2);
  for (int s = 0; s < n; ++s) {
    const double a = overlap_matrix(haar_random_basis(2, 100000 + s), comp).matrix()(0, 0);
    sum += a;
    sum2 += a * a;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("random_povm") {
  const Povm single = random_povm(2, 1, 3);
  CHECK((single.effect(0) - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

  const Povm four = random_povm(2, 4, 5);
  ComplexMatrix total = ComplexMatrix::Zero(2, 2);
  for (const auto& e : four.effects()) total += e;
  CHECK((total - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

  const Povm five = random_povm(3, 5, 8);
  for (const auto& e : five.effects()) CHECK(linalg::min_eigenvalue_hermitian(e) > -1e-10);

  CHECK((random_povm(3, 2, 99).effect(1) - random_povm(3, 2, 99).effect(1)).norm() == 0.0);
  CHECK_THROWS_AS(random_povm(2, 0, 1), InvalidArgument);
}

TEST_CASE("constructors reject invariant violations with named invariants") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.1;
  try {
    (void)Basis::from_unitary(bad);
    FAIL("expected throw");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("u^dagger u = I") != std::string::npos);
  }
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  try {
    (void)DensityState::from_matrix(neg);
    FAIL("expected throw");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("PSD") != std::string::npos);
  }
  CHECK_THROWS_AS(Povm::from_effects({ComplexMatrix::Identity(2, 2) * 0.4}), InvariantViolation);
  RealVector p(2);
  p << 0.7, 0.2;
  CHECK_THROWS_AS(ProbabilityVector::from(p), InvariantViolation);
  RealMatrix x(2, 2);
  x << 0.5, 0.5, 0.4, 0.5;
  CHECK_THROWS_AS(OverlapMatrix::from_matrix(x, Stochasticity::Bistochastic), InvariantViolation);
}

TEST_CASE("POVM padding appends zero effects") {
  const Povm f = random_povm(2, 2, 1).padded(4);
  CHECK(f.size() == 4);
  CHECK(f.effect(3).norm() == 0.0);
  const OverlapMatrix x = overlap_matrix_povm(random_povm(2, 2, 1), Basis::computational(2)).padded(4);
  CHECK(x.rows() == 4);
  CHECK(x.stochasticity() == Stochasticity::ColumnStochastic);
}

TEST_CASE("CounterRng splits are reproducible and independent of the parent") {
  CounterRng a(5);
  CounterRng b(5);
  CHECK(a() == b());
  const CounterRng c1 = a.split(1);
  const CounterRng c2 = b.split(1);
  CHECK(c1.key() == c2.key());
  CHECK(a.split(2).key() != c1.key());
}
