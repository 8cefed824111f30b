#include "entbreak/linalg.hpp"

#include <doctest.h>

using namespace entbreak;

TEST_CASE("derive_seed is deterministic and spreads indices") {
  CHECK(derive_seed(7, 0) == derive_seed(7, 0));
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 0) != derive_seed(8, 0));
}

TEST_CASE("haar_unitary samples unitaries deterministically per seed") {
  for (int d : {2, 3, 4}) {
    Rng rng = make_rng(11);
    Matrix u = haar_unitary(d, rng);
    CHECK(is_unitary(u, 1e-10));
    Rng rng2 = make_rng(11);
    Matrix v = haar_unitary(d, rng2);
    CHECK((u - v).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("tensor product matches hand-computed Kronecker blocks") {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  Matrix k = tensor_product(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == Cplx(1));
  CHECK(k(0, 3) == Cplx(2));
  CHECK(k(3, 0) == Cplx(3));
  CHECK(k(2, 1) == Cplx(3));
  CHECK(k(3, 2) == Cplx(4));
}

TEST_CASE("partial trace recovers the factors of a product state") {
  Rng rng = make_rng(3);
  Matrix ua = haar_unitary(2, rng), ub = haar_unitary(3, rng);
  Matrix rho_a = ua.col(0) * ua.col(0).adjoint();
  Matrix rho_b = ub.col(0) * ub.col(0).adjoint();
  Matrix rho = tensor_product(rho_a, rho_b);
  CHECK((partial_trace(rho, 2, 3, Subsystem::A) - rho_a).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((partial_trace(rho, 2, 3, Subsystem::B) - rho_b).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(partial_trace(rho, 2, 3, Subsystem::A).trace() - Cplx(1)) < 1e-12);
}

TEST_CASE("partial transpose is an involution and flips Bell-state eigenvalues") {
  Vector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  Matrix rho = bell * bell.adjoint();
  Matrix pt = partial_transpose(rho, 2, 2, Subsystem::B);
  CHECK((partial_transpose(pt, 2, 2, Subsystem::B) - rho).cwiseAbs().maxCoeff() < 1e-14);
  HermitianEig eig = hermitian_eig(pt);
  CHECK(eig.values(0) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("hermitian exp and log invert each other") {
  Rng rng = make_rng(5);
  Matrix u = haar_unitary(3, rng);
  RealVector w(3);
  w << 0.2, 0.5, 1.7;
  Matrix h = u * w.cast<Cplx>().asDiagonal() * u.adjoint();
  CHECK((hermitian_exp(hermitian_log(h)) - h).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((hermitian_log(hermitian_exp(h)) - h).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("hermitian_sqrt_clipped squares back for PSD input") {
  Rng rng = make_rng(6);
  Matrix u = haar_unitary(3, rng);
  RealVector w(3);
  w << 0.0, 0.3, 0.7;
  Matrix h = u * w.cast<Cplx>().asDiagonal() * u.adjoint();
  Matrix s = hermitian_sqrt_clipped(h);
  CHECK((s * s - h).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("unitary_principal_log produces a Hermitian generator of its input") {
  Rng rng = make_rng(9);
  Matrix w = haar_unitary(4, rng);
  Matrix h = unitary_principal_log(w);
  CHECK(is_hermitian(h, 1e-10));
  HermitianEig eig = hermitian_eig(h);
  Vector phases(4);
  for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -eig.values(i));
  Matrix back = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
  CHECK((back - w).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(eig.values.maxCoeff() <= 3.1415926535897932 + 1e-12);
  CHECK(eig.values.minCoeff() > -3.1415926535897932 - 1e-12);
}

TEST_CASE("schmidt decomposition of a maximally entangled vector is flat") {
  Vector v = Vector::Zero(9);
  v(0) = v(4) = v(8) = 1.0 / std::sqrt(3.0);
  SchmidtForm f = schmidt_decompose(v, 3, 3);
  for (int i = 0; i < 3; ++i)
    CHECK(f.coefficients(i) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  // reassemble
  Vector back = Vector::Zero(9);
  for (int i = 0; i < 3; ++i)
    back += f.coefficients(i) * tensor_product_vec(f.basis_a.col(i), f.basis_b.col(i));
  CHECK((back - v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("complete_to_unitary maps source onto destination") {
  Rng rng = make_rng(13);
  for (int d : {2, 4, 9}) {
    Matrix u = haar_unitary(d, rng);
    Vector src = u.col(0), dst = u.col(1);
    dst = (dst + 0.3 * u.col(0)).normalized();
    Matrix w = complete_to_unitary(src, dst);
    CHECK(is_unitary(w, 1e-10));
    CHECK((w * src - dst).cwiseAbs().maxCoeff() < 1e-9);
  }
}
