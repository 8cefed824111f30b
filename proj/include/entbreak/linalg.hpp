#pragma once

// Dense complex-matrix numerics shared by every other module: Kronecker
// products, partial trace/transpose, Hermitian matrix functions, Schmidt
// decomposition and Haar-random unitary sampling.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

namespace entbreak {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

enum class Subsystem { A, B };

// Derives an independent per-task seed from a base seed (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns, unitary
};

struct SchmidtForm {
  RealVector coefficients;  // nonnegative, descending
  Matrix basis_a;           // orthonormal columns
  Matrix basis_b;
};

bool is_hermitian(const Matrix& m, double tol = 1e-9);
bool is_unitary(const Matrix& m, double tol = 1e-9);

// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
// diagonal phase correction Lambda_ii = R_ii / |R_ii|.
Matrix haar_unitary(int d, Rng& rng);

Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product_vec(const Vector& a, const Vector& b);

Matrix partial_trace(const Matrix& rho, int da, int db, Subsystem keep);
Matrix partial_transpose(const Matrix& rho, int da, int db, Subsystem on);

HermitianEig hermitian_eig(const Matrix& h);

// V f(diag(w)) V^dagger for Hermitian input.
Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f);
Matrix hermitian_exp(const Matrix& h);
// Requires positive definite input.
Matrix hermitian_log(const Matrix& h);
// Eigenvalues clipped at zero before the square root.
Matrix hermitian_sqrt_clipped(const Matrix& h);

// Hermitian H with exp(-i H) = W, eigenphases on the principal branch
// (-pi, pi].
Matrix unitary_principal_log(const Matrix& w);

SchmidtForm schmidt_decompose(const Vector& v, int da, int db);

// Unitary W with W src = dst, built as B_dst B_src^dagger from Householder
// basis completions of the two vectors.
Matrix complete_to_unitary(const Vector& src, const Vector& dst);

}  // namespace entbreak
