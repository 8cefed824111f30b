#include "entbreak/linalg.hpp"

#include <cmath>

namespace entbreak {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 over the combined word
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix g = m.adjoint() * m;
  g -= Matrix::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      z(i, j) = Cplx(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    Cplx rii = r(i, i);
    double a = std::abs(rii);
    Cplx phase = (a > 0.0) ? rii / a : Cplx(1.0, 0.0);
    q.col(i) *= phase;
  }
  return q;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor_product_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

static void check_bipartite_shape(const Matrix& rho, int da, int db, const char* who) {
  if (da < 1 || db < 1 || rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument(std::string(who) + ": matrix shape does not match subsystem dims");
}

Matrix partial_trace(const Matrix& rho, int da, int db, Subsystem keep) {
  check_bipartite_shape(rho, da, db, "partial_trace");
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int b = 0; b < db; ++b) out(i, j) += rho(i * db + b, j * db + b);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int a = 0; a < da; ++a) out(i, j) += rho(a * db + i, a * db + j);
  return out;
}

Matrix partial_transpose(const Matrix& rho, int da, int db, Subsystem on) {
  check_bipartite_shape(rho, da, db, "partial_transpose");
  Matrix out(rho.rows(), rho.cols());
  for (int a1 = 0; a1 < da; ++a1)
    for (int b1 = 0; b1 < db; ++b1)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) {
          if (on == Subsystem::B)
            out(a1 * db + b1, a2 * db + b2) = rho(a1 * db + b2, a2 * db + b1);
          else
            out(a1 * db + b1, a2 * db + b2) = rho(a2 * db + b1, a1 * db + b2);
        }
  return out;
}

HermitianEig hermitian_eig(const Matrix& h) {
  if (!is_hermitian(h))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
  HermitianEig eig = hermitian_eig(h);
  RealVector fw(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) fw(i) = f(eig.values(i));
  Matrix out = eig.vectors * fw.asDiagonal() * eig.vectors.adjoint();
  return Matrix(0.5 * (out + out.adjoint()));
}

Matrix hermitian_exp(const Matrix& h) {
  return hermitian_function(h, [](double w) { return std::exp(w); });
}

Matrix hermitian_log(const Matrix& h) {
  HermitianEig eig = hermitian_eig(h);
  if (eig.values.minCoeff() <= 0.0)
    throw std::domain_error("hermitian_log: matrix is not positive definite");
  return hermitian_function(h, [](double w) { return std::log(w); });
}

Matrix hermitian_sqrt_clipped(const Matrix& h) {
  return hermitian_function(h, [](double w) { return std::sqrt(std::max(0.0, w)); });
}

Matrix unitary_principal_log(const Matrix& w) {
  if (!is_unitary(w, 1e-9))
    throw std::invalid_argument("unitary_principal_log: input is not unitary");
  // Schur form of a (numerically) normal matrix: T is diagonal up to roundoff.
  Eigen::ComplexSchur<Matrix> schur(w);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("unitary_principal_log: Schur decomposition failed");
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  const Eigen::Index n = w.rows();
  RealVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double phi = std::arg(t(i, i));  // in (-pi, pi]
    phases(i) = -phi;                // exp(-i h) = e^{i phi}
  }
  Matrix h = q * phases.asDiagonal() * q.adjoint();
  return Matrix(0.5 * (h + h.adjoint()));
}

SchmidtForm schmidt_decompose(const Vector& v, int da, int db) {
  if (v.size() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument("schmidt_decompose: vector length does not match dims");
  double nrm = v.norm();
  if (nrm < 1e-12) throw std::invalid_argument("schmidt_decompose: zero vector");
  if (std::abs(nrm - 1.0) > 1e-9)
    throw std::invalid_argument("schmidt_decompose: vector is not normalized");
  Matrix m(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) m(i, j) = v(i * db + j);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm out;
  out.coefficients = svd.singularValues();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();
  return out;
}

// Unitary whose first column is x: alpha (I - 2 u u^dag / u^dag u) with
// u = x - alpha e0, alpha = -exp(i arg(x0)).
static Matrix householder_basis(const Vector& x) {
  const Eigen::Index n = x.size();
  Cplx alpha = (std::abs(x(0)) > 0.0) ? -x(0) / std::abs(x(0)) : Cplx(-1.0, 0.0);
  Vector u = x;
  u(0) -= alpha;
  double u2 = u.squaredNorm();
  Matrix b = Matrix::Identity(n, n);
  if (u2 > 1e-24) b -= (2.0 / u2) * (u * u.adjoint());
  return alpha * b;
}

Matrix complete_to_unitary(const Vector& src, const Vector& dst) {
  if (src.size() != dst.size())
    throw std::invalid_argument("complete_to_unitary: vectors differ in length");
  if (std::abs(src.norm() - 1.0) > 1e-6 || std::abs(dst.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("complete_to_unitary: vectors must be unit norm");
  return householder_basis(dst) * householder_basis(src).adjoint();
}

}  // namespace entbreak
