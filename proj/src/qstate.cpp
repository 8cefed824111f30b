#include "entbreak/qstate.hpp"

#include <cmath>

namespace entbreak {

void DensityMatrix::validate() const {
  if (dims.a < 1 || dims.b < 1 || mat.rows() != mat.cols() ||
      mat.rows() != static_cast<Eigen::Index>(dims.total()))
    throw std::invalid_argument("DensityMatrix: shape does not match dims");
  if (!mat.allFinite())
    throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (!is_hermitian(mat, 1e-9))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > 1e-9 || std::abs(mat.trace().imag()) > 1e-9)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  HermitianEig eig = hermitian_eig(Matrix(0.5 * (mat + mat.adjoint())));
  if (eig.values.minCoeff() < -1e-8)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix PureState::projector() const {
  return {dims, Matrix(vec * vec.adjoint())};
}

PureState max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: dimension must be >= 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i) = amp;
  return {{d, d}, v};
}

DensityMatrix max_mixed(int da, int db) {
  if (da < 1 || db < 1) throw std::invalid_argument("max_mixed: dims must be >= 1");
  const int n = da * db;
  return {{da, db}, Matrix(Matrix::Identity(n, n) / n)};
}

DensityMatrix isotropic_state(int d, double alpha) {
  if (d < 2) throw std::invalid_argument("isotropic_state: dimension must be >= 2");
  const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
  if (alpha < lo - 1e-12 || alpha > 1.0 + 1e-12)
    throw std::invalid_argument("isotropic_state: alpha outside channel domain");
  DensityMatrix pure = max_entangled(d).projector();
  const int n = d * d;
  Matrix m = alpha * pure.mat + (1.0 - alpha) / n * Matrix::Identity(n, n);
  return {{d, d}, m};
}

DensityMatrix cq_state() {
  const double s = 1.0 / std::sqrt(3.0);
  Matrix chi(3, 3);  // columns are |chi_0>, |chi_1>, |chi_2>
  chi << s, s, -s,
         s, -s, s,
        -s, s, s;
  Matrix m = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i) {
    Matrix ei = Matrix::Zero(3, 3);
    ei(i, i) = 1.0;
    Vector c = chi.col(i);
    m += tensor_product(ei, Matrix(c * c.adjoint()));
  }
  return {{3, 3}, Matrix(m / 3.0)};  // the three projectors sum to trace 3
}

DensityMatrix horodecki_ppt_state(double a) {
  if (a <= 0.0 || a >= 1.0)
    throw std::invalid_argument("horodecki_ppt_state: a must lie in (0,1)");
  Matrix m = Matrix::Zero(9, 9);
  for (int i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = a;
  m(0, 4) = m(4, 0) = a;
  m(0, 8) = m(8, 0) = a;
  m(4, 8) = m(8, 4) = a;
  const double c = std::sqrt(1.0 - a * a) / 2.0;
  m(6, 6) = (1.0 + a) / 2.0;
  m(8, 8) = (1.0 + a) / 2.0;
  m(6, 8) = m(8, 6) = c;
  return {{3, 3}, Matrix(m / (8.0 * a + 1.0))};
}

DensityMatrix canonical_state(const std::string& name, const std::vector<double>& params) {
  if (name == "cq") {
    return cq_state();
  }
  if (name == "horodecki_ppt") {
    if (params.size() != 1)
      throw std::invalid_argument("canonical_state: horodecki_ppt expects one parameter");
    return horodecki_ppt_state(params[0]);
  }
  if (name == "isotropic") {
    if (params.size() != 2)
      throw std::invalid_argument("canonical_state: isotropic expects (d, alpha)");
    return isotropic_state(static_cast<int>(params[0]), params[1]);
  }
  throw std::invalid_argument("canonical_state: unknown fixture '" + name + "'");
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& phi) {
  if (!(rho.dims == phi.dims))
    throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  Cplx f = (phi.vec.adjoint() * rho.mat * phi.vec)(0, 0);
  return std::min(1.0, std::max(0.0, f.real()));
}

double trace_distance(const DensityMatrix& x, const DensityMatrix& y) {
  if (!(x.dims == y.dims))
    throw std::invalid_argument("trace_distance: dimension mismatch");
  HermitianEig eig = hermitian_eig(Matrix(0.5 * (x.mat - y.mat + (x.mat - y.mat).adjoint())));
  return 0.5 * eig.values.cwiseAbs().sum();
}

}  // namespace entbreak
