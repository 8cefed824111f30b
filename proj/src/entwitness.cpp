#include "entbreak/entwitness.hpp"

#include <algorithm>
#include <cmath>

namespace entbreak {

ConcurrenceReport concurrence(const DensityMatrix& rho) {
  if (rho.dims.a != 2 || rho.dims.b != 2)
    throw std::invalid_argument("concurrence: defined for two-qubit states only");
  Matrix sy(2, 2);
  sy << 0, Cplx(0, -1), Cplx(0, 1), 0;
  Matrix yy = tensor_product(sy, sy);
  // nu_i are square roots of the eigenvalues of rho (yy rho* yy); this is the
  // similarity-equivalent form of the double-square-root matrix R.
  Matrix product = rho.mat * yy * rho.mat.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> solver(product);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("concurrence: eigensolver failed");
  std::array<double, 4> nu{};
  for (int i = 0; i < 4; ++i) nu[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(nu.begin(), nu.end(), std::greater<double>());
  ConcurrenceReport report;
  report.nu = nu;
  report.value = std::max(0.0, nu[0] - nu[1] - nu[2] - nu[3]);
  return report;
}

PptReport ppt_check(const DensityMatrix& rho) {
  Matrix pt = partial_transpose(rho.mat, rho.dims.a, rho.dims.b, Subsystem::B);
  HermitianEig eig = hermitian_eig(Matrix(0.5 * (pt + pt.adjoint())));
  PptReport report;
  report.min_eigenvalue = eig.values.minCoeff();
  double trace_norm = eig.values.cwiseAbs().sum();
  report.negativity = std::max(0.0, 0.5 * (trace_norm - 1.0));
  report.is_ppt = report.min_eigenvalue >= -1e-8;
  return report;
}

}  // namespace entbreak
