#include "entbreak/qchannel.hpp"

#include <cmath>

namespace entbreak {

void KrausChannel::validate(double tol) const {
  if (kraus.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  Matrix sum = Matrix::Zero(in_dim, in_dim);
  for (const Matrix& k : kraus) {
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw std::invalid_argument("KrausChannel: operator shape mismatch");
    sum += k.adjoint() * k;
  }
  sum -= Matrix::Identity(in_dim, in_dim);
  if (sum.cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("KrausChannel: not trace preserving");
}

Matrix KrausChannel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (const Matrix& k : kraus) out += k * rho * k.adjoint();
  return out;
}

void DepolarizingSpec::validate() const {
  if (d < 2) throw std::invalid_argument("DepolarizingSpec: dimension must be >= 2");
  const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
  if (alpha < lo - 1e-12 || alpha > 1.0 + 1e-12)
    throw std::invalid_argument("DepolarizingSpec: alpha outside [-1/(d^2-1), 1]");
}

void GenAmpDampSpec::validate() const {
  if (l < 0.0 || l > 1.0 || p < 0.0 || p > 1.0)
    throw std::invalid_argument("GenAmpDampSpec: parameters must lie in [0,1]");
}

DensityMatrix depolarize_joint(const DensityMatrix& rho, const DepolarizingSpec& spec) {
  spec.validate();
  if (rho.dims.a != spec.d || rho.dims.b != spec.d)
    throw std::invalid_argument("depolarize_joint: state dims do not match spec");
  const int n = rho.dims.total();
  Matrix m = spec.alpha * rho.mat + (1.0 - spec.alpha) / n * Matrix::Identity(n, n);
  return {rho.dims, m};
}

Matrix depolarize_factor(const Matrix& rho, int d, double alpha) {
  return alpha * rho + (1.0 - alpha) / d * rho.trace() * Matrix::Identity(d, d);
}

KrausChannel gen_amp_damp(const GenAmpDampSpec& spec) {
  spec.validate();
  const double sl = std::sqrt(spec.l);
  const double cl = std::sqrt(1.0 - spec.l);
  const double sp = std::sqrt(spec.p);
  const double cp = std::sqrt(1.0 - spec.p);
  Matrix a1(2, 2), a2(2, 2), a3(2, 2), a4(2, 2);
  a1 << 1, 0, 0, cp;
  a2 << 0, sp, 0, 0;
  a3 << cp, 0, 0, 1;
  a4 << 0, 0, sp, 0;
  KrausChannel chan{2, 2, {sl * a1, sl * a2, cl * a3, cl * a4}};
  chan.validate(1e-12);
  return chan;
}

DensityMatrix apply_local(const DensityMatrix& rho,
                          const std::optional<KrausChannel>& chan_a,
                          const std::optional<KrausChannel>& chan_b) {
  if (chan_a && (chan_a->in_dim != rho.dims.a || chan_a->out_dim != rho.dims.a))
    throw std::invalid_argument("apply_local: channel A dims mismatch");
  if (chan_b && (chan_b->in_dim != rho.dims.b || chan_b->out_dim != rho.dims.b))
    throw std::invalid_argument("apply_local: channel B dims mismatch");
  const Matrix eye_a = Matrix::Identity(rho.dims.a, rho.dims.a);
  const Matrix eye_b = Matrix::Identity(rho.dims.b, rho.dims.b);
  std::vector<Matrix> ka = chan_a ? chan_a->kraus : std::vector<Matrix>{eye_a};
  std::vector<Matrix> kb = chan_b ? chan_b->kraus : std::vector<Matrix>{eye_b};
  Matrix out = Matrix::Zero(rho.mat.rows(), rho.mat.cols());
  for (const Matrix& a : ka)
    for (const Matrix& b : kb) {
      Matrix k = tensor_product(a, b);
      out += k * rho.mat * k.adjoint();
    }
  return {rho.dims, out};
}

DensityMatrix apply_local_depolarizing(const DensityMatrix& rho, double alpha1, double alpha2) {
  DepolarizingSpec{rho.dims.a, alpha1}.validate();
  DepolarizingSpec{rho.dims.b, alpha2}.validate();
  const int da = rho.dims.a, db = rho.dims.b;
  Matrix red_a = partial_trace(rho.mat, da, db, Subsystem::A);
  Matrix red_b = partial_trace(rho.mat, da, db, Subsystem::B);
  Matrix eye_a = Matrix::Identity(da, da);
  Matrix eye_b = Matrix::Identity(db, db);
  Matrix out = alpha1 * alpha2 * rho.mat +
               (1.0 - alpha1) * alpha2 / da * tensor_product(eye_a, red_b) +
               alpha1 * (1.0 - alpha2) / db * tensor_product(red_a, eye_b) +
               (1.0 - alpha1) * (1.0 - alpha2) / (da * db) * tensor_product(eye_a, eye_b);
  return {rho.dims, out};
}

double alpha_crit(int d) {
  if (d < 2) throw std::invalid_argument("alpha_crit: dimension must be >= 2");
  return 1.0 / (d + 1.0);
}

}  // namespace entbreak
