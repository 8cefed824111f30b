#include "entbreak/sicpovm.hpp"

#include <cmath>
#include <numbers>

namespace entbreak {

namespace {

Vector fiducial_vector(int d) {
  switch (d) {
    case 2: {
      Vector psi(2);
      const double r3 = std::sqrt(3.0);
      psi << std::sqrt(3.0 + r3), std::polar(std::sqrt(3.0 - r3), std::numbers::pi / 4.0);
      return psi / std::sqrt(6.0);
    }
    case 3: {
      Vector psi(3);
      psi << 0.0, 1.0, -1.0;
      return psi / std::sqrt(2.0);
    }
    case 4: {
      // Numerical Weyl-Heisenberg fiducial, polished to machine precision by
      // least squares on the defining overlap conditions.
      Vector psi(4);
      psi << Cplx(2.98029203182701152e-01, 2.68063475463547751e-01),
          Cplx(2.91249595107529735e-01, -3.88703007792759347e-01),
          Cplx(7.50284855853206589e-01, 0.0),
          Cplx(1.61006057562975730e-01, 1.20639532329211457e-01);
      return psi / psi.norm();
    }
    default:
      throw std::invalid_argument("build_sic: supported dimensions are 2, 3, 4");
  }
}

}  // namespace

Matrix displacement(int n1, int n2, int d) {
  if (d < 2) throw std::invalid_argument("displacement: dimension must be >= 2");
  if (n1 < 0 || n1 >= d || n2 < 0 || n2 >= d)
    throw std::out_of_range("displacement: indices must lie in [0, d)");
  const Cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  Matrix m = Matrix::Zero(d, d);
  // X^{n1} Z^{n2} |j> = omega^{j n2} |j + n1 mod d>
  for (int j = 0; j < d; ++j)
    m((j + n1) % d, j) = std::pow(omega, static_cast<double>(j) * n2);
  const Cplx tau = -std::polar(1.0, std::numbers::pi / d);
  return std::pow(tau, static_cast<double>(n1) * n2) * m;
}

void SicPovm::validate() const {
  const int k = d * d;
  if (static_cast<int>(effects.size()) != k)
    throw std::invalid_argument("SicPovm: expected d^2 effects");
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : effects) {
    HermitianEig eig = hermitian_eig(Matrix(0.5 * (e + e.adjoint())));
    if (eig.values.minCoeff() < -1e-9)
      throw std::invalid_argument("SicPovm: effect not PSD");
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
      if (eig.values(i) > 1e-9) ++rank;
    if (rank != 1) throw std::invalid_argument("SicPovm: effect not rank one");
    sum += e;
  }
  sum -= Matrix::Identity(d, d);
  if (sum.cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("SicPovm: effects do not sum to identity");
  const double dd = d;
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l) {
      double target = ((j == l ? dd : 0.0) + 1.0) / ((dd + 1.0) * dd * dd);
      double got = (effects[j] * effects[l]).trace().real();
      if (std::abs(got - target) > 1e-8)
        throw std::invalid_argument("SicPovm: pairwise overlap condition violated");
    }
}

SicPovm build_sic(int d) {
  Vector psi = fiducial_vector(d);
  SicPovm sic;
  sic.d = d;
  sic.fiducial = psi;
  sic.effects.reserve(d * d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) {
      Vector v = displacement(n1, n2, d) * psi;
      sic.effects.push_back(Matrix(v * v.adjoint() / static_cast<double>(d)));
    }
  sic.validate();
  return sic;
}

void ProbabilityVector::validate() const {
  const Eigen::Index k = static_cast<Eigen::Index>(dims.a) * dims.a * dims.b * dims.b;
  if (probs.size() != k)
    throw std::invalid_argument("ProbabilityVector: length does not match dims");
  if (probs.minCoeff() < -1e-12)
    throw std::invalid_argument("ProbabilityVector: negative entry");
  if (std::abs(probs.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("ProbabilityVector: entries do not sum to 1");
}

ProbabilityVector ShotRecord::frequencies() const {
  ProbabilityVector p;
  p.dims = dims;
  p.probs.resize(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i)
    p.probs(static_cast<Eigen::Index>(i)) = static_cast<double>(counts[i]) / n_shots;
  return p;
}

ProbabilityVector born_probabilities(const DensityMatrix& rho, const SicPovm& sic_a,
                                     const SicPovm& sic_b) {
  if (rho.dims.a != sic_a.d || rho.dims.b != sic_b.d)
    throw std::invalid_argument("born_probabilities: SIC dims do not match state");
  const int ka = sic_a.d * sic_a.d;
  const int kb = sic_b.d * sic_b.d;
  ProbabilityVector p;
  p.dims = rho.dims;
  p.probs.resize(static_cast<Eigen::Index>(ka) * kb);
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < kb; ++j) {
      Matrix effect = tensor_product(sic_a.effects[i], sic_b.effects[j]);
      double v = (rho.mat * effect).trace().real();
      p.probs(static_cast<Eigen::Index>(i) * kb + j) = std::max(0.0, v);
    }
  return p;
}

ShotRecord sample_counts(const ProbabilityVector& p, std::int64_t n_shots, Rng& rng) {
  if (n_shots < 1) throw std::invalid_argument("sample_counts: n_shots must be >= 1");
  std::vector<double> weights(p.probs.data(), p.probs.data() + p.probs.size());
  std::discrete_distribution<int> dist(weights.begin(), weights.end());
  ShotRecord rec;
  rec.dims = p.dims;
  rec.counts.assign(weights.size(), 0);
  rec.n_shots = n_shots;
  for (std::int64_t s = 0; s < n_shots; ++s) rec.counts[dist(rng)]++;
  return rec;
}

SicPair::SicPair(SicPovm a, SicPovm b) : a_(std::move(a)), b_(std::move(b)) {
  const int n = a_.d * b_.d;
  const int k = n * n;
  // Row m of the Born matrix maps row-major vec(rho) to p_m = Tr[rho F_m].
  Matrix born = Matrix::Zero(k, k);
  int m = 0;
  for (int i = 0; i < a_.d * a_.d; ++i)
    for (int j = 0; j < b_.d * b_.d; ++j, ++m) {
      Matrix effect = tensor_product(a_.effects[i], b_.effects[j]);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) born(m, r * n + c) = effect(c, r);
    }
  Eigen::PartialPivLU<Matrix> lu(born);
  inverse_ = lu.inverse();
  if (!inverse_.allFinite())
    throw std::runtime_error("SicPair: Born map inversion failed");
}

ProbabilityVector SicPair::born(const DensityMatrix& rho) const {
  return born_probabilities(rho, a_, b_);
}

DensityMatrix SicPair::reconstruct(const ProbabilityVector& p) const {
  if (p.dims.a != a_.d || p.dims.b != b_.d)
    throw std::invalid_argument("reconstruct: probability dims do not match SIC pair");
  const int n = a_.d * b_.d;
  Vector pv = p.probs.cast<Cplx>();
  Vector flat = inverse_ * pv;
  Matrix rho(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) rho(r, c) = flat(r * n + c);
  rho = 0.5 * (rho + rho.adjoint());
  // Finite-shot inputs can invert to slightly unphysical matrices.
  HermitianEig eig = hermitian_eig(rho);
  RealVector w = eig.values.cwiseMax(0.0);
  double tr = w.sum();
  if (tr <= 0.0) throw std::runtime_error("reconstruct: degenerate reconstruction");
  w /= tr;
  Matrix out = eig.vectors * w.cast<Cplx>().asDiagonal() * eig.vectors.adjoint();
  return {{a_.d, b_.d}, Matrix(0.5 * (out + out.adjoint()))};
}

}  // namespace entbreak
