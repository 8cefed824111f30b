#include "entbreak/trajectory.hpp"

#include <cmath>
#include <numbers>

namespace entbreak {

void LabeledDataset::validate() const {
  if (points.size() < 10)
    throw std::invalid_argument("LabeledDataset: needs at least 10 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].p.dims == meta.dims))
      throw std::invalid_argument("LabeledDataset: mixed dims");
    if (i > 0 && points[i].gamma < points[i - 1].gamma - 1e-12)
      throw std::invalid_argument("LabeledDataset: gammas must be nondecreasing");
  }
}

std::vector<double> depolarizing_curve_shapes() {
  return {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9};
}

std::vector<double> gad_curve_shapes() {
  return {-1.5, -0.83, -0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 0.83, 1.5};
}

std::vector<Matrix> gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gell_mann_basis: dimension must be >= 2");
  std::vector<Matrix> basis;
  basis.reserve(d * d);
  basis.push_back(Matrix::Identity(d, d));
  const double scale = std::sqrt(d / 2.0);  // Tr[L^2] = 2 -> = d
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = sym(k, j) = 1.0;
      basis.push_back(Matrix(scale * sym));
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Cplx(0, -1);
      asym(k, j) = Cplx(0, 1);
      basis.push_back(Matrix(scale * asym));
    }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    for (int j = 0; j < l; ++j) diag(j, j) = 1.0;
    diag(l, l) = -static_cast<double>(l);
    basis.push_back(Matrix(scale * std::sqrt(2.0 / (l * (l + 1.0))) * diag));
  }
  return basis;
}

DensityMatrix randomize_local(const DensityMatrix& rho, Rng& rng) {
  Matrix u = tensor_product(haar_unitary(rho.dims.a, rng), haar_unitary(rho.dims.b, rng));
  return {rho.dims, Matrix(u * rho.mat * u.adjoint())};
}

LabeledDataset depolarizing_dataset(int d, int n, std::uint64_t seed, const SicPair& sic) {
  if (d < 2 || d > 4)
    throw std::invalid_argument("depolarizing_dataset: supported dimensions are 2, 3, 4");
  if (n < 10) throw std::invalid_argument("depolarizing_dataset: need at least 10 points");
  const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
  DensityMatrix pure = max_entangled(d).projector();
  LabeledDataset ds;
  ds.meta = {"depolarizing", {d, d}, seed, "alpha grid on [-1/(d^2-1), 1]"};
  ds.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    double alpha = lo + static_cast<double>(i) / (n - 1) * (1.0 - lo);
    Rng rng = make_rng(derive_seed(seed, i));
    DensityMatrix state = randomize_local(depolarize_joint(pure, {d, alpha}), rng);
    ds.points.push_back({sic.born(state), alpha});
  }
  ds.validate();
  return ds;
}

std::pair<double, double> curve_param_at(const CurveSpec& spec, double gamma) {
  if (gamma < -1e-12 || gamma > 1.0 + 1e-12)
    throw std::invalid_argument("curve_param_at: gamma outside [0,1]");
  gamma = std::clamp(gamma, 0.0, 1.0);
  if (spec.family == CurveSpec::Family::LocalDepolarizing) {
    const double n = spec.shape;
    if (n <= 0.0) throw std::invalid_argument("curve_param_at: shape must be positive");
    double alpha1, alpha2;
    if (n <= 1.0) {
      double t = gamma * std::numbers::pi / 2.0;
      alpha1 = 4.0 / 3.0 * std::pow(std::cos(t), 2.0 / n) - 1.0 / 3.0;
      alpha2 = -4.0 / 3.0 * std::pow(std::sin(t), 2.0 / n) + 1.0;
    } else {
      // this branch runs from the separable end at t = 0, so reverse it
      double t = (1.0 - gamma) * std::numbers::pi / 2.0;
      alpha1 = -4.0 / 3.0 * std::pow(std::cos(t), 2.0 / (n - 1.0)) + 1.0;
      alpha2 = 4.0 / 3.0 * std::pow(std::sin(t), 2.0 / (n - 1.0)) - 1.0 / 3.0;
    }
    if (alpha1 < -1.0 / 3.0 - 1e-9 || alpha1 > 1.0 + 1e-9 ||
        alpha2 < -1.0 / 3.0 - 1e-9 || alpha2 > 1.0 + 1e-9)
      throw std::domain_error("curve_param_at: depolarizing parameter left its domain");
    return {std::clamp(alpha1, -1.0 / 3.0, 1.0), std::clamp(alpha2, -1.0 / 3.0, 1.0)};
  }
  // generalized amplitude damping: p runs over (0,1), l = 1/2 +- (p(1-p))^|t| / 2
  const double p_margin = 1e-3;
  double p = p_margin + gamma * (1.0 - 2.0 * p_margin);
  double bump = 0.5 * std::pow(p * (1.0 - p), std::abs(spec.shape));
  double l = spec.shape >= 0.0 ? 0.5 + bump : 0.5 - bump;
  if (l < 0.0 || l > 1.0)
    throw std::domain_error("curve_param_at: damping parameter left its domain");
  return {l, p};
}

std::vector<std::pair<double, double>> curve_points(const CurveSpec& spec) {
  if (spec.samples < 2) throw std::invalid_argument("curve_points: need at least 2 samples");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(spec.samples);
  for (int i = 0; i < spec.samples; ++i)
    pts.push_back(curve_param_at(spec, static_cast<double>(i) / (spec.samples - 1)));
  return pts;
}

DensityMatrix curve_state(const CurveSpec& spec, double gamma) {
  auto [u, v] = curve_param_at(spec, gamma);
  DensityMatrix pure = max_entangled(2).projector();
  if (spec.family == CurveSpec::Family::LocalDepolarizing)
    return apply_local_depolarizing(pure, u, v);
  return apply_local(pure, gen_amp_damp({u, v}), std::nullopt);
}

LabeledDataset two_param_dataset(const CurveSpec& spec, std::uint64_t seed, const SicPair& sic) {
  const int n = spec.samples;
  if (n < 10) throw std::invalid_argument("two_param_dataset: need at least 10 points");
  LabeledDataset ds;
  ds.meta = {spec.family == CurveSpec::Family::LocalDepolarizing ? "local_depolarizing"
                                                                 : "gad",
             {2, 2}, seed, "shape=" + std::to_string(spec.shape)};
  ds.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    double gamma = static_cast<double>(i) / (n - 1);
    Rng rng = make_rng(derive_seed(seed, i));
    DensityMatrix state = randomize_local(curve_state(spec, gamma), rng);
    ds.points.push_back({sic.born(state), gamma});
  }
  ds.validate();
  return ds;
}

ThermalPathContext thermal_context(const DensityMatrix& rho_in, double delta) {
  rho_in.validate();
  ThermalPathContext ctx;
  ctx.delta = delta;
  ctx.rho_in = rho_in;
  const int da = rho_in.dims.a, db = rho_in.dims.b;
  const int n = da * db;

  Matrix rho = rho_in.mat;
  HermitianEig eig = hermitian_eig(rho);
  if (eig.values.minCoeff() < 1e-9) {
    const double eps = 1e-9;
    rho = (1.0 - eps) * rho + eps / n * Matrix::Identity(n, n);
    ctx.rho_in.mat = rho;
  }
  ctx.h_in = Matrix(-hermitian_log(rho));

  std::vector<Matrix> basis_a = gell_mann_basis(da);
  std::vector<Matrix> basis_b = gell_mann_basis(db);
  Eigen::MatrixXd coeffs(da * da, db * db);
  for (int i = 0; i < da * da; ++i)
    for (int j = 0; j < db * db; ++j)
      coeffs(i, j) =
          (ctx.h_in * tensor_product(basis_a[i], basis_b[j])).trace().real() / n;

  ctx.h_loc = Matrix::Zero(n, n);
  ctx.h_nonloc = Matrix::Zero(n, n);
  const Matrix eye_a = Matrix::Identity(da, da);
  const Matrix eye_b = Matrix::Identity(db, db);
  for (int i = 0; i < da * da; ++i)
    ctx.h_loc += coeffs(i, 0) * tensor_product(basis_a[i], eye_b);
  for (int j = 1; j < db * db; ++j)
    ctx.h_loc += coeffs(0, j) * tensor_product(eye_a, basis_b[j]);
  for (int i = 1; i < da * da; ++i)
    for (int j = 1; j < db * db; ++j)
      ctx.h_nonloc += coeffs(i, j) * tensor_product(basis_a[i], basis_b[j]);

  HermitianEig nl = hermitian_eig(ctx.h_nonloc);
  ctx.ground = nl.vectors.col(0);
  ctx.ground_degenerate = nl.values.size() > 1 && (nl.values(1) - nl.values(0)) < 1e-8;

  SchmidtForm schmidt = schmidt_decompose(ctx.ground, da, db);
  const int rank = std::min(da, db);
  Vector phi = Vector::Zero(n);
  for (int i = 0; i < rank; ++i)
    phi += tensor_product_vec(schmidt.basis_a.col(i), schmidt.basis_b.col(i));
  phi /= std::sqrt(static_cast<double>(rank));
  ctx.phi = phi;
  ctx.h_tilde = unitary_principal_log(complete_to_unitary(ctx.ground, phi));
  return ctx;
}

DensityMatrix thermal_state_at(const ThermalPathContext& ctx, double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("thermal_state_at: lambda outside [0,1]");
  const double beta_max = 1e4;
  double beta;
  if (lambda >= 1.0)
    beta = 0.0;
  else if (lambda <= 0.0)
    beta = beta_max;
  else
    beta = std::min(beta_max, 1.0 / std::tan(std::numbers::pi * lambda / 2.0));
  const double delta = ctx.delta;
  double a = 1.0 - 2.0 / (1.0 + std::exp(lambda / delta));
  double b = 2.0 / (1.0 + std::exp((lambda - 1.0) / delta)) - 1.0;
  double theta = 2.0 / (1.0 + std::exp(lambda / delta));
  Matrix u = [&] {
    HermitianEig eig = hermitian_eig(ctx.h_tilde);
    Vector diag(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
      diag(i) = std::polar(1.0, -eig.values(i) * theta);
    return Matrix(eig.vectors * diag.asDiagonal() * eig.vectors.adjoint());
  }();
  Matrix h = a * ctx.h_loc + b * (u * ctx.h_nonloc * u.adjoint());
  h = 0.5 * (h + h.adjoint());
  // Thermal weights computed relative to the ground energy for stability.
  HermitianEig eig = hermitian_eig(h);
  RealVector w(eig.values.size());
  const double wmin = eig.values.minCoeff();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(-beta * (eig.values(i) - wmin));
  w /= w.sum();
  Matrix rho = eig.vectors * w.cast<Cplx>().asDiagonal() * eig.vectors.adjoint();
  return {ctx.rho_in.dims, Matrix(0.5 * (rho + rho.adjoint()))};
}

LabeledDataset classification_dataset(const DensityMatrix& rho_in, int n, std::uint64_t seed,
                                      const SicPair& sic) {
  if (n < 10) throw std::invalid_argument("classification_dataset: need at least 10 points");
  ThermalPathContext ctx = thermal_context(rho_in);
  LabeledDataset ds;
  ds.meta = {"classification", rho_in.dims, seed,
             ctx.ground_degenerate ? "nonlocal ground state degenerate" : ""};
  ds.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    double lambda = 0.1 + 0.8 * static_cast<double>(i) / (n - 1);
    Rng rng = make_rng(derive_seed(seed, i));
    DensityMatrix state = randomize_local(thermal_state_at(ctx, lambda), rng);
    ds.points.push_back({sic.born(state), lambda});
  }
  ds.validate();
  return ds;
}

std::vector<std::pair<double, ShotRecord>> synthetic_decoherence_counts(
    const KrausChannel& noise, int n_max, std::int64_t shots, std::uint64_t seed,
    const SicPair& sic) {
  if (n_max < 10) throw std::invalid_argument("synthetic_decoherence: need n_max >= 10");
  if (shots < 1) throw std::invalid_argument("synthetic_decoherence: shots must be >= 1");
  noise.validate(1e-9);
  std::vector<std::pair<double, ShotRecord>> out;
  out.reserve(n_max + 1);
  DensityMatrix rho = max_entangled(2).projector();
  for (int step = 0; step <= n_max; ++step) {
    Rng rng = make_rng(derive_seed(seed, step));
    out.emplace_back(static_cast<double>(step), sample_counts(sic.born(rho), shots, rng));
    rho = {rho.dims, noise.apply(rho.mat)};
  }
  return out;
}

LabeledDataset synthetic_decoherence_dataset(const KrausChannel& noise, int n_max,
                                             std::int64_t shots, std::uint64_t seed,
                                             const SicPair& sic) {
  if (n_max < 10) throw std::invalid_argument("synthetic_decoherence: need n_max >= 10");
  noise.validate(1e-9);
  LabeledDataset ds;
  ds.meta = {"synthetic_decoherence", {2, 2}, seed, "shots=" + std::to_string(shots)};
  ds.points.reserve(n_max + 1);
  if (shots == 0) {
    DensityMatrix rho = max_entangled(2).projector();
    for (int step = 0; step <= n_max; ++step) {
      ds.points.push_back({sic.born(rho), static_cast<double>(step)});
      rho = {rho.dims, noise.apply(rho.mat)};
    }
  } else {
    for (auto& [gamma, rec] : synthetic_decoherence_counts(noise, n_max, shots, seed, sic))
      ds.points.push_back({rec.frequencies(), gamma});
  }
  ds.validate();
  return ds;
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (second.in_dim != first.out_dim)
    throw std::invalid_argument("compose: channel dims do not chain");
  KrausChannel out{first.in_dim, second.out_dim, {}};
  out.kraus.reserve(first.kraus.size() * second.kraus.size());
  for (const Matrix& k2 : second.kraus)
    for (const Matrix& k1 : first.kraus) out.kraus.push_back(Matrix(k2 * k1));
  return out;
}

KrausChannel bell_decay_channel(double flip_rate, double depol_alpha) {
  if (flip_rate < 0.0 || flip_rate > 1.0)
    throw std::invalid_argument("bell_decay_channel: flip_rate must lie in [0,1]");
  if (depol_alpha < -1.0 / 15.0 || depol_alpha > 1.0)
    throw std::invalid_argument("bell_decay_channel: depol_alpha outside channel domain");
  Matrix eye = Matrix::Identity(2, 2);
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  KrausChannel dephase{4, 4,
                       {std::sqrt(1.0 - flip_rate) * Matrix::Identity(4, 4),
                        std::sqrt(flip_rate) * tensor_product(z, eye)}};
  // joint depolarizing as a Pauli mixture
  Matrix x(2, 2), y(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Cplx(0, -1), Cplx(0, 1), 0;
  std::vector<Matrix> paulis{eye, x, y, z};
  KrausChannel depol{4, 4, {}};
  const double w_rest = (1.0 - depol_alpha) / 16.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double weight = (i == 0 && j == 0) ? depol_alpha + w_rest : w_rest;
      if (weight > 0.0)
        depol.kraus.push_back(
            Matrix(std::sqrt(weight) * tensor_product(paulis[i], paulis[j])));
    }
  KrausChannel out = compose(dephase, depol);
  out.validate(1e-10);
  return out;
}

}  // namespace entbreak
