#pragma once

// Builders of the parametrized state families the confusion scheme consumes:
// depolarizing paths, two-parameter channel curves, the thermal
// classification path, local-unitary randomization and dataset emission.

#include "entbreak/qchannel.hpp"
#include "entbreak/sicpovm.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entbreak {

struct LabeledPoint {
  ProbabilityVector p;
  double gamma = 0.0;
};

struct DatasetMeta {
  std::string kind;
  Dims dims;
  std::uint64_t seed = 0;
  std::string note;
};

struct LabeledDataset {
  std::vector<LabeledPoint> points;
  DatasetMeta meta;

  // gammas nondecreasing, shared dims, at least 10 points
  void validate() const;
};

struct CurveSpec {
  enum class Family { LocalDepolarizing, GenAmpDamp };
  Family family = Family::LocalDepolarizing;
  double shape = 1.0;  // n for the depolarizing curves, t for the damping ones
  int samples = 1000;
};

// Shape-parameter presets for the two channel families.
std::vector<double> depolarizing_curve_shapes();
std::vector<double> gad_curve_shapes();

// d^2 Hermitian matrices with Tr[L_i L_j] = d delta_ij and L_0 = identity.
std::vector<Matrix> gell_mann_basis(int d);

// (U_A tensor U_B) rho (U_A tensor U_B)^dag with fresh Haar factors.
DensityMatrix randomize_local(const DensityMatrix& rho, Rng& rng);

LabeledDataset depolarizing_dataset(int d, int n, std::uint64_t seed, const SicPair& sic);

// Channel-parameter pairs along a curve: (alpha1, alpha2) for the local
// depolarizing family, (l, p) for generalized amplitude damping. Curves run
// from the maximally entangled end to the separable end.
std::vector<std::pair<double, double>> curve_points(const CurveSpec& spec);
std::pair<double, double> curve_param_at(const CurveSpec& spec, double gamma);

// Applies the spec's channel to the state at each curve point.
DensityMatrix curve_state(const CurveSpec& spec, double gamma);

LabeledDataset two_param_dataset(const CurveSpec& spec, std::uint64_t seed, const SicPair& sic);

struct ThermalPathContext {
  DensityMatrix rho_in;
  Matrix h_in;          // -log(rho_in)
  Matrix h_loc;
  Matrix h_nonloc;
  Vector ground;        // ground state of h_nonloc
  Vector phi;           // target maximally entangled state
  Matrix h_tilde;       // Hermitian generator steering ground -> phi
  double delta = 0.01;
  bool ground_degenerate = false;  // nonlocal ground gap below 1e-8
};

ThermalPathContext thermal_context(const DensityMatrix& rho_in, double delta = 0.01);
DensityMatrix thermal_state_at(const ThermalPathContext& ctx, double lambda);

LabeledDataset classification_dataset(const DensityMatrix& rho_in, int n, std::uint64_t seed,
                                      const SicPair& sic);

// Iterated two-qubit noise on the maximally entangled state, encoded via
// finite-shot SIC frequencies (shots == 0 means exact probabilities).
LabeledDataset synthetic_decoherence_dataset(const KrausChannel& noise, int n_max,
                                             std::int64_t shots, std::uint64_t seed,
                                             const SicPair& sic);

// The same trajectory as raw shot records, for the counts-file path.
std::vector<std::pair<double, ShotRecord>> synthetic_decoherence_counts(
    const KrausChannel& noise, int n_max, std::int64_t shots, std::uint64_t seed,
    const SicPair& sic);

// Composite Kraus channel: apply `first`, then `second`.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

// Two-qubit noise mixing the two Bell states at rate `flip_rate` per step,
// with a joint depolarizing factor `depol_alpha` per step.
KrausChannel bell_decay_channel(double flip_rate, double depol_alpha);

}  // namespace entbreak
