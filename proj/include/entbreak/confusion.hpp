#pragma once

// The learning-by-confusion engine: label reassignment, gamma-sweep
// orchestration, W-shape assembly, critical-point extraction, phase-diagram
// assembly and the entangled/separable verdict.

#include "entbreak/ffnn.hpp"
#include "entbreak/trajectory.hpp"

#include <optional>

namespace entbreak {

struct NoPeakError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfusionSplit {
  Batch train;
  Batch test;
  double gamma = 0.0;
};

// Random disjoint 0.7/0.3-style split with labels: 0 iff gamma_i <= gamma.
ConfusionSplit label_split(const LabeledDataset& data, double gamma, double split_ratio,
                          Rng& rng);

struct WShapeCurve {
  std::vector<double> gammas;
  std::vector<double> acc_mean;
  std::vector<double> acc_min;
  std::vector<double> acc_max;
  int repeats = 0;
  std::optional<double> critical;
  std::string critical_note;
};

std::vector<double> linspace(double lo, double hi, int n);

struct SweepOptions {
  int repeats = 5;
  double split_ratio = 0.7;
  double margin_fraction = 0.1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  // Input conditioning applied per split: optionally subtract the per-feature
  // training mean, then scale by a constant contrast factor. Usually copied
  // from the TrainPreset (see apply_preset_conditioning).
  bool center_inputs = false;
  double input_gain = 1.0;
};

// Copies the preset's calibrated input conditioning into the sweep options.
void apply_preset_conditioning(SweepOptions& opt, const TrainPreset& preset);

WShapeCurve sweep(const LabeledDataset& data, const std::vector<double>& grid,
                  const TrainConfig& cfg, const SweepOptions& opt);

// Interior maximum of the margin-trimmed, window-3 smoothed mean accuracy.
// Throws NoPeakError when the trimmed interior is flat or the whole curve is
// a monotone ramp.
double find_critical(const WShapeCurve& curve, double margin_fraction = 0.1);

// Piecewise-linear ideal accuracy curve with unit peaks at the endpoints and
// the critical point.
double ideal_wshape(double gamma, double gamma_lo, double gamma_hi, double gamma_crit);

struct PhaseDiagramEntry {
  CurveSpec spec;
  WShapeCurve curve;
  std::optional<std::pair<double, double>> critical_params;
  // True when critical_params came from the reconstruction fallback (no
  // interior accuracy peak) rather than from the accuracy curve.
  bool from_reconstruction = false;
};

struct PhaseDiagram {
  CurveSpec::Family family;
  std::vector<PhaseDiagramEntry> entries;
};

PhaseDiagram phase_diagram(CurveSpec::Family family, const std::vector<double>& shapes,
                           const TrainPreset& preset, int gamma_points,
                           const SweepOptions& opt, const SicPair& sic);

// Largest dataset gamma whose reconstructed state violates the PPT criterion
// (0 when every row is PPT). Negativity is invariant under the local
// unitaries used to scatter dataset rows, so this bounds the
// entangled-to-separable transition along the underlying path from below.
// Used as a tomographic fallback when an accuracy curve has no interior peak.
double npt_boundary_gamma(const LabeledDataset& data, const SicPair& sic);

enum class Verdict { Entangled, Separable, Inconclusive };
const char* verdict_name(Verdict v);

struct ClassifyResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<double> lambda_star;
  WShapeCurve curve;
  // Set when the accuracy curve had no interior peak and the verdict instead
  // came from reconstructing the dataset rows: the largest path parameter at
  // which a row still violated the PPT criterion. Empty when the verdict came
  // from the accuracy peak.
  std::optional<double> npt_boundary;
};

ClassifyResult classify(const DensityMatrix& rho_in, const TrainPreset& preset,
                        int gamma_points, const SweepOptions& opt, const SicPair& sic);

}  // namespace entbreak
