// Command-line front end: experiment orchestration, dataset generation and
// ingestion, CSV/JSON emission and oracle diagnostics.
//
// Exit codes: 0 ok, 2 no peak found, 3 inconclusive verdict, 64 usage error,
// 65 invalid data, 1 internal failure.

#include "entbreak/confusion.hpp"
#include "entbreak/entwitness.hpp"
#include "entbreak/fixtures.hpp"
#include "entbreak/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace entbreak;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitNoPeak = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct CommonOpts {
  std::string out_dir = "out";
  std::string config_file;
  std::uint64_t seed = 7;
  int gamma_points = 21;
  int repeats = 5;
  double margin = 0.1;
  double split = 0.7;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--config", o.config_file, "JSON config file (flags override it)");
  cmd->add_option("--seed", o.seed, "Base RNG seed")->capture_default_str();
  cmd->add_option("--gamma-points", o.gamma_points, "Confusion-grid size")
      ->capture_default_str();
  cmd->add_option("--repeats", o.repeats, "Training repeats per grid point")
      ->capture_default_str();
  cmd->add_option("--margin", o.margin, "Trimmed margin fraction for peak finding")
      ->capture_default_str();
  cmd->add_option("--split", o.split, "Train fraction of each dataset")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
}

// Config-file values act as defaults; command-line flags override them.
void apply_config_defaults(CLI::App& app, int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc - 1; ++i)
    if (std::string(argv[i]) == "--config") path = argv[i + 1];
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw CLI::ValidationError("--config", std::string("malformed JSON: ") + err.what());
  }
  for (auto& [key, value] : j.items()) {
    for (CLI::App* sub : app.get_subcommands({})) {
      if (CLI::Option* opt = sub->get_option_no_throw("--" + key)) {
        if (opt->count() == 0)
          opt->default_val(value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
  }
}

SweepOptions sweep_options(const CommonOpts& o) {
  SweepOptions opt;
  opt.repeats = o.repeats;
  opt.split_ratio = o.split;
  opt.margin_fraction = o.margin;
  opt.seed = o.seed;
  opt.threads = o.threads;
  return opt;
}

void write_metadata(const fs::path& dir, const std::string& command, json resolved,
                    double wall_seconds) {
  resolved["command"] = command;
  resolved["wall_seconds"] = wall_seconds;
  atomic_write_text(dir / "metadata.json", resolved.dump(2) + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int run_wshape(int dim, int n, std::string preset_name, const CommonOpts& o) {
  Timer timer;
  if (preset_name.empty()) preset_name = "wshape_" + std::to_string(dim) + "x" + std::to_string(dim);
  TrainPreset preset = train_preset(preset_name);
  if (n <= 0) n = preset.data_size;
  SicPair sic = SicPair::standard(dim, dim);
  LabeledDataset ds = depolarizing_dataset(dim, n, o.seed, sic);
  std::vector<double> grid =
      linspace(ds.points.front().gamma, ds.points.back().gamma, o.gamma_points);
  SweepOptions opt = sweep_options(o);
  apply_preset_conditioning(opt, preset);
  WShapeCurve curve = sweep(ds, grid, preset.config, opt);

  fs::path dir(o.out_dir);
  write_dataset(dir / "dataset.csv", ds);
  write_wshape(dir / "wshape.csv", curve);
  json meta = {{"dim", dim},         {"n", n},
               {"preset", preset_name}, {"gamma_points", o.gamma_points},
               {"repeats", o.repeats},  {"seed", o.seed},
               {"margin", o.margin},    {"split", o.split}};
  if (curve.critical) meta["critical"] = *curve.critical;
  else meta["critical_note"] = curve.critical_note;
  write_metadata(dir, "wshape", meta, timer.seconds());
  if (!curve.critical) {
    std::cerr << "wshape: " << curve.critical_note << "\n";
    return kExitNoPeak;
  }
  std::cout << "critical alpha = " << format_double(*curve.critical) << "\n";
  return kExitOk;
}

int run_phase_diagram(const std::string& family_name, std::string preset_name,
                      const CommonOpts& o) {
  Timer timer;
  CurveSpec::Family family;
  if (family_name == "local-depolarizing") family = CurveSpec::Family::LocalDepolarizing;
  else if (family_name == "gad") family = CurveSpec::Family::GenAmpDamp;
  else throw CLI::ValidationError("--family", "expected local-depolarizing or gad");
  if (preset_name.empty())
    preset_name =
        family == CurveSpec::Family::GenAmpDamp ? "phase_damp_2x2" : "phase_2x2";
  TrainPreset preset = train_preset(preset_name);
  std::vector<double> shapes = family == CurveSpec::Family::LocalDepolarizing
                                   ? depolarizing_curve_shapes()
                                   : gad_curve_shapes();
  SicPair sic = SicPair::standard(2, 2);
  PhaseDiagram diagram =
      phase_diagram(family, shapes, preset, o.gamma_points, sweep_options(o), sic);

  fs::path dir(o.out_dir);
  for (const PhaseDiagramEntry& e : diagram.entries) {
    char name[64];
    std::snprintf(name, sizeof(name), "curve_%+.2f.csv", e.spec.shape);
    write_wshape(dir / name, e.curve);
    if (!e.curve.critical)
      std::cerr << "phase-diagram: curve " << e.spec.shape << ": " << e.curve.critical_note
                << "\n";
  }
  atomic_write_text(dir / "diagram.csv", phase_diagram_csv(diagram));
  atomic_write_text(dir / "diagram_long.csv", phase_diagram_long_csv(diagram));
  json meta = {{"family", family_name},   {"preset", preset_name},
               {"gamma_points", o.gamma_points}, {"repeats", o.repeats},
               {"seed", o.seed},          {"margin", o.margin},
               {"split", o.split},        {"curves", shapes.size()}};
  write_metadata(dir, "phase-diagram", meta, timer.seconds());
  return kExitOk;
}

int run_classify(const std::string& state_file, std::string preset_name, const CommonOpts& o) {
  Timer timer;
  DensityMatrix rho;
  try {
    rho = read_density(state_file);
  } catch (const std::invalid_argument& err) {
    std::cerr << "classify: invalid state file: " << err.what() << "\n";
    return kExitData;
  }
  if (preset_name.empty())
    preset_name = "classify_" + std::to_string(rho.dims.a) + "x" + std::to_string(rho.dims.b);
  TrainPreset preset = train_preset(preset_name);
  SicPair sic = SicPair::standard(rho.dims.a, rho.dims.b);
  ClassifyResult result = classify(rho, preset, o.gamma_points, sweep_options(o), sic);

  fs::path dir(o.out_dir);
  write_wshape(dir / "wshape.csv", result.curve);
  json verdict = {{"verdict", verdict_name(result.verdict)},
                  {"dims", {rho.dims.a, rho.dims.b}},
                  {"preset", preset_name},
                  {"seed", o.seed}};
  if (result.lambda_star) verdict["lambda_star"] = *result.lambda_star;
  else verdict["note"] = result.curve.critical_note;
  if (result.npt_boundary) verdict["npt_boundary"] = *result.npt_boundary;
  atomic_write_text(dir / "verdict.json", verdict.dump(2) + "\n");
  json meta = {{"state", state_file}, {"preset", preset_name},
               {"gamma_points", o.gamma_points}, {"repeats", o.repeats},
               {"seed", o.seed}, {"verdict", verdict_name(result.verdict)}};
  write_metadata(dir, "classify", meta, timer.seconds());
  std::cout << "verdict: " << verdict_name(result.verdict);
  if (result.lambda_star) std::cout << " (lambda* = " << format_double(*result.lambda_star) << ")";
  if (result.npt_boundary)
    std::cout << " (no accuracy peak; NPT boundary = " << format_double(*result.npt_boundary)
              << ")";
  std::cout << "\n";
  return result.verdict == Verdict::Inconclusive ? kExitInconclusive : kExitOk;
}

int run_ingest(const std::string& counts_file, bool frequencies, std::string preset_name,
               const CommonOpts& o) {
  Timer timer;
  LabeledDataset ds;
  try {
    ds = frequencies ? read_dataset_csv(counts_file) : read_counts_csv(counts_file);
  } catch (const std::invalid_argument& err) {
    std::cerr << "ingest: invalid input file: " << err.what() << "\n";
    return kExitData;
  }
  if (preset_name.empty()) preset_name = "decay_2x2";
  TrainPreset preset = train_preset(preset_name);
  SicPair sic = SicPair::standard(ds.meta.dims.a, ds.meta.dims.b);

  // Per-point oracle diagnostics on the reconstructed states.
  std::ostringstream diag;
  const bool two_qubit = ds.meta.dims.a == 2 && ds.meta.dims.b == 2;
  const bool square = ds.meta.dims.a == ds.meta.dims.b;
  PureState phi = max_entangled(ds.meta.dims.a);
  diag << "gamma,negativity" << (two_qubit ? ",concurrence" : "")
       << (square ? ",fidelity_max_entangled" : "") << "\n";
  for (const LabeledPoint& pt : ds.points) {
    DensityMatrix rec = sic.reconstruct(pt.p);
    diag << format_double(pt.gamma) << ',' << format_double(ppt_check(rec).negativity);
    if (two_qubit) diag << ',' << format_double(concurrence(rec).value);
    if (square) diag << ',' << format_double(fidelity_with_pure(rec, phi));
    diag << "\n";
  }

  std::vector<double> grid =
      linspace(ds.points.front().gamma, ds.points.back().gamma, o.gamma_points);
  SweepOptions opt = sweep_options(o);
  apply_preset_conditioning(opt, preset);
  WShapeCurve curve = sweep(ds, grid, preset.config, opt);

  fs::path dir(o.out_dir);
  atomic_write_text(dir / "diagnostics.csv", diag.str());
  write_wshape(dir / "wshape.csv", curve);
  json meta = {{"counts", counts_file}, {"preset", preset_name},
               {"gamma_points", o.gamma_points}, {"repeats", o.repeats},
               {"seed", o.seed}, {"points", ds.points.size()}};
  if (curve.critical) meta["critical"] = *curve.critical;
  else meta["critical_note"] = curve.critical_note;
  write_metadata(dir, "ingest", meta, timer.seconds());
  if (!curve.critical) {
    std::cerr << "ingest: " << curve.critical_note << "\n";
    return kExitNoPeak;
  }
  std::cout << "critical gamma = " << format_double(*curve.critical) << "\n";
  return kExitOk;
}

int run_diagnose(std::uint64_t seed) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::printf("%-38s %s  %s\n", name.c_str(), ok ? "pass" : "FAIL", detail.c_str());
    if (!ok) ++failures;
  };

  for (int d : {2, 3, 4}) {
    SicPovm sic = build_sic(d);
    const double diag_exp = (d + 1.0) / ((d + 1.0) * d * d);
    const double off_exp = 1.0 / ((d + 1.0) * d * d);
    double residual = 0.0;
    for (int j = 0; j < d * d; ++j)
      for (int k = 0; k < d * d; ++k) {
        double overlap = (sic.effects[j] * sic.effects[k]).trace().real();
        residual = std::max(residual, std::abs(overlap - (j == k ? diag_exp : off_exp)));
      }
    report("sic overlap residual d=" + std::to_string(d), residual < 1e-8,
           "max |Tr[EjEk] - expected| = " + format_double(residual));
    if (d == 2)
      std::printf("  d=2 overlap table: diagonal %s, off-diagonal %s\n",
                  format_double(diag_exp).c_str(), format_double(off_exp).c_str());
  }

  {
    double worst = 0.0;
    Rng rng = make_rng(derive_seed(seed, 0xD1A6));
    for (auto [da, db] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {4, 4}}) {
      SicPair pair = SicPair::standard(da, db);
      for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix rho = randomize_local(max_mixed(da, db), rng);
        Matrix u = haar_unitary(da * db, rng);
        RealVector w = RealVector::Zero(da * db);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = unif(rng);
        w /= w.sum();
        rho.mat = u * w.cast<Cplx>().asDiagonal() * u.adjoint();
        DensityMatrix back = pair.reconstruct(pair.born(rho));
        worst = std::max(worst, (back.mat - rho.mat).cwiseAbs().maxCoeff());
      }
    }
    report("tomography round trip", worst < 1e-8, "max error = " + format_double(worst));
  }

  {
    // Oracle agreement: two-qubit isotropic family, closed forms vs both oracles.
    double worst_c = 0.0, worst_n = 0.0;
    for (int i = 0; i <= 20; ++i) {
      double alpha = i / 20.0;
      DensityMatrix rho = isotropic_state(2, alpha);
      double c_expect = std::max(0.0, (3.0 * alpha - 1.0) / 2.0);
      double n_expect = std::max(0.0, (3.0 * alpha - 1.0) / 4.0);
      worst_c = std::max(worst_c, std::abs(concurrence(rho).value - c_expect));
      worst_n = std::max(worst_n, std::abs(ppt_check(rho).negativity - n_expect));
    }
    report("concurrence oracle (isotropic family)", worst_c < 1e-9,
           "max error = " + format_double(worst_c));
    report("negativity oracle (isotropic family)", worst_n < 1e-9,
           "max error = " + format_double(worst_n));
  }

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-breakdown detection via confusion-sweep classifiers"};
  app.require_subcommand(1);

  CommonOpts common;
  int dim = 2, n = 0;
  std::string preset, family = "local-depolarizing", state_file, counts_file;
  bool frequencies = false;

  CLI::App* wshape_cmd =
      app.add_subcommand("wshape", "Accuracy sweep over a joint-depolarizing path");
  wshape_cmd->add_option("--dim", dim, "Local dimension")->check(CLI::IsMember({2, 3, 4}));
  wshape_cmd->add_option("--n", n, "Dataset size (0 = preset default)");
  wshape_cmd->add_option("--preset", preset, "Training preset name");
  add_common(wshape_cmd, common);

  CLI::App* phase_cmd =
      app.add_subcommand("phase-diagram", "Critical points across a preset curve family");
  phase_cmd->add_option("--family", family, "local-depolarizing or gad");
  phase_cmd->add_option("--preset", preset, "Training preset name");
  add_common(phase_cmd, common);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Entangled/separable verdict for a state file");
  classify_cmd->add_option("--state", state_file, "Density-matrix JSON file")->required();
  classify_cmd->add_option("--preset", preset, "Training preset name");
  add_common(classify_cmd, common);

  CLI::App* ingest_cmd =
      app.add_subcommand("ingest", "Confusion sweep plus diagnostics on a measured CSV");
  ingest_cmd->add_option("--counts", counts_file, "Counts or frequency CSV")->required();
  ingest_cmd->add_flag("--frequencies", frequencies, "Input rows are frequencies, not counts");
  ingest_cmd->add_option("--preset", preset, "Training preset name");
  add_common(ingest_cmd, common);

  CLI::App* diagnose_cmd =
      app.add_subcommand("diagnose", "Self-check: SIC residuals, oracles, tomography");
  diagnose_cmd->add_option("--seed", common.seed, "Base RNG seed")->capture_default_str();

  try {
    apply_config_defaults(app, argc, argv);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (wshape_cmd->parsed()) return run_wshape(dim, n, preset, common);
    if (phase_cmd->parsed()) return run_phase_diagram(family, preset, common);
    if (classify_cmd->parsed()) return run_classify(state_file, preset, common);
    if (ingest_cmd->parsed()) return run_ingest(counts_file, frequencies, preset, common);
    if (diagnose_cmd->parsed()) return run_diagnose(common.seed);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
