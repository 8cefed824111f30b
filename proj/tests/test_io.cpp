#include "entbreak/io.hpp"

#include "entbreak/trajectory.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace entbreak;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "entbreak_io_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_double round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 3.141592653589793, 0.0})
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("dataset CSV writes and reads back identically") {
  SicPair sic = SicPair::standard(2, 2);
  LabeledDataset ds = depolarizing_dataset(2, 20, 7, sic);
  fs::path path = temp_dir() / "dataset.csv";
  write_dataset(path, ds);
  CHECK(fs::exists(temp_dir() / "dataset.csv.meta.json"));
  LabeledDataset back = read_dataset_csv(path);
  REQUIRE(back.points.size() == ds.points.size());
  CHECK(back.meta.dims == ds.meta.dims);
  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    CHECK(back.points[i].gamma == ds.points[i].gamma);
    CHECK((back.points[i].p.probs - ds.points[i].p.probs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("counts CSV normalizes rows to frequencies") {
  fs::path path = temp_dir() / "counts.csv";
  std::ostringstream out;
  out << "gamma";
  for (int i = 0; i < 16; ++i) out << ",count_" << i;
  out << "\n0";
  for (int i = 0; i < 16; ++i) out << "," << (i == 0 ? 3 : 1);
  for (int row = 1; row < 12; ++row) {
    out << "\n" << row;
    for (int i = 0; i < 16; ++i) out << ",1";
  }
  out << "\n";
  atomic_write_text(path, out.str());
  LabeledDataset ds = read_counts_csv(path);
  CHECK(ds.points.size() == 12);
  CHECK(ds.points[0].p.probs.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ds.points[0].p.probs(0) == doctest::Approx(3.0 / 18.0).epsilon(1e-12));
}

TEST_CASE("inconsistent CSV rows are rejected") {
  fs::path path = temp_dir() / "broken.csv";
  std::string text = "gamma,p_0,p_1,p_2,p_3\n0,0.25,0.25,0.25,0.25\n1,0.5,0.5\n";
  atomic_write_text(path, text);
  CHECK_THROWS_AS(read_dataset_csv(path), std::invalid_argument);
}

TEST_CASE("density matrix JSON round trip and validation on load") {
  DensityMatrix rho = isotropic_state(2, 0.7);
  fs::path path = temp_dir() / "state.json";
  write_density(path, rho);
  DensityMatrix back = read_density(path);
  CHECK(back.dims == rho.dims);
  CHECK((back.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-15);

  atomic_write_text(path, "{\"dims\": [2,2], \"matrix\": []}\n");
  CHECK_THROWS_AS(read_density(path), std::invalid_argument);
  atomic_write_text(path, "not json\n");
  CHECK_THROWS_AS(read_density(path), std::invalid_argument);
}

TEST_CASE("curve and diagram CSV schemas") {
  WShapeCurve curve;
  curve.gammas = {0.0, 0.5, 1.0};
  curve.acc_mean = {1.0, 0.8, 1.0};
  curve.acc_min = {0.9, 0.7, 0.95};
  curve.acc_max = {1.0, 0.9, 1.0};
  std::string text = wshape_csv(curve);
  CHECK(text.rfind("gamma,acc_mean,acc_min,acc_max\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  PhaseDiagram diagram;
  diagram.family = CurveSpec::Family::LocalDepolarizing;
  PhaseDiagramEntry entry{{CurveSpec::Family::LocalDepolarizing, 0.5, 100}, curve,
                          std::pair<double, double>{0.6, 0.55}};
  entry.curve.critical = 0.5;
  diagram.entries.push_back(entry);
  std::string diag = phase_diagram_csv(diagram);
  CHECK(diag.rfind("curve_id,param1,param2,gamma_star,route\n", 0) == 0);
  CHECK(diag.find(",peak\n") != std::string::npos);
  std::string long_fmt = phase_diagram_long_csv(diagram);
  CHECK(long_fmt.rfind("curve_id,gamma,acc_mean\n", 0) == 0);
  CHECK(std::count(long_fmt.begin(), long_fmt.end(), '\n') == 4);
}

TEST_CASE("shot record CSV") {
  ShotRecord rec{{2, 2}, std::vector<std::int64_t>(16, 1), 16};
  std::string text = shot_record_csv(rec);
  CHECK(text.rfind("index,count\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 17);
}

TEST_CASE("atomic_write_text creates parent directories and replaces content") {
  fs::path path = temp_dir() / "nested" / "a" / "file.txt";
  atomic_write_text(path, "one\n");
  atomic_write_text(path, "two\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "two");
}
