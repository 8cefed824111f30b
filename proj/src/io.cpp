#include "entbreak/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace entbreak {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_text(const fs::path& path, const std::string& content) {
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write_text: cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("atomic_write_text: write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

static std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

static Dims dims_from_width(std::size_t k) {
  for (int da = 2; da <= 4; ++da)
    for (int db = 2; db <= 4; ++db)
      if (static_cast<std::size_t>(da) * da * db * db == k) return {da, db};
  throw std::invalid_argument("csv: cannot infer subsystem dims from row width " +
                              std::to_string(k));
}

std::string dataset_csv(const LabeledDataset& ds) {
  std::ostringstream out;
  const Eigen::Index k = ds.points.front().p.probs.size();
  out << "gamma";
  for (Eigen::Index i = 0; i < k; ++i) out << ",p_" << i;
  out << "\n";
  for (const LabeledPoint& pt : ds.points) {
    out << format_double(pt.gamma);
    for (Eigen::Index i = 0; i < k; ++i) out << ',' << format_double(pt.p.probs(i));
    out << "\n";
  }
  return out.str();
}

void write_dataset(const fs::path& csv_path, const LabeledDataset& ds) {
  ds.validate();
  atomic_write_text(csv_path, dataset_csv(ds));
  json meta = {{"kind", ds.meta.kind},
               {"dims", {ds.meta.dims.a, ds.meta.dims.b}},
               {"seed", ds.meta.seed},
               {"note", ds.meta.note},
               {"points", ds.points.size()}};
  fs::path meta_path = csv_path;
  meta_path += ".meta.json";
  atomic_write_text(meta_path, meta.dump(2) + "\n");
}

static LabeledDataset read_rows(const fs::path& csv_path, bool counts) {
  std::ifstream in(csv_path);
  if (!in) throw std::invalid_argument("csv: cannot open " + csv_path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty file");
  const std::size_t width = split_csv_line(line).size();
  if (width < 2) throw std::invalid_argument("csv: header too short");
  const std::size_t k = width - 1;
  LabeledDataset ds;
  ds.meta.kind = counts ? "ingested_counts" : "ingested";
  ds.meta.dims = dims_from_width(k);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != width)
      throw std::invalid_argument("csv: inconsistent row width in " + csv_path.string());
    LabeledPoint pt;
    pt.gamma = std::stod(cells[0]);
    pt.p.dims = ds.meta.dims;
    pt.p.probs.resize(static_cast<Eigen::Index>(k));
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double v = std::stod(cells[i + 1]);
      if (v < 0.0) throw std::invalid_argument("csv: negative entry");
      pt.p.probs(static_cast<Eigen::Index>(i)) = v;
      sum += v;
    }
    if (counts) {
      if (sum <= 0.0) throw std::invalid_argument("csv: counts row sums to zero");
      pt.p.probs /= sum;
    }
    ds.points.push_back(std::move(pt));
  }
  ds.validate();
  return ds;
}

LabeledDataset read_dataset_csv(const fs::path& csv_path) { return read_rows(csv_path, false); }
LabeledDataset read_counts_csv(const fs::path& csv_path) { return read_rows(csv_path, true); }

std::string counts_csv(const std::vector<std::pair<double, ShotRecord>>& rows) {
  if (rows.empty()) throw std::invalid_argument("counts_csv: no rows");
  std::ostringstream out;
  out << "gamma";
  for (std::size_t i = 0; i < rows.front().second.counts.size(); ++i) out << ",count_" << i;
  out << "\n";
  for (const auto& [gamma, rec] : rows) {
    out << format_double(gamma);
    for (std::int64_t c : rec.counts) out << ',' << c;
    out << "\n";
  }
  return out.str();
}

std::string shot_record_csv(const ShotRecord& rec) {
  std::ostringstream out;
  out << "index,count\n";
  for (std::size_t i = 0; i < rec.counts.size(); ++i) out << i << ',' << rec.counts[i] << "\n";
  return out.str();
}

std::string wshape_csv(const WShapeCurve& curve) {
  std::ostringstream out;
  out << "gamma,acc_mean,acc_min,acc_max\n";
  for (std::size_t i = 0; i < curve.gammas.size(); ++i)
    out << format_double(curve.gammas[i]) << ',' << format_double(curve.acc_mean[i]) << ','
        << format_double(curve.acc_min[i]) << ',' << format_double(curve.acc_max[i]) << "\n";
  return out.str();
}

void write_wshape(const fs::path& path, const WShapeCurve& curve) {
  atomic_write_text(path, wshape_csv(curve));
}

std::string phase_diagram_csv(const PhaseDiagram& diagram) {
  std::ostringstream out;
  out << "curve_id,param1,param2,gamma_star,route\n";
  for (const PhaseDiagramEntry& e : diagram.entries) {
    out << format_double(e.spec.shape) << ',';
    if (e.critical_params)
      out << format_double(e.critical_params->first) << ','
          << format_double(e.critical_params->second) << ','
          << (e.curve.critical ? format_double(*e.curve.critical) : std::string("nan")) << ','
          << (e.from_reconstruction ? "reconstruction" : "peak");
    else
      out << "nan,nan,nan,none";
    out << "\n";
  }
  return out.str();
}

std::string phase_diagram_long_csv(const PhaseDiagram& diagram) {
  std::ostringstream out;
  out << "curve_id,gamma,acc_mean\n";
  for (const PhaseDiagramEntry& e : diagram.entries)
    for (std::size_t i = 0; i < e.curve.gammas.size(); ++i)
      out << format_double(e.spec.shape) << ',' << format_double(e.curve.gammas[i]) << ','
          << format_double(e.curve.acc_mean[i]) << "\n";
  return out.str();
}

json density_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.mat.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.mat.cols(); ++c)
      row.push_back({rho.mat(r, c).real(), rho.mat(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dims", {rho.dims.a, rho.dims.b}}, {"matrix", rows}};
}

DensityMatrix density_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("matrix"))
    throw std::invalid_argument("density_from_json: missing dims or matrix");
  DensityMatrix rho;
  rho.dims = {j["dims"].at(0).get<int>(), j["dims"].at(1).get<int>()};
  const int n = rho.dims.total();
  const auto& rows = j["matrix"];
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("density_from_json: matrix row count mismatch");
  rho.mat.resize(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      throw std::invalid_argument("density_from_json: matrix column count mismatch");
    for (int c = 0; c < n; ++c)
      rho.mat(r, c) = Cplx(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
  }
  rho.validate();
  return rho;
}

void write_density(const fs::path& path, const DensityMatrix& rho) {
  atomic_write_text(path, density_to_json(rho).dump(2) + "\n");
}

DensityMatrix read_density(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_density: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("read_density: malformed JSON: ") + err.what());
  }
  return density_from_json(j);
}

}  // namespace entbreak
