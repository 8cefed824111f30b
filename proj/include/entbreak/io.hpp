#pragma once

// File formats shared by the CLI and the test suites: dataset / counts /
// curve CSVs, density-matrix JSON and atomic writes.

#include "entbreak/confusion.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace entbreak {

std::string format_double(double v);  // shortest round-trip decimal

// Writes to a temp file in the same directory, then renames into place.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

std::string dataset_csv(const LabeledDataset& ds);
void write_dataset(const std::filesystem::path& csv_path, const LabeledDataset& ds);
LabeledDataset read_dataset_csv(const std::filesystem::path& csv_path);

std::string counts_csv(const std::vector<std::pair<double, ShotRecord>>& rows);
// Counts rows normalize to a frequency dataset.
LabeledDataset read_counts_csv(const std::filesystem::path& csv_path);

std::string shot_record_csv(const ShotRecord& rec);

std::string wshape_csv(const WShapeCurve& curve);
void write_wshape(const std::filesystem::path& path, const WShapeCurve& curve);

std::string phase_diagram_csv(const PhaseDiagram& diagram);
// Long-format rows (curve_id, gamma, acc_mean) for heat-map plotting.
std::string phase_diagram_long_csv(const PhaseDiagram& diagram);

nlohmann::json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);
void write_density(const std::filesystem::path& path, const DensityMatrix& rho);
DensityMatrix read_density(const std::filesystem::path& path);

}  // namespace entbreak
