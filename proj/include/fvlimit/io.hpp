#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fvlimit/limiters.hpp"
#include "fvlimit/mesh.hpp"

namespace fvlimit {

// Cell-centred output fields.
struct FieldSnapshot {
  Eigen::VectorXd rho, u, v, p, e, s;  // e internal energy, s = ln(p / rho^gamma) - s_ref
  StateField phi;
  Eigen::VectorXd omega_p;

  // Names and columns in output order.
  [[nodiscard]] std::vector<std::pair<std::string, Eigen::VectorXd>> columns() const;
};

[[nodiscard]] double entropy(const PrimitiveState& w, const Gas& gas);

// Throws NonPhysicalState on a non-physical cell. `limits` may be empty.
[[nodiscard]] FieldSnapshot make_snapshot(const Mesh& mesh, const StateField& q, const LimitField* limits,
                                          const Gas& gas, const PrimitiveState& reference);

enum class SnapshotFormat { VtkLegacy, Csv };

void write_snapshot(const Mesh& mesh, const FieldSnapshot& snap, const std::filesystem::path& path,
                    SnapshotFormat format);

// Cell data arrays of a legacy ASCII file written by write_snapshot.
[[nodiscard]] std::map<std::string, std::vector<double>> read_vtk_cell_data(const std::filesystem::path& path);

// Named columns of a CSV file with a header row.
[[nodiscard]] std::map<std::string, std::vector<double>> read_csv_columns(const std::filesystem::path& path);

struct CenterlineSample {
  Index cell;
  double x;
};

// Cells with |y - y0| < band, sorted by x (ties by cell index).
[[nodiscard]] std::vector<CenterlineSample> centerline(const Mesh& mesh, double y0, double band);

void write_centerline(const Mesh& mesh, const FieldSnapshot& snap, const std::vector<CenterlineSample>& line,
                      const std::filesystem::path& path);

}  // namespace fvlimit
