#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "fvlimit/io.hpp"

namespace fvlimit {

std::vector<std::pair<std::string, Eigen::VectorXd>> FieldSnapshot::columns() const {
  return {{"rho", rho},
          {"u", u},
          {"v", v},
          {"p", p},
          {"e", e},
          {"entropy", s},
          {"phi_rho", phi.row(0).transpose()},
          {"phi_rhou", phi.row(1).transpose()},
          {"phi_rhov", phi.row(2).transpose()},
          {"phi_rhoE", phi.row(3).transpose()},
          {"omega_p", omega_p}};
}

double entropy(const PrimitiveState& w, const Gas& gas) { return std::log(w.p / std::pow(w.rho, gas.gamma)); }

FieldSnapshot make_snapshot(const Mesh& mesh, const StateField& q, const LimitField* limits, const Gas& gas,
                            const PrimitiveState& reference) {
  const Index nc = mesh.num_cells();
  FieldSnapshot s;
  for (auto* f : {&s.rho, &s.u, &s.v, &s.p, &s.e, &s.s}) f->resize(nc);
  const double ref = reference.p / std::pow(reference.rho, gas.gamma);
  for (Index i = 0; i < nc; ++i) {
    PrimitiveState w;
    try {
      w = to_primitive(Vector4d(q.col(i)), gas);
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(e.what(), i);
    }
    s.rho[i] = w.rho;
    s.u[i] = w.u;
    s.v[i] = w.v;
    s.p[i] = w.p;
    s.e[i] = w.p / ((gas.gamma - 1.0) * w.rho);
    s.s[i] = std::log(w.p / std::pow(w.rho, gas.gamma) / ref);
  }
  if (limits && limits->phi.cols() == nc) {
    s.phi = limits->phi;
    s.omega_p = limits->omega_p;
  } else {
    s.phi.setOnes(4, nc);
    s.omega_p.setOnes(nc);
  }
  return s;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_vtk(const Mesh& mesh, const FieldSnapshot& snap, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "fvlimit cell data\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (Index l = 0; l < mesh.num_vertices(); ++l) {
    out << mesh.vertices()(0, l) << ' ' << mesh.vertices()(1, l) << " 0\n";
  }
  const Adjacency& cv = mesh.cell_vertices();
  out << "CELLS " << mesh.num_cells() << ' ' << mesh.num_cells() + static_cast<Index>(cv.items.size()) << "\n";
  for (Index i = 0; i < mesh.num_cells(); ++i) {
    out << cv.size(i);
    for (Index l : cv[i]) out << ' ' << l;
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.num_cells() << "\n";
  for (Index i = 0; i < mesh.num_cells(); ++i) out << (cv.size(i) == 3 ? 5 : 7) << "\n";
  out << "CELL_DATA " << mesh.num_cells() << "\n";
  for (const auto& [name, values] : snap.columns()) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (Index i = 0; i < values.size(); ++i) out << values[i] << "\n";
  }
  finish(out, path);
}

void write_csv(const Mesh& mesh, const FieldSnapshot& snap, const std::filesystem::path& path) {
  auto out = open_output(path);
  const auto cols = snap.columns();
  out << "cell,x,y";
  for (const auto& c : cols) out << ',' << c.first;
  out << "\n";
  for (Index i = 0; i < mesh.num_cells(); ++i) {
    out << i << ',' << mesh.centroid(i).x() << ',' << mesh.centroid(i).y();
    for (const auto& c : cols) out << ',' << c.second[i];
    out << "\n";
  }
  finish(out, path);
}

}  // namespace

void write_snapshot(const Mesh& mesh, const FieldSnapshot& snap, const std::filesystem::path& path,
                    SnapshotFormat format) {
  if (format == SnapshotFormat::VtkLegacy) {
    write_vtk(mesh, snap, path);
  } else {
    write_csv(mesh, snap, path);
  }
}

std::map<std::string, std::vector<double>> read_vtk_cell_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<std::string, std::vector<double>> out;
  std::string word;
  Index count = -1;
  while (in >> word) {
    if (word == "CELL_DATA") {
      in >> count;
    } else if (word == "SCALARS" && count >= 0) {
      std::string name, type, lookup, table;
      int components = 1;
      in >> name >> type >> components >> lookup >> table;
      auto& values = out[name];
      values.resize(static_cast<std::size_t>(count));
      for (auto& x : values) {
        std::string token;
        in >> token;
        x = std::stod(token);
      }
    }
  }
  if (!in.eof()) throw std::runtime_error("failed reading " + path.string());
  return out;
}

std::map<std::string, std::vector<double>> read_csv_columns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string name;
    while (std::getline(ss, name, ',')) names.push_back(name);
  }
  std::map<std::string, std::vector<double>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (const auto& name : names) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("short row in " + path.string());
      out[name].push_back(std::stod(cell));
    }
  }
  return out;
}

std::vector<CenterlineSample> centerline(const Mesh& mesh, double y0, double band) {
  std::vector<CenterlineSample> line;
  for (Index i = 0; i < mesh.num_cells(); ++i) {
    if (std::abs(mesh.centroid(i).y() - y0) < band) line.push_back({i, mesh.centroid(i).x()});
  }
  std::sort(line.begin(), line.end(), [](const auto& a, const auto& b) {
    return a.x < b.x || (a.x == b.x && a.cell < b.cell);
  });
  return line;
}

void write_centerline(const Mesh& mesh, const FieldSnapshot& snap, const std::vector<CenterlineSample>& line,
                      const std::filesystem::path& path) {
  auto out = open_output(path);
  const auto cols = snap.columns();
  out << "cell,x,y";
  for (const auto& c : cols) out << ',' << c.first;
  out << "\n";
  for (const auto& sample : line) {
    out << sample.cell << ',' << sample.x << ',' << mesh.centroid(sample.cell).y();
    for (const auto& c : cols) out << ',' << c.second[sample.cell];
    out << "\n";
  }
  finish(out, path);
}

}  // namespace fvlimit
