#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "fvlimit/mesh.hpp"

namespace fvlimit {

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  Index boundary = 0;
  for (const Face& f : mesh.faces()) boundary += f.boundary() ? 1 : 0;

  out << "# fvlimit mesh\n";
  out << "cells " << mesh.num_cells() << " vertices " << mesh.num_vertices() << " faces " << boundary << "\n";
  out << "patches " << mesh.patches().size() << "\n";
  for (const BoundaryPatch& p : mesh.patches()) {
    out << p.tag << ' ' << to_string(p.kind);
    if (p.kind == PatchKind::Inflow) {
      out << ' ' << p.state.rho << ' ' << p.state.u << ' ' << p.state.v << ' ' << p.state.p;
    }
    out << "\n";
  }
  for (Index l = 0; l < mesh.num_vertices(); ++l) {
    out << mesh.vertices()(0, l) << ' ' << mesh.vertices()(1, l) << "\n";
  }
  for (Index i = 0; i < mesh.num_cells(); ++i) {
    out << mesh.cell_vertices().size(i);
    for (Index l : mesh.cell_vertices()[i]) out << ' ' << l;
    out << "\n";
  }
  for (const Face& f : mesh.faces()) {
    if (f.boundary()) out << f.a << ' ' << f.b << ' ' << mesh.patches()[f.patch].tag << "\n";
  }
}

void save_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_mesh(mesh, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
      ++line;
      if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
      std::istringstream words(text);
      std::string word;
      while (words >> word) tokens_.push_back({word, line});
    }
    last_line_ = line;
  }

  std::string word(const char* what) {
    if (pos_ >= tokens_.size()) throw ParseError(std::string("unexpected end of file, expected ") + what, last_line_);
    return tokens_[pos_++].text;
  }

  void expect(const std::string& keyword) {
    const int at = line();
    if (word(keyword.c_str()) != keyword) throw ParseError("expected '" + keyword + "'", at);
  }

  template <typename T>
  T number(const char* what) {
    const int at = line();
    const std::string text = word(what);
    std::istringstream s(text);
    T value{};
    s >> value;
    if (!s || !s.eof()) throw ParseError(std::string("bad ") + what + " '" + text + "'", at);
    return value;
  }

  [[nodiscard]] int line() const { return pos_ < tokens_.size() ? tokens_[pos_].line : last_line_; }
  [[nodiscard]] bool done() const { return pos_ >= tokens_.size(); }

 private:
  struct Token {
    std::string text;
    int line;
  };
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

}  // namespace

Mesh read_mesh(std::istream& in) {
  TokenStream ts(in);
  ts.expect("cells");
  const auto nc = ts.number<Index>("cell count");
  ts.expect("vertices");
  const auto nv = ts.number<Index>("vertex count");
  ts.expect("faces");
  const auto nb = ts.number<Index>("boundary face count");
  ts.expect("patches");
  const auto np = ts.number<Index>("patch count");
  if (nc < 1 || nv < 3 || nb < 0 || np < 0) throw ParseError("invalid header counts", 1);

  std::vector<BoundaryPatch> patches;
  for (Index p = 0; p < np; ++p) {
    BoundaryPatch patch;
    const int tag_line = ts.line();
    patch.tag = ts.word("patch tag");
    for (const BoundaryPatch& seen : patches) {
      if (seen.tag == patch.tag) throw ParseError("duplicate patch tag '" + patch.tag + "'", tag_line);
    }
    const int at = ts.line();
    try {
      patch.kind = patch_kind_from_string(ts.word("patch kind"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
    if (patch.kind == PatchKind::Inflow) {
      patch.state.rho = ts.number<double>("inflow density");
      patch.state.u = ts.number<double>("inflow x-velocity");
      patch.state.v = ts.number<double>("inflow y-velocity");
      patch.state.p = ts.number<double>("inflow pressure");
    }
    patches.push_back(patch);
  }

  Eigen::Matrix2Xd vertices(2, nv);
  for (Index l = 0; l < nv; ++l) {
    vertices(0, l) = ts.number<double>("x coordinate");
    vertices(1, l) = ts.number<double>("y coordinate");
  }

  std::vector<std::vector<Index>> cells(static_cast<std::size_t>(nc));
  for (auto& ring : cells) {
    const int at = ts.line();
    const auto count = ts.number<Index>("cell vertex count");
    if (count < 3) throw ParseError("cell needs at least 3 vertices", at);
    ring.resize(static_cast<std::size_t>(count));
    for (auto& l : ring) {
      const int vat = ts.line();
      l = ts.number<Index>("vertex index");
      if (l < 0 || l >= nv) throw ParseError("vertex index out of range", vat);
    }
  }

  std::unordered_map<std::uint64_t, Index> boundary;
  const auto key = [](Index a, Index b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint64_t>(std::max(a, b));
  };
  for (Index k = 0; k < nb; ++k) {
    const int at = ts.line();
    const auto a = ts.number<Index>("face vertex");
    const auto b = ts.number<Index>("face vertex");
    const std::string tag = ts.word("face patch");
    Index patch = -1;
    for (std::size_t p = 0; p < patches.size(); ++p) {
      if (patches[p].tag == tag) patch = static_cast<Index>(p);
    }
    if (patch < 0) throw ParseError("unknown patch '" + tag + "'", at);
    if (!boundary.emplace(key(a, b), patch).second) throw ParseError("boundary face listed twice", at);
  }
  if (!ts.done()) throw ParseError("trailing content", ts.line());

  return Mesh::from_cells(std::move(vertices), cells, std::move(patches),
                          [&](const Face& f, const Vector2d&, const Vector2d&) -> Index {
                            auto it = boundary.find(key(f.a, f.b));
                            return it == boundary.end() ? -1 : it->second;
                          });
}

Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_mesh(in);
}

}  // namespace fvlimit
