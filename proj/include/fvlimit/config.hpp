#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fvlimit/integrator.hpp"
#include "fvlimit/mesh.hpp"

namespace fvlimit {

enum class CaseKind { Sod, Expansion, Wedge, Step };

[[nodiscard]] std::string to_string(CaseKind kind);
[[nodiscard]] CaseKind case_kind_from_string(const std::string& name);

struct CaseSettings {
  CaseKind kind = CaseKind::Sod;
  RunConfig run;
  // Mesh recipe: grid points (sod, expansion), intervals (wedge), cells per
  // unit length (step). A non-empty mesh_file replaces the generated mesh.
  Index nx = 101;
  Index ny = 11;
  Index cells_per_unit = 65;
  std::filesystem::path mesh_file;
  std::filesystem::path output = "out";
  // Reference state for the entropy increment.
  PrimitiveState reference{1.0, 0.0, 0.0, 1.0};
};

// Defaults for each case.
[[nodiscard]] CaseSettings preset(CaseKind kind);

// Applies `key = value` lines on top of `settings`. A `case` line, if any,
// must come first and resets to that preset. Throws ConfigError.
void apply_config(std::istream& in, CaseSettings& settings);
// A relative mesh path is taken relative to the config file.
[[nodiscard]] CaseSettings load_config(const std::filesystem::path& path, CaseKind fallback = CaseKind::Sod);

// Single override in the same syntax, e.g. ("K", "10").
void apply_setting(CaseSettings& settings, const std::string& key, const std::string& value, int line = 0);

// Every key with its resolved value; feeding it back through apply_config
// reproduces the settings.
void write_resolved_config(const CaseSettings& settings, std::ostream& out);

}  // namespace fvlimit
