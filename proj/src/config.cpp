#include "fvlimit/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace fvlimit {

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Sod:
      return "sod";
    case CaseKind::Expansion:
      return "expansion";
    case CaseKind::Wedge:
      return "wedge";
    case CaseKind::Step:
      return "step";
  }
  return "sod";
}

CaseKind case_kind_from_string(const std::string& name) {
  if (name == "sod") return CaseKind::Sod;
  if (name == "expansion") return CaseKind::Expansion;
  if (name == "wedge") return CaseKind::Wedge;
  if (name == "step") return CaseKind::Step;
  throw std::invalid_argument("unknown case '" + name + "'");
}

CaseSettings preset(CaseKind kind) {
  CaseSettings s;
  s.kind = kind;
  s.output = to_string(kind);
  switch (kind) {
    case CaseKind::Sod:
      s.run.t_end = 0.2;
      s.reference = {1.0, 0.0, 0.0, 1.0};
      break;
    case CaseKind::Expansion:
      s.run.t_end = 0.15;
      s.reference = {1.0, 0.0, 0.0, 0.4};
      break;
    case CaseKind::Wedge:
      s.run.mode = TimeMode::Steady;
      s.run.cfl = 0.8;
      s.run.max_iters = 4000;
      s.run.residual_drop = 1e-3;
      s.run.limiter.K = 10.0;
      s.nx = 87;
      s.ny = 87;
      s.reference = {1.0, 2.0, 0.0, 1.0 / 1.4};
      break;
    case CaseKind::Step:
      s.run.t_end = 4.0;
      s.run.cfl = 1.5;
      s.run.limiter.K = 10.0;
      s.cells_per_unit = 65;
      s.reference = {1.4, 3.0, 0.0, 1.0};
      break;
  }
  return s;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

double parse_double(const std::string& key, const std::string& value, int line) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, line, "expected a number, got '" + value + "'");
  return out;
}

long long parse_int(const std::string& key, const std::string& value, int line) {
  long long out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, line, "expected an integer, got '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(key, line, "expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value, int line) {
  std::string body = value;
  if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item), line));
  if (out.empty()) throw ConfigError(key, line, "expected a comma separated list");
  return out;
}

PrimitiveState parse_state(const std::string& key, const std::string& value, int line) {
  const auto v = parse_list(key, value, line);
  if (v.size() != 4) throw ConfigError(key, line, "expected rho, u, v, p");
  return {v[0], v[1], v[2], v[3]};
}

template <typename F>
auto wrap(const std::string& key, int line, F&& parse) {
  try {
    return parse();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, line, e.what());
  }
}

}  // namespace

void apply_setting(CaseSettings& s, const std::string& key, const std::string& raw, int line) {
  const std::string value = unquote(trim(raw));
  RunConfig& r = s.run;
  if (key == "case") {
    const auto kind = wrap(key, line, [&] { return case_kind_from_string(value); });
    if (kind != s.kind) throw ConfigError(key, line, "case must match the selected preset " + to_string(s.kind));
  } else if (key == "limiter") {
    r.limiter.kind = wrap(key, line, [&] { return limiter_kind_from_string(value); });
  } else if (key == "smooth") {
    r.limiter.smooth = wrap(key, line, [&] { return smooth_function_from_string(value); });
  } else if (key == "K") {
    r.limiter.K = parse_double(key, value, line);
  } else if (key == "clip") {
    if (value == "auto") {
      r.limiter.clip_to_unit.reset();
    } else {
      r.limiter.clip_to_unit = parse_bool(key, value, line);
    }
  } else if (key == "cfl") {
    r.cfl = parse_double(key, value, line);
  } else if (key == "flux") {
    r.flux = wrap(key, line, [&] { return flux_scheme_from_string(value); });
  } else if (key == "mode") {
    if (value == "steady") {
      r.mode = TimeMode::Steady;
    } else if (value == "unsteady") {
      r.mode = TimeMode::Unsteady;
    } else {
      throw ConfigError(key, line, "expected steady or unsteady");
    }
  } else if (key == "t_end") {
    r.t_end = parse_double(key, value, line);
  } else if (key == "max_iters") {
    r.max_iters = parse_int(key, value, line);
  } else if (key == "residual_drop") {
    r.residual_drop = parse_double(key, value, line);
  } else if (key == "stages") {
    r.stages = parse_list(key, value, line);
  } else if (key == "gamma") {
    r.gas.gamma = parse_double(key, value, line);
  } else if (key == "first_order") {
    r.first_order = parse_bool(key, value, line);
  } else if (key == "positivity_fallback") {
    r.positivity_fallback = parse_bool(key, value, line);
  } else if (key == "nx") {
    s.nx = static_cast<Index>(parse_int(key, value, line));
  } else if (key == "ny") {
    s.ny = static_cast<Index>(parse_int(key, value, line));
  } else if (key == "cells_per_unit") {
    s.cells_per_unit = static_cast<Index>(parse_int(key, value, line));
  } else if (key == "mesh") {
    s.mesh_file = value;
  } else if (key == "output") {
    s.output = value;
  } else if (key == "reference") {
    s.reference = parse_state(key, value, line);
  } else {
    throw ConfigError(key, line, "unknown key");
  }
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, line, e.what());
  }
}

void apply_config(std::istream& in, CaseSettings& s) {
  std::string text;
  int line = 0;
  bool seen_setting = false;
  while (std::getline(in, text)) {
    ++line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(text, line, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(key, line, "missing key");
    if (key == "case") {
      if (seen_setting) throw ConfigError(key, line, "case must be the first setting");
      const auto kind = wrap(key, line, [&] { return case_kind_from_string(unquote(value)); });
      s = preset(kind);
    } else {
      apply_setting(s, key, value, line);
    }
    seen_setting = true;
  }
}

CaseSettings load_config(const std::filesystem::path& path, CaseKind fallback) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  CaseSettings s = preset(fallback);
  apply_config(in, s);
  if (!s.mesh_file.empty() && s.mesh_file.is_relative()) s.mesh_file = path.parent_path() / s.mesh_file;
  return s;
}

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

void write_resolved_config(const CaseSettings& s, std::ostream& out) {
  const RunConfig& r = s.run;
  out << "case = " << to_string(s.kind) << "\n";
  out << "limiter = " << to_string(r.limiter.kind) << "\n";
  out << "smooth = " << to_string(r.limiter.smooth) << "\n";
  out << "K = " << shortest(r.limiter.K) << "\n";
  out << "clip = " << (r.limiter.clip_to_unit ? (*r.limiter.clip_to_unit ? "true" : "false") : "auto") << "\n";
  out << "cfl = " << shortest(r.cfl) << "\n";
  out << "flux = " << to_string(r.flux) << "\n";
  out << "mode = " << (r.mode == TimeMode::Steady ? "steady" : "unsteady") << "\n";
  out << "t_end = " << shortest(r.t_end) << "\n";
  out << "max_iters = " << r.max_iters << "\n";
  out << "residual_drop = " << shortest(r.residual_drop) << "\n";
  out << "stages = ";
  for (std::size_t m = 0; m < r.stages.size(); ++m) out << (m ? ", " : "") << shortest(r.stages[m]);
  out << "\n";
  out << "gamma = " << shortest(r.gas.gamma) << "\n";
  out << "first_order = " << (r.first_order ? "true" : "false") << "\n";
  out << "positivity_fallback = " << (r.positivity_fallback ? "true" : "false") << "\n";
  out << "nx = " << s.nx << "\n";
  out << "ny = " << s.ny << "\n";
  out << "cells_per_unit = " << s.cells_per_unit << "\n";
  if (!s.mesh_file.empty()) out << "mesh = \"" << s.mesh_file.string() << "\"\n";
  out << "output = \"" << s.output.string() << "\"\n";
  out << "reference = " << shortest(s.reference.rho) << ", " << shortest(s.reference.u) << ", "
      << shortest(s.reference.v) << ", " << shortest(s.reference.p) << "\n";
}

}  // namespace fvlimit
