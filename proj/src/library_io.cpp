#include "qamtrack/library_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qamtrack {

namespace {

using nlohmann::json;

json geometry_to_json(const DetectorGeometry& g, const FieldConfig* field) {
  json j;
  j["plane_z"] = {g.plane_z_m[0], g.plane_z_m[1], g.plane_z_m[2]};
  j["rows"] = g.rows;
  j["cols"] = g.cols;
  j["x_half"] = g.x_half_m;
  j["y_half"] = g.y_half_m;
  if (field) {
    j["field"] = {{"b_tesla", field->b_tesla},
                  {"axis", {field->axis.x(), field->axis.y(), field->axis.z()}}};
  }
  return j;
}

DetectorGeometry geometry_from_json(const json& j) {
  DetectorGeometry g;
  const auto& z = j.at("plane_z");
  if (!z.is_array() || z.size() != 3) {
    throw std::runtime_error("library meta: plane_z must hold three values");
  }
  for (int i = 0; i < 3; ++i) g.plane_z_m[static_cast<std::size_t>(i)] = z[i];
  g.rows = j.at("rows");
  g.cols = j.at("cols");
  g.x_half_m = j.at("x_half");
  g.y_half_m = j.at("y_half");
  return g;
}

FieldConfig field_from_json(const json& j) {
  FieldConfig f;
  f.b_tesla = j.at("b_tesla");
  const auto& axis = j.at("axis");
  f.axis = Eigen::Vector3d(axis.at(0), axis.at(1), axis.at(2));
  return f;
}

json state_to_json(const ParticleState& s) {
  return json{{"charge", s.charge},
              {"momentum", {s.momentum_gev.x(), s.momentum_gev.y(), s.momentum_gev.z()}},
              {"origin", {s.origin_m.x(), s.origin_m.y(), s.origin_m.z()}}};
}

ParticleState state_from_json(const json& j) {
  ParticleState s;
  s.charge = j.at("charge");
  const auto& p = j.at("momentum");
  s.momentum_gev = Eigen::Vector3d(p.at(0), p.at(1), p.at(2));
  const auto& o = j.at("origin");
  s.origin_m = Eigen::Vector3d(o.at(0), o.at(1), o.at(2));
  return s;
}

json patterns_to_json(const std::vector<KeyedPattern>& patterns,
                      const std::vector<PatternKind>& kinds) {
  json arr = json::array();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    arr.push_back(json{{"kind", to_string(kinds[i])},
                       {"key", to_bit_string(patterns[i].key)},
                       {"value", to_bit_string(patterns[i].value)}});
  }
  return arr;
}

BitPattern parse_bits(const json& j, const char* field, Index expected) {
  if (!j.is_string()) throw std::runtime_error(std::string("library: ") + field + " must be a string");
  const std::string s = j.get<std::string>();
  if (static_cast<Index>(s.size()) != expected) {
    throw std::runtime_error(std::string("library: ") + field +
                             " has the wrong width");
  }
  return bit_pattern_from_string(s);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void check_version(const json& j) {
  const int version = j.at("version");
  if (version != kLibraryFormatVersion) {
    throw std::runtime_error("unsupported library version " +
                             std::to_string(version) + ", expected " +
                             std::to_string(kLibraryFormatVersion));
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

void save_library(const PatternLibrary& lib, const std::filesystem::path& path,
                  const DetectorGeometry* geometry, const FieldConfig* field) {
  json j;
  j["version"] = kLibraryFormatVersion;
  j["V"] = lib.value_length();
  j["K"] = lib.key_length();
  json patterns = json::array();
  json states = json::array();
  bool any_state = false;
  for (Index i = 0; i < lib.size(); ++i) {
    patterns.push_back(json{{"kind", to_string(lib.kind(i))},
                            {"key", to_bit_string(lib.pattern(i).key)},
                            {"value", to_bit_string(lib.pattern(i).value)}});
    if (lib.source(i)) {
      states.push_back(state_to_json(*lib.source(i)));
      any_state = true;
    } else {
      states.push_back(nullptr);
    }
  }
  j["patterns"] = std::move(patterns);
  json meta;
  if (geometry) meta["geometry"] = geometry_to_json(*geometry, field);
  if (any_state) meta["states"] = std::move(states);
  if (!meta.empty()) j["meta"] = std::move(meta);
  write_json_file(j, path);
}

LoadedLibrary load_library(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  check_version(j);
  const Index value_length = j.at("V");
  const Index key_length = j.at("K");
  const auto& patterns = j.at("patterns");
  if (!patterns.is_array() || patterns.empty()) {
    throw std::runtime_error("library: patterns must be a nonempty array");
  }

  std::vector<std::optional<ParticleState>> states(patterns.size());
  if (j.contains("meta") && j["meta"].contains("states")) {
    const auto& s = j["meta"]["states"];
    if (!s.is_array() || s.size() != patterns.size()) {
      throw std::runtime_error("library meta: states must parallel patterns");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_null()) states[i] = state_from_json(s[i]);
    }
  }

  LoadedLibrary out{PatternLibrary(value_length, key_length), std::nullopt,
                    std::nullopt};
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    KeyedPattern kp{parse_bits(p.at("key"), "key", key_length),
                    parse_bits(p.at("value"), "value", value_length)};
    const PatternKind kind = pattern_kind_from_string(p.at("kind"));
    out.library.add(std::move(kp), kind, states[i]);  // throws on duplicates
  }
  if (j.contains("meta") && j["meta"].contains("geometry")) {
    const auto& g = j["meta"]["geometry"];
    out.geometry = geometry_from_json(g);
    if (g.contains("field")) out.field = field_from_json(g["field"]);
  }
  return out;
}

void save_probe_set(const ProbeSet& probes, const std::filesystem::path& path) {
  json j;
  j["version"] = kLibraryFormatVersion;
  j["V"] = probes.value_length;
  j["K"] = probes.key_length;
  j["patterns"] = patterns_to_json(probes.patterns, probes.kinds);
  write_json_file(j, path);
}

ProbeSet load_probe_set(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  check_version(j);
  ProbeSet out;
  out.value_length = j.at("V");
  out.key_length = j.at("K");
  const auto& patterns = j.at("patterns");
  if (!patterns.is_array() || patterns.empty()) {
    throw std::runtime_error("probe set: patterns must be a nonempty array");
  }
  for (const auto& p : patterns) {
    out.patterns.push_back(KeyedPattern{parse_bits(p.at("key"), "key", out.key_length),
                                        parse_bits(p.at("value"), "value", out.value_length)});
    out.kinds.push_back(pattern_kind_from_string(p.at("kind")));
  }
  return out;
}

}  // namespace qamtrack
