#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qamtrack/detector.hpp"
#include "qamtrack/pattern.hpp"

namespace qamtrack {

inline constexpr int kLibraryFormatVersion = 1;

struct LoadedLibrary {
  PatternLibrary library;
  std::optional<DetectorGeometry> geometry;
  std::optional<FieldConfig> field;
};

// Library file layout (JSON):
//   { "version": 1, "V": int, "K": int,
//     "patterns": [ { "kind": "signal"|"background",
//                     "key": "0/1 string", "value": "0/1 string" } ],
//     "meta": { "geometry": {...}, "states": [ {...}|null ] } }
// Bit strings are most-significant-segment-first, fixed width. meta is
// optional and carries the generating detector setup and particle states.
void save_library(const PatternLibrary& lib, const std::filesystem::path& path,
                  const DetectorGeometry* geometry = nullptr,
                  const FieldConfig* field = nullptr);

// Validates version, widths, and pairwise-distinct values; throws on any
// malformed or inconsistent input.
LoadedLibrary load_library(const std::filesystem::path& path);

// Probe sets reuse the library layout but tolerate duplicate values
// (corrupted probes may collide).
struct ProbeSet {
  Index value_length = 0;
  Index key_length = 0;
  std::vector<KeyedPattern> patterns;
  std::vector<PatternKind> kinds;
};

void save_probe_set(const ProbeSet& probes, const std::filesystem::path& path);
ProbeSet load_probe_set(const std::filesystem::path& path);

}  // namespace qamtrack
