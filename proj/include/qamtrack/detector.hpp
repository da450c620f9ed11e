#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qamtrack/particle.hpp"
#include "qamtrack/pattern.hpp"
#include "qamtrack/rng.hpp"

namespace qamtrack {

// Three parallel segmented planes perpendicular to z. Each plane is a
// rows x cols grid over x in [-x_half, x_half], y in [-y_half, y_half];
// segment index = plane * rows * cols + row * cols + col.
struct DetectorGeometry {
  std::array<double, 3> plane_z_m{0.1, 0.2, 0.3};
  int rows = 2;
  int cols = 4;
  double x_half_m = 0.2;
  double y_half_m = 0.1;

  Index segment_count() const { return 3 * rows * cols; }
  Index segment_index(int plane, int row, int col) const;

  struct SegmentCoords {
    int plane;
    int row;
    int col;
  };
  SegmentCoords segment_coords(Index index) const;
};

// Named presets v24 .. v54; throws on unknown names.
DetectorGeometry geometry_preset(std::string_view name);
bool is_geometry_preset(std::string_view name);

struct Hit {
  int plane = 0;
  double x_m = 0.0;
  double y_m = 0.0;
};

// Ordered by plane, at most one entry per plane.
using HitList = std::vector<Hit>;

// Intersects the analytic trajectory (circular arc in the plane transverse to
// B, straight line for B = 0) with each detector plane. Planes missed because
// the track leaves the transverse extents, curls back before reaching them,
// or is heading away are omitted; an empty list is not an error.
HitList propagate(const ParticleState& state, const FieldConfig& field,
                  const DetectorGeometry& geom);

// One set bit per in-acceptance hit. Hits exactly on a segment boundary go to
// the lower-index segment; hits outside the extents are skipped and counted.
BitPattern digitize(const HitList& hits, const DetectorGeometry& geom,
                    int* skipped = nullptr);

struct TrackGeneratorConfig {
  double momentum_gev = 0.5;
  double polar_half_width_deg = 5.0;  // cone half-angle around +z
  double origin_x_half_m = 0.18;
  double origin_y_half_m = 0.09;
  double origin_z_m = 0.0;
};

// Uniform polar angle in [0, half width], uniform azimuth, uniform transverse
// origin, equiprobable charge. Deterministic under the stream's seed.
ParticleState sample_particle(const TrackGeneratorConfig& cfg, Rng& rng);

// Draws particles until signal_count pairwise-distinct perfect patterns with
// exactly one hit per plane have been digitized. Generating states are stored
// with the library for probe regeneration. Throws if max_tries draws cannot
// reach the requested count.
PatternLibrary build_signal_library(const DetectorGeometry& geom,
                                    const FieldConfig& field,
                                    Index signal_count, Rng& rng,
                                    const TrackGeneratorConfig& track_cfg = {},
                                    int max_tries = 100000);

// Re-runs propagate + digitize for the stored particle state of pattern i;
// falls back to the stored value when no state was recorded.
BitPattern regenerate_value(const PatternLibrary& lib, Index i,
                            const DetectorGeometry& geom,
                            const FieldConfig& field);

}  // namespace qamtrack
