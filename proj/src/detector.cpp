#include "qamtrack/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Geometry>

namespace qamtrack {

namespace {

constexpr double kPi = 3.14159265358979323846;
// r[m] = p_T[GeV] / (kCurvature * B[T]) for unit charge.
constexpr double kCurvature = 0.3;

}  // namespace

Index DetectorGeometry::segment_index(int plane, int row, int col) const {
  if (plane < 0 || plane >= 3 || row < 0 || row >= rows || col < 0 || col >= cols) {
    throw std::out_of_range("DetectorGeometry::segment_index: out of range");
  }
  return static_cast<Index>(plane) * rows * cols + static_cast<Index>(row) * cols + col;
}

DetectorGeometry::SegmentCoords DetectorGeometry::segment_coords(Index index) const {
  if (index < 0 || index >= segment_count()) {
    throw std::out_of_range("DetectorGeometry::segment_coords: out of range");
  }
  const int per_plane = rows * cols;
  const int plane = static_cast<int>(index / per_plane);
  const int rest = static_cast<int>(index % per_plane);
  return SegmentCoords{plane, rest / cols, rest % cols};
}

DetectorGeometry geometry_preset(std::string_view name) {
  DetectorGeometry g;
  if (name == "v24") {
    g.rows = 2; g.cols = 4;
  } else if (name == "v30") {
    g.rows = 2; g.cols = 5;
  } else if (name == "v36") {
    g.rows = 3; g.cols = 4;
  } else if (name == "v42") {
    g.rows = 2; g.cols = 7;
  } else if (name == "v48") {
    g.rows = 4; g.cols = 4;
  } else if (name == "v54") {
    g.rows = 3; g.cols = 6;
  } else {
    throw std::invalid_argument("unknown geometry preset: " + std::string(name));
  }
  return g;
}

bool is_geometry_preset(std::string_view name) {
  return name == "v24" || name == "v30" || name == "v36" || name == "v42" ||
         name == "v48" || name == "v54";
}

namespace {

// Straight-line crossing of plane z = Z. Returns 3D path length, or a
// negative value when the plane is not ahead.
double straight_crossing(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                         double plane_z) {
  if (dir.z() <= 0.0) return -1.0;
  return (plane_z - origin.z()) / dir.z();
}

}  // namespace

HitList propagate(const ParticleState& state, const FieldConfig& field,
                  const DetectorGeometry& geom) {
  if (field.b_tesla < 0.0) throw std::invalid_argument("propagate: B must be >= 0");
  const double p_mag = state.momentum_gev.norm();
  if (p_mag <= 0.0) throw std::invalid_argument("propagate: zero momentum");
  if (state.origin_m.z() >= geom.plane_z_m[0]) {
    throw std::invalid_argument("propagate: origin must be upstream of the first plane");
  }

  HitList hits;

  if (field.b_tesla == 0.0) {
    const Eigen::Vector3d dir = state.momentum_gev / p_mag;
    for (int plane = 0; plane < 3; ++plane) {
      const double s = straight_crossing(state.origin_m, dir, geom.plane_z_m[plane]);
      if (s < 0.0) continue;
      const Eigen::Vector3d pos = state.origin_m + s * dir;
      if (std::abs(pos.x()) <= geom.x_half_m && std::abs(pos.y()) <= geom.y_half_m) {
        hits.push_back(Hit{plane, pos.x(), pos.y()});
      }
    }
    return hits;
  }

  Eigen::Vector3d axis = field.axis;
  if (axis.norm() == 0.0) throw std::invalid_argument("propagate: zero field axis");
  axis.normalize();
  if (std::abs(axis.z()) > 1e-12) {
    throw std::invalid_argument(
        "propagate: field axis must be transverse to the detector planes");
  }

  // Frame (u, v, axis) with u = z and v = axis x z, so u x v = axis and the
  // circular motion lives in the (u, v) plane.
  const Eigen::Vector3d u(0.0, 0.0, 1.0);
  const Eigen::Vector3d v = axis.cross(u);

  const double p_axis = state.momentum_gev.dot(axis);
  const double pu = state.momentum_gev.dot(u);
  const double pv = state.momentum_gev.dot(v);
  const double p_t = std::hypot(pu, pv);
  if (p_t <= 0.0) return hits;  // momentum parallel to the field: no z motion

  const double alpha0 = std::atan2(pv, pu);
  // Transverse direction angle advances as alpha(l) = alpha0 + omega * l.
  const double omega = -static_cast<double>(state.charge) * kCurvature *
                       field.b_tesla / p_t;

  for (int plane = 0; plane < 3; ++plane) {
    const double dz = geom.plane_z_m[plane] - state.origin_m.z();
    // z(l) = z0 + (sin(alpha0 + omega l) - sin(alpha0)) / omega
    const double rhs = std::sin(alpha0) + omega * dz;
    if (std::abs(rhs) > 1.0) continue;  // arc curls back before this plane
    const double base = std::asin(rhs);
    double best = std::numeric_limits<double>::infinity();
    for (const double a : {base, kPi - base}) {
      for (int k = -2; k <= 2; ++k) {
        const double l = (a + 2.0 * kPi * k - alpha0) / omega;
        if (l > 1e-12 && l < best) best = l;
      }
    }
    if (!std::isfinite(best)) continue;
    const double l = best;
    const double du = (std::sin(alpha0 + omega * l) - std::sin(alpha0)) / omega;
    const double dv = (std::cos(alpha0) - std::cos(alpha0 + omega * l)) / omega;
    const Eigen::Vector3d pos =
        state.origin_m + (p_axis / p_t) * l * axis + du * u + dv * v;
    if (std::abs(pos.x()) <= geom.x_half_m && std::abs(pos.y()) <= geom.y_half_m) {
      hits.push_back(Hit{plane, pos.x(), pos.y()});
    }
  }
  return hits;
}

namespace {

// Boundary hits belong to the lower-index segment, so the index comes from
// ceil - 1 instead of floor. Returns -1 when outside [lo, hi].
int segment_of(double coord, double lo, double hi, int cells) {
  if (coord < lo || coord > hi) return -1;
  const double pos = (coord - lo) / (hi - lo) * cells;
  int cell = static_cast<int>(std::ceil(pos)) - 1;
  if (cell < 0) cell = 0;
  if (cell >= cells) cell = cells - 1;
  return cell;
}

}  // namespace

BitPattern digitize(const HitList& hits, const DetectorGeometry& geom, int* skipped) {
  BitPattern pattern = BitPattern::zeros(geom.segment_count());
  int outside = 0;
  for (const Hit& hit : hits) {
    if (hit.plane < 0 || hit.plane >= 3) {
      ++outside;
      continue;
    }
    const int col = segment_of(hit.x_m, -geom.x_half_m, geom.x_half_m, geom.cols);
    const int row = segment_of(hit.y_m, -geom.y_half_m, geom.y_half_m, geom.rows);
    if (col < 0 || row < 0) {
      ++outside;
      continue;
    }
    pattern.set(geom.segment_index(hit.plane, row, col), 1);
  }
  if (skipped) *skipped = outside;
  return pattern;
}

ParticleState sample_particle(const TrackGeneratorConfig& cfg, Rng& rng) {
  ParticleState s;
  s.charge = rng.sign();
  const double x0 = rng.uniform(-cfg.origin_x_half_m, cfg.origin_x_half_m);
  const double y0 = rng.uniform(-cfg.origin_y_half_m, cfg.origin_y_half_m);
  s.origin_m = Eigen::Vector3d(x0, y0, cfg.origin_z_m);
  const double polar = rng.uniform(0.0, cfg.polar_half_width_deg * kPi / 180.0);
  const double azimuth = rng.uniform(0.0, 2.0 * kPi);
  s.momentum_gev = cfg.momentum_gev *
                   Eigen::Vector3d(std::sin(polar) * std::cos(azimuth),
                                   std::sin(polar) * std::sin(azimuth),
                                   std::cos(polar));
  return s;
}

PatternLibrary build_signal_library(const DetectorGeometry& geom,
                                    const FieldConfig& field, Index signal_count,
                                    Rng& rng, const TrackGeneratorConfig& track_cfg,
                                    int max_tries) {
  if (signal_count < 1) {
    throw std::invalid_argument("build_signal_library: need at least one pattern");
  }
  PatternLibrary lib(geom.segment_count(), 0);
  for (int attempt = 0; attempt < max_tries && lib.size() < signal_count; ++attempt) {
    const ParticleState state = sample_particle(track_cfg, rng);
    const HitList hits = propagate(state, field, geom);
    if (hits.size() != 3) continue;  // must cross every plane in acceptance
    int skipped = 0;
    BitPattern value = digitize(hits, geom, &skipped);
    if (skipped != 0 || value.count() != 3) continue;
    if (lib.contains_value(value)) continue;
    lib.add(KeyedPattern{BitPattern{}, std::move(value)}, PatternKind::Signal, state);
  }
  if (lib.size() < signal_count) {
    throw std::runtime_error(
        "build_signal_library: could not reach the requested number of unique "
        "patterns within max_tries");
  }
  return lib;
}

BitPattern regenerate_value(const PatternLibrary& lib, Index i,
                            const DetectorGeometry& geom, const FieldConfig& field) {
  const auto& source = lib.source(i);
  if (!source) return lib.pattern(i).value;
  return digitize(propagate(*source, field, geom), geom);
}

}  // namespace qamtrack
