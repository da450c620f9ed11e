#pragma once

#include <Eigen/Core>

namespace qamtrack {

// Charged-particle kinematics at the generator vertex. Units: GeV, meters.
struct ParticleState {
  int charge = -1;  // -1 electron, +1 positron
  Eigen::Vector3d momentum_gev = Eigen::Vector3d(0.0, 0.0, 0.5);
  Eigen::Vector3d origin_m = Eigen::Vector3d::Zero();
};

// Uniform magnetic field. The axis is a unit vector; the default points along
// the vertical transverse direction so tracks bend in the horizontal plane.
struct FieldConfig {
  double b_tesla = 0.2;
  Eigen::Vector3d axis = Eigen::Vector3d(0.0, 1.0, 0.0);
};

}  // namespace qamtrack
