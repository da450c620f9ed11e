#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "qamtrack/types.hpp"

namespace qamtrack {

// Discrete (phi, rho) grid: phi covers [-90, +90) degrees, rho is symmetric
// about zero. Votes are cast at phi bin centers.
struct HoughBinning {
  double phi_bin_deg = 10.0;
  double rho_bin = 1.0;
  double rho_half_range = 10.0;

  int phi_bins() const;
  int rho_bins() const;
  double phi_center(int i) const;
  double rho_center(int j) const;
};

struct HoughAccumulator {
  HoughBinning binning;
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> counts;  // phi x rho
  int range_extensions = 0;  // warnings: rho range was grown to fit a vote

  long total() const { return counts.sum(); }
};

// Track parameters at a vote peak, reported at bin centers.
struct HoughPeak {
  double phi_deg = 0.0;
  double rho = 0.0;
  long votes = 0;
};

// For every point and every phi bin center, computes
// rho = x cos(phi) + y sin(phi) and increments the containing bin. The rho
// range grows automatically (with a warning count) when a vote falls outside,
// so the total is always #points * #phi bins.
HoughAccumulator accumulate(std::span<const Eigen::Vector2d> points,
                            HoughBinning binning);

// Maximum-vote bin; ties broken by smallest |phi|, then smallest |rho|, then
// ascending phi and rho so the result is a total order.
HoughPeak find_peak(const HoughAccumulator& acc);

// Partition of (phi, rho) space into template-bank cells, anchored at
// (-90 deg, rho_min). Bank index = phi_cell * rho_cells + rho_cell.
struct BankGrid {
  double phi_cell_deg = 10.0;
  double rho_cell = 1.0;
  double rho_min = -10.0;
  double rho_max = 10.0;

  int phi_cells() const;
  int rho_cells() const;
};

BankGrid bank_grid_for(const HoughBinning& binning, double phi_cell_deg,
                       double rho_cell);

// Cell containing the peak; throws when the peak lies outside the grid.
int assign_bank(const HoughPeak& peak, const BankGrid& grid);

}  // namespace qamtrack
