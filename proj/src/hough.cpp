#include "qamtrack/hough.hpp"

#include <cmath>
#include <stdexcept>

namespace qamtrack {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// Bin centers sit on the grid itself: phi at -90, -90 + w, ... and rho at
// -range, ..., 0, ..., +range, so that lines with parameters on the grid
// (a vertical line at integer x, say) land in a single bin.
int HoughBinning::phi_bins() const {
  return static_cast<int>(std::ceil(180.0 / phi_bin_deg - 1e-9));
}

int HoughBinning::rho_bins() const {
  return static_cast<int>(std::floor(2.0 * rho_half_range / rho_bin + 1e-9)) + 1;
}

double HoughBinning::phi_center(int i) const {
  return -90.0 + static_cast<double>(i) * phi_bin_deg;
}

double HoughBinning::rho_center(int j) const {
  return -rho_half_range + static_cast<double>(j) * rho_bin;
}

HoughAccumulator accumulate(std::span<const Eigen::Vector2d> points,
                            HoughBinning binning) {
  if (points.empty()) throw std::invalid_argument("accumulate: no points");
  if (!(binning.phi_bin_deg > 0.0) || !(binning.rho_bin > 0.0) ||
      !(binning.rho_half_range > 0.0)) {
    throw std::invalid_argument("accumulate: bin widths and range must be positive");
  }

  // Grow the rho range until every vote fits, counting the growth once.
  int extensions = 0;
  double needed = 0.0;
  for (const auto& p : points) needed = std::max(needed, p.norm());
  if (needed > binning.rho_half_range) {
    binning.rho_half_range +=
        binning.rho_bin *
        std::ceil((needed - binning.rho_half_range) / binning.rho_bin);
    ++extensions;
  }

  HoughAccumulator acc;
  acc.binning = binning;
  acc.range_extensions = extensions;
  acc.counts.setZero(binning.phi_bins(), binning.rho_bins());

  for (const auto& p : points) {
    for (int i = 0; i < binning.phi_bins(); ++i) {
      const double phi = binning.phi_center(i) * kPi / 180.0;
      const double rho = p.x() * std::cos(phi) + p.y() * std::sin(phi);
      // Round to the nearest rho grid line (bins are centered on the grid).
      const int j = static_cast<int>(
          std::floor((rho + binning.rho_half_range) / binning.rho_bin + 0.5));
      acc.counts(i, j) += 1;
    }
  }
  return acc;
}

HoughPeak find_peak(const HoughAccumulator& acc) {
  if (acc.counts.size() == 0) throw std::invalid_argument("find_peak: empty accumulator");
  const HoughBinning& b = acc.binning;
  HoughPeak best;
  bool first = true;
  for (int i = 0; i < acc.counts.rows(); ++i) {
    for (int j = 0; j < acc.counts.cols(); ++j) {
      const long votes = acc.counts(i, j);
      if (votes == 0) continue;
      const HoughPeak candidate{b.phi_center(i), b.rho_center(j), votes};
      if (first) {
        best = candidate;
        first = false;
        continue;
      }
      // Most votes, then smallest |phi|, smallest |rho|, then ascending
      // phi and rho as the final deterministic tiebreak.
      bool better = false;
      if (candidate.votes != best.votes) {
        better = candidate.votes > best.votes;
      } else if (std::abs(candidate.phi_deg) != std::abs(best.phi_deg)) {
        better = std::abs(candidate.phi_deg) < std::abs(best.phi_deg);
      } else if (std::abs(candidate.rho) != std::abs(best.rho)) {
        better = std::abs(candidate.rho) < std::abs(best.rho);
      } else if (candidate.phi_deg != best.phi_deg) {
        better = candidate.phi_deg < best.phi_deg;
      } else {
        better = candidate.rho < best.rho;
      }
      if (better) best = candidate;
    }
  }
  if (first) {
    // All-zero grid cannot occur through accumulate (every point votes in
    // every phi column), but keep the answer well defined.
    best = HoughPeak{b.phi_center(0), b.rho_center(0), 0};
  }
  return best;
}

int BankGrid::phi_cells() const {
  return static_cast<int>(std::ceil(180.0 / phi_cell_deg - 1e-9));
}

int BankGrid::rho_cells() const {
  return static_cast<int>(std::ceil((rho_max - rho_min) / rho_cell - 1e-9));
}

BankGrid bank_grid_for(const HoughBinning& binning, double phi_cell_deg,
                       double rho_cell) {
  BankGrid grid;
  grid.phi_cell_deg = phi_cell_deg;
  grid.rho_cell = rho_cell;
  // Cover the full binned interval including the outermost half-bins.
  grid.rho_min = -binning.rho_half_range - binning.rho_bin / 2.0;
  grid.rho_max = binning.rho_half_range + binning.rho_bin / 2.0;
  return grid;
}

int assign_bank(const HoughPeak& peak, const BankGrid& grid) {
  if (peak.phi_deg < -90.0 || peak.phi_deg >= 90.0 || peak.rho < grid.rho_min ||
      peak.rho >= grid.rho_max) {
    throw std::invalid_argument("assign_bank: peak lies outside the bank grid");
  }
  const int phi_cell =
      static_cast<int>(std::floor((peak.phi_deg + 90.0) / grid.phi_cell_deg));
  const int rho_cell =
      static_cast<int>(std::floor((peak.rho - grid.rho_min) / grid.rho_cell));
  return phi_cell * grid.rho_cells() + rho_cell;
}

}  // namespace qamtrack
