#include <doctest.h>

#include <cmath>

#include "qamtrack/hough.hpp"
#include "qamtrack/rng.hpp"

using namespace qamtrack;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Points spaced along the line rho = x cos(phi) + y sin(phi).
std::vector<Eigen::Vector2d> line_points(double phi_deg, double rho, int count,
                                         double spacing = 1.0) {
  const double phi = phi_deg * kPi / 180.0;
  const Eigen::Vector2d normal(std::cos(phi), std::sin(phi));
  const Eigen::Vector2d along(-std::sin(phi), std::cos(phi));
  std::vector<Eigen::Vector2d> points;
  const double start = -0.5 * (count - 1) * spacing;
  for (int i = 0; i < count; ++i) {
    points.push_back(rho * normal + (start + i * spacing) * along);
  }
  return points;
}

}  // namespace

TEST_CASE("accumulate basics") {
  HoughBinning binning;
  SUBCASE("a single point votes once per phi bin") {
    const std::vector<Eigen::Vector2d> pts{{1.0, 0.0}};
    const HoughAccumulator acc = accumulate(pts, binning);
    CHECK(acc.total() == binning.phi_bins());
    for (int i = 0; i < acc.counts.rows(); ++i) {
      CHECK(acc.counts.row(i).sum() == 1);
    }
    // rho(phi=0) = x = 1 and rho(phi=-90) = -y = 0 for the point (1, 0).
    int phi0 = -1, phi_m90 = -1;
    for (int i = 0; i < binning.phi_bins(); ++i) {
      if (binning.phi_center(i) == 0.0) phi0 = i;
      if (binning.phi_center(i) == -90.0) phi_m90 = i;
    }
    REQUIRE(phi0 >= 0);
    REQUIRE(phi_m90 >= 0);
    auto bin_of = [&](double rho) {
      return static_cast<int>(
          std::floor((rho + acc.binning.rho_half_range) / acc.binning.rho_bin + 0.5));
    };
    CHECK(acc.counts(phi0, bin_of(1.0)) == 1);
    CHECK(acc.counts(phi_m90, bin_of(0.0)) == 1);
  }
  SUBCASE("votes are conserved") {
    Rng rng(41);
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i < 57; ++i) {
      pts.emplace_back(rng.uniform(-8, 8), rng.uniform(-8, 8));
    }
    const HoughAccumulator acc = accumulate(pts, binning);
    CHECK(acc.total() == 57L * binning.phi_bins());
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(accumulate({}, binning), std::invalid_argument);
  }
  SUBCASE("out-of-range rho extends the grid with a warning") {
    const std::vector<Eigen::Vector2d> pts{{25.0, 0.0}};
    const HoughAccumulator acc = accumulate(pts, binning);
    CHECK(acc.range_extensions == 1);
    CHECK(acc.binning.rho_half_range >= 25.0);
    CHECK(acc.total() == acc.binning.phi_bins());
  }
}

TEST_CASE("eleven collinear points on the vertical line x = 2") {
  const std::vector<Eigen::Vector2d> pts = line_points(0.0, 2.0, 11);
  const HoughAccumulator acc = accumulate(pts, HoughBinning{});
  const HoughPeak peak = find_peak(acc);
  CHECK(peak.phi_deg == 0.0);
  CHECK(peak.rho == 2.0);
  CHECK(peak.votes == 11);
}

TEST_CASE("peak recovery for lines with parameters on the grid") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const double phi = -90.0 + 10.0 * static_cast<double>(rng.next_below(18));
    const double rho = -9.0 + static_cast<double>(rng.next_below(19));
    const auto pts = line_points(phi, rho, 11);
    const HoughPeak peak = find_peak(accumulate(pts, HoughBinning{}));
    CHECK(peak.phi_deg == phi);
    CHECK(peak.rho == rho);
    CHECK(peak.votes == 11);
  }
}

TEST_CASE("dropping any single point never moves an 11-point peak") {
  const auto pts = line_points(-50.0, 3.0, 11);
  for (std::size_t drop = 0; drop < pts.size(); ++drop) {
    std::vector<Eigen::Vector2d> reduced;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != drop) reduced.push_back(pts[i]);
    }
    const HoughPeak peak = find_peak(accumulate(reduced, HoughBinning{}));
    CHECK(peak.phi_deg == -50.0);
    CHECK(peak.rho == 3.0);
    CHECK(peak.votes == 10);
  }
}

TEST_CASE("uniform noise cannot remove the line peak's votes") {
  const auto line = line_points(20.0, -4.0, 11);
  std::vector<Eigen::Vector2d> pts = line;
  Rng rng(43);
  for (int i = 0; i < 15; ++i) {  // ~15% extra random cells
    pts.emplace_back(rng.uniform(-9, 9), rng.uniform(-9, 9));
  }
  const HoughAccumulator acc = accumulate(pts, HoughBinning{});
  const HoughPeak peak = find_peak(acc);
  CHECK(peak.votes >= 11);  // the line's bin still holds 11 votes
}

TEST_CASE("find_peak tie rules") {
  SUBCASE("all-tied single point picks the smallest |phi|") {
    const std::vector<Eigen::Vector2d> pts{{1.0, 0.0}};
    const HoughPeak peak = find_peak(accumulate(pts, HoughBinning{}));
    CHECK(peak.phi_deg == 0.0);
    CHECK(peak.rho == 1.0);
  }
  SUBCASE("equal peaks at +-30 degrees resolve deterministically to -30") {
    HoughAccumulator acc;
    acc.binning = HoughBinning{};
    acc.counts.setZero(acc.binning.phi_bins(), acc.binning.rho_bins());
    int plus30 = -1, minus30 = -1;
    for (int i = 0; i < acc.binning.phi_bins(); ++i) {
      if (acc.binning.phi_center(i) == 30.0) plus30 = i;
      if (acc.binning.phi_center(i) == -30.0) minus30 = i;
    }
    REQUIRE(plus30 >= 0);
    REQUIRE(minus30 >= 0);
    acc.counts(plus30, 3) = 7;
    acc.counts(minus30, 3) = 7;
    const HoughPeak a = find_peak(acc);
    const HoughPeak b = find_peak(acc);
    CHECK(a.phi_deg == -30.0);
    CHECK(a.phi_deg == b.phi_deg);
    CHECK(a.rho == b.rho);
  }
}

TEST_CASE("bank assignment") {
  SUBCASE("a single-cell grid always answers bank 0") {
    BankGrid grid;
    grid.phi_cell_deg = 180.0;
    grid.rho_cell = 21.0;
    grid.rho_min = -10.5;
    grid.rho_max = 10.5;
    CHECK(assign_bank(HoughPeak{-50.0, -0.51, 5}, grid) == 0);
    CHECK(assign_bank(HoughPeak{80.0, 9.0, 5}, grid) == 0);
  }
  SUBCASE("floor-division oracle for the default 10 x 1 grid") {
    const BankGrid grid = bank_grid_for(HoughBinning{}, 10.0, 1.0);
    const HoughPeak peak{-50.0, -0.51, 11};
    const int expected_phi = static_cast<int>(std::floor((-50.0 + 90.0) / 10.0));
    const int expected_rho =
        static_cast<int>(std::floor((-0.51 - grid.rho_min) / 1.0));
    CHECK(assign_bank(peak, grid) == expected_phi * grid.rho_cells() + expected_rho);
  }
  SUBCASE("adjacent peaks across a cell boundary land in different banks") {
    const BankGrid grid = bank_grid_for(HoughBinning{}, 10.0, 1.0);
    const int a = assign_bank(HoughPeak{-50.0, 2.4, 1}, grid);
    const int b = assign_bank(HoughPeak{-50.0, 2.6, 1}, grid);
    CHECK(a != b);
    CHECK(b == a + 1);
  }
  SUBCASE("peaks outside the grid are rejected") {
    const BankGrid grid = bank_grid_for(HoughBinning{}, 10.0, 1.0);
    CHECK_THROWS_AS(assign_bank(HoughPeak{95.0, 0.0, 1}, grid), std::invalid_argument);
    CHECK_THROWS_AS(assign_bank(HoughPeak{0.0, 99.0, 1}, grid), std::invalid_argument);
  }
}
