#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qamtrack/learning.hpp"
#include "qamtrack/pattern.hpp"
#include "qamtrack/recall.hpp"

namespace qamtrack {

enum class StatisticMode { Energy, Key };

enum class SolverKind { Exact, Sa, Reverse };

// Everything needed to run one recall; which fields matter depends on kind.
struct SolverConfig {
  SolverKind kind = SolverKind::Exact;
  AnnealSchedule schedule{};
  ReverseScheduleParams reverse{};
  int reads = 100;
  int exact_max_bits = 28;
};

// Dispatches on kind. The reverse solver first runs a single forward anneal
// to obtain the candidate seed state, then refines it.
SolveResult run_solver(const RecallProblem& prob, const SolverConfig& cfg,
                       std::uint64_t seed);

// Mean sample energy, or mean bipolar key-bit value over samples.
double probe_statistic(const SolveResult& result, StatisticMode mode,
                       Index key_index = -1);

// Statistics of per-probe mean energies over encoded signal probes.
struct EnergyCalibration {
  double mean_energy = 0.0;
  double sigma_energy = 0.0;
};

// Statistics of per-probe mean key values over encoded signal probes.
struct KeyCalibration {
  double mean_key = 0.0;
  double sigma_key = 0.0;
};

// Probes every encoded signal value and collects the per-probe statistic;
// mean and population standard deviation across probes. Energy calibration
// requires a signal-only library; key calibration requires keys and encoded
// backgrounds. The probe bias covers value bits only (all bits when K = 0).
EnergyCalibration calibrate_energy(const PatternLibrary& lib,
                                   const WeightMatrix& w, double theta,
                                   const SolverConfig& solver,
                                   std::uint64_t seed);
KeyCalibration calibrate_key(const PatternLibrary& lib, const WeightMatrix& w,
                             double theta, const SolverConfig& solver,
                             std::uint64_t seed);

// Builds the recall problem for a value probe against either rule: bias on
// value bits, keys (if any) unbiased.
RecallProblem build_probe_problem(const WeightMatrix& w,
                                  const BitPattern& probe_value, double theta);

// Signal iff |statistic - mean| <= beta * sigma + eps_floor, where the tiny
// floor keeps exact matches accepted when sigma = 0.
bool classify_signal(double statistic, double mean, double sigma, double beta);
PatternKind classify(double statistic, const EnergyCalibration& cal,
                     double beta);
PatternKind classify(double statistic, const KeyCalibration& cal, double beta);

struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  long total() const { return tp + fp + tn + fn; }
  double tpr() const;  // tp / (tp + fn), 0/0 -> 0
  double fpr() const;  // fp / (fp + tn), 0/0 -> 0
};

ConfusionCounts confusion(std::span<const PatternKind> predicted,
                          std::span<const PatternKind> truth);

struct RocPoint {
  double beta = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // beta strictly increasing
  double auc = 0.0;
};

// Uniform grid of `points` values on [0, beta_max].
std::vector<double> beta_grid(double beta_max = 10.0, int points = 101);

// Trapezoid AUC over (fpr, tpr) pairs with anchors (0,0) and (1,1) appended;
// points tied in fpr are averaged first.
double roc_auc(std::span<const RocPoint> points);

// One (TPR, FPR) per beta against the calibrated acceptance range.
RocCurve roc_sweep(std::span<const double> statistics,
                   std::span<const PatternKind> truth, double mean,
                   double sigma, std::span<const double> betas);

}  // namespace qamtrack
