#include "qamtrack/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qamtrack {

SolveResult run_solver(const RecallProblem& prob, const SolverConfig& cfg,
                       std::uint64_t seed) {
  switch (cfg.kind) {
    case SolverKind::Exact:
      return solve_exact(prob, cfg.exact_max_bits);
    case SolverKind::Sa:
      return solve_sa(prob, cfg.schedule, cfg.reads, seed);
    case SolverKind::Reverse: {
      // Forward anneal supplies the candidate state, then the chained
      // reverse refinement takes over.
      const SolveResult candidate =
          solve_sa(prob, cfg.schedule, 1, derive_seed(seed, 0x7F5DULL));
      return solve_reverse(prob, candidate.states[0], cfg.reverse, cfg.reads,
                           derive_seed(seed, 0x52E5ULL));
    }
  }
  throw std::logic_error("run_solver: unknown solver kind");
}

double probe_statistic(const SolveResult& result, StatisticMode mode,
                       Index key_index) {
  if (result.states.empty()) {
    throw std::invalid_argument("probe_statistic: empty result");
  }
  if (mode == StatisticMode::Energy) {
    double sum = 0.0;
    for (double e : result.energies) sum += e;
    return sum / static_cast<double>(result.energies.size());
  }
  if (key_index < 0) {
    throw std::invalid_argument("probe_statistic: key mode needs a key index");
  }
  double sum = 0.0;
  for (const auto& state : result.states) {
    if (key_index >= state.size()) {
      throw std::invalid_argument("probe_statistic: key index out of range");
    }
    sum += state[key_index];
  }
  return sum / static_cast<double>(result.states.size());
}

RecallProblem build_probe_problem(const WeightMatrix& w,
                                  const BitPattern& probe_value, double theta) {
  const Index k = w.key_length;
  if (k == 0) return build_qamm(w, to_bipolar(probe_value), theta);
  return build_qcam(w, to_bipolar(probe_value), theta, k);
}

namespace {

struct CalibrationStats {
  double mean = 0.0;
  double sigma = 0.0;  // population standard deviation
};

CalibrationStats probe_encoded_signals(const PatternLibrary& lib,
                                       const WeightMatrix& w, double theta,
                                       const SolverConfig& solver,
                                       std::uint64_t seed, StatisticMode mode) {
  const auto signals = lib.signal_indices();
  if (signals.empty()) {
    throw std::invalid_argument("calibrate: library holds no signal patterns");
  }
  std::vector<double> stats;
  stats.reserve(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const RecallProblem prob =
        build_probe_problem(w, lib.pattern(signals[i]).value, theta);
    const SolveResult result =
        run_solver(prob, solver, derive_seed(seed, static_cast<std::uint64_t>(i)));
    stats.push_back(probe_statistic(result, mode, mode == StatisticMode::Key ? 0 : -1));
  }
  CalibrationStats out;
  for (double v : stats) out.mean += v;
  out.mean /= static_cast<double>(stats.size());
  double var = 0.0;
  for (double v : stats) var += (v - out.mean) * (v - out.mean);
  out.sigma = std::sqrt(var / static_cast<double>(stats.size()));
  return out;
}

}  // namespace

EnergyCalibration calibrate_energy(const PatternLibrary& lib, const WeightMatrix& w,
                                   double theta, const SolverConfig& solver,
                                   std::uint64_t seed) {
  if (lib.background_count() > 0) {
    throw std::invalid_argument(
        "calibrate_energy: energy classification needs signal-only encoding "
        "(mixed encoding makes energies uninformative)");
  }
  const CalibrationStats s =
      probe_encoded_signals(lib, w, theta, solver, seed, StatisticMode::Energy);
  return EnergyCalibration{s.mean, s.sigma};
}

KeyCalibration calibrate_key(const PatternLibrary& lib, const WeightMatrix& w,
                             double theta, const SolverConfig& solver,
                             std::uint64_t seed) {
  if (lib.key_length() < 1) {
    throw std::invalid_argument("calibrate_key: library has no key bits");
  }
  if (lib.background_count() < 1) {
    throw std::invalid_argument(
        "calibrate_key: key classification needs encoded backgrounds "
        "(keys are uninformative with signal-only encoding)");
  }
  const CalibrationStats s =
      probe_encoded_signals(lib, w, theta, solver, seed, StatisticMode::Key);
  return KeyCalibration{s.mean, s.sigma};
}

bool classify_signal(double statistic, double mean, double sigma, double beta) {
  if (beta < 0.0) throw std::invalid_argument("classify: beta must be >= 0");
  const double eps_floor = 1e-9 * std::abs(mean) + 1e-12;
  return std::abs(statistic - mean) <= beta * sigma + eps_floor;
}

PatternKind classify(double statistic, const EnergyCalibration& cal, double beta) {
  return classify_signal(statistic, cal.mean_energy, cal.sigma_energy, beta)
             ? PatternKind::Signal
             : PatternKind::Background;
}

PatternKind classify(double statistic, const KeyCalibration& cal, double beta) {
  return classify_signal(statistic, cal.mean_key, cal.sigma_key, beta)
             ? PatternKind::Signal
             : PatternKind::Background;
}

double ConfusionCounts::tpr() const {
  const long denom = tp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

double ConfusionCounts::fpr() const {
  const long denom = fp + tn;
  return denom == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(denom);
}

ConfusionCounts confusion(std::span<const PatternKind> predicted,
                          std::span<const PatternKind> truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("confusion: label sequences differ in length");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool pred_signal = predicted[i] == PatternKind::Signal;
    const bool true_signal = truth[i] == PatternKind::Signal;
    if (pred_signal && true_signal) ++c.tp;
    else if (pred_signal && !true_signal) ++c.fp;
    else if (!pred_signal && true_signal) ++c.fn;
    else ++c.tn;
  }
  return c;
}

std::vector<double> beta_grid(double beta_max, int points) {
  if (points < 1) throw std::invalid_argument("beta_grid: need at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = beta_max;
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        beta_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

double roc_auc(std::span<const RocPoint> points) {
  // Average TPR within groups of equal FPR, then trapezoid with anchors.
  std::vector<std::pair<double, double>> xy;
  xy.reserve(points.size() + 2);
  for (const RocPoint& p : points) xy.emplace_back(p.fpr, p.tpr);
  std::sort(xy.begin(), xy.end());
  std::vector<std::pair<double, double>> merged;
  for (std::size_t i = 0; i < xy.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < xy.size() && xy[j].first == xy[i].first) sum += xy[j++].second;
    merged.emplace_back(xy[i].first, sum / static_cast<double>(j - i));
    i = j;
  }
  merged.insert(merged.begin(), {0.0, 0.0});
  merged.emplace_back(1.0, 1.0);
  std::sort(merged.begin(), merged.end());
  double auc = 0.0;
  for (std::size_t i = 1; i < merged.size(); ++i) {
    const double dx = merged[i].first - merged[i - 1].first;
    auc += dx * (merged[i].second + merged[i - 1].second) / 2.0;
  }
  return auc;
}

RocCurve roc_sweep(std::span<const double> statistics,
                   std::span<const PatternKind> truth, double mean, double sigma,
                   std::span<const double> betas) {
  if (statistics.size() != truth.size()) {
    throw std::invalid_argument("roc_sweep: statistics/truth length mismatch");
  }
  if (betas.empty()) throw std::invalid_argument("roc_sweep: empty beta grid");
  RocCurve curve;
  curve.points.reserve(betas.size());
  std::vector<PatternKind> predicted(statistics.size());
  for (double beta : betas) {
    for (std::size_t i = 0; i < statistics.size(); ++i) {
      predicted[i] = classify_signal(statistics[i], mean, sigma, beta)
                         ? PatternKind::Signal
                         : PatternKind::Background;
    }
    const ConfusionCounts c = confusion(predicted, truth);
    curve.points.push_back(RocPoint{beta, c.tpr(), c.fpr()});
  }
  curve.auc = roc_auc(curve.points);
  return curve;
}

}  // namespace qamtrack
