#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qamtrack/classify.hpp"
#include "qamtrack/detector.hpp"
#include "qamtrack/pattern.hpp"

namespace qamtrack {

enum class Model { Qamm, Qcam };
enum class ClassifierMode { Energy, Key };

const char* to_string(Model m);
const char* to_string(ClassifierMode c);
const char* to_string(SolverKind k);
Model model_from_string(const std::string& s);
ClassifierMode classifier_from_string(const std::string& s);
SolverKind solver_from_string(const std::string& s);

// Everything one experiment needs. The mode/encoding pairing is enforced by
// validate(): the energy classifier needs signal-only encoding (alpha_b = 0),
// the key classifier needs encoded backgrounds (alpha_b > 0), and the qcam
// model always trains on keyed patterns.
struct ExperimentConfig {
  std::string geometry = "v24";
  double alpha_s = 1.0 / 6.0;
  double alpha_b = 0.0;
  Model model = Model::Qamm;
  ClassifierMode classifier = ClassifierMode::Energy;
  double theta = 0.74;
  bool rescale_couplings = true;
  std::vector<double> eta_list{1.0};
  std::vector<double> gamma_list{0.0};
  SolverConfig solver{SolverKind::Sa};
  double beta_max = 10.0;
  int beta_points = 101;
  int training_sets = 5;
  int signal_probes = 25;
  int background_probes = 25;
  double fill_prob = 0.15;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  Index signal_patterns(Index value_length) const;
  Index background_patterns(Index value_length) const;
  Index key_length() const;
  void validate() const;  // throws on inconsistent settings
};

// The `paper-defaults` preset: v24 geometry, alpha_s = 1/6, energy-based
// qamm, theta = 0.74, eta in {1,...,0.92}, gamma in {0,...,0.08}, 100-read
// simulated annealing, 5 training sets of 25+25 probes, beta grid [0, 10].
ExperimentConfig paper_defaults();

struct ProbeRecord {
  double statistic = 0.0;
  PatternKind truth = PatternKind::Signal;
};

struct SetResult {
  double calibration_mean = 0.0;
  double calibration_sigma = 0.0;
  std::vector<ProbeRecord> probes;
  double auc = 0.0;
};

// One (eta, gamma) parameter cell: per-set raw statistics plus the ROC pooled
// across training sets.
struct CellResult {
  std::string name;
  double eta = 1.0;
  double gamma = 0.0;
  std::vector<SetResult> sets;
  RocCurve pooled;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;
};

// The training library for one set: detector signal patterns, optional
// backgrounds, optional keys; derived only from (config, master seed, set) so
// probe/read settings never perturb it.
PatternLibrary build_training_library(const ExperimentConfig& cfg,
                                      const DetectorGeometry& geom,
                                      const FieldConfig& field, int set_index);

// Couplings for one model under the pipeline's rescale convention: the
// 3/(4 W_max) factor is always taken from the full projection matrix (whose
// diagonal is positive), then applied to whichever matrix the model uses.
// With all-equal keys and sparse values the bipartite block can be entirely
// nonpositive, so its own maximum cannot define the factor; uniform scaling
// keeps every argmin and classification unchanged either way.
struct TrainedWeights {
  WeightMatrix weights;
  double theta = 0.0;
  double factor = 1.0;
};

TrainedWeights train_weights(const PatternLibrary& lib, Model model,
                             double theta, bool rescale_couplings);

// A library with its trained couplings and calibration, ready for probing.
struct TrainedModel {
  PatternLibrary library;
  WeightMatrix weights;
  double theta = 0.0;
  double calibration_mean = 0.0;
  double calibration_sigma = 0.0;
};

TrainedModel train_and_calibrate(PatternLibrary library, Model model,
                                 ClassifierMode classifier, double theta,
                                 bool rescale_couplings,
                                 const SolverConfig& solver,
                                 std::uint64_t seed);

struct ProbeSuiteConfig {
  ClassifierMode classifier = ClassifierMode::Energy;
  double eta = 1.0;
  double gamma = 0.0;
  int signal_probes = 25;
  int background_probes = 25;
  double fill_prob = 0.15;
  int threads = 0;
};

// Probes one trained model in one parameter cell: signal probes are
// regenerated encoded patterns passed through the corruption models,
// background probes come from the encoded backgrounds (key classifier) or
// are freshly generated (energy classifier).
SetResult run_probe_suite(const TrainedModel& model,
                          const ProbeSuiteConfig& suite,
                          const DetectorGeometry& geom,
                          const FieldConfig& field, const SolverConfig& solver,
                          std::uint64_t seed, std::span<const double> betas);

// generate -> corrupt -> train -> calibrate -> probe -> classify -> ROC for
// every parameter cell. Deterministic under the master seed; probe recalls
// run in parallel with a seed-per-probe ordered merge.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Writes one directory per cell (roc.csv, summary.json, optional roc.svg)
// plus a top-level summary.json aggregating all cells.
void write_report(const ExperimentReport& report,
                  const std::filesystem::path& out_dir, bool svg = true);

std::string config_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json_text(const std::string& text);
// Overlays the JSON fields onto an existing configuration (e.g. a preset).
ExperimentConfig config_from_json_text(const std::string& text,
                                       ExperimentConfig base);

}  // namespace qamtrack
