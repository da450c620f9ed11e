#include "qamtrack/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qamtrack/corruption.hpp"

namespace qamtrack {

namespace {

using nlohmann::json;

// Seed hierarchy tags: master -> purpose -> training set -> probe -> read.
enum : std::uint64_t {
  kTagLibrary = 1,
  kTagBackgrounds = 2,
  kTagCalibration = 3,
  kTagProbe = 4,
  kTagSolver = 5,
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void run_indexed(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  if (threads == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

const char* to_string(Model m) { return m == Model::Qamm ? "qamm" : "qcam"; }

const char* to_string(ClassifierMode c) {
  return c == ClassifierMode::Energy ? "energy" : "key";
}

const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Exact: return "exact";
    case SolverKind::Sa: return "sa";
    case SolverKind::Reverse: return "reverse";
  }
  return "?";
}

Model model_from_string(const std::string& s) {
  if (s == "qamm") return Model::Qamm;
  if (s == "qcam") return Model::Qcam;
  throw std::invalid_argument("unknown model: " + s);
}

ClassifierMode classifier_from_string(const std::string& s) {
  if (s == "energy") return ClassifierMode::Energy;
  if (s == "key") return ClassifierMode::Key;
  throw std::invalid_argument("unknown classifier: " + s);
}

SolverKind solver_from_string(const std::string& s) {
  if (s == "exact") return SolverKind::Exact;
  if (s == "sa") return SolverKind::Sa;
  if (s == "reverse") return SolverKind::Reverse;
  throw std::invalid_argument("unknown solver: " + s);
}

Index ExperimentConfig::signal_patterns(Index value_length) const {
  return std::max<Index>(1, std::llround(alpha_s * static_cast<double>(value_length)));
}

Index ExperimentConfig::background_patterns(Index value_length) const {
  return std::max<Index>(0, std::llround(alpha_b * static_cast<double>(value_length)));
}

Index ExperimentConfig::key_length() const {
  return (model == Model::Qcam || classifier == ClassifierMode::Key) ? 1 : 0;
}

void ExperimentConfig::validate() const {
  if (!is_geometry_preset(geometry)) {
    throw std::invalid_argument("config: unknown geometry preset " + geometry);
  }
  if (!(alpha_s > 0.0)) throw std::invalid_argument("config: alpha_s must be > 0");
  if (alpha_b < 0.0) throw std::invalid_argument("config: alpha_b must be >= 0");
  if (classifier == ClassifierMode::Energy && alpha_b > 0.0) {
    throw std::invalid_argument(
        "config: the energy classifier needs signal-only encoding; set "
        "alpha_b = 0 or switch to the key classifier");
  }
  if (classifier == ClassifierMode::Key && !(alpha_b > 0.0)) {
    throw std::invalid_argument(
        "config: the key classifier needs encoded backgrounds; set alpha_b > 0");
  }
  if (theta < 0.0) throw std::invalid_argument("config: theta must be >= 0");
  if (eta_list.empty() && gamma_list.empty()) {
    throw std::invalid_argument("config: no eta or gamma values to run");
  }
  for (double eta : eta_list) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("config: eta values must lie in [0, 1]");
    }
  }
  for (double gamma : gamma_list) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      throw std::invalid_argument("config: gamma values must lie in [0, 1]");
    }
  }
  if (!(fill_prob >= 0.0 && fill_prob <= 1.0)) {
    throw std::invalid_argument("config: fill_prob must lie in [0, 1]");
  }
  if (beta_points < 1) throw std::invalid_argument("config: beta_points must be >= 1");
  if (beta_max < 0.0) throw std::invalid_argument("config: beta_max must be >= 0");
  if (training_sets < 1) throw std::invalid_argument("config: training_sets must be >= 1");
  if (signal_probes < 1 || background_probes < 1) {
    throw std::invalid_argument("config: need at least one probe of each kind");
  }
  if (solver.reads < 1) throw std::invalid_argument("config: reads must be >= 1");
  if (solver.schedule.sweeps < 1) {
    throw std::invalid_argument("config: sweeps must be >= 1");
  }
}

ExperimentConfig paper_defaults() {
  ExperimentConfig cfg;
  cfg.geometry = "v24";
  cfg.alpha_s = 1.0 / 6.0;
  cfg.alpha_b = 0.0;
  cfg.model = Model::Qamm;
  cfg.classifier = ClassifierMode::Energy;
  cfg.theta = 0.74;
  cfg.rescale_couplings = true;
  cfg.eta_list = {1.0, 0.98, 0.96, 0.94, 0.92};
  cfg.gamma_list = {0.0, 0.02, 0.04, 0.06, 0.08};
  cfg.solver.kind = SolverKind::Sa;
  cfg.solver.reads = 100;
  cfg.solver.schedule = AnnealSchedule{};
  cfg.beta_max = 10.0;
  cfg.beta_points = 101;
  cfg.training_sets = 5;
  cfg.signal_probes = 25;
  cfg.background_probes = 25;
  return cfg;
}

PatternLibrary build_training_library(const ExperimentConfig& cfg,
                                      const DetectorGeometry& geom,
                                      const FieldConfig& field, int set_index) {
  const std::uint64_t set_seed =
      derive_seed(derive_seed(cfg.seed, kTagLibrary), static_cast<std::uint64_t>(set_index));
  Rng signal_rng(derive_seed(set_seed, 1));
  const Index v = geom.segment_count();
  PatternLibrary lib =
      build_signal_library(geom, field, cfg.signal_patterns(v), signal_rng);

  const Index backgrounds = cfg.background_patterns(v);
  if (backgrounds > 0) {
    Rng bg_rng(derive_seed(derive_seed(cfg.seed, kTagBackgrounds),
                           static_cast<std::uint64_t>(set_index)));
    for (Index b = 0; b < backgrounds; ++b) {
      BitPattern value = generate_background(v, cfg.fill_prob, lib, bg_rng);
      lib.add(KeyedPattern{BitPattern{}, std::move(value)}, PatternKind::Background);
    }
  }
  if (cfg.key_length() == 1) return with_keys(lib);
  return lib;
}

namespace {

struct Cell {
  std::string name;
  double eta = 1.0;
  double gamma = 0.0;
};

// One cell per eta value (at gamma = 0) and per gamma value (at eta = 1);
// the perfect cell and any repeated values collapse to a single entry.
std::vector<Cell> enumerate_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  auto push = [&](double eta, double gamma) {
    for (const Cell& cell : cells) {
      if (cell.eta == eta && cell.gamma == gamma) return;
    }
    const std::string name =
        eta == 1.0 && gamma == 0.0
            ? "baseline"
            : (gamma == 0.0 ? "eta_" + format_short(eta)
                            : "gamma_" + format_short(gamma));
    cells.push_back(Cell{name, eta, gamma});
  };
  for (double eta : cfg.eta_list) push(eta, 0.0);
  for (double gamma : cfg.gamma_list) push(1.0, gamma);
  return cells;
}

RocCurve pooled_roc(const std::vector<SetResult>& sets,
                    std::span<const double> betas) {
  RocCurve curve;
  curve.points.reserve(betas.size());
  for (double beta : betas) {
    ConfusionCounts total;
    for (const SetResult& set : sets) {
      for (const ProbeRecord& probe : set.probes) {
        const bool as_signal = classify_signal(
            probe.statistic, set.calibration_mean, set.calibration_sigma, beta);
        const bool is_signal = probe.truth == PatternKind::Signal;
        if (as_signal && is_signal) ++total.tp;
        else if (as_signal && !is_signal) ++total.fp;
        else if (!as_signal && is_signal) ++total.fn;
        else ++total.tn;
      }
    }
    curve.points.push_back(RocPoint{beta, total.tpr(), total.fpr()});
  }
  curve.auc = roc_auc(curve.points);
  return curve;
}

}  // namespace

TrainedWeights train_weights(const PatternLibrary& lib, Model model,
                             double theta, bool rescale_couplings) {
  WeightMatrix w = model == Model::Qcam ? bipartite_projection_weights(lib)
                                        : projection_weights(lib);
  TrainedWeights out{std::move(w), theta, 1.0};
  if (rescale_couplings) {
    const RescaleResult scaled =
        model == Model::Qcam ? rescale(projection_weights(lib), theta)
                             : rescale(out.weights, theta);
    out.weights.entries *= scaled.factor;
    out.theta = scaled.theta;
    out.factor = scaled.factor;
  }
  return out;
}

TrainedModel train_and_calibrate(PatternLibrary library, Model model,
                                 ClassifierMode classifier, double theta,
                                 bool rescale_couplings,
                                 const SolverConfig& solver, std::uint64_t seed) {
  TrainedWeights trained = train_weights(library, model, theta, rescale_couplings);
  WeightMatrix w = std::move(trained.weights);
  theta = trained.theta;
  TrainedModel out{std::move(library), std::move(w), theta, 0.0, 0.0};
  if (classifier == ClassifierMode::Energy) {
    const EnergyCalibration cal =
        calibrate_energy(out.library, out.weights, theta, solver, seed);
    out.calibration_mean = cal.mean_energy;
    out.calibration_sigma = cal.sigma_energy;
  } else {
    const KeyCalibration cal =
        calibrate_key(out.library, out.weights, theta, solver, seed);
    out.calibration_mean = cal.mean_key;
    out.calibration_sigma = cal.sigma_key;
  }
  return out;
}

SetResult run_probe_suite(const TrainedModel& model, const ProbeSuiteConfig& suite,
                          const DetectorGeometry& geom, const FieldConfig& field,
                          const SolverConfig& solver, std::uint64_t seed,
                          std::span<const double> betas) {
  const std::vector<Index> signals = model.library.signal_indices();
  const std::vector<Index> backgrounds = model.library.background_indices();
  if (signals.empty()) {
    throw std::invalid_argument("run_probe_suite: library holds no signals");
  }
  if (suite.classifier == ClassifierMode::Key && backgrounds.empty()) {
    throw std::invalid_argument(
        "run_probe_suite: key classification needs encoded backgrounds");
  }
  const StatisticMode stat_mode = suite.classifier == ClassifierMode::Energy
                                      ? StatisticMode::Energy
                                      : StatisticMode::Key;
  const int total = suite.signal_probes + suite.background_probes;

  SetResult result;
  result.calibration_mean = model.calibration_mean;
  result.calibration_sigma = model.calibration_sigma;
  result.probes.resize(static_cast<std::size_t>(total));

  run_indexed(total, suite.threads, [&](int p) {
    const std::uint64_t probe_seed =
        derive_seed(derive_seed(seed, kTagProbe), static_cast<std::uint64_t>(p));
    Rng rng(probe_seed);

    BitPattern value;
    PatternKind truth;
    if (p < suite.signal_probes) {
      truth = PatternKind::Signal;
      const Index target = signals[static_cast<std::size_t>(p) % signals.size()];
      value = regenerate_value(model.library, target, geom, field);
      value = apply_inefficiency(value, suite.eta, rng);
      value = apply_noise(value, suite.gamma, rng);
    } else {
      truth = PatternKind::Background;
      if (suite.classifier == ClassifierMode::Key) {
        // Background probes come from the training set itself.
        const std::size_t b =
            static_cast<std::size_t>(p - suite.signal_probes) % backgrounds.size();
        value = model.library.pattern(backgrounds[b]).value;
      } else {
        value = generate_background(model.library.value_length(), suite.fill_prob,
                                    model.library, rng);
      }
    }

    const RecallProblem prob = build_probe_problem(model.weights, value, model.theta);
    const SolveResult solved =
        run_solver(prob, solver, derive_seed(probe_seed, kTagSolver));
    const double stat =
        probe_statistic(solved, stat_mode, stat_mode == StatisticMode::Key ? 0 : -1);
    result.probes[static_cast<std::size_t>(p)] = ProbeRecord{stat, truth};
  });

  std::vector<double> stats;
  std::vector<PatternKind> truths;
  stats.reserve(result.probes.size());
  truths.reserve(result.probes.size());
  for (const ProbeRecord& probe : result.probes) {
    stats.push_back(probe.statistic);
    truths.push_back(probe.truth);
  }
  result.auc = roc_sweep(stats, truths, result.calibration_mean,
                         result.calibration_sigma, betas)
                   .auc;
  return result;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const DetectorGeometry geom = geometry_preset(cfg.geometry);
  const FieldConfig field{};

  // Train once per set; every cell reuses the same libraries and
  // calibrations.
  std::vector<TrainedModel> trained;
  trained.reserve(static_cast<std::size_t>(cfg.training_sets));
  for (int t = 0; t < cfg.training_sets; ++t) {
    const std::uint64_t cal_seed = derive_seed(
        derive_seed(cfg.seed, kTagCalibration), static_cast<std::uint64_t>(t));
    trained.push_back(train_and_calibrate(
        build_training_library(cfg, geom, field, t), cfg.model, cfg.classifier,
        cfg.theta, cfg.rescale_couplings, cfg.solver, cal_seed));
  }

  const std::vector<double> betas = beta_grid(cfg.beta_max, cfg.beta_points);
  const std::vector<Cell> cells = enumerate_cells(cfg);

  ExperimentReport report;
  report.config = cfg;
  report.cells.reserve(cells.size());

  for (std::size_t cell_index = 0; cell_index < cells.size(); ++cell_index) {
    const Cell& cell = cells[cell_index];
    ProbeSuiteConfig suite;
    suite.classifier = cfg.classifier;
    suite.eta = cell.eta;
    suite.gamma = cell.gamma;
    suite.signal_probes = cfg.signal_probes;
    suite.background_probes = cfg.background_probes;
    suite.fill_prob = cfg.fill_prob;
    suite.threads = cfg.threads;

    std::vector<SetResult> sets;
    sets.reserve(trained.size());
    for (std::size_t t = 0; t < trained.size(); ++t) {
      const std::uint64_t suite_seed = derive_seed(
          derive_seed(derive_seed(cfg.seed, kTagProbe), static_cast<std::uint64_t>(t)),
          static_cast<std::uint64_t>(cell_index));
      sets.push_back(run_probe_suite(trained[t], suite, geom, field, cfg.solver,
                                     suite_seed, betas));
    }

    CellResult cell_result;
    cell_result.name = cell.name;
    cell_result.eta = cell.eta;
    cell_result.gamma = cell.gamma;
    cell_result.pooled = pooled_roc(sets, betas);
    cell_result.sets = std::move(sets);
    report.cells.push_back(std::move(cell_result));
  }
  return report;
}

namespace {

json solver_to_json(const SolverConfig& s) {
  return json{{"kind", to_string(s.kind)},
              {"reads", s.reads},
              {"sweeps", s.schedule.sweeps},
              {"beta_hot", s.schedule.beta_hot},
              {"beta_cold", s.schedule.beta_cold},
              {"s_star", s.reverse.s_star},
              {"pause_sweeps", s.reverse.pause_sweeps},
              {"ramp_sweeps", s.reverse.ramp_sweeps},
              {"exact_max_bits", s.exact_max_bits}};
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["geometry"] = cfg.geometry;
  j["alpha_s"] = cfg.alpha_s;
  j["alpha_b"] = cfg.alpha_b;
  j["model"] = to_string(cfg.model);
  j["classifier"] = to_string(cfg.classifier);
  j["theta"] = cfg.theta;
  j["rescale"] = cfg.rescale_couplings;
  j["eta"] = cfg.eta_list;
  j["gamma"] = cfg.gamma_list;
  j["solver"] = solver_to_json(cfg.solver);
  j["beta_max"] = cfg.beta_max;
  j["beta_points"] = cfg.beta_points;
  j["training_sets"] = cfg.training_sets;
  j["signal_probes"] = cfg.signal_probes;
  j["background_probes"] = cfg.background_probes;
  j["fill_prob"] = cfg.fill_prob;
  j["seed"] = cfg.seed;
  return j;
}

void config_merge_json(const json& j, ExperimentConfig& cfg) {
  if (j.contains("geometry")) cfg.geometry = j["geometry"];
  if (j.contains("alpha_s")) cfg.alpha_s = j["alpha_s"];
  if (j.contains("alpha_b")) cfg.alpha_b = j["alpha_b"];
  if (j.contains("model")) cfg.model = model_from_string(j["model"]);
  if (j.contains("classifier")) cfg.classifier = classifier_from_string(j["classifier"]);
  if (j.contains("theta")) cfg.theta = j["theta"];
  if (j.contains("rescale")) cfg.rescale_couplings = j["rescale"];
  if (j.contains("eta")) cfg.eta_list = j["eta"].get<std::vector<double>>();
  if (j.contains("gamma")) cfg.gamma_list = j["gamma"].get<std::vector<double>>();
  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("kind")) cfg.solver.kind = solver_from_string(s["kind"]);
    if (s.contains("reads")) cfg.solver.reads = s["reads"];
    if (s.contains("sweeps")) cfg.solver.schedule.sweeps = s["sweeps"];
    if (s.contains("beta_hot")) cfg.solver.schedule.beta_hot = s["beta_hot"];
    if (s.contains("beta_cold")) cfg.solver.schedule.beta_cold = s["beta_cold"];
    if (s.contains("s_star")) cfg.solver.reverse.s_star = s["s_star"];
    if (s.contains("pause_sweeps")) cfg.solver.reverse.pause_sweeps = s["pause_sweeps"];
    if (s.contains("ramp_sweeps")) cfg.solver.reverse.ramp_sweeps = s["ramp_sweeps"];
    if (s.contains("exact_max_bits")) cfg.solver.exact_max_bits = s["exact_max_bits"];
    cfg.solver.reverse.beta_hot = cfg.solver.schedule.beta_hot;
    cfg.solver.reverse.beta_cold = cfg.solver.schedule.beta_cold;
  }
  if (j.contains("beta_max")) cfg.beta_max = j["beta_max"];
  if (j.contains("beta_points")) cfg.beta_points = j["beta_points"];
  if (j.contains("training_sets")) cfg.training_sets = j["training_sets"];
  if (j.contains("signal_probes")) cfg.signal_probes = j["signal_probes"];
  if (j.contains("background_probes")) cfg.background_probes = j["background_probes"];
  if (j.contains("fill_prob")) cfg.fill_prob = j["fill_prob"];
  if (j.contains("seed")) cfg.seed = j["seed"];
  if (j.contains("threads")) cfg.threads = j["threads"];
}

json cell_summary_json(const ExperimentConfig& cfg, const CellResult& cell) {
  json j;
  j["auc"] = cell.pooled.auc;
  j["cell"] = {{"name", cell.name}, {"eta", cell.eta}, {"gamma", cell.gamma}};
  j["config"] = config_to_json(cfg);
  json sets = json::array();
  for (std::size_t t = 0; t < cell.sets.size(); ++t) {
    const SetResult& set = cell.sets[t];
    json stats = json::array();
    json truths = json::array();
    for (const ProbeRecord& probe : set.probes) {
      stats.push_back(probe.statistic);
      truths.push_back(to_string(probe.truth));
    }
    sets.push_back(json{{"set", t},
                        {"auc", set.auc},
                        {"calibration",
                         {{"mean", set.calibration_mean}, {"sigma", set.calibration_sigma}}},
                        {"statistics", std::move(stats)},
                        {"truths", std::move(truths)}});
  }
  j["per_training_set"] = std::move(sets);
  return j;
}

void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "beta,tpr,fpr\n";
  for (const RocPoint& p : curve.points) {
    out << format_double(p.beta) << ',' << format_double(p.tpr) << ','
        << format_double(p.fpr) << '\n';
  }
}

void write_roc_svg(const RocCurve& curve, const std::filesystem::path& path) {
  const double size = 400.0, margin = 40.0;
  auto sx = [&](double x) { return margin + x * size; };
  auto sy = [&](double y) { return margin + (1.0 - y) * size; };
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\">\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
      << "\" height=\"" << size << "\" fill=\"white\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1)
      << "\" y2=\"" << sy(1) << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
  // Points sorted by FPR trace the curve.
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(0.0, 0.0);
  for (const RocPoint& p : curve.points) pts.emplace_back(p.fpr, p.tpr);
  pts.emplace_back(1.0, 1.0);
  std::sort(pts.begin(), pts.end());
  out << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"2\" points=\"";
  for (const auto& [x, y] : pts) out << sx(x) << ',' << sy(y) << ' ';
  out << "\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << margin - 10 << "\">AUC = "
      << format_short(curve.auc) << "</text>\n";
  out << "<text x=\"" << margin + size / 2 - 20 << "\" y=\"" << margin + size + 30
      << "\">FPR</text>\n";
  out << "<text x=\"10\" y=\"" << margin + size / 2 << "\">TPR</text>\n";
  out << "</svg>\n";
}

}  // namespace

void write_report(const ExperimentReport& report,
                  const std::filesystem::path& out_dir, bool svg) {
  std::filesystem::create_directories(out_dir);
  json top;
  top["config"] = config_to_json(report.config);
  json cells = json::array();
  for (const CellResult& cell : report.cells) {
    const std::filesystem::path cell_dir = out_dir / cell.name;
    std::filesystem::create_directories(cell_dir);
    write_roc_csv(cell.pooled, cell_dir / "roc.csv");
    std::ofstream summary(cell_dir / "summary.json");
    if (!summary) {
      throw std::runtime_error("cannot write " + (cell_dir / "summary.json").string());
    }
    summary << cell_summary_json(report.config, cell).dump(2) << '\n';
    if (svg) write_roc_svg(cell.pooled, cell_dir / "roc.svg");
    cells.push_back(json{{"name", cell.name},
                         {"eta", cell.eta},
                         {"gamma", cell.gamma},
                         {"auc", cell.pooled.auc}});
  }
  top["cells"] = std::move(cells);
  std::ofstream summary(out_dir / "summary.json");
  if (!summary) {
    throw std::runtime_error("cannot write " + (out_dir / "summary.json").string());
  }
  summary << top.dump(2) << '\n';
}

std::string config_json(const ExperimentConfig& cfg) {
  return config_to_json(cfg).dump(2);
}

ExperimentConfig config_from_json_text(const std::string& text) {
  return config_from_json_text(text, ExperimentConfig{});
}

ExperimentConfig config_from_json_text(const std::string& text,
                                       ExperimentConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed config JSON: ") + e.what());
  }
  config_merge_json(j, base);
  return base;
}

}  // namespace qamtrack
