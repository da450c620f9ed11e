// Command-line driver: library generation, corruption, training, recall,
// classification sweeps, ROC reports, Hough banking, and the full pipeline.
// Errors leave exit code 1 with a machine-readable JSON object on stderr.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qamtrack/classify.hpp"
#include "qamtrack/corruption.hpp"
#include "qamtrack/detector.hpp"
#include "qamtrack/experiment.hpp"
#include "qamtrack/hough.hpp"
#include "qamtrack/learning.hpp"
#include "qamtrack/library_io.hpp"
#include "qamtrack/pattern.hpp"
#include "qamtrack/recall.hpp"

namespace {

using nlohmann::json;
using namespace qamtrack;

struct SolverOptions {
  std::string solver = "sa";
  int reads = 100;
  int sweeps = 1000;
  double beta_hot = 0.1;
  double beta_cold = 10.0;
  double s_star = 0.5;
  int pause_sweeps = 1000;
  int ramp_sweeps = 100;
  int max_bits = 28;

  SolverConfig build() const {
    SolverConfig cfg;
    cfg.kind = solver_from_string(solver);
    cfg.reads = reads;
    cfg.schedule = AnnealSchedule{sweeps, beta_hot, beta_cold};
    cfg.reverse = ReverseScheduleParams{s_star, pause_sweeps, ramp_sweeps,
                                        beta_hot, beta_cold};
    cfg.exact_max_bits = max_bits;
    return cfg;
  }
};

void add_solver_options(CLI::App* cmd, SolverOptions& opt) {
  cmd->add_option("--solver", opt.solver, "Solver: exact|sa|reverse")
      ->check(CLI::IsMember({"exact", "sa", "reverse"}));
  cmd->add_option("--reads", opt.reads, "Annealing reads per recall");
  cmd->add_option("--sweeps", opt.sweeps, "Sweeps per forward anneal");
  cmd->add_option("--beta-hot", opt.beta_hot, "Hot end of the beta ladder");
  cmd->add_option("--beta-cold", opt.beta_cold, "Cold end of the beta ladder");
  cmd->add_option("--s-star", opt.s_star, "Reverse-anneal reversal point");
  cmd->add_option("--pause-sweeps", opt.pause_sweeps, "Reverse-anneal pause sweeps");
  cmd->add_option("--ramp-sweeps", opt.ramp_sweeps, "Reverse-anneal ramp sweeps");
  cmd->add_option("--max-bits", opt.max_bits, "Exact-solver enumeration cap");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json sample_json(const PatternLibrary& lib, const BipolarPattern& state,
                 double state_energy) {
  const Index k = lib.key_length();
  Vector key_part = state.spins().head(k);
  Vector value_part = state.spins().tail(state.size() - k);
  json j;
  j["key"] = to_bit_string(from_bipolar(BipolarPattern(key_part)));
  j["value"] = to_bit_string(from_bipolar(BipolarPattern(value_part)));
  j["energy"] = state_energy;
  return j;
}

std::vector<Eigen::Vector2d> read_points(const std::filesystem::path& path,
                                         double rho_unit) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<Eigen::Vector2d> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) {
      throw std::runtime_error("points file: cannot parse line '" + line + "'");
    }
    points.emplace_back(x / rho_unit, y / rho_unit);
  }
  if (points.empty()) throw std::runtime_error("points file is empty");
  return points;
}

int run_gen(const std::string& geometry, int p_s, double alpha_s, int p_b,
            double alpha_b, bool keyed, double fill_prob, std::uint64_t seed,
            const std::string& out) {
  const DetectorGeometry geom = geometry_preset(geometry);
  const FieldConfig field{};
  const Index v = geom.segment_count();
  const Index signals = p_s > 0 ? p_s : std::max<Index>(1, std::llround(alpha_s * v));
  const Index backgrounds = p_b > 0 ? p_b : std::max<Index>(0, std::llround(alpha_b * v));

  Rng signal_rng(derive_seed(seed, 1));
  PatternLibrary lib = build_signal_library(geom, field, signals, signal_rng);
  if (backgrounds > 0) {
    Rng bg_rng(derive_seed(seed, 2));
    for (Index b = 0; b < backgrounds; ++b) {
      BitPattern value = generate_background(v, fill_prob, lib, bg_rng);
      lib.add(KeyedPattern{BitPattern{}, std::move(value)}, PatternKind::Background);
    }
  }
  if (keyed) lib = with_keys(lib);
  save_library(lib, out, &geom, &field);
  json j{{"path", out},
         {"V", lib.value_length()},
         {"K", lib.key_length()},
         {"signals", lib.signal_count()},
         {"backgrounds", lib.background_count()}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_corrupt(const std::string& in, double eta, double gamma,
                std::uint64_t seed, int repeat, const std::string& out) {
  const ProbeSet src = load_probe_set(in);
  ProbeSet dst;
  dst.value_length = src.value_length;
  dst.key_length = src.key_length;
  Rng rng(seed);
  for (std::size_t i = 0; i < src.patterns.size(); ++i) {
    for (int r = 0; r < repeat; ++r) {
      BitPattern value = apply_inefficiency(src.patterns[i].value, eta, rng);
      value = apply_noise(value, gamma, rng);
      dst.patterns.push_back(KeyedPattern{src.patterns[i].key, std::move(value)});
      dst.kinds.push_back(src.kinds[i]);
    }
  }
  save_probe_set(dst, out);
  json j{{"path", out}, {"patterns", dst.patterns.size()}, {"eta", eta}, {"gamma", gamma}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_train(const std::string& lib_path, const std::string& model_name,
              double theta, bool do_rescale, const std::string& dump_w) {
  const LoadedLibrary loaded = load_library(lib_path);
  const Model model = model_from_string(model_name);
  // The maximum entry of the full rule defines the rescale factor.
  const double w_max = projection_weights(loaded.library).entries.maxCoeff();
  const TrainedWeights trained =
      train_weights(loaded.library, model, theta, do_rescale);
  const WeightMatrix& w = trained.weights;
  if (!dump_w.empty()) {
    std::ofstream out(dump_w);
    if (!out) throw std::runtime_error("cannot write " + dump_w);
    for (Index i = 0; i < w.size(); ++i) {
      for (Index j = 0; j < w.size(); ++j) {
        if (j) out << ',';
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", w.entries(i, j));
        out << buf;
      }
      out << '\n';
    }
  }
  json j{{"n", w.size()},
         {"model", model_name},
         {"bipartite", w.bipartite},
         {"w_max", w_max},
         {"scale_factor", trained.factor},
         {"theta", trained.theta}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_recall(const std::string& lib_path, const std::string& model_name,
               double theta, bool do_rescale, const SolverOptions& solver_opt,
               std::uint64_t seed, const std::string& probe_bits,
               const std::string& probe_file, int probe_index, int encoded_index,
               int max_samples) {
  const LoadedLibrary loaded = load_library(lib_path);
  const PatternLibrary& lib = loaded.library;
  const Model model = model_from_string(model_name);

  BitPattern probe_value;
  if (!probe_bits.empty()) {
    probe_value = bit_pattern_from_string(probe_bits);
  } else if (!probe_file.empty()) {
    const ProbeSet probes = load_probe_set(probe_file);
    if (probe_index < 0 || probe_index >= static_cast<int>(probes.patterns.size())) {
      throw std::runtime_error("probe index out of range");
    }
    probe_value = probes.patterns[static_cast<std::size_t>(probe_index)].value;
  } else if (encoded_index >= 0) {
    if (encoded_index >= lib.size()) throw std::runtime_error("encoded index out of range");
    probe_value = lib.pattern(encoded_index).value;
  } else {
    throw std::runtime_error("no probe given: use --probe, --probe-file or --encoded-index");
  }
  if (probe_value.size() != lib.value_length()) {
    throw std::runtime_error("probe length does not match the library value length");
  }

  const TrainedWeights trained = train_weights(lib, model, theta, do_rescale);

  const RecallProblem prob =
      build_probe_problem(trained.weights, probe_value, trained.theta);
  const SolveResult result = run_solver(prob, solver_opt.build(), seed);

  json samples = json::array();
  const int count = std::min<int>(max_samples, static_cast<int>(result.reads()));
  for (int i = 0; i < count; ++i) {
    samples.push_back(sample_json(lib, result.states[static_cast<std::size_t>(i)],
                                  result.energies[static_cast<std::size_t>(i)]));
  }
  json j{{"reads", result.reads()},
         {"min_energy", result.min_energy()},
         {"mean_energy", probe_statistic(result, StatisticMode::Energy)},
         {"samples", std::move(samples)}};
  if (lib.key_length() > 0) {
    j["mean_key"] = probe_statistic(result, StatisticMode::Key, 0);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_classify(const std::string& lib_path, const std::string& model_name,
                 const std::string& classifier_name, double theta, bool do_rescale,
                 const SolverOptions& solver_opt, double beta,
                 const std::string& probes_path, std::uint64_t seed) {
  const LoadedLibrary loaded = load_library(lib_path);
  const Model model = model_from_string(model_name);
  const ClassifierMode classifier = classifier_from_string(classifier_name);
  const SolverConfig solver = solver_opt.build();

  TrainedModel trained = train_and_calibrate(loaded.library, model, classifier,
                                             theta, do_rescale, solver,
                                             derive_seed(seed, 1));

  const ProbeSet probes = load_probe_set(probes_path);
  if (probes.value_length != trained.library.value_length()) {
    throw std::runtime_error("probe value length does not match the library");
  }
  const StatisticMode mode = classifier == ClassifierMode::Energy
                                 ? StatisticMode::Energy
                                 : StatisticMode::Key;

  json results = json::array();
  for (std::size_t i = 0; i < probes.patterns.size(); ++i) {
    const RecallProblem prob =
        build_probe_problem(trained.weights, probes.patterns[i].value, trained.theta);
    const SolveResult solved =
        run_solver(prob, solver, derive_seed(derive_seed(seed, 2), i));
    const double stat =
        probe_statistic(solved, mode, mode == StatisticMode::Key ? 0 : -1);
    const bool as_signal = classify_signal(stat, trained.calibration_mean,
                                           trained.calibration_sigma, beta);
    results.push_back(json{
        {"statistic", stat},
        {"label", as_signal ? "signal" : "background"},
        {"truth", to_string(probes.kinds[i])}});
  }
  json j{{"beta", beta},
         {"calibration",
          {{"mean", trained.calibration_mean}, {"sigma", trained.calibration_sigma}}},
         {"results", std::move(results)}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_roc(const std::string& lib_path, const std::string& model_name,
            const std::string& classifier_name, double theta, bool do_rescale,
            const SolverOptions& solver_opt, double eta, double gamma,
            int signal_probes, int background_probes, double fill_prob,
            double beta_max, int beta_points, std::uint64_t seed, int threads,
            const std::string& out_dir, bool svg) {
  const LoadedLibrary loaded = load_library(lib_path);
  if (!loaded.geometry) {
    throw std::runtime_error(
        "roc: the library carries no geometry metadata (regenerate with `gen`)");
  }
  const Model model = model_from_string(model_name);
  const ClassifierMode classifier = classifier_from_string(classifier_name);
  const SolverConfig solver = solver_opt.build();
  const FieldConfig field = loaded.field.value_or(FieldConfig{});

  TrainedModel trained = train_and_calibrate(loaded.library, model, classifier,
                                             theta, do_rescale, solver,
                                             derive_seed(seed, 1));
  ProbeSuiteConfig suite;
  suite.classifier = classifier;
  suite.eta = eta;
  suite.gamma = gamma;
  suite.signal_probes = signal_probes;
  suite.background_probes = background_probes;
  suite.fill_prob = fill_prob;
  suite.threads = threads;

  const std::vector<double> betas = beta_grid(beta_max, beta_points);
  const SetResult set = run_probe_suite(trained, suite, *loaded.geometry, field,
                                        solver, derive_seed(seed, 2), betas);

  std::vector<double> stats;
  std::vector<PatternKind> truths;
  for (const ProbeRecord& probe : set.probes) {
    stats.push_back(probe.statistic);
    truths.push_back(probe.truth);
  }
  const RocCurve curve = roc_sweep(stats, truths, set.calibration_mean,
                                   set.calibration_sigma, betas);

  ExperimentReport report;
  report.config = ExperimentConfig{};
  report.config.geometry = "v" + std::to_string(loaded.geometry->segment_count());
  report.config.model = model;
  report.config.classifier = classifier;
  report.config.theta = theta;
  report.config.rescale_couplings = do_rescale;
  report.config.eta_list = {eta};
  report.config.gamma_list = {gamma};
  report.config.solver = solver;
  report.config.beta_max = beta_max;
  report.config.beta_points = beta_points;
  report.config.training_sets = 1;
  report.config.signal_probes = signal_probes;
  report.config.background_probes = background_probes;
  report.config.fill_prob = fill_prob;
  report.config.seed = seed;

  CellResult cell;
  if (eta == 1.0 && gamma == 0.0) {
    cell.name = "baseline";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", gamma == 0.0 ? eta : gamma);
    cell.name = (gamma == 0.0 ? std::string("eta_") : std::string("gamma_")) + buf;
  }
  cell.eta = eta;
  cell.gamma = gamma;
  cell.pooled = curve;
  cell.sets = {set};
  report.cells.push_back(std::move(cell));
  write_report(report, out_dir, svg);

  json j{{"auc", curve.auc}, {"out_dir", out_dir}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_hough(const std::string& points_path, double phi_bin, double rho_bin,
              double rho_range, double rho_unit, double bank_phi, double bank_rho,
              const std::string& acc_csv) {
  const std::vector<Eigen::Vector2d> points = read_points(points_path, rho_unit);
  HoughBinning binning;
  binning.phi_bin_deg = phi_bin;
  binning.rho_bin = rho_bin;
  binning.rho_half_range = rho_range;
  const HoughAccumulator acc = accumulate(points, binning);
  const HoughPeak peak = find_peak(acc);
  const BankGrid grid = bank_grid_for(acc.binning, bank_phi, bank_rho);
  const int bank = assign_bank(peak, grid);

  if (!acc_csv.empty()) {
    std::ofstream out(acc_csv);
    if (!out) throw std::runtime_error("cannot write " + acc_csv);
    out << "phi_deg,rho,count\n";
    for (int i = 0; i < acc.counts.rows(); ++i) {
      for (int j = 0; j < acc.counts.cols(); ++j) {
        out << acc.binning.phi_center(i) << ',' << acc.binning.rho_center(j) << ','
            << acc.counts(i, j) << '\n';
      }
    }
  }

  json j{{"peak", {{"phi_deg", peak.phi_deg}, {"rho", peak.rho}, {"votes", peak.votes}}},
         {"bank", bank},
         {"total_votes", acc.total()},
         {"range_extensions", acc.range_extensions}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Associative-memory track classification toolkit"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "Generate a pattern library");
  std::string gen_geometry = "v24", gen_out;
  int gen_ps = 0, gen_pb = 0;
  double gen_alpha_s = 1.0 / 6.0, gen_alpha_b = 0.0, gen_fill = 0.15;
  bool gen_keyed = false;
  std::uint64_t gen_seed = 0;
  gen->add_option("--geometry", gen_geometry, "Detector preset v24..v54");
  gen->add_option("--p-s", gen_ps, "Signal pattern count (overrides --alpha-s)");
  gen->add_option("--alpha-s", gen_alpha_s, "Signal pattern density p_s/V");
  gen->add_option("--p-b", gen_pb, "Background pattern count (overrides --alpha-b)");
  gen->add_option("--alpha-b", gen_alpha_b, "Background pattern density p_b/V");
  gen->add_flag("--keyed", gen_keyed, "Attach K=1 classification keys");
  gen->add_option("--fill-prob", gen_fill, "Background fill probability");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output library JSON")->required();

  // --- corrupt ---
  auto* corrupt = app.add_subcommand("corrupt", "Apply noise/inefficiency to patterns");
  std::string corrupt_in, corrupt_out;
  double corrupt_eta = 1.0, corrupt_gamma = 0.0;
  int corrupt_repeat = 1;
  std::uint64_t corrupt_seed = 0;
  corrupt->add_option("--lib", corrupt_in, "Input library or probe set")->required();
  corrupt->add_option("--eta", corrupt_eta, "Detector efficiency");
  corrupt->add_option("--gamma", corrupt_gamma, "Detector noise probability");
  corrupt->add_option("--repeat", corrupt_repeat, "Corrupted copies per pattern");
  corrupt->add_option("--seed", corrupt_seed, "Master seed");
  corrupt->add_option("--out", corrupt_out, "Output probe set JSON")->required();

  // --- train ---
  auto* train = app.add_subcommand("train", "Build the projection-rule weight matrix");
  std::string train_lib, train_model = "qamm", train_dump;
  double train_theta = 0.74;
  bool train_no_rescale = false;
  train->add_option("--lib", train_lib, "Input library JSON")->required();
  train->add_option("--model", train_model, "qamm|qcam")
      ->check(CLI::IsMember({"qamm", "qcam"}));
  train->add_option("--theta", train_theta, "Probe bias strength");
  train->add_flag("--no-rescale", train_no_rescale, "Skip the 3/(4 W_max) rescale");
  train->add_option("--dump-w", train_dump, "Write the weight matrix as CSV");

  // --- recall ---
  auto* recall = app.add_subcommand("recall", "Recall one probe pattern");
  std::string recall_lib, recall_model = "qamm", recall_probe, recall_probe_file;
  double recall_theta = 0.74;
  bool recall_no_rescale = false;
  int recall_probe_index = 0, recall_encoded_index = -1, recall_max_samples = 10;
  std::uint64_t recall_seed = 0;
  SolverOptions recall_solver;
  recall->add_option("--lib", recall_lib, "Input library JSON")->required();
  recall->add_option("--model", recall_model, "qamm|qcam")
      ->check(CLI::IsMember({"qamm", "qcam"}));
  recall->add_option("--theta", recall_theta, "Probe bias strength");
  recall->add_flag("--no-rescale", recall_no_rescale, "Skip the 3/(4 W_max) rescale");
  recall->add_option("--probe", recall_probe, "Probe value bits (string)");
  recall->add_option("--probe-file", recall_probe_file, "Probe set JSON");
  recall->add_option("--probe-index", recall_probe_index, "Index into --probe-file");
  recall->add_option("--encoded-index", recall_encoded_index,
                     "Probe an encoded library pattern");
  recall->add_option("--max-samples", recall_max_samples, "Samples to print");
  recall->add_option("--seed", recall_seed, "Master seed");
  add_solver_options(recall, recall_solver);

  // --- classify ---
  auto* classify_cmd = app.add_subcommand("classify", "Label probe patterns");
  std::string cls_lib, cls_model = "qamm", cls_classifier = "energy", cls_probes;
  double cls_theta = 0.74, cls_beta = 3.0;
  bool cls_no_rescale = false;
  std::uint64_t cls_seed = 0;
  SolverOptions cls_solver;
  classify_cmd->add_option("--lib", cls_lib, "Input library JSON")->required();
  classify_cmd->add_option("--model", cls_model, "qamm|qcam")
      ->check(CLI::IsMember({"qamm", "qcam"}));
  classify_cmd->add_option("--classifier", cls_classifier, "energy|key")
      ->check(CLI::IsMember({"energy", "key"}));
  classify_cmd->add_option("--theta", cls_theta, "Probe bias strength");
  classify_cmd->add_flag("--no-rescale", cls_no_rescale, "Skip the rescale");
  classify_cmd->add_option("--beta", cls_beta, "Acceptance width multiplier")->required();
  classify_cmd->add_option("--probes", cls_probes, "Probe set JSON")->required();
  classify_cmd->add_option("--seed", cls_seed, "Master seed");
  add_solver_options(classify_cmd, cls_solver);

  // --- roc ---
  auto* roc = app.add_subcommand("roc", "Threshold sweep for one library and cell");
  std::string roc_lib, roc_model = "qamm", roc_classifier = "energy", roc_out;
  double roc_theta = 0.74, roc_eta = 1.0, roc_gamma = 0.0, roc_fill = 0.15;
  double roc_beta_max = 10.0;
  int roc_beta_points = 101, roc_signal = 25, roc_background = 25, roc_threads = 0;
  bool roc_no_rescale = false, roc_no_svg = false;
  std::uint64_t roc_seed = 0;
  SolverOptions roc_solver;
  roc->add_option("--lib", roc_lib, "Input library JSON")->required();
  roc->add_option("--model", roc_model, "qamm|qcam")
      ->check(CLI::IsMember({"qamm", "qcam"}));
  roc->add_option("--classifier", roc_classifier, "energy|key")
      ->check(CLI::IsMember({"energy", "key"}));
  roc->add_option("--theta", roc_theta, "Probe bias strength");
  roc->add_flag("--no-rescale", roc_no_rescale, "Skip the rescale");
  roc->add_option("--eta", roc_eta, "Detector efficiency for signal probes");
  roc->add_option("--gamma", roc_gamma, "Detector noise for signal probes");
  roc->add_option("--signal-probes", roc_signal, "Signal probes");
  roc->add_option("--background-probes", roc_background, "Background probes");
  roc->add_option("--fill-prob", roc_fill, "Background fill probability");
  roc->add_option("--beta-max", roc_beta_max, "Upper end of the beta grid");
  roc->add_option("--beta-points", roc_beta_points, "Beta grid points");
  roc->add_option("--threads", roc_threads, "Worker threads (0 = auto)");
  roc->add_option("--seed", roc_seed, "Master seed");
  roc->add_option("--out-dir", roc_out, "Output directory")->required();
  roc->add_flag("--no-svg", roc_no_svg, "Skip roc.svg");
  add_solver_options(roc, roc_solver);

  // --- hough ---
  auto* hough = app.add_subcommand("hough", "Hough-transform peak and bank assignment");
  std::string hough_points, hough_acc_csv;
  double hough_phi_bin = 10.0, hough_rho_bin = 1.0, hough_rho_range = 10.0;
  double hough_rho_unit = 1.0, hough_bank_phi = 10.0, hough_bank_rho = 1.0;
  hough->add_option("--points", hough_points, "Input x,y points file")->required();
  hough->add_option("--phi-bin", hough_phi_bin, "Phi bin width (degrees)");
  hough->add_option("--rho-bin", hough_rho_bin, "Rho bin width (units)");
  hough->add_option("--rho-range", hough_rho_range, "Half range of the rho axis");
  hough->add_option("--rho-unit", hough_rho_unit, "Coordinate units per rho unit");
  hough->add_option("--bank-phi", hough_bank_phi, "Bank cell width in phi (degrees)");
  hough->add_option("--bank-rho", hough_bank_rho, "Bank cell width in rho (units)");
  hough->add_option("--acc-csv", hough_acc_csv, "Dump the accumulator as CSV");

  // --- run ---
  auto* run = app.add_subcommand("run", "Full experiment pipeline");
  std::string run_preset, run_config, run_out;
  std::string run_geometry, run_model, run_classifier, run_solver_name;
  std::vector<double> run_eta, run_gamma;
  double run_alpha_s = -1.0, run_alpha_b = -1.0, run_theta = -1.0;
  double run_beta_max = -1.0;
  int run_beta_points = 0, run_sets = 0, run_signal = 0, run_background = 0;
  int run_reads = 0, run_sweeps = 0, run_threads = -1;
  std::uint64_t run_seed = 0;
  bool run_no_svg = false, run_no_rescale = false;
  run->add_option("--preset", run_preset, "Named preset: paper-defaults")
      ->check(CLI::IsMember({"paper-defaults"}));
  run->add_option("--config", run_config, "Experiment config JSON file");
  run->add_option("--geometry", run_geometry, "Detector preset v24..v54");
  run->add_option("--alpha-s", run_alpha_s, "Signal pattern density");
  run->add_option("--alpha-b", run_alpha_b, "Background pattern density");
  run->add_option("--model", run_model, "qamm|qcam")
      ->check(CLI::IsMember({"qamm", "qcam", ""}));
  run->add_option("--classifier", run_classifier, "energy|key")
      ->check(CLI::IsMember({"energy", "key", ""}));
  run->add_option("--theta", run_theta, "Probe bias strength");
  run->add_option("--solver", run_solver_name, "exact|sa|reverse")
      ->check(CLI::IsMember({"exact", "sa", "reverse", ""}));
  run->add_option("--reads", run_reads, "Annealing reads per recall");
  run->add_option("--sweeps", run_sweeps, "Sweeps per forward anneal");
  run->add_option("--eta", run_eta, "Efficiency values (repeatable)");
  run->add_option("--gamma", run_gamma, "Noise values (repeatable)");
  run->add_option("--beta-max", run_beta_max, "Upper end of the beta grid");
  run->add_option("--beta-points", run_beta_points, "Beta grid points");
  run->add_option("--sets", run_sets, "Training sets");
  run->add_option("--signal-probes", run_signal, "Signal probes per set");
  run->add_option("--background-probes", run_background, "Background probes per set");
  run->add_option("--seed", run_seed, "Master seed");
  run->add_option("--threads", run_threads, "Worker threads (0 = auto)");
  run->add_flag("--no-svg", run_no_svg, "Skip roc.svg outputs");
  run->add_flag("--no-rescale", run_no_rescale, "Skip the 3/(4 W_max) rescale");
  run->add_option("--out-dir", run_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
    return e.get_exit_code();
  }

  try {
    if (*gen) {
      return run_gen(gen_geometry, gen_ps, gen_alpha_s, gen_pb, gen_alpha_b,
                     gen_keyed, gen_fill, gen_seed, gen_out);
    }
    if (*corrupt) {
      return run_corrupt(corrupt_in, corrupt_eta, corrupt_gamma, corrupt_seed,
                         corrupt_repeat, corrupt_out);
    }
    if (*train) {
      return run_train(train_lib, train_model, train_theta, !train_no_rescale,
                       train_dump);
    }
    if (*recall) {
      return run_recall(recall_lib, recall_model, recall_theta, !recall_no_rescale,
                        recall_solver, recall_seed, recall_probe, recall_probe_file,
                        recall_probe_index, recall_encoded_index, recall_max_samples);
    }
    if (*classify_cmd) {
      return run_classify(cls_lib, cls_model, cls_classifier, cls_theta,
                          !cls_no_rescale, cls_solver, cls_beta, cls_probes, cls_seed);
    }
    if (*roc) {
      return run_roc(roc_lib, roc_model, roc_classifier, roc_theta, !roc_no_rescale,
                     roc_solver, roc_eta, roc_gamma, roc_signal, roc_background,
                     roc_fill, roc_beta_max, roc_beta_points, roc_seed, roc_threads,
                     roc_out, !roc_no_svg);
    }
    if (*hough) {
      return run_hough(hough_points, hough_phi_bin, hough_rho_bin, hough_rho_range,
                       hough_rho_unit, hough_bank_phi, hough_bank_rho, hough_acc_csv);
    }
    if (*run) {
      ExperimentConfig cfg;
      if (run_preset == "paper-defaults") cfg = paper_defaults();
      if (!run_config.empty()) {
        cfg = config_from_json_text(read_text_file(run_config), cfg);
      }
      if (run->count("--geometry")) cfg.geometry = run_geometry;
      if (run->count("--alpha-s")) cfg.alpha_s = run_alpha_s;
      if (run->count("--alpha-b")) cfg.alpha_b = run_alpha_b;
      if (run->count("--model")) cfg.model = model_from_string(run_model);
      if (run->count("--classifier")) {
        cfg.classifier = classifier_from_string(run_classifier);
      }
      if (run->count("--theta")) cfg.theta = run_theta;
      if (run->count("--solver")) cfg.solver.kind = solver_from_string(run_solver_name);
      if (run->count("--reads")) cfg.solver.reads = run_reads;
      if (run->count("--sweeps")) cfg.solver.schedule.sweeps = run_sweeps;
      if (run->count("--eta")) cfg.eta_list = run_eta;
      if (run->count("--gamma")) cfg.gamma_list = run_gamma;
      if (run->count("--beta-max")) cfg.beta_max = run_beta_max;
      if (run->count("--beta-points")) cfg.beta_points = run_beta_points;
      if (run->count("--sets")) cfg.training_sets = run_sets;
      if (run->count("--signal-probes")) cfg.signal_probes = run_signal;
      if (run->count("--background-probes")) cfg.background_probes = run_background;
      if (run->count("--seed")) cfg.seed = run_seed;
      if (run->count("--threads")) cfg.threads = run_threads;
      if (run_no_rescale) cfg.rescale_couplings = false;
      // Keyed experiments default to equal signal and background densities.
      if (cfg.classifier == ClassifierMode::Key && cfg.alpha_b == 0.0 &&
          run->count("--alpha-b") == 0) {
        cfg.alpha_b = cfg.alpha_s;
      }

      const ExperimentReport report = run_experiment(cfg);
      write_report(report, run_out, !run_no_svg);

      json cells = json::array();
      for (const CellResult& cell : report.cells) {
        cells.push_back(json{{"name", cell.name}, {"auc", cell.pooled.auc}});
      }
      std::cout << json{{"out_dir", run_out}, {"cells", std::move(cells)}}.dump(2)
                << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
