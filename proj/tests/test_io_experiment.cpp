#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qamtrack/corruption.hpp"
#include "qamtrack/experiment.hpp"
#include "qamtrack/library_io.hpp"

using namespace qamtrack;

namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / name;
}

PatternLibrary sample_library() {
  const DetectorGeometry geom = geometry_preset("v24");
  const FieldConfig field{};
  Rng rng(61);
  PatternLibrary lib = build_signal_library(geom, field, 3, rng);
  Rng bg(62);
  lib.add(KeyedPattern{BitPattern{}, generate_background(24, 0.15, lib, bg)},
          PatternKind::Background);
  return with_keys(lib);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("library save/load round trip") {
  const PatternLibrary lib = sample_library();
  const DetectorGeometry geom = geometry_preset("v24");
  const FieldConfig field{};
  const fs::path path = temp_path("qamtrack_roundtrip.json");
  save_library(lib, path, &geom, &field);

  const LoadedLibrary loaded = load_library(path);
  REQUIRE(loaded.library.size() == lib.size());
  CHECK(loaded.library.value_length() == lib.value_length());
  CHECK(loaded.library.key_length() == lib.key_length());
  for (Index i = 0; i < lib.size(); ++i) {
    CHECK(loaded.library.pattern(i) == lib.pattern(i));
    CHECK(loaded.library.kind(i) == lib.kind(i));
    CHECK(loaded.library.source(i).has_value() == lib.source(i).has_value());
    if (lib.source(i)) {
      CHECK(loaded.library.source(i)->charge == lib.source(i)->charge);
      CHECK(loaded.library.source(i)->momentum_gev == lib.source(i)->momentum_gev);
      CHECK(loaded.library.source(i)->origin_m == lib.source(i)->origin_m);
    }
  }
  REQUIRE(loaded.geometry.has_value());
  CHECK(loaded.geometry->rows == geom.rows);
  CHECK(loaded.geometry->cols == geom.cols);
  REQUIRE(loaded.field.has_value());
  CHECK(loaded.field->b_tesla == field.b_tesla);
  fs::remove(path);
}

TEST_CASE("loading rejects duplicates and unknown versions") {
  SUBCASE("duplicate values") {
    const fs::path path = temp_path("qamtrack_dup.json");
    write_text(path, R"({"version":1,"V":3,"K":0,"patterns":[
      {"kind":"signal","key":"","value":"101"},
      {"kind":"background","key":"","value":"101"}]})");
    CHECK_THROWS_WITH_AS(load_library(path), doctest::Contains("duplicate"),
                         std::invalid_argument);
    fs::remove(path);
  }
  SUBCASE("unknown version names the expected one") {
    const fs::path path = temp_path("qamtrack_ver.json");
    write_text(path, R"({"version":9,"V":3,"K":0,"patterns":[
      {"kind":"signal","key":"","value":"101"}]})");
    CHECK_THROWS_WITH_AS(load_library(path), doctest::Contains("expected 1"),
                         std::runtime_error);
    fs::remove(path);
  }
  SUBCASE("malformed JSON") {
    const fs::path path = temp_path("qamtrack_bad.json");
    write_text(path, "{not json");
    CHECK_THROWS(load_library(path));
    fs::remove(path);
  }
}

TEST_CASE("probe sets tolerate duplicate values") {
  ProbeSet probes;
  probes.value_length = 3;
  probes.key_length = 0;
  probes.patterns = {KeyedPattern{BitPattern{}, BitPattern({1, 0, 1})},
                     KeyedPattern{BitPattern{}, BitPattern({1, 0, 1})}};
  probes.kinds = {PatternKind::Signal, PatternKind::Signal};
  const fs::path path = temp_path("qamtrack_probes.json");
  save_probe_set(probes, path);
  const ProbeSet loaded = load_probe_set(path);
  CHECK(loaded.patterns.size() == 2);
  CHECK(loaded.patterns[0].value == loaded.patterns[1].value);
  fs::remove(path);
}

TEST_CASE("experiment config validation enforces the mode/encoding matrix") {
  ExperimentConfig cfg;
  SUBCASE("key classifier needs encoded backgrounds") {
    cfg.classifier = ClassifierMode::Key;
    cfg.alpha_b = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  }
  SUBCASE("energy classifier needs signal-only encoding") {
    cfg.classifier = ClassifierMode::Energy;
    cfg.alpha_b = 0.25;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("bad ranges are rejected") {
    cfg.eta_list = {1.2};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("key lengths follow the model/classifier pairing") {
    cfg.model = Model::Qamm;
    cfg.classifier = ClassifierMode::Energy;
    CHECK(cfg.key_length() == 0);
    cfg.model = Model::Qcam;
    CHECK(cfg.key_length() == 1);
    cfg.model = Model::Qamm;
    cfg.classifier = ClassifierMode::Key;
    CHECK(cfg.key_length() == 1);
  }
}

TEST_CASE("the paper-defaults preset pins the full experiment shape") {
  const ExperimentConfig cfg = paper_defaults();
  CHECK(cfg.geometry == "v24");
  CHECK(cfg.alpha_s == doctest::Approx(1.0 / 6.0));
  CHECK(cfg.theta == doctest::Approx(0.74));
  CHECK(cfg.eta_list == std::vector<double>{1.0, 0.98, 0.96, 0.94, 0.92});
  CHECK(cfg.gamma_list == std::vector<double>{0.0, 0.02, 0.04, 0.06, 0.08});
  CHECK(cfg.solver.reads == 100);
  CHECK(cfg.training_sets == 5);
  CHECK(cfg.signal_probes == 25);
  CHECK(cfg.background_probes == 25);
  CHECK(cfg.beta_max == 10.0);
  CHECK(cfg.beta_points == 101);
  const auto grid = beta_grid(cfg.beta_max, cfg.beta_points);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 10.0);
  CHECK(grid.size() == 101);
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig cfg = paper_defaults();
  cfg.model = Model::Qcam;
  cfg.classifier = ClassifierMode::Key;
  cfg.alpha_b = cfg.alpha_s;
  cfg.seed = 99;
  cfg.solver.kind = SolverKind::Reverse;
  const ExperimentConfig back = config_from_json_text(config_json(cfg));
  CHECK(back.model == cfg.model);
  CHECK(back.classifier == cfg.classifier);
  CHECK(back.alpha_b == cfg.alpha_b);
  CHECK(back.seed == cfg.seed);
  CHECK(back.solver.kind == cfg.solver.kind);
  CHECK(back.eta_list == cfg.eta_list);
  CHECK(back.gamma_list == cfg.gamma_list);
  CHECK(back.theta == cfg.theta);
}

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.geometry = "v24";
  cfg.alpha_s = 2.0 / 24.0;  // two signal patterns
  cfg.training_sets = 1;
  cfg.signal_probes = 4;
  cfg.background_probes = 4;
  cfg.solver.kind = SolverKind::Sa;
  cfg.solver.reads = 25;
  cfg.solver.schedule.sweeps = 300;
  cfg.beta_points = 21;
  cfg.seed = 5;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("noiseless recall separates signal from background") {
  const ExperimentConfig cfg = tiny_config();
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].name == "baseline");
  CHECK(report.cells[0].pooled.auc >= 0.95);
}

TEST_CASE("experiments are deterministic under the master seed") {
  const ExperimentConfig cfg = tiny_config();
  const ExperimentReport a = run_experiment(cfg);
  const ExperimentReport b = run_experiment(cfg);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    CHECK(a.cells[c].pooled.auc == b.cells[c].pooled.auc);
    REQUIRE(a.cells[c].sets.size() == b.cells[c].sets.size());
    for (std::size_t t = 0; t < a.cells[c].sets.size(); ++t) {
      const auto& sa = a.cells[c].sets[t];
      const auto& sb = b.cells[c].sets[t];
      CHECK(sa.calibration_mean == sb.calibration_mean);
      CHECK(sa.calibration_sigma == sb.calibration_sigma);
      REQUIRE(sa.probes.size() == sb.probes.size());
      for (std::size_t p = 0; p < sa.probes.size(); ++p) {
        CHECK(sa.probes[p].statistic == sb.probes[p].statistic);
        CHECK(sa.probes[p].truth == sb.probes[p].truth);
      }
    }
  }
}

TEST_CASE("read counts never perturb library generation") {
  ExperimentConfig a = tiny_config();
  ExperimentConfig b = tiny_config();
  b.solver.reads = 77;
  b.solver.schedule.sweeps = 50;
  const DetectorGeometry geom = geometry_preset(a.geometry);
  const FieldConfig field{};
  const PatternLibrary la = build_training_library(a, geom, field, 0);
  const PatternLibrary lb = build_training_library(b, geom, field, 0);
  REQUIRE(la.size() == lb.size());
  for (Index i = 0; i < la.size(); ++i) {
    CHECK(la.pattern(i) == lb.pattern(i));
    CHECK(la.kind(i) == lb.kind(i));
  }
}

TEST_CASE("reports land on disk with the documented layout") {
  const ExperimentConfig cfg = tiny_config();
  const ExperimentReport report = run_experiment(cfg);
  const fs::path out = temp_path("qamtrack_report");
  fs::remove_all(out);
  write_report(report, out, true);

  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "baseline" / "roc.csv"));
  CHECK(fs::exists(out / "baseline" / "summary.json"));
  CHECK(fs::exists(out / "baseline" / "roc.svg"));

  std::ifstream csv(out / "baseline" / "roc.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "beta,tpr,fpr");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == cfg.beta_points);
  fs::remove_all(out);
}

TEST_CASE("un-keyed libraries round trip through JSON") {
  const DetectorGeometry geom = geometry_preset("v30");
  const FieldConfig field{};
  Rng rng(63);
  const PatternLibrary lib = build_signal_library(geom, field, 2, rng);
  const fs::path path = temp_path("qamtrack_unkeyed.json");
  save_library(lib, path, &geom, &field);
  const LoadedLibrary loaded = load_library(path);
  CHECK(loaded.library.key_length() == 0);
  CHECK(loaded.library.pattern(0).key.empty());
  CHECK(loaded.library.pattern(0) == lib.pattern(0));
  fs::remove(path);
}

TEST_CASE("the largest geometry runs end to end") {
  ExperimentConfig cfg = tiny_config();
  cfg.geometry = "v54";
  cfg.alpha_s = 4.0 / 54.0;
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].pooled.auc >= 0.9);
}

TEST_CASE("the reverse solver drives the pipeline end to end") {
  ExperimentConfig cfg = tiny_config();
  cfg.solver.kind = SolverKind::Reverse;
  cfg.solver.reads = 10;
  cfg.solver.reverse.ramp_sweeps = 20;
  cfg.solver.reverse.pause_sweeps = 200;
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].pooled.auc >= 0.9);
  // Same seed, same result.
  const ExperimentReport again = run_experiment(cfg);
  CHECK(report.cells[0].pooled.auc == again.cells[0].pooled.auc);
}

TEST_CASE("background energies localize toward signal energies as density grows") {
  auto relative_gap = [](double alpha_s) {
    ExperimentConfig cfg = tiny_config();
    cfg.alpha_s = alpha_s;
    cfg.signal_probes = 10;
    cfg.background_probes = 10;
    cfg.seed = 77;
    const ExperimentReport report = run_experiment(cfg);
    double sig = 0.0, bg = 0.0;
    int n_sig = 0, n_bg = 0;
    for (const ProbeRecord& probe : report.cells[0].sets[0].probes) {
      if (probe.truth == PatternKind::Signal) {
        sig += probe.statistic;
        ++n_sig;
      } else {
        bg += probe.statistic;
        ++n_bg;
      }
    }
    sig /= n_sig;
    bg /= n_bg;
    return (bg - sig) / std::abs(sig);
  };
  const double sparse = relative_gap(1.0 / 6.0);
  const double dense = relative_gap(1.0);
  CHECK(sparse > 0.0);
  CHECK(dense > 0.0);
  CHECK(sparse > 2.0 * dense);  // interference squeezes the energy gap
}

TEST_CASE("every model/classifier pairing runs end to end") {
  // (qamm, energy) is the default path exercised above.
  SUBCASE("qcam with the energy classifier trains keyed signal-only") {
    ExperimentConfig cfg = tiny_config();
    cfg.model = Model::Qcam;
    const ExperimentReport report = run_experiment(cfg);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].pooled.auc >= 0.9);
  }
  SUBCASE("qamm with the key classifier keeps the full coupling matrix") {
    ExperimentConfig cfg = tiny_config();
    cfg.model = Model::Qamm;
    cfg.classifier = ClassifierMode::Key;
    cfg.alpha_b = cfg.alpha_s;
    const ExperimentReport report = run_experiment(cfg);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].pooled.auc >= 0.9);
  }
  SUBCASE("qcam with the key classifier") {
    ExperimentConfig cfg = tiny_config();
    cfg.model = Model::Qcam;
    cfg.classifier = ClassifierMode::Key;
    cfg.alpha_b = cfg.alpha_s;
    const ExperimentReport report = run_experiment(cfg);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].pooled.auc >= 0.9);
  }
}
