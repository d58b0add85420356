// aoi-sim: figure sweeps, the acceptance suite and probability dumps.
//
//   aoi-sim run --preset fig4b --out fig4b.csv
//   aoi-sim run --config sweep.cfg --sim-only --frames 50000
//   aoi-sim validate --level fast
//   aoi-sim probs --rate 1 --snr-db 0
//
// Exit status: 0 success, 1 validation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "aoi/analytic.hpp"
#include "aoi/config_file.hpp"
#include "aoi/experiment.hpp"
#include "aoi/oracle.hpp"
#include "aoi/validation.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunOptions {
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> frames;
  std::optional<std::int64_t> warmup;
  bool analytic_only = false;
  bool sim_only = false;
  unsigned threads = 0;
};

aoi::experiment::ExperimentSpec build_spec(const RunOptions& o) {
  using namespace aoi::experiment;
  ConfigEntries entries;
  if (o.config) {
    std::ifstream in(*o.config);
    if (!in) throw std::invalid_argument("cannot open config file '" + *o.config + "'");
    entries = parse_config(in);
  }
  if (o.preset) {
    std::erase_if(entries, [](const auto& e) { return e.first == "preset"; });
    entries.emplace_back("preset", *o.preset);
  }
  ExperimentSpec spec = spec_from_config(entries);
  if (o.seed) spec.seed = *o.seed;
  if (o.frames) spec.frames = *o.frames;
  if (o.warmup) spec.warmup = *o.warmup;
  if (o.analytic_only) spec.outputs = Outputs::analytic;
  if (o.sim_only) spec.outputs = Outputs::simulated;
  spec.validate();
  return spec;
}

int run_command(const RunOptions& o) {
  aoi::experiment::ExperimentSpec spec;
  try {
    spec = build_spec(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "aoi-sim: " << e.what() << '\n';
    return kExitUsage;
  }
  const std::string csv = aoi::experiment::run_experiment(spec, o.threads);
  if (!o.out) {
    std::cout << csv;
    return 0;
  }
  std::ofstream out(*o.out, std::ios::binary);
  out << csv;
  if (!out) {
    std::cerr << "aoi-sim: cannot write '" << *o.out << "'\n";
    return kExitUsage;
  }
  return 0;
}

int validate_command(const std::string& level_name) {
  using namespace aoi::validation;
  const Level level = level_name == "full" ? Level::full : Level::fast;
  bool ok = true;
  for (const auto& check : all_checks()) {
    const CheckResult result = check.run(level);
    std::cout << format_result(result) << std::endl;
    ok = ok && result.passed;
  }
  return ok ? 0 : kExitFailure;
}

struct ProbsOptions {
  double rate = 1.0;
  double snr_db = 0.0;
  std::optional<double> snr_secondary_db;
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
};

int probs_command(const ProbsOptions& o) {
  using namespace aoi;
  const Threshold eps = epsilon_of(o.rate);
  const double p = db_to_linear(o.snr_db);
  const double ps = db_to_linear(o.snr_secondary_db.value_or(o.snr_db));
  GainStream stream(derive_stream_seed(o.seed, 0));
  const auto gaw = oracle::estimate_gaw_partition(eps, p, ps, o.trials, stream);
  const auto gar = oracle::estimate_gar_partitions(eps, p, ps, o.trials, stream);
  const auto a_gaw = analytic::gaw_partition(eps, p, ps);
  const auto a_m = analytic::gar_partition_user_m(eps, p, ps);
  const auto a_mp = analytic::gar_partition_user_mprime(eps, p, ps);

  std::printf("quantity,analytic,estimate,half_width,covered\n");
  const auto line = [](const char* name, double value, const oracle::EstimateWithCI& est) {
    std::printf("%s,%.9g,%.9g,%.3g,%s\n", name, value, est.estimate, est.half_width,
                est.covers(value) ? "yes" : "no");
  };
  line("p0", a_gaw.p0, gaw.p0);
  line("p_m", a_gaw.p_first, gaw.p_first);
  line("p_m'", a_gaw.p_second, gaw.p_second);
  line("p_0m", a_m.p0, gar.user_m.p0);
  line("p_mm", a_m.p_first, gar.user_m.p_first);
  line("p_m'm", a_m.p_second, gar.user_m.p_second);
  line("p_0m'", a_mp.p0, gar.user_mprime.p0);
  line("p_mm'", a_mp.p_first, gar.user_mprime.p_first);
  line("p_m'm'", a_mp.p_second, gar.user_mprime.p_second);
  std::printf("tau,%.9g,,,\n", analytic::tau(eps, p, ps));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AoI of TDMA and CR-NOMA uplinks: closed forms and Monte Carlo"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "evaluate a preset or custom sweep and write CSV");
  run_cmd->add_option("--preset", run.preset, "figure preset")
      ->check(CLI::IsMember(aoi::experiment::preset_names()));
  run_cmd->add_option("--config", run.config, "key=value config file");
  run_cmd->add_option("--out", run.out, "CSV output path (default stdout)");
  run_cmd->add_option("--seed", run.seed, "master seed");
  run_cmd->add_option("--frames", run.frames, "frames per simulation point");
  run_cmd->add_option("--warmup", run.warmup, "discarded warm-up frames");
  auto* analytic_flag = run_cmd->add_flag("--analytic-only", run.analytic_only, "skip simulation");
  run_cmd->add_flag("--sim-only", run.sim_only, "skip closed forms")->excludes(analytic_flag);
  run_cmd->add_option("--threads", run.threads, "worker threads (0 = all cores)");

  std::string level = "fast";
  auto* validate_cmd = app.add_subcommand("validate", "run the acceptance checks");
  validate_cmd->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  ProbsOptions probs;
  auto* probs_cmd = app.add_subcommand("probs", "Monte Carlo frame probabilities vs closed forms");
  probs_cmd->add_option("--rate", probs.rate, "target rate R (bits/s/Hz)")
      ->check(CLI::NonNegativeNumber);
  probs_cmd->add_option("--snr-db", probs.snr_db, "primary transmit SNR P (dB)");
  probs_cmd->add_option("--snr-secondary-db", probs.snr_secondary_db, "P_S in dB (default P)");
  probs_cmd->add_option("--trials", probs.trials, "Monte Carlo frames")
      ->check(CLI::PositiveNumber);
  probs_cmd->add_option("--seed", probs.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return run_command(run);
    if (*validate_cmd) return validate_command(level);
    if (*probs_cmd) return probs_command(probs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "aoi-sim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "aoi-sim: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
