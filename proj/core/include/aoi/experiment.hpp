#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/core_model.hpp"

namespace aoi::experiment {

enum class Outputs { analytic, simulated, both };

/// Which AoI rows are emitted per grid point.
enum class RowSet {
  overall,        ///< normalized overall AoI
  first_half,     ///< users 1..M/2 (the U_m side of each pair)
  second_half,    ///< users M/2+1..M (the U_m' side)
  fairness_pair,  ///< users 1 and 1+M/2 plus their difference ("gap")
  all_users,      ///< every user plus the overall value
};

std::string_view to_string(Outputs outputs);
std::string_view to_string(RowSet rows);
Outputs parse_outputs(std::string_view text);
RowSet parse_row_set(std::string_view text);

/// A sweep over SNR (dB), user count, rate and slot duration. P_S = P at
/// every point.
struct ExperimentSpec {
  std::string preset = "custom";
  std::vector<double> snr_db;
  std::vector<int> users;
  std::vector<double> rates;
  std::vector<double> slots;
  std::vector<Scheme> schemes{Scheme::tdma, Scheme::cr_noma};
  GenerationModel model = GenerationModel::gaw;
  RowSet rows = RowSet::overall;
  Outputs outputs = Outputs::both;
  std::int64_t frames = 200000;
  std::int64_t warmup = 100;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument for empty axes, odd user counts, bad
  /// numeric ranges or an unknown preset name.
  void validate() const;
};

const std::vector<std::string>& preset_names();
/// Axes of a named figure preset. Throws std::invalid_argument if unknown.
ExperimentSpec preset(std::string_view name);

struct CsvRow {
  std::string preset;
  Scheme scheme = Scheme::tdma;
  GenerationModel model = GenerationModel::gaw;
  int users = 0;
  double slot = 0.0;
  double rate = 0.0;
  double snr_db = 0.0;
  std::string user_id;
  std::optional<double> aoi_analytic;
  std::optional<double> aoi_sim;
  std::optional<double> sim_ci_halfwidth;
  std::int64_t frames = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCsvHeader =
    "preset,scheme,gen_model,M,T,R,snr_db,user_id,aoi_analytic,aoi_sim,sim_ci_halfwidth,frames,seed";

/// One simulation point of a sweep.
struct SweepPoint {
  SystemConfig config;
  double snr_db = 0.0;
};

/// Grid points in output order (scheme name, M, T, R, SNR ascending), each
/// with seed derive_stream_seed(spec.seed, index). Validates the spec.
std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec);

/// Evaluates every grid point. Simulation points are distributed over
/// `threads` workers (0 = hardware concurrency); each point owns a stream
/// seeded with derive_stream_seed(spec.seed, point_index), so the result does
/// not depend on the thread count.
std::vector<CsvRow> compute_rows(const ExperimentSpec& spec, unsigned threads = 1);

/// CSV with mandatory header; numbers at 6 significant digits.
std::string to_csv(std::span<const CsvRow> rows);

std::string run_experiment(const ExperimentSpec& spec, unsigned threads = 1);

/// "%.6g", with "inf" for divergent values.
std::string format_number(double value);

}  // namespace aoi::experiment
