#include "aoi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aoi/analytic.hpp"
#include "aoi/simulator.hpp"

namespace aoi::experiment {

std::string_view to_string(Outputs outputs) {
  switch (outputs) {
    case Outputs::analytic: return "analytic";
    case Outputs::simulated: return "simulated";
    case Outputs::both: return "both";
  }
  return "both";
}

std::string_view to_string(RowSet rows) {
  switch (rows) {
    case RowSet::overall: return "overall";
    case RowSet::first_half: return "first-half";
    case RowSet::second_half: return "second-half";
    case RowSet::fairness_pair: return "pair";
    case RowSet::all_users: return "all";
  }
  return "overall";
}

Outputs parse_outputs(std::string_view text) {
  if (text == "analytic") return Outputs::analytic;
  if (text == "simulated" || text == "sim") return Outputs::simulated;
  if (text == "both") return Outputs::both;
  throw std::invalid_argument("unknown outputs '" + std::string(text) + "'");
}

RowSet parse_row_set(std::string_view text) {
  for (RowSet r : {RowSet::overall, RowSet::first_half, RowSet::second_half,
                   RowSet::fairness_pair, RowSet::all_users}) {
    if (text == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown row set '" + std::string(text) + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig4a", "fig4b", "fig5",  "fig6a", "fig6b",
                                              "fig7x", "fig7a", "fig7b", "custom"};
  return names;
}

namespace {

std::vector<double> snr_range(double from, double to, double step) {
  std::vector<double> out;
  for (double v = from; v <= to + 1e-9; v += step) out.push_back(v);
  return out;
}

}  // namespace

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec s;
  s.preset = std::string(name);
  // SNR grids use 5 dB spacing except fig5.
  if (name == "fig4a" || name == "fig4b") {
    // GAW, M = 8; R = 0.5 (a) or 1 (b); one curve per T.
    s.model = GenerationModel::gaw;
    s.users = {8};
    s.rates = {name == "fig4a" ? 0.5 : 1.0};
    s.slots = {0.5, 1.0, 1.5};
    s.snr_db = snr_range(0.0, 30.0, 5.0);
  } else if (name == "fig5") {
    // GAW, R = 1.5, T = 0.5, sweep over M.
    s.model = GenerationModel::gaw;
    s.users = {4, 8, 16, 32};
    s.rates = {1.5};
    s.slots = {0.5};
    s.snr_db = {0.0, 10.0, 20.0};
  } else if (name == "fig6a" || name == "fig6b") {
    // GAR, M = 8, R = 1, T = 0.5; individual AoI of U_m (a) or U_m' (b).
    s.model = GenerationModel::gar;
    s.users = {8};
    s.rates = {1.0};
    s.slots = {0.5};
    s.snr_db = snr_range(0.0, 30.0, 5.0);
    s.rows = name == "fig6a" ? RowSet::first_half : RowSet::second_half;
  } else if (name == "fig7x") {
    // GAR, m = 1, M = 8, R = 1, T = 0.5: U_m against U_m'.
    s.model = GenerationModel::gar;
    s.users = {8};
    s.rates = {1.0};
    s.slots = {0.5};
    s.snr_db = snr_range(0.0, 40.0, 5.0);
    s.rows = RowSet::fairness_pair;
  } else if (name == "fig7a" || name == "fig7b") {
    // GAR overall AoI, T = 0.5; R = 0.5 (a) or 1.5 (b); one curve per M.
    s.model = GenerationModel::gar;
    s.users = {4, 8, 16};
    s.rates = {name == "fig7a" ? 0.5 : 1.5};
    s.slots = {0.5};
    s.snr_db = snr_range(0.0, 30.0, 5.0);
  } else if (name != "custom") {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

void ExperimentSpec::validate() const {
  if (std::find(preset_names().begin(), preset_names().end(), preset) == preset_names().end())
    throw std::invalid_argument("unknown preset '" + preset + "'");
  if (snr_db.empty() || users.empty() || rates.empty() || slots.empty())
    throw std::invalid_argument("every sweep axis needs at least one value");
  if (schemes.empty()) throw std::invalid_argument("scheme list is empty");
  for (int m : users) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("user count must be even and >= 2");
  }
  for (double v : snr_db) {
    if (!std::isfinite(v)) throw std::invalid_argument("SNR values must be finite");
  }
  for (double r : rates) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("rates must be >= 0");
  }
  for (double t : slots) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("slot durations must be > 0");
  }
  if (outputs != Outputs::analytic && (warmup < 0 || frames <= warmup))
    throw std::invalid_argument("frames must exceed warmup");
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> selected_users(RowSet rows, int m) {
  std::vector<int> out;
  switch (rows) {
    case RowSet::overall: break;
    case RowSet::first_half:
      for (int k = 1; k <= m / 2; ++k) out.push_back(k);
      break;
    case RowSet::second_half:
      for (int k = m / 2 + 1; k <= m; ++k) out.push_back(k);
      break;
    case RowSet::fairness_pair: out = {1, 1 + m / 2}; break;
    case RowSet::all_users:
      for (int k = 1; k <= m; ++k) out.push_back(k);
      break;
  }
  return out;
}

bool has_overall_row(RowSet rows) { return rows == RowSet::overall || rows == RowSet::all_users; }

void run_parallel(std::size_t count, unsigned threads, const auto& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec) {
  spec.validate();

  std::vector<Scheme> schemes = sorted_unique(spec.schemes);
  std::sort(schemes.begin(), schemes.end(),
            [](Scheme a, Scheme b) { return to_string(a) < to_string(b); });

  std::vector<SweepPoint> points;
  for (Scheme scheme : schemes) {
    for (int m : sorted_unique(spec.users)) {
      for (double t : sorted_unique(spec.slots)) {
        for (double r : sorted_unique(spec.rates)) {
          for (double snr : sorted_unique(spec.snr_db)) {
            SystemConfig c;
            c.users = m;
            c.slot = t;
            c.rate = r;
            c.snr_primary = db_to_linear(snr);
            c.snr_secondary = c.snr_primary;
            c.scheme = scheme;
            c.model = spec.model;
            c.frames = spec.frames;
            c.warmup_frames = spec.warmup;
            c.seed = derive_stream_seed(spec.seed, points.size());
            points.push_back({c, snr});
          }
        }
      }
    }
  }
  return points;
}

std::vector<CsvRow> compute_rows(const ExperimentSpec& spec, unsigned threads) {
  const std::vector<SweepPoint> points = sweep_points(spec);

  const bool simulate = spec.outputs != Outputs::analytic;
  const bool analytic = spec.outputs != Outputs::simulated;

  std::vector<sim::AoiReport> reports(points.size());
  if (simulate) {
    run_parallel(points.size(), threads,
                 [&](std::size_t i) { reports[i] = sim::run(points[i].config); });
  }

  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SystemConfig& c = points[i].config;
    CsvRow base;
    base.preset = spec.preset;
    base.scheme = c.scheme;
    base.model = c.model;
    base.users = c.users;
    base.slot = c.slot;
    base.rate = c.rate;
    base.snr_db = points[i].snr_db;
    if (simulate) {
      base.frames = c.frames;
      base.seed = c.seed;
    }

    auto user_row = [&](int k) {
      CsvRow row = base;
      row.user_id = std::to_string(k);
      if (analytic) row.aoi_analytic = analytic::user_aoi(c, k).or_infinity();
      if (simulate) {
        row.aoi_sim = reports[i].per_user_aoi[k - 1];
        row.sim_ci_halfwidth = 3.0 * reports[i].per_user_stderr[k - 1];
      }
      return row;
    };

    const std::vector<int> users = selected_users(spec.rows, c.users);
    for (int k : users) rows.push_back(user_row(k));

    if (spec.rows == RowSet::fairness_pair) {
      const CsvRow lo = user_row(users[0]);
      const CsvRow hi = user_row(users[1]);
      CsvRow gap = base;
      gap.user_id = "gap";
      if (analytic) gap.aoi_analytic = *hi.aoi_analytic - *lo.aoi_analytic;
      if (simulate) {
        gap.aoi_sim = *hi.aoi_sim - *lo.aoi_sim;
        gap.sim_ci_halfwidth = std::hypot(*hi.sim_ci_halfwidth, *lo.sim_ci_halfwidth);
      }
      rows.push_back(gap);
    }
    if (has_overall_row(spec.rows)) {
      CsvRow row = base;
      row.user_id = "overall";
      if (analytic) row.aoi_analytic = analytic::overall_aoi(c).or_infinity();
      if (simulate) {
        row.aoi_sim = reports[i].overall_aoi;
        row.sim_ci_halfwidth = 3.0 * reports[i].overall_stderr;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string to_csv(std::span<const CsvRow> rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : rows) {
    out << r.preset << ',' << to_string(r.scheme) << ',' << to_string(r.model) << ',' << r.users
        << ',' << format_number(r.slot) << ',' << format_number(r.rate) << ','
        << format_number(r.snr_db) << ',' << r.user_id << ',' << opt(r.aoi_analytic) << ','
        << opt(r.aoi_sim) << ',' << opt(r.sim_ci_halfwidth) << ',';
    if (r.aoi_sim) out << r.frames << ',' << r.seed;
    else out << ',';
    out << '\n';
  }
  return out.str();
}

std::string run_experiment(const ExperimentSpec& spec, unsigned threads) {
  const auto rows = compute_rows(spec, threads);
  return to_csv(rows);
}

}  // namespace aoi::experiment
