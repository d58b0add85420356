#pragma once

#include <cstdint>
#include <vector>

#include "aoi/core_model.hpp"
#include "aoi/event_log.hpp"

namespace aoi::sim {

/// Number of equal-length batches used for batch-means standard errors.
inline constexpr int kBatches = 20;

/// Retry bookkeeping of one user.
///
/// Times are counted in slot ticks: tick n spans [nT, (n+1)T).
struct UserProtocolState {
  int user_id = 0;
  int pair_partner = 0;
  bool pending_retry = false;
  /// Generation tick of the update awaiting its second attempt. Only GAR
  /// retransmits an old update; GAW regenerates at every attempt.
  std::int64_t pending_update_birth = -1;
  /// Frame in which the current delivery cycle made its first attempt.
  std::int64_t cycle_frame = -1;
};

/// Per-user tallies of delivery cycles (first attempt plus optional retry).
struct OutcomeCounts {
  std::int64_t first = 0;
  std::int64_t second = 0;
  std::int64_t none = 0;

  std::int64_t total() const { return first + second + none; }
};

struct AoiReport {
  std::vector<double> per_user_aoi;
  /// Batch-means standard error of each per-user average.
  std::vector<double> per_user_stderr;
  double overall_aoi = 0.0;
  double overall_stderr = 0.0;
  std::int64_t frames_used = 0;
  std::uint64_t seed = 0;
  /// Cycles whose first attempt fell after warm-up.
  std::vector<OutcomeCounts> outcomes;
};

/// Simulates `config.frames` TDMA frames slot by slot and returns time-average
/// ages over the frames after warm-up. Deterministic in (config, seed).
///
/// When `log` is non-null it receives one anchor per user at the start of the
/// accumulation window followed by every delivery inside it.
AoiReport run(const SystemConfig& config, EventLog* log = nullptr);

}  // namespace aoi::sim
