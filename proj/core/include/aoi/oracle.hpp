#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoi/core_model.hpp"
#include "aoi/event_log.hpp"

// Validation paths that do not go through the closed forms: Monte Carlo
// classification of per-frame protocol events, renewal-reward recomputation
// of the age from a delivery log, and the geometric series used to sum the
// renewal moments.
namespace aoi::oracle {

/// Empirical probability with a 3-sigma binomial half-interval.
struct EstimateWithCI {
  double estimate = 0.0;
  double half_width = 0.0;
  std::int64_t trials = 0;

  static EstimateWithCI from_counts(std::int64_t hits, std::int64_t trials);
  bool covers(double value) const;
};

struct PartitionEstimate {
  EstimateWithCI p0;
  EstimateWithCI p_first;
  EstimateWithCI p_second;
};

struct GarPartitionEstimate {
  PartitionEstimate user_m;
  PartitionEstimate user_mprime;
};

/// Frames of a GAW pair as seen by U_m: primary in slot m, capped secondary
/// against U_m' in slot m' after a failure.
PartitionEstimate estimate_gaw_partition(Threshold eps, double snr_primary,
                                         double snr_secondary, std::int64_t trials,
                                         GainStream& stream);

/// Joint frame outcomes of a GAR pair, including the branch where U_m' has
/// already delivered and leaves slot m' to U_m alone.
GarPartitionEstimate estimate_gar_partitions(Threshold eps, double snr_primary,
                                             double snr_secondary, std::int64_t trials,
                                             GainStream& stream);

/// Per-user time-average age rebuilt from renewal intervals: every record
/// opens an interval y that closes at the user's next record (or at
/// `horizon`) and contributes age * y + y^2 / 2.
/// Throws std::invalid_argument if a user has no record.
std::vector<double> renewal_aoi(std::span<const DeliveryRecord> records, int users,
                                double horizon);
std::vector<double> renewal_aoi(const EventLog& log);

struct MomentResiduals {
  double first = 0.0;   ///< |sum j x^j - x/(1-x)^2|
  double second = 0.0;  ///< |sum j^2 x^j - x(1+x)/(1-x)^3|
};

/// Partial sums of the first two geometric moments against their closed
/// forms. Throws std::invalid_argument unless 0 < x < 1.
MomentResiduals geometric_moment_check(double x, int terms);

}  // namespace aoi::oracle
