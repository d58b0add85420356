#include "aoi/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aoi::oracle {

EstimateWithCI EstimateWithCI::from_counts(std::int64_t hits, std::int64_t trials) {
  if (trials <= 0) throw std::invalid_argument("estimate needs at least one trial");
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

bool EstimateWithCI::covers(double value) const {
  return std::abs(value - estimate) <= half_width;
}

namespace {

PartitionEstimate to_estimate(std::int64_t none, std::int64_t first, std::int64_t second,
                              std::int64_t trials) {
  return {EstimateWithCI::from_counts(none, trials), EstimateWithCI::from_counts(first, trials),
          EstimateWithCI::from_counts(second, trials)};
}

}  // namespace

PartitionEstimate estimate_gaw_partition(Threshold eps, double snr_primary,
                                         double snr_secondary, std::int64_t trials,
                                         GainStream& stream) {
  std::int64_t none = 0, first = 0, second = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    const ChannelGain own_first = stream.next();
    const ChannelGain own_second = stream.next();
    const ChannelGain partner_second = stream.next();
    if (primary_success(snr_primary, own_first, eps)) {
      ++first;
    } else if (secondary_capped_success(snr_secondary, own_second, snr_primary, partner_second,
                                        eps)) {
      ++second;
    } else {
      ++none;
    }
  }
  return to_estimate(none, first, second, trials);
}

GarPartitionEstimate estimate_gar_partitions(Threshold eps, double snr_primary,
                                             double snr_secondary, std::int64_t trials,
                                             GainStream& stream) {
  std::int64_t m_none = 0, m_first = 0, m_second = 0;
  std::int64_t mp_none = 0, mp_first = 0, mp_second = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    const ChannelGain m_in_m = stream.next();
    const ChannelGain mp_in_m = stream.next();
    const ChannelGain m_in_mp = stream.next();
    const ChannelGain mp_in_mp = stream.next();

    const bool m_ok = primary_success(snr_primary, m_in_m, eps);
    const bool mp_ok = secondary_capped_success(snr_secondary, mp_in_m, snr_primary, m_in_m, eps);

    if (mp_ok) {
      ++mp_first;
    } else if (primary_success(snr_primary, mp_in_mp, eps)) {
      ++mp_second;
    } else {
      ++mp_none;
    }

    if (m_ok) {
      ++m_first;
      continue;
    }
    const bool retry_ok =
        mp_ok ? secondary_solo_success(snr_secondary, m_in_mp, eps)
              : secondary_capped_success(snr_secondary, m_in_mp, snr_primary, mp_in_mp, eps);
    if (retry_ok) {
      ++m_second;
    } else {
      ++m_none;
    }
  }
  return {to_estimate(m_none, m_first, m_second, trials),
          to_estimate(mp_none, mp_first, mp_second, trials)};
}

std::vector<double> renewal_aoi(std::span<const DeliveryRecord> records, int users,
                                double horizon) {
  if (users < 1) throw std::invalid_argument("renewal_aoi needs at least one user");
  std::vector<double> reward(users, 0.0);
  std::vector<double> length(users, 0.0);
  std::vector<double> open_time(users, 0.0);
  std::vector<double> open_age(users, 0.0);
  std::vector<bool> seen(users, false);

  for (const auto& r : records) {
    const int k = r.user - 1;
    if (k < 0 || k >= users) throw std::invalid_argument("record user out of range");
    if (seen[k]) {
      const double y = r.time - open_time[k];
      reward[k] += open_age[k] * y + 0.5 * y * y;
      length[k] += y;
    }
    seen[k] = true;
    open_time[k] = r.time;
    open_age[k] = r.age;
  }

  std::vector<double> out(users);
  for (int k = 0; k < users; ++k) {
    if (!seen[k]) throw std::invalid_argument("no records for user " + std::to_string(k + 1));
    const double y = horizon - open_time[k];
    if (y < 0.0) throw std::invalid_argument("horizon precedes the last record");
    reward[k] += open_age[k] * y + 0.5 * y * y;
    length[k] += y;
    if (!(length[k] > 0.0)) throw std::invalid_argument("zero-length renewal window");
    out[k] = reward[k] / length[k];
  }
  return out;
}

std::vector<double> renewal_aoi(const EventLog& log) {
  return renewal_aoi(log.records, log.users, log.horizon);
}

MomentResiduals geometric_moment_check(double x, int terms) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
  if (terms < 1) throw std::invalid_argument("need at least one term");
  // Smallest terms first.
  double s1 = 0.0;
  double s2 = 0.0;
  for (int j = terms; j >= 1; --j) {
    const double xj = std::pow(x, j);
    s1 += j * xj;
    s2 += static_cast<double>(j) * j * xj;
  }
  const double q = 1.0 - x;
  return {std::abs(s1 - x / (q * q)), std::abs(s2 - x * (1.0 + x) / (q * q * q))};
}

}  // namespace aoi::oracle
