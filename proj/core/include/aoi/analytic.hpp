#pragma once

#include "aoi/core_model.hpp"

namespace aoi::analytic {

/// Per-frame outcome probabilities of a user with two transmission
/// opportunities: both fail, first succeeds, first fails and second succeeds.
struct ProbabilityPartition {
  double p0 = 1.0;
  double p_first = 0.0;
  double p_second = 0.0;

  double sum() const { return p0 + p_first + p_second; }

  /// Throws std::invalid_argument if a component leaves [0, 1] or the sum
  /// differs from 1 by more than 1e-12.
  void validate() const;
};

/// Time-average age in seconds, or the "never succeeds" outcome when the
/// user can never deliver an update and the age grows without bound.
class AoiValue {
 public:
  constexpr AoiValue() = default;
  explicit AoiValue(double seconds);

  static AoiValue never_succeeds() { return AoiValue{}; }

  bool diverges() const { return diverges_; }
  /// Throws std::domain_error when the value diverges.
  double seconds() const;
  /// Seconds, or +infinity for a divergent value.
  double or_infinity() const;

  AoiValue operator+(const AoiValue& other) const;

 private:
  double seconds_ = 0.0;
  bool diverges_ = true;
};

/// (1 - exp(-(eps P / P_S + 1) eps / P)) / (eps P / P_S + 1).
double tau(Threshold eps, double snr_primary, double snr_secondary);

/// Renewal kernel shared by both generation models: half the ratio of the
/// second to the first moment of the inter-delivery time.
AoiValue delta_kernel(const ProbabilityPartition& partition, int users, double slot);

// --- generate-at-will ---

AoiValue tdma_gaw_aoi(int users, double slot, Threshold eps, double snr);
ProbabilityPartition gaw_partition(Threshold eps, double snr_primary, double snr_secondary);
AoiValue crnoma_gaw_aoi(int users, double slot, Threshold eps, double snr_primary,
                        double snr_secondary);
/// T + MT/2, the common limit of both schemes as the SNR grows.
double gaw_high_snr_aoi(int users, double slot);

// --- generate-at-request ---

/// AoI of the user scheduled in slot `user` (1-based) under TDMA.
AoiValue tdma_gar_user_aoi(int user, int users, double slot, Threshold eps, double snr);
AoiValue tdma_gar_overall(int users, double slot, Threshold eps, double snr);

/// Partition of the pair member owning the earlier slot m.
ProbabilityPartition gar_partition_user_m(Threshold eps, double snr_primary,
                                          double snr_secondary);
/// Partition of the pair member owning the later slot m' = m + M/2.
ProbabilityPartition gar_partition_user_mprime(Threshold eps, double snr_primary,
                                               double snr_secondary);

/// Reset-height contribution for a user whose deliveries land at the end of
/// slot m (age m T) or slot m' (age m' T). Evaluated with the prefactor
/// (1 - p0)^2 / (p_first + p_second)^2 kept as written.
AoiValue delta_k0(int m, int m_prime, double slot, const ProbabilityPartition& partition);

AoiValue crnoma_gar_user_aoi(int user, int users, double slot, Threshold eps,
                             double snr_primary, double snr_secondary);
AoiValue crnoma_gar_overall(int users, double slot, Threshold eps, double snr_primary,
                            double snr_secondary);

/// High-SNR difference AoI_NOMA(m') - AoI_TDMA(m') = -MT / (2 (1 + eps)).
double gar_high_snr_gap(int users, double slot, Threshold eps);

// --- dispatch over SystemConfig ---

AoiValue overall_aoi(const SystemConfig& config);
/// Per-user AoI for `user` in 1..M. Under GAW all users share one value.
AoiValue user_aoi(const SystemConfig& config, int user);

/// Slot index of the pair partner: m <-> m + M/2.
int pair_partner(int user, int users);

}  // namespace aoi::analytic
