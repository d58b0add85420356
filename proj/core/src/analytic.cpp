#include "aoi/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aoi::analytic {

namespace {

constexpr double kPartitionTolerance = 1e-12;

void check_users(int users) {
  if (users < 2 || users % 2 != 0)
    throw std::invalid_argument("user count must be an even integer >= 2");
}

void check_user_index(int user, int users) {
  if (user < 1 || user > users) throw std::out_of_range("user index out of range");
}

// e^{-eps/P_S} / (1 + eps P / P_S): success of a capped secondary.
double capped_secondary_success(Threshold eps, double snr_primary, double snr_secondary) {
  return std::exp(-eps.epsilon / snr_secondary) /
         (1.0 + eps.epsilon * snr_primary / snr_secondary);
}

}  // namespace

void ProbabilityPartition::validate() const {
  for (double p : {p0, p_first, p_second}) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("partition component outside [0, 1]");
  }
  if (std::abs(sum() - 1.0) > kPartitionTolerance)
    throw std::invalid_argument("partition does not sum to 1");
}

AoiValue::AoiValue(double seconds) : seconds_(seconds), diverges_(!std::isfinite(seconds)) {}

double AoiValue::seconds() const {
  if (diverges_) throw std::domain_error("AoI diverges: user never delivers");
  return seconds_;
}

double AoiValue::or_infinity() const {
  return diverges_ ? std::numeric_limits<double>::infinity() : seconds_;
}

AoiValue AoiValue::operator+(const AoiValue& other) const {
  if (diverges_ || other.diverges_) return never_succeeds();
  return AoiValue(seconds_ + other.seconds_);
}

double tau(Threshold eps, double snr_primary, double snr_secondary) {
  const double a = eps.epsilon / snr_secondary * snr_primary + 1.0;
  return -std::expm1(-a * eps.epsilon / snr_primary) / a;
}

AoiValue delta_kernel(const ProbabilityPartition& partition, int users, double slot) {
  const double x = partition.p0;
  const double y = partition.p_first;
  const double z = partition.p_second;
  const double s = y + z;
  if (!(s > 0.0) || !(x < 1.0)) return AoiValue::never_succeeds();
  const double frame = users * slot;
  const double num = 2.0 * s * s * (1.0 + x) + y * z * (1.0 - x) * (1.0 - x);
  const double den = s * s * (1.0 - x);
  return AoiValue(frame / 4.0 * num / den);
}

AoiValue tdma_gaw_aoi(int users, double slot, Threshold eps, double snr) {
  check_users(users);
  const double frame = users * slot;
  return AoiValue(slot + frame / 2.0 * (2.0 * std::exp(eps.epsilon / snr) - 1.0));
}

ProbabilityPartition gaw_partition(Threshold eps, double snr_primary, double snr_secondary) {
  // First-slot success uses P_S in the exponent, as the closed form is stated;
  // the slot-m event itself depends on P. Both agree when P = P_S.
  const double first = std::exp(-eps.epsilon / snr_secondary);
  const double fail_first = -std::expm1(-eps.epsilon / snr_secondary);
  const double capped = capped_secondary_success(eps, snr_primary, snr_secondary);
  return {fail_first * (1.0 - capped), first, fail_first * capped};
}

AoiValue crnoma_gaw_aoi(int users, double slot, Threshold eps, double snr_primary,
                        double snr_secondary) {
  check_users(users);
  return AoiValue(slot) +
         delta_kernel(gaw_partition(eps, snr_primary, snr_secondary), users, slot);
}

double gaw_high_snr_aoi(int users, double slot) { return slot + users * slot / 2.0; }

AoiValue tdma_gar_user_aoi(int user, int users, double slot, Threshold eps, double snr) {
  check_users(users);
  check_user_index(user, users);
  const double frame = users * slot;
  return AoiValue(user * slot + frame / 2.0 * (2.0 * std::exp(eps.epsilon / snr) - 1.0));
}

AoiValue tdma_gar_overall(int users, double slot, Threshold eps, double snr) {
  check_users(users);
  double total = 0.0;
  for (int k = 1; k <= users; ++k) total += tdma_gar_user_aoi(k, users, slot, eps, snr).or_infinity();
  return AoiValue(total / users);
}

ProbabilityPartition gar_partition_user_m(Threshold eps, double snr_primary,
                                          double snr_secondary) {
  const double e_s = std::exp(-eps.epsilon / snr_secondary);
  const double t = tau(eps, snr_primary, snr_secondary);
  const double capped = capped_secondary_success(eps, snr_primary, snr_secondary);
  // Both fail in slot m (E1) and U_m fails while U_m' succeeds (E2).
  const double both_fail_first = -std::expm1(-eps.epsilon / snr_primary) - e_s * t;
  const double partner_done = e_s * t;
  const double p_second = both_fail_first * capped + std::exp(-2.0 * eps.epsilon / snr_secondary) * t;
  const double p0 = both_fail_first * (1.0 - capped) + partner_done * -std::expm1(-eps.epsilon / snr_secondary);
  return {p0, e_s, p_second};
}

ProbabilityPartition gar_partition_user_mprime(Threshold eps, double snr_primary,
                                               double snr_secondary) {
  const double first = capped_secondary_success(eps, snr_primary, snr_secondary);
  const double primary_ok = std::exp(-eps.epsilon / snr_primary);
  return {(1.0 - first) * -std::expm1(-eps.epsilon / snr_primary), first,
          (1.0 - first) * primary_ok};
}

AoiValue delta_k0(int m, int m_prime, double slot, const ProbabilityPartition& partition) {
  if (m < 1 || m_prime <= m) throw std::invalid_argument("delta_k0 requires 1 <= m < m'");
  const double x = partition.p0;
  const double y = partition.p_first;
  const double z = partition.p_second;
  const double s = y + z;
  if (!(s > 0.0) || !(x < 1.0)) return AoiValue::never_succeeds();
  const double q = 1.0 - x;
  const double h_first = m * slot;
  const double h_second = m_prime * slot;
  const double prefactor = q * q / (s * s);
  const double first = s * h_first * y / (q * q) + z / 2.0 * h_first * y / q;
  const double second = s * h_second * z / (q * q) - y / 2.0 * h_second * z / q;
  return AoiValue(prefactor * (first + second));
}

int pair_partner(int user, int users) {
  check_users(users);
  check_user_index(user, users);
  const int half = users / 2;
  return user <= half ? user + half : user - half;
}

AoiValue crnoma_gar_user_aoi(int user, int users, double slot, Threshold eps,
                             double snr_primary, double snr_secondary) {
  check_users(users);
  check_user_index(user, users);
  const int half = users / 2;
  const int m = user <= half ? user : user - half;
  const int m_prime = m + half;
  const ProbabilityPartition partition =
      user == m ? gar_partition_user_m(eps, snr_primary, snr_secondary)
                : gar_partition_user_mprime(eps, snr_primary, snr_secondary);
  return delta_k0(m, m_prime, slot, partition) + delta_kernel(partition, users, slot);
}

AoiValue crnoma_gar_overall(int users, double slot, Threshold eps, double snr_primary,
                            double snr_secondary) {
  check_users(users);
  AoiValue total(0.0);
  for (int k = 1; k <= users; ++k)
    total = total + crnoma_gar_user_aoi(k, users, slot, eps, snr_primary, snr_secondary);
  if (total.diverges()) return total;
  return AoiValue(total.seconds() / users);
}

double gar_high_snr_gap(int users, double slot, Threshold eps) {
  return -users * slot / (2.0 * (1.0 + eps.epsilon));
}

AoiValue overall_aoi(const SystemConfig& config) {
  const Threshold eps = epsilon_of(config.rate);
  const double p = config.snr_primary;
  const double ps = config.snr_secondary;
  if (config.model == GenerationModel::gaw) {
    return config.scheme == Scheme::tdma ? tdma_gaw_aoi(config.users, config.slot, eps, p)
                                         : crnoma_gaw_aoi(config.users, config.slot, eps, p, ps);
  }
  return config.scheme == Scheme::tdma ? tdma_gar_overall(config.users, config.slot, eps, p)
                                       : crnoma_gar_overall(config.users, config.slot, eps, p, ps);
}

AoiValue user_aoi(const SystemConfig& config, int user) {
  check_user_index(user, config.users);
  if (config.model == GenerationModel::gaw) return overall_aoi(config);
  const Threshold eps = epsilon_of(config.rate);
  return config.scheme == Scheme::tdma
             ? tdma_gar_user_aoi(user, config.users, config.slot, eps, config.snr_primary)
             : crnoma_gar_user_aoi(user, config.users, config.slot, eps, config.snr_primary,
                                   config.snr_secondary);
}

}  // namespace aoi::analytic
