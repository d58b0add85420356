#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace aoi {

enum class Scheme { tdma, cr_noma };
enum class GenerationModel { gaw, gar };

std::string_view to_string(Scheme scheme);
std::string_view to_string(GenerationModel model);
Scheme parse_scheme(std::string_view text);
GenerationModel parse_generation_model(std::string_view text);

/// Physical and protocol parameters of one simulated network.
///
/// Powers are linear effective SNRs (noise power is normalized). Time is in
/// seconds; `rate` is the update size per slot-time in bits/s/Hz.
struct SystemConfig {
  int users = 8;
  double slot = 1.0;
  double rate = 1.0;
  double snr_primary = 1.0;
  double snr_secondary = 1.0;
  Scheme scheme = Scheme::tdma;
  GenerationModel model = GenerationModel::gaw;
  std::int64_t frames = 200000;
  std::int64_t warmup_frames = 100;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on an odd or too-small user count,
  /// non-positive time/rate/power or an empty accumulation window.
  void validate() const;
};

/// SINR threshold 2^R - 1.
struct Threshold {
  double epsilon = 0.0;
};

/// Squared channel magnitude |h|^2.
struct ChannelGain {
  double value = 0.0;
};

Threshold epsilon_of(double rate);
double db_to_linear(double db);

/// Seeded source of unit-mean exponential channel gains.
///
/// Gains are produced by inversion from 53-bit uniforms so that the sequence
/// is identical on every platform for a given seed.
class GainStream {
 public:
  explicit GainStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  ChannelGain next();

 private:
  std::mt19937_64 engine_;
};

ChannelGain gain_from_uniform(double u);
ChannelGain draw_gain(GainStream& stream);

/// Seed of the `index`-th independent stream split off `seed`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

// Slot-level decoding outcomes. Equality with the threshold counts as success.

bool primary_success(double snr, ChannelGain gain, Threshold eps);

/// Secondary decoded first under SIC with the primary as interference.
bool secondary_capped_success(double snr_secondary, ChannelGain gain_secondary,
                              double snr_primary, ChannelGain gain_primary,
                              Threshold eps);

/// Secondary alone in the slot.
bool secondary_solo_success(double snr_secondary, ChannelGain gain, Threshold eps);

}  // namespace aoi
