#include "aoi/core_model.hpp"

#include <cmath>
#include <stdexcept>

namespace aoi {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::tdma ? "TDMA" : "CR-NOMA";
}

std::string_view to_string(GenerationModel model) {
  return model == GenerationModel::gaw ? "GAW" : "GAR";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "TDMA" || text == "tdma") return Scheme::tdma;
  if (text == "CR-NOMA" || text == "cr-noma" || text == "NOMA" || text == "noma")
    return Scheme::cr_noma;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

GenerationModel parse_generation_model(std::string_view text) {
  if (text == "GAW" || text == "gaw") return GenerationModel::gaw;
  if (text == "GAR" || text == "gar") return GenerationModel::gar;
  throw std::invalid_argument("unknown generation model '" + std::string(text) + "'");
}

void SystemConfig::validate() const {
  if (users < 2 || users % 2 != 0)
    throw std::invalid_argument("user count must be an even integer >= 2");
  if (!(slot > 0.0) || !std::isfinite(slot))
    throw std::invalid_argument("slot duration must be positive");
  // R = 0 is accepted as the error-free limit.
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("rate must be finite and >= 0");
  if (!(snr_primary > 0.0) || !(snr_secondary > 0.0))
    throw std::invalid_argument("transmit SNRs must be positive");
  if (warmup_frames < 0) throw std::invalid_argument("warmup frames must be >= 0");
  if (frames <= warmup_frames)
    throw std::invalid_argument("frames must exceed warmup frames");
}

Threshold epsilon_of(double rate) {
  if (rate < 0.0 || std::isnan(rate)) throw std::invalid_argument("rate must be >= 0");
  return {std::exp2(rate) - 1.0};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double GainStream::uniform() {
  // 53 random mantissa bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

ChannelGain GainStream::next() { return gain_from_uniform(uniform()); }

ChannelGain gain_from_uniform(double u) { return {-std::log1p(-u)}; }

ChannelGain draw_gain(GainStream& stream) { return stream.next(); }

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed xor index
  std::uint64_t z = (seed ^ index) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool primary_success(double snr, ChannelGain gain, Threshold eps) {
  return snr * gain.value >= eps.epsilon;
}

bool secondary_capped_success(double snr_secondary, ChannelGain gain_secondary,
                              double snr_primary, ChannelGain gain_primary,
                              Threshold eps) {
  return snr_secondary * gain_secondary.value >=
         eps.epsilon * (snr_primary * gain_primary.value + 1.0);
}

bool secondary_solo_success(double snr_secondary, ChannelGain gain, Threshold eps) {
  return snr_secondary * gain.value >= eps.epsilon;
}

}  // namespace aoi
