#include "aoi/simulator.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aoi/aoi_tracker.hpp"

namespace aoi::sim {

namespace {

struct Outcome {
  enum Kind { first, second, none };
};

class FrameSimulator {
 public:
  FrameSimulator(const SystemConfig& config, EventLog* log)
      : config_(config),
        log_(log),
        users_(config.users),
        half_(config.users / 2),
        slot_(config.slot),
        eps_(epsilon_of(config.rate)),
        stream_(config.seed),
        window_start_(static_cast<double>(config.warmup_frames * config.users) * config.slot),
        horizon_(static_cast<double>(config.frames * config.users) * config.slot) {
    states_.resize(users_);
    outcomes_.resize(users_);
    trackers_.reserve(users_);
    for (int k = 1; k <= users_; ++k) {
      const double initial_age = config.model == GenerationModel::gaw ? slot_ : k * slot_;
      trackers_.emplace_back(window_start_, 0.0, initial_age);
      states_[k - 1].user_id = k;
      states_[k - 1].pair_partner = k <= half_ ? k + half_ : k - half_;
    }
    for (int b = 0; b <= kBatches; ++b)
      boundaries_[b] = window_start_ + (horizon_ - window_start_) * b / kBatches;
    batch_area_.assign(users_, std::array<double, kBatches + 1>{});
    if (log_ != nullptr) {
      log_->users = users_;
      log_->slot = slot_;
      log_->window_start = window_start_;
      log_->horizon = horizon_;
      log_->records.clear();
    }
  }

  AoiReport run() {
    for (std::int64_t f = 0; f < config_.frames; ++f) {
      frame_ = f;
      if (f == config_.warmup_frames) emit_anchors();
      for (int s = 1; s <= users_; ++s) run_slot(s);
    }
    snapshot_until(horizon_);
    return report();
  }

 private:
  std::int64_t tick_start(int s) const { return frame_ * users_ + (s - 1); }
  bool counted(std::int64_t cycle_frame) const { return cycle_frame >= config_.warmup_frames; }

  void emit_anchors() {
    if (log_ == nullptr) return;
    for (int k = 1; k <= users_; ++k) {
      log_->records.push_back({DeliveryRecord::Kind::anchor, window_start_, k, 0,
                               trackers_[k - 1].age_at(window_start_)});
    }
  }

  void snapshot_until(double t) {
    while (next_boundary_ <= kBatches && boundaries_[next_boundary_] <= t) {
      for (int k = 0; k < users_; ++k)
        batch_area_[k][next_boundary_] = trackers_[k].area_until(boundaries_[next_boundary_]);
      ++next_boundary_;
    }
  }

  void deliver(int user, int s, std::int64_t birth_tick) {
    const std::int64_t end_tick = tick_start(s) + 1;
    const std::int64_t age_ticks = end_tick - birth_tick;
    check_reset(user, age_ticks);
    const double t = static_cast<double>(end_tick) * slot_;
    const double age = static_cast<double>(age_ticks) * slot_;
    trackers_[user - 1].reset_age(t, age);
    if (log_ != nullptr && frame_ >= config_.warmup_frames)
      log_->records.push_back({DeliveryRecord::Kind::delivery, t, user, s, age});
  }

  void check_reset(int user, std::int64_t age_ticks) const {
    if (config_.model == GenerationModel::gaw) {
      if (age_ticks != 1) throw std::logic_error("GAW delivery must reset the age to T");
      return;
    }
    const int m = user <= half_ ? user : user - half_;
    const bool ok = config_.scheme == Scheme::tdma ? age_ticks == user
                                                   : (age_ticks == m || age_ticks == m + half_);
    if (!ok)
      throw std::logic_error("GAR delivery of user " + std::to_string(user) +
                             " reset to an unexpected age");
  }

  void tally(int user, std::int64_t cycle_frame, Outcome::Kind kind) {
    if (!counted(cycle_frame)) return;
    auto& c = outcomes_[user - 1];
    if (kind == Outcome::first) ++c.first;
    else if (kind == Outcome::second) ++c.second;
    else ++c.none;
  }

  void run_slot(int s) {
    const std::int64_t start = tick_start(s);
    snapshot_until(static_cast<double>(start + 1) * slot_);
    const int m = s <= half_ ? s : s - half_;
    const int mp = m + half_;
    // Fresh gains for both pair members in every slot, m first.
    const ChannelGain g_m = stream_.next();
    const ChannelGain g_mp = stream_.next();

    if (config_.scheme == Scheme::tdma) {
      const ChannelGain g = s == m ? g_m : g_mp;
      const std::int64_t birth = config_.model == GenerationModel::gaw ? start : frame_ * users_;
      if (primary_success(config_.snr_primary, g, eps_)) {
        deliver(s, s, birth);
        tally(s, frame_, Outcome::first);
      } else {
        tally(s, frame_, Outcome::none);
      }
      return;
    }
    if (config_.model == GenerationModel::gaw) {
      noma_gaw_slot(s, m, mp, g_m, g_mp);
    } else {
      noma_gar_slot(s, m, mp, g_m, g_mp);
    }
  }

  void noma_gaw_slot(int s, int m, int mp, ChannelGain g_m, ChannelGain g_mp) {
    const double p = config_.snr_primary;
    const double ps = config_.snr_secondary;
    const std::int64_t birth = tick_start(s);
    auto& um = states_[m - 1];
    auto& ump = states_[mp - 1];
    if (s == m) {
      // U_m primary; U_m' retries here with a fresh update after failing slot m'.
      if (ump.pending_retry) {
        const bool ok = secondary_capped_success(ps, g_mp, p, g_m, eps_);
        if (ok) deliver(mp, s, birth);
        tally(mp, ump.cycle_frame, ok ? Outcome::second : Outcome::none);
        ump.pending_retry = false;
      }
      if (primary_success(p, g_m, eps_)) {
        deliver(m, s, birth);
        tally(m, frame_, Outcome::first);
      } else {
        um.pending_retry = true;
        um.cycle_frame = frame_;
      }
    } else {
      if (primary_success(p, g_mp, eps_)) {
        deliver(mp, s, birth);
        tally(mp, frame_, Outcome::first);
      } else {
        ump.pending_retry = true;
        ump.cycle_frame = frame_;
      }
      if (um.pending_retry) {
        const bool ok = secondary_capped_success(ps, g_m, p, g_mp, eps_);
        if (ok) deliver(m, s, birth);
        tally(m, um.cycle_frame, ok ? Outcome::second : Outcome::none);
        um.pending_retry = false;
      }
    }
  }

  void noma_gar_slot(int s, int m, int mp, ChannelGain g_m, ChannelGain g_mp) {
    const double p = config_.snr_primary;
    const double ps = config_.snr_secondary;
    const std::int64_t birth = frame_ * users_;
    auto& um = states_[m - 1];
    auto& ump = states_[mp - 1];
    if (s == m) {
      // Both users try slot m with the update generated at frame start.
      if (primary_success(p, g_m, eps_)) {
        deliver(m, s, birth);
        tally(m, frame_, Outcome::first);
      } else {
        um.pending_retry = true;
        um.pending_update_birth = birth;
      }
      if (secondary_capped_success(ps, g_mp, p, g_m, eps_)) {
        deliver(mp, s, birth);
        tally(mp, frame_, Outcome::first);
      } else {
        ump.pending_retry = true;
        ump.pending_update_birth = birth;
      }
      return;
    }
    const bool partner_active = ump.pending_retry;
    if (ump.pending_retry) {
      const bool ok = primary_success(p, g_mp, eps_);
      if (ok) deliver(mp, s, ump.pending_update_birth);
      tally(mp, frame_, ok ? Outcome::second : Outcome::none);
    }
    if (um.pending_retry) {
      // U_m' stays silent after a slot-m success, leaving U_m alone in slot m'.
      const bool ok = partner_active ? secondary_capped_success(ps, g_m, p, g_mp, eps_)
                                     : secondary_solo_success(ps, g_m, eps_);
      if (ok) deliver(m, s, um.pending_update_birth);
      tally(m, frame_, ok ? Outcome::second : Outcome::none);
    }
    // Undelivered updates are dropped at frame end.
    um.pending_retry = false;
    ump.pending_retry = false;
    um.pending_update_birth = -1;
    ump.pending_update_birth = -1;
  }

  AoiReport report() const {
    AoiReport r;
    r.seed = config_.seed;
    r.frames_used = config_.frames - config_.warmup_frames;
    r.outcomes = outcomes_;
    r.per_user_aoi.resize(users_);
    r.per_user_stderr.resize(users_);
    std::array<double, kBatches> overall_batch{};
    for (int k = 0; k < users_; ++k) {
      r.per_user_aoi[k] = trackers_[k].finalize(horizon_);
      std::array<double, kBatches> batch{};
      for (int b = 0; b < kBatches; ++b) {
        batch[b] = (batch_area_[k][b + 1] - batch_area_[k][b]) /
                   (boundaries_[b + 1] - boundaries_[b]);
        overall_batch[b] += batch[b] / users_;
      }
      r.per_user_stderr[k] = batch_stderr(batch);
    }
    double sum = 0.0;
    for (double v : r.per_user_aoi) sum += v;
    r.overall_aoi = sum / users_;
    r.overall_stderr = batch_stderr(overall_batch);
    return r;
  }

  static double batch_stderr(const std::array<double, kBatches>& batch) {
    double mean = 0.0;
    for (double v : batch) mean += v;
    mean /= kBatches;
    double ss = 0.0;
    for (double v : batch) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (kBatches - 1) / kBatches);
  }

  const SystemConfig& config_;
  EventLog* log_;
  int users_;
  int half_;
  double slot_;
  Threshold eps_;
  GainStream stream_;
  double window_start_;
  double horizon_;
  std::int64_t frame_ = 0;
  std::vector<AoiTracker> trackers_;
  std::vector<UserProtocolState> states_;
  std::vector<OutcomeCounts> outcomes_;
  std::array<double, kBatches + 1> boundaries_{};
  std::vector<std::array<double, kBatches + 1>> batch_area_;
  int next_boundary_ = 0;
};

}  // namespace

AoiReport run(const SystemConfig& config, EventLog* log) {
  config.validate();
  return FrameSimulator(config, log).run();
}

}  // namespace aoi::sim
