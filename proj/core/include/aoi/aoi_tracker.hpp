#pragma once

namespace aoi::sim {

/// Piecewise-linear age process of one user with exact area accumulation.
///
/// Between events the age grows with unit slope; a delivery drops it to the
/// reset age. Area is integrated in closed form (one trapezoid per segment)
/// and only the part of each segment after `window_start` is accumulated.
class AoiTracker {
 public:
  AoiTracker(double window_start, double initial_time, double initial_age);

  /// Delivery at `t_event` leaving the age at `new_age`.
  /// Throws std::invalid_argument on time regression, a non-positive age or
  /// an age increase.
  void reset_age(double t_event, double new_age);

  double age_at(double t) const;

  /// Accumulated area over [window_start, t], t >= last_event_time().
  double area_until(double t) const;

  /// Time-average age over [window_start, t_end]. Throws on an empty window.
  double finalize(double t_end) const;

  double last_event_time() const { return last_event_time_; }
  double age_at_last_event() const { return age_at_last_event_; }
  double accumulated_area() const { return accumulated_area_; }
  double window_start() const { return window_start_; }

 private:
  double segment_area(double t_end) const;

  double window_start_;
  double last_event_time_;
  double age_at_last_event_;
  double accumulated_area_ = 0.0;
};

}  // namespace aoi::sim
