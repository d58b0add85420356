#include "aoi/aoi_tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace aoi::sim {

namespace {
// Slack for comparing ages built from products of slot counts and T.
constexpr double kAgeSlack = 1e-9;
}  // namespace

AoiTracker::AoiTracker(double window_start, double initial_time, double initial_age)
    : window_start_(window_start), last_event_time_(initial_time), age_at_last_event_(initial_age) {
  if (!(initial_age > 0.0)) throw std::invalid_argument("initial age must be positive");
}

double AoiTracker::segment_area(double t_end) const {
  const double begin = std::max(last_event_time_, window_start_);
  if (t_end <= begin) return 0.0;
  const double a = age_at_last_event_ + (begin - last_event_time_);
  const double dt = t_end - begin;
  return a * dt + 0.5 * dt * dt;
}

void AoiTracker::reset_age(double t_event, double new_age) {
  if (t_event < last_event_time_) throw std::invalid_argument("event time moves backwards");
  if (!(new_age > 0.0)) throw std::invalid_argument("reset age must be positive");
  if (new_age > age_at(t_event) + kAgeSlack)
    throw std::invalid_argument("a delivery cannot increase the age");
  accumulated_area_ += segment_area(t_event);
  age_at_last_event_ = new_age;
  last_event_time_ = t_event;
}

double AoiTracker::age_at(double t) const {
  return age_at_last_event_ + (t - last_event_time_);
}

double AoiTracker::area_until(double t) const {
  if (t < last_event_time_) throw std::invalid_argument("area requested before last event");
  return accumulated_area_ + segment_area(t);
}

double AoiTracker::finalize(double t_end) const {
  if (t_end < last_event_time_) throw std::invalid_argument("finalize before last event");
  const double span = t_end - window_start_;
  if (!(span > 0.0)) throw std::invalid_argument("empty accumulation window");
  return area_until(t_end) / span;
}

}  // namespace aoi::sim
