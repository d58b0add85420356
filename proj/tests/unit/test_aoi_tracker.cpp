#include <stdexcept>

#include "aoi/aoi_tracker.hpp"
#include "doctest.h"

using aoi::sim::AoiTracker;

TEST_CASE("trapezoid per reset") {
  AoiTracker t(0.0, 0.0, 1.0);
  t.reset_age(2.0, 1.0);
  CHECK(t.accumulated_area() == 4.0);
  t.reset_age(2.0, 1.0);
  CHECK(t.accumulated_area() == 4.0);
  CHECK(t.last_event_time() == 2.0);
  CHECK(t.age_at_last_event() == 1.0);
}

TEST_CASE("periodic resets average T + MT/2") {
  const double slot = 1.5;
  const double frame = 8 * slot;
  AoiTracker t(0.0, 0.0, slot);
  const int n = 1000;
  for (int i = 1; i <= n; ++i) t.reset_age(i * frame, slot);
  CHECK(t.finalize(n * frame) == doctest::Approx(slot + frame / 2.0).epsilon(1e-14));
}

TEST_CASE("linear ramp without resets") {
  AoiTracker t(0.0, 0.0, 2.0);
  CHECK(t.finalize(4.0) == 4.0);
  CHECK(t.age_at(4.0) == 6.0);
}

TEST_CASE("window clipping") {
  // Age 1 at t=0; window starts at t=2 where the age is 3.
  AoiTracker t(2.0, 0.0, 1.0);
  t.reset_age(1.0, 0.5);
  CHECK(t.accumulated_area() == 0.0);
  // From t=2 the age runs 1.5 -> 3.5 over two seconds.
  CHECK(t.area_until(4.0) == doctest::Approx(5.0));
  CHECK(t.finalize(4.0) == doctest::Approx(2.5));
}

TEST_CASE("tracker rejects invalid events") {
  AoiTracker t(0.0, 0.0, 1.0);
  t.reset_age(3.0, 2.0);
  CHECK_THROWS_AS(t.reset_age(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(t.reset_age(4.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(t.reset_age(4.0, 3.5), std::invalid_argument);
  CHECK_THROWS_AS(AoiTracker(0.0, 0.0, 0.0), std::invalid_argument);

  AoiTracker empty(5.0, 5.0, 1.0);
  CHECK_THROWS_AS(empty.finalize(5.0), std::invalid_argument);
}
