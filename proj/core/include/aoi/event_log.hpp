#pragma once

#include <iosfwd>
#include <vector>

namespace aoi {

/// One line of the delivery log.
///
/// An anchor records the age of a user at the start of the accumulation
/// window (it is not a delivery); a delivery records the reset age at the end
/// of the slot the update went through.
struct DeliveryRecord {
  enum class Kind { anchor, delivery };

  Kind kind = Kind::delivery;
  double time = 0.0;
  int user = 0;
  int slot = 0;
  double age = 0.0;

  bool operator==(const DeliveryRecord&) const = default;
};

/// Deliveries of one simulation run inside [window_start, horizon].
///
/// Text format, one record per line:
///
///     # aoi-event-log 1
///     # users <M> slot <T> window_start <t0> horizon <t1>
///     A <time> <user> 0 <age>
///     D <time> <user> <slot> <reset_age>
///
/// Records are in non-decreasing time order and every user has exactly one
/// anchor, at window_start, preceding its deliveries. Numbers are written
/// with 17 significant digits so a round trip is lossless.
struct EventLog {
  int users = 0;
  double slot = 0.0;
  double window_start = 0.0;
  double horizon = 0.0;
  std::vector<DeliveryRecord> records;
};

void write_event_log(std::ostream& out, const EventLog& log);
/// Throws std::runtime_error on a malformed document.
EventLog read_event_log(std::istream& in);

}  // namespace aoi
