#include <sstream>
#include <stdexcept>

#include "aoi/event_log.hpp"
#include "doctest.h"

using namespace aoi;

TEST_CASE("event log round trip is lossless") {
  EventLog log;
  log.users = 2;
  log.slot = 0.1;
  log.window_start = 0.30000000000000004;
  log.horizon = 10.7;
  log.records = {
      {DeliveryRecord::Kind::anchor, 0.30000000000000004, 1, 0, 0.2},
      {DeliveryRecord::Kind::anchor, 0.30000000000000004, 2, 0, 0.1 + 0.2},
      {DeliveryRecord::Kind::delivery, 0.5, 2, 2, 0.1},
      {DeliveryRecord::Kind::delivery, 1.0 / 3.0, 1, 1, 1e-300},
  };
  // Keep time order for the reader.
  std::swap(log.records[2], log.records[3]);
  std::stringstream text;
  write_event_log(text, log);
  const EventLog back = read_event_log(text);
  CHECK(back.users == log.users);
  CHECK(back.slot == log.slot);
  CHECK(back.window_start == log.window_start);
  CHECK(back.horizon == log.horizon);
  CHECK(back.records == log.records);
}

TEST_CASE("event log text format") {
  EventLog log;
  log.users = 1;
  log.slot = 1;
  log.horizon = 2;
  log.records = {{DeliveryRecord::Kind::anchor, 0, 1, 0, 1},
                 {DeliveryRecord::Kind::delivery, 2, 1, 1, 1}};
  std::ostringstream out;
  write_event_log(out, log);
  CHECK(out.str() ==
        "# aoi-event-log 1\n# users 1 slot 1 window_start 0 horizon 2\nA 0 1 0 1\nD 2 1 1 1\n");
}

TEST_CASE("malformed event logs") {
  const auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_event_log(in);
  };
  const std::string header = "# aoi-event-log 1\n# users 2 slot 1 window_start 0 horizon 5\n";
  CHECK_NOTHROW(parse(header + "A 0 1 0 1\n"));
  CHECK_THROWS_AS(parse("A 0 1 0 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse(""), std::runtime_error);
  CHECK_THROWS_AS(parse("# aoi-event-log 2\n"), std::runtime_error);
  CHECK_THROWS_AS(parse(header + "X 0 1 0 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse(header + "D 0 3 1 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse(header + "D 2 1 1 1\nD 1 1 1 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse(header + "D 2 1 1\n"), std::runtime_error);
}
