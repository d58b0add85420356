#include "aoi/event_log.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace aoi {

namespace {

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("event log line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

void write_event_log(std::ostream& out, const EventLog& log) {
  out << "# aoi-event-log 1\n";
  out << "# users " << log.users << " slot " << exact(log.slot) << " window_start "
      << exact(log.window_start) << " horizon " << exact(log.horizon) << '\n';
  for (const auto& r : log.records) {
    out << (r.kind == DeliveryRecord::Kind::anchor ? 'A' : 'D') << ' ' << exact(r.time) << ' '
        << r.user << ' ' << r.slot << ' ' << exact(r.age) << '\n';
  }
}

EventLog read_event_log(std::istream& in) {
  EventLog log;
  std::string line;
  std::size_t line_no = 0;
  bool saw_magic = false;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string hash, key;
      fields >> hash >> key;
      if (key == "aoi-event-log") {
        int version = 0;
        if (!(fields >> version) || version != 1) malformed(line_no, "unsupported version");
        saw_magic = true;
      } else if (key == "users") {
        std::string k1, k2, k3;
        if (!(fields >> log.users >> k1 >> log.slot >> k2 >> log.window_start >> k3 >>
              log.horizon) ||
            k1 != "slot" || k2 != "window_start" || k3 != "horizon")
          malformed(line_no, "bad header");
        saw_header = true;
      }
      continue;
    }
    if (!saw_magic || !saw_header) malformed(line_no, "record before header");
    char tag = 0;
    DeliveryRecord r;
    if (!(fields >> tag >> r.time >> r.user >> r.slot >> r.age)) malformed(line_no, "bad record");
    if (tag == 'A') {
      r.kind = DeliveryRecord::Kind::anchor;
    } else if (tag == 'D') {
      r.kind = DeliveryRecord::Kind::delivery;
    } else {
      malformed(line_no, "unknown record tag");
    }
    if (r.user < 1 || r.user > log.users) malformed(line_no, "user out of range");
    if (!log.records.empty() && r.time < log.records.back().time)
      malformed(line_no, "records out of time order");
    log.records.push_back(r);
  }
  if (!saw_magic || !saw_header) throw std::runtime_error("event log: missing header");
  return log;
}

}  // namespace aoi
