#include "aoi/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <set>
#include <stdexcept>

namespace aoi::experiment {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto piece = trim(std::string_view(value).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("bad value for '" + key + "': '" + text + "'");
  return value;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& key, const std::string& value) {
  std::vector<T> out;
  for (const auto& piece : split_list(value)) out.push_back(parse_number<T>(key, piece));
  return out;
}

const std::set<std::string>& axis_keys() {
  static const std::set<std::string> keys{"snr_db", "users", "rate", "slot",
                                          "schemes", "gen_model", "rows"};
  return keys;
}

}  // namespace

ConfigEntries parse_config(std::istream& in) {
  ConfigEntries entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    const bool repeated = std::any_of(entries.begin(), entries.end(),
                                      [&](const auto& e) { return e.first == key; });
    if (repeated) throw std::invalid_argument("config key '" + key + "' given twice");
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

ExperimentSpec spec_from_config(const ConfigEntries& entries) {
  std::string preset_name = "custom";
  for (const auto& [key, value] : entries) {
    if (key == "preset") preset_name = value;
  }
  ExperimentSpec spec = preset(preset_name);
  const bool named = preset_name != "custom";

  for (const auto& [key, value] : entries) {
    if (key == "preset") continue;
    if (named && axis_keys().count(key) != 0)
      throw std::invalid_argument("conflicting custom axes: preset '" + preset_name +
                                  "' fixes '" + key + "'");
    if (key == "snr_db") {
      spec.snr_db = parse_numbers<double>(key, value);
    } else if (key == "users") {
      spec.users = parse_numbers<int>(key, value);
    } else if (key == "rate") {
      spec.rates = parse_numbers<double>(key, value);
    } else if (key == "slot") {
      spec.slots = parse_numbers<double>(key, value);
    } else if (key == "schemes") {
      spec.schemes.clear();
      for (const auto& s : split_list(value)) spec.schemes.push_back(parse_scheme(s));
    } else if (key == "gen_model") {
      spec.model = parse_generation_model(value);
    } else if (key == "rows") {
      spec.rows = parse_row_set(value);
    } else if (key == "outputs") {
      spec.outputs = parse_outputs(value);
    } else if (key == "frames") {
      spec.frames = parse_number<std::int64_t>(key, value);
    } else if (key == "warmup") {
      spec.warmup = parse_number<std::int64_t>(key, value);
    } else if (key == "seed") {
      spec.seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return spec;
}

}  // namespace aoi::experiment
