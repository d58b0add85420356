#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aoi/experiment.hpp"

namespace aoi::experiment {

/// Ordered key/value pairs of a flat config document.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped; whitespace around keys and values is trimmed. Throws
/// std::invalid_argument on a line without '=' or a repeated key.
ConfigEntries parse_config(std::istream& in);

/// Builds a spec from config entries.
///
/// Keys: preset, snr_db, users, rate, slot (lists are comma separated),
/// schemes, gen_model, rows, outputs, frames, warmup, seed. A named preset
/// fixes its axes; combining it with any axis key is rejected as a conflict.
ExperimentSpec spec_from_config(const ConfigEntries& entries);

}  // namespace aoi::experiment
