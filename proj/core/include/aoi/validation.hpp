#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace aoi::validation {

enum class Level { fast, full };

struct Budget {
  std::int64_t frames = 0;
  std::int64_t trials = 0;
};

/// fast: 2e4 frames / 1e5 trials; full: 2e5 frames / 1e6 trials.
Budget budget_for(Level level);

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Measured values against their tolerances, human readable.
  std::string detail;
};

// One function per acceptance criterion. Tolerances are fixed inside each.

CheckResult check_tdma_gaw_closed_form(Level level);
CheckResult check_crnoma_gaw_closed_form(Level level);
CheckResult check_gaw_high_snr(Level level);
CheckResult check_gar_per_user(Level level);
CheckResult check_gar_high_snr_gap(Level level);
CheckResult check_probability_oracle(Level level);
CheckResult check_renewal_cross_check(Level level);
CheckResult check_series_identities(Level level);
CheckResult check_figure_trends(Level level);
CheckResult check_determinism(Level level);

struct NamedCheck {
  int id;
  std::function<CheckResult(Level)> run;
};

const std::vector<NamedCheck>& all_checks();

std::vector<CheckResult> run_validation(Level level);

/// "[PASS] 1 title: detail" style line.
std::string format_result(const CheckResult& result);

}  // namespace aoi::validation
