#include "aoi/validation.hpp"
#include "doctest.h"

using namespace aoi::validation;

TEST_CASE("budgets") {
  CHECK(budget_for(Level::fast).frames == 20000);
  CHECK(budget_for(Level::fast).trials == 100000);
  CHECK(budget_for(Level::full).frames == 200000);
  CHECK(budget_for(Level::full).trials == 1000000);
}

TEST_CASE("every criterion is registered once") {
  const auto& checks = all_checks();
  REQUIRE(checks.size() == 10);
  for (std::size_t i = 0; i < checks.size(); ++i) CHECK(checks[i].id == static_cast<int>(i) + 1);
}

TEST_CASE("quick criteria at the fast level") {
  for (const auto& result : {check_tdma_gaw_closed_form(Level::fast),
                             check_series_identities(Level::fast),
                             check_determinism(Level::fast)}) {
    INFO(format_result(result));
    CHECK(result.passed);
  }
}

TEST_CASE("result lines") {
  CheckResult r{3, "title", true, "x 1"};
  CHECK(format_result(r) == "[PASS] 3 title: x 1");
  r.passed = false;
  CHECK(format_result(r) == "[FAIL] 3 title: x 1");
}
