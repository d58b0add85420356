#include <sstream>
#include <stdexcept>
#include <string>

#include "aoi/config_file.hpp"
#include "aoi/experiment.hpp"
#include "doctest.h"

using namespace aoi;
using namespace aoi::experiment;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(s);
  while (std::getline(in, piece, sep)) out.push_back(piece);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ConfigEntries entries_of(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST_CASE("preset axes") {
  const auto f4a = preset("fig4a");
  CHECK(f4a.model == GenerationModel::gaw);
  CHECK(f4a.users == std::vector<int>{8});
  CHECK(f4a.rates == std::vector<double>{0.5});
  CHECK(f4a.slots == std::vector<double>{0.5, 1.0, 1.5});
  CHECK(preset("fig4b").rates == std::vector<double>{1.0});

  const auto f5 = preset("fig5");
  CHECK(f5.users == std::vector<int>{4, 8, 16, 32});
  CHECK(f5.rates == std::vector<double>{1.5});
  CHECK(f5.slots == std::vector<double>{0.5});
  CHECK(f5.snr_db == std::vector<double>{0.0, 10.0, 20.0});

  for (const char* name : {"fig6a", "fig6b", "fig7x"}) {
    const auto s = preset(name);
    CHECK(s.model == GenerationModel::gar);
    CHECK(s.users == std::vector<int>{8});
    CHECK(s.rates == std::vector<double>{1.0});
    CHECK(s.slots == std::vector<double>{0.5});
  }
  CHECK(preset("fig6a").rows == RowSet::first_half);
  CHECK(preset("fig6b").rows == RowSet::second_half);
  CHECK(preset("fig7x").rows == RowSet::fairness_pair);
  CHECK(preset("fig7x").snr_db.back() == 40.0);

  const auto f7a = preset("fig7a");
  CHECK(f7a.users == std::vector<int>{4, 8, 16});
  CHECK(f7a.rates == std::vector<double>{0.5});
  CHECK(preset("fig7b").rates == std::vector<double>{1.5});
  CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);
}

TEST_CASE("fig4b analytic-only CSV") {
  auto spec = preset("fig4b");
  spec.outputs = Outputs::analytic;
  const std::string csv = run_experiment(spec);
  const auto lines = split(csv, '\n');
  CHECK(lines[0] == kCsvHeader);
  bool found = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], ',');
    REQUIRE(f.size() == 13);
    CHECK(f[9].empty());
    CHECK(f[10].empty());
    CHECK(f[11].empty());
    CHECK(f[12].empty());
    if (f[1] == "TDMA" && f[4] == "1.5" && f[6] == "0") {
      CHECK(f[7] == "overall");
      CHECK(f[8] == "28.1194");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("fig4b simulated point") {
  ExperimentSpec spec = preset("fig4b");
  spec.preset = "custom";
  spec.snr_db = {0.0};
  spec.slots = {1.5};
  spec.schemes = {Scheme::tdma};
  const auto rows = compute_rows(spec);
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].aoi_analytic == doctest::Approx(28.1193819415).epsilon(1e-10));
  CHECK(std::abs(*rows[0].aoi_sim - 28.119) <= 0.3);
  CHECK(rows[0].frames == 200000);
  CHECK(rows[0].seed == derive_stream_seed(1, 0));
}

TEST_CASE("fig7x gap rows at 40 dB") {
  auto spec = preset("fig7x");
  spec.frames = 20000;
  const auto rows = compute_rows(spec);
  int checked = 0;
  for (const auto& r : rows) {
    if (r.snr_db != 40.0 || r.user_id != "gap") continue;
    const double expected = r.scheme == Scheme::tdma ? 2.0 : 1.0;
    CHECK(std::abs(*r.aoi_analytic - expected) < 0.01);
    CHECK(std::abs(*r.aoi_sim - expected) < 0.05);
    ++checked;
  }
  CHECK(checked == 2);
}

TEST_CASE("row order and user selection") {
  ExperimentSpec spec;
  spec.snr_db = {10.0, 0.0};
  spec.users = {8, 4};
  spec.rates = {1.0};
  spec.slots = {0.5};
  spec.model = GenerationModel::gar;
  spec.rows = RowSet::all_users;
  spec.outputs = Outputs::analytic;
  const auto rows = compute_rows(spec);
  // CR-NOMA sorts before TDMA; M, then SNR ascending; users then overall.
  REQUIRE(rows.size() == 2 * ((4 + 1) * 2 + (8 + 1) * 2));
  CHECK(rows.front().scheme == Scheme::cr_noma);
  CHECK(rows.front().users == 4);
  CHECK(rows.front().snr_db == 0.0);
  CHECK(rows.front().user_id == "1");
  CHECK(rows[4].user_id == "overall");
  CHECK(rows[5].snr_db == 10.0);
  CHECK(rows.back().scheme == Scheme::tdma);
  CHECK(rows.back().users == 8);
  CHECK(rows.back().user_id == "overall");

  spec.rows = RowSet::second_half;
  spec.users = {8};
  spec.snr_db = {0.0};
  spec.schemes = {Scheme::tdma};
  const auto half = compute_rows(spec);
  REQUIRE(half.size() == 4);
  CHECK(half[0].user_id == "5");
  CHECK(half[3].user_id == "8");
}

TEST_CASE("spec validation") {
  ExperimentSpec spec;
  spec.snr_db = {0.0};
  spec.users = {8};
  spec.rates = {1.0};
  spec.slots = {1.0};
  CHECK_NOTHROW(spec.validate());
  auto bad = spec;
  bad.schemes.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.users = {7};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.preset = "fig9";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.snr_db.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.frames = 50;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.outputs = Outputs::analytic;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("CSV is identical across runs and thread counts") {
  auto spec = preset("fig5");
  spec.frames = 2000;
  spec.seed = 99;
  const std::string one = run_experiment(spec, 1);
  CHECK(one == run_experiment(spec, 1));
  CHECK(one == run_experiment(spec, 3));
  spec.seed = 100;
  CHECK(one != run_experiment(spec, 1));
}

TEST_CASE("divergent points print inf") {
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(28.1193819415) == "28.1194");
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("config file parsing") {
  const auto entries = entries_of(
      "# sweep\n"
      "snr_db = 0, 10 ,20\n"
      "\n"
      "users=4,8\n"
      "rate = 1.5\n"
      "slot = 0.5\n"
      "schemes = CR-NOMA\n"
      "gen_model = GAR\n"
      "rows = pair\n"
      "outputs = analytic\n"
      "frames = 5000\n"
      "warmup = 10\n"
      "seed = 18446744073709551615\n");
  const auto spec = spec_from_config(entries);
  CHECK(spec.preset == "custom");
  CHECK(spec.snr_db == std::vector<double>{0.0, 10.0, 20.0});
  CHECK(spec.users == std::vector<int>{4, 8});
  CHECK(spec.rates == std::vector<double>{1.5});
  CHECK(spec.schemes == std::vector<Scheme>{Scheme::cr_noma});
  CHECK(spec.model == GenerationModel::gar);
  CHECK(spec.rows == RowSet::fairness_pair);
  CHECK(spec.outputs == Outputs::analytic);
  CHECK(spec.frames == 5000);
  CHECK(spec.warmup == 10);
  CHECK(spec.seed == 18446744073709551615ULL);
}

TEST_CASE("config file errors") {
  CHECK_THROWS_AS(entries_of("snr_db\n"), std::invalid_argument);
  CHECK_THROWS_AS(entries_of("a=1\na=2\n"), std::invalid_argument);
  CHECK_THROWS_AS(entries_of("=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from_config(entries_of("bogus=1\n")), std::invalid_argument);
  CHECK_THROWS_AS(spec_from_config(entries_of("users=4,x\n")), std::invalid_argument);
  CHECK_THROWS_AS(spec_from_config(entries_of("preset=fig4a\nusers=4\n")), std::invalid_argument);
  CHECK_THROWS_AS(spec_from_config(entries_of("preset=fig4z\n")), std::invalid_argument);
  const auto ok = spec_from_config(entries_of("preset=fig4a\nframes=1000\nseed=3\n"));
  CHECK(ok.preset == "fig4a");
  CHECK(ok.frames == 1000);
  CHECK(ok.slots == std::vector<double>{0.5, 1.0, 1.5});
}
