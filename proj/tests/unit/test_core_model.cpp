#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "aoi/core_model.hpp"
#include "doctest.h"

using namespace aoi;

namespace {

// 3-sigma binomial bound around p after n trials.
bool within_binomial(double hits, double n, double p) {
  return std::abs(hits / n - p) <= 3.0 * std::sqrt(p * (1.0 - p) / n);
}

}  // namespace

TEST_CASE("epsilon_of") {
  CHECK(epsilon_of(1.0).epsilon == 1.0);
  CHECK(epsilon_of(0.0).epsilon == 0.0);
  CHECK(epsilon_of(1.5).epsilon == doctest::Approx(1.82842712474619).epsilon(1e-14));
  CHECK(epsilon_of(2.0).epsilon == 3.0);
  CHECK_THROWS_AS(epsilon_of(-0.1), std::invalid_argument);
}

TEST_CASE("db_to_linear") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(db_to_linear(3.0) == doctest::Approx(1.99526231496888).epsilon(1e-13));
  CHECK(db_to_linear(-10.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("gain by inversion") {
  CHECK(gain_from_uniform(0.5).value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(gain_from_uniform(0.0).value == 0.0);
}

TEST_CASE("gain stream moments") {
  GainStream stream(2024);
  const int n = 1000000;
  double sum = 0.0;
  int below_one = 0;
  for (int i = 0; i < n; ++i) {
    const double g = draw_gain(stream).value;
    REQUIRE(g >= 0.0);
    sum += g;
    if (g <= 1.0) ++below_one;
  }
  CHECK(std::abs(sum / n - 1.0) <= 0.003);
  CHECK(std::abs(static_cast<double>(below_one) / n - 0.6321) <= 0.002);
}

TEST_CASE("gain stream is reproducible") {
  GainStream a(99);
  GainStream b(99);
  GainStream c(100);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.next().value;
    CHECK(x == b.next().value);
    differs = differs || x != c.next().value;
  }
  CHECK(differs);
}

TEST_CASE("derived seeds are distinct") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 64; ++i) seeds.push_back(derive_stream_seed(1, i));
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j) CHECK(seeds[i] != seeds[j]);
  CHECK(derive_stream_seed(7, 3) == derive_stream_seed(7, 3));
}

TEST_CASE("primary success predicate") {
  const Threshold one{1.0};
  CHECK(primary_success(1.0, ChannelGain{1.0}, one));
  CHECK_FALSE(primary_success(1.0, ChannelGain{0.5}, one));
  CHECK(primary_success(1.0, ChannelGain{0.0}, Threshold{0.0}));

  GainStream stream(5);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += primary_success(1.0, draw_gain(stream), one);
  CHECK(std::abs(static_cast<double>(hits) / n - std::exp(-1.0)) <= 0.0015);
}

TEST_CASE("secondary predicates") {
  const Threshold one{1.0};
  CHECK(secondary_capped_success(1.0, ChannelGain{2.0}, 1.0, ChannelGain{1.0}, one));
  CHECK_FALSE(secondary_capped_success(1.0, ChannelGain{1.9}, 1.0, ChannelGain{1.0}, one));
  CHECK(secondary_solo_success(2.0, ChannelGain{1.0}, one));
  CHECK_FALSE(secondary_solo_success(1.0, ChannelGain{0.99}, one));

  GainStream stream(6);
  const int n = 1000000;
  int capped = 0;
  int solo = 0;
  for (int i = 0; i < n; ++i) {
    const ChannelGain gs = draw_gain(stream);
    const ChannelGain gp = draw_gain(stream);
    capped += secondary_capped_success(1.0, gs, 1.0, gp, one);
    solo += secondary_solo_success(1.0, gs, one);
  }
  CHECK(std::abs(static_cast<double>(capped) / n - std::exp(-1.0) / 2.0) <= 0.0012);
  CHECK(std::abs(static_cast<double>(solo) / n - std::exp(-1.0)) <= 0.0015);
}

TEST_CASE("property: primary success frequency") {
  GainStream params(11);
  for (int trial = 0; trial < 10; ++trial) {
    const double eps = 0.05 + 3.0 * params.uniform();
    const double p = std::pow(10.0, -0.5 + 2.5 * params.uniform());
    GainStream stream(derive_stream_seed(12, trial));
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += primary_success(p, draw_gain(stream), Threshold{eps});
    INFO("eps=" << eps << " P=" << p);
    CHECK(within_binomial(hits, n, std::exp(-eps / p)));
  }
}

TEST_CASE("property: capped secondary monotonicity and solo limit") {
  GainStream gen(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const double ps = 0.1 + 10.0 * gen.uniform();
    const double p = 0.1 + 10.0 * gen.uniform();
    const double eps = 3.0 * gen.uniform();
    const ChannelGain gs = draw_gain(gen);
    const ChannelGain gp = draw_gain(gen);
    const Threshold th{eps};
    const bool base = secondary_capped_success(ps, gs, p, gp, th);
    const double up = 1.0 + gen.uniform();

    CHECK(secondary_capped_success(ps, gs, p, ChannelGain{0.0}, th) ==
          secondary_solo_success(ps, gs, th));
    if (base) {
      CHECK(secondary_capped_success(ps, ChannelGain{gs.value * up}, p, gp, th));
      CHECK(secondary_capped_success(ps * up, gs, p, gp, th));
      CHECK(secondary_capped_success(ps, gs, p, ChannelGain{gp.value / up}, th));
      CHECK(secondary_capped_success(ps, gs, p / up, gp, th));
      CHECK(secondary_capped_success(ps, gs, p, gp, Threshold{eps / up}));
    } else {
      CHECK_FALSE(secondary_capped_success(ps, ChannelGain{gs.value / up}, p, gp, th));
      CHECK_FALSE(secondary_capped_success(ps / up, gs, p, gp, th));
      CHECK_FALSE(secondary_capped_success(ps, gs, p, ChannelGain{gp.value * up}, th));
      CHECK_FALSE(secondary_capped_success(ps, gs, p * up, gp, th));
      CHECK_FALSE(secondary_capped_success(ps, gs, p, gp, Threshold{eps * up}));
    }
  }
}

TEST_CASE("scheme and model names") {
  CHECK(to_string(Scheme::tdma) == "TDMA");
  CHECK(to_string(Scheme::cr_noma) == "CR-NOMA");
  CHECK(to_string(GenerationModel::gaw) == "GAW");
  CHECK(to_string(GenerationModel::gar) == "GAR");
  CHECK(parse_scheme("CR-NOMA") == Scheme::cr_noma);
  CHECK(parse_generation_model("GAR") == GenerationModel::gar);
  CHECK_THROWS_AS(parse_scheme("FDMA"), std::invalid_argument);
  CHECK_THROWS_AS(parse_generation_model("x"), std::invalid_argument);
}

TEST_CASE("SystemConfig validation") {
  SystemConfig c;
  CHECK_NOTHROW(c.validate());
  c.users = 7;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.users = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.slot = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.snr_secondary = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.rate = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.frames = 100;
  c.warmup_frames = 100;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.rate = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
