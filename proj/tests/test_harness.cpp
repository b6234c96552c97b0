// SPDX-License-Identifier: MIT
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "otfs/experiment.hpp"
#include "otfs/metrics.hpp"
#include "otfs/parallel.hpp"
#include "otfs/rng.hpp"

using namespace otfs;

namespace {

SimulationConfig desk_sim() {
  SimulationConfig sim;
  sim.frame.carrier_hz = 1.02857e8;
  sim.frame.subcarrier_hz = 30e3;
  sim.frame.num_subcarriers = 64;
  sim.frame.num_data_symbols = 16;
  sim.frame.cp_samples = 8;
  sim.frame.max_delay_bin = 5;
  sim.frame.max_doppler_bin = 6;
  sim.frame.data_power = 1.0;
  sim.frame.noise_power = noise_power_for_snr_db(1.0, 30.0);
  sim.frame.pilot_value = pilot_value_for_boost(1.0, 30.0);
  sim.pilot_power_db_over_data = 30.0;
  sim.snr_db = 30.0;
  sim.velocity_kmh = 118043.0;
  sim.n_paths = 3;
  sim.seed = 1;
  sim.trials = 4;
  return sim;
}

ExperimentSpec desk_spec(ExperimentKind kind) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.sim = desk_sim();
  spec.snr_db_list = {spec.sim.snr_db};
  spec.velocity_kmh_list = {spec.sim.velocity_kmh};
  spec.m_list = {spec.sim.frame.num_subcarriers};
  spec.trials = 4;
  spec.seed = 7;
  return spec;
}

bool same_row(const ResultRow& a, const ResultRow& b) {
  auto eq = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  return a.m == b.m && a.n == b.n && a.velocity_kmh == b.velocity_kmh &&
         a.snr_db == b.snr_db && a.trials == b.trials &&
         eq(a.nmse_model, b.nmse_model) && eq(a.nmse_model_se, b.nmse_model_se) &&
         eq(a.nmse_est_dse, b.nmse_est_dse) && eq(a.nmse_est_dse_se, b.nmse_est_dse_se) &&
         eq(a.nmse_est_nodse, b.nmse_est_nodse) &&
         eq(a.nmse_est_nodse_se, b.nmse_est_nodse_se) &&
         eq(a.ber_perfect_dse, b.ber_perfect_dse) &&
         eq(a.ber_perfect_dse_se, b.ber_perfect_dse_se) &&
         eq(a.ber_perfect_nodse, b.ber_perfect_nodse) &&
         eq(a.ber_perfect_nodse_se, b.ber_perfect_nodse_se) &&
         eq(a.ber_est_dse, b.ber_est_dse) && eq(a.ber_est_dse_se, b.ber_est_dse_se) &&
         eq(a.ber_est_nodse, b.ber_est_nodse) && eq(a.ber_est_nodse_se, b.ber_est_nodse_se);
}

} // namespace

TEST_CASE("nmse basics") {
  CMat ref(2, 2);
  ref << cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1);
  CHECK(nmse(ref, ref) == 0.0);
  CHECK(nmse(CMat::Zero(2, 2), ref) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nmse(2.0 * ref, ref) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)nmse(ref, CMat::Zero(2, 2)), ZeroReferenceError);
  CHECK_THROWS_AS((void)nmse(CMat::Zero(2, 3), ref), std::invalid_argument);
}

TEST_CASE("bit error rate") {
  const std::vector<std::uint8_t> a{0, 1, 1, 0};
  CHECK(bit_error_rate(a, a) == 0.0);
  CHECK(bit_error_rate(a, {1, 0, 0, 1}) == 1.0);
  CHECK(bit_error_rate(a, {0, 1, 0, 0}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS((void)bit_error_rate(a, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS((void)bit_error_rate({}, {}), std::invalid_argument);

  // random detection against random truth converges to one half
  RngStream rng(123);
  std::vector<std::uint8_t> x(100000), y(100000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
    y[i] = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
  }
  CHECK(std::abs(bit_error_rate(x, y) - 0.5) < 0.01);
}

TEST_CASE("pairwise summation") {
  CHECK(pairwise_sum({}) == 0.0);
  CHECK(pairwise_sum({3.5}) == 3.5);
  const std::vector<double> small{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(pairwise_sum(small) == 15.0);

  std::vector<double> many(1000000, 0.1);
  CHECK(std::abs(pairwise_sum(many) - 100000.0) / 100000.0 < 1e-12);
}

TEST_CASE("mean and standard error") {
  const MeanSe ms = mean_and_se({1.0, 2.0, 3.0, 4.0});
  CHECK(ms.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(ms.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-15));
  CHECK(mean_and_se({42.0}).mean == 42.0);
  CHECK(mean_and_se({42.0}).se == 0.0);
  CHECK_THROWS_AS((void)mean_and_se({}), std::invalid_argument);
}

TEST_CASE("random stream is frozen") {
  RngStream rng(1);
  CHECK(rng.uniform01() == doctest::Approx(0.13387664401253263).epsilon(1e-15));
  CHECK(rng.uniform01() == doctest::Approx(0.13640703636619722).epsilon(1e-15));
  CHECK(rng.gaussian() == doctest::Approx(1.2506039211781219).epsilon(1e-15));
  const cplx z = rng.circular_gaussian(2.0);
  CHECK(z.real() == doctest::Approx(1.2285219999610564).epsilon(1e-15));
  CHECK(z.imag() == doctest::Approx(-0.76501793388460981).epsilon(1e-15));
  CHECK(rng.uniform_int(3, 9) == 9);

  CHECK(mix_seed(1, 2) == 11045130339233787057ull);
  CHECK(trial_stream_seed(1, 0, kNoiseStreamId) == 3030368503571876546ull);
}

TEST_CASE("random stream distributions") {
  RngStream rng(1234);
  const int n = 100000;

  SUBCASE("uniform01 range and mean") {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform01();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      acc += u;
    }
    CHECK(std::abs(acc / n - 0.5) < 0.005);
  }
  SUBCASE("gaussian moments") {
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = rng.gaussian();
      m1 += g;
      m2 += g * g;
    }
    CHECK(std::abs(m1 / n) < 0.02);
    CHECK(std::abs(m2 / n - 1.0) < 0.02);
  }
  SUBCASE("circular gaussian variance and symmetry") {
    cplx acc(0, 0);
    double pow = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx z = rng.circular_gaussian(4.0);
      acc += z;
      pow += std::norm(z);
    }
    CHECK(std::abs(acc) / n < 0.03);
    CHECK(std::abs(pow / n - 4.0) < 0.08);
  }
  SUBCASE("uniform_int covers inclusive bounds uniformly") {
    std::vector<int> hits(5, 0);
    for (int i = 0; i < n; ++i) {
      const int v = rng.uniform_int(2, 6);
      REQUIRE(v >= 2);
      REQUIRE(v <= 6);
      ++hits[v - 2];
    }
    for (const int h : hits) CHECK(std::abs(h / double(n) - 0.2) < 0.01);
    CHECK(rng.uniform_int(5, 5) == 5);
  }
}

TEST_CASE("stream derivation separates purposes and trials") {
  const std::uint64_t seed = 99;
  std::vector<std::uint64_t> seen;
  for (std::uint64_t trial = 0; trial < 4; ++trial)
    for (const std::uint64_t id : {kChannelStreamId, kDataStreamId, kNoiseStreamId})
      seen.push_back(trial_stream_seed(seed, trial, id));
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
  // derivation is a pure function
  CHECK(trial_stream_seed(seed, 2, kDataStreamId) ==
        trial_stream_seed(seed, 2, kDataStreamId));
}

TEST_CASE("parallel_for") {
  SUBCASE("fills every slot exactly once, any worker count") {
    for (const unsigned threads : {0u, 1u, 4u}) {
      std::vector<int> slots(1000, 0);
      parallel_for(slots.size(), [&](std::size_t i) { slots[i] += int(i); }, threads);
      for (std::size_t i = 0; i < slots.size(); ++i) REQUIRE(slots[i] == int(i));
    }
  }
  SUBCASE("propagates exceptions") {
    CHECK_THROWS_AS(
        parallel_for(
            8, [](std::size_t i) { if (i == 5) throw std::runtime_error("boom"); }, 4),
        std::runtime_error);
  }
  SUBCASE("zero iterations is a no-op") {
    std::atomic<int> calls{0};
    parallel_for(0, [&](std::size_t) { ++calls; }, 4);
    CHECK(calls == 0);
  }
}

TEST_CASE("csv round trip preserves every bit") {
  std::vector<ResultRow> rows(2);
  rows[0].m = 64;
  rows[0].n = 16;
  rows[0].velocity_kmh = 118043.0;
  rows[0].snr_db = 27.5;
  rows[0].trials = 100;
  rows[0].nmse_model = 0.1032;
  rows[0].nmse_model_se = std::numeric_limits<double>::quiet_NaN();
  rows[0].nmse_est_dse = 1.0 / 3.0;
  rows[0].nmse_est_dse_se = 2.2250738585072014e-308;
  rows[0].nmse_est_nodse = 0.036;
  rows[0].nmse_est_nodse_se = 1e-17;
  rows[0].ber_perfect_dse = std::numeric_limits<double>::quiet_NaN();
  rows[0].ber_perfect_dse_se = std::numeric_limits<double>::quiet_NaN();
  rows[0].ber_perfect_nodse = 0.028;
  rows[0].ber_perfect_nodse_se = 0.001;
  rows[0].ber_est_dse = 3e-5;
  rows[0].ber_est_dse_se = 1.25e-6;
  rows[0].ber_est_nodse = 0.09;
  rows[0].ber_est_nodse_se = 0.004;
  rows[1] = rows[0];
  rows[1].m = 1024;
  rows[1].snr_db = -2.0;
  rows[1].nmse_model = 0.1 + 0.2; // not exactly 0.3 in binary

  const std::string path = "harness_roundtrip.csv";
  emit_csv(rows, path);
  const std::vector<ResultRow> back = parse_csv(path);
  std::remove(path.c_str());

  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(same_row(rows[i], back[i]));
}

TEST_CASE("csv header is the result row schema") {
  CHECK(csv_header() ==
        "m,n,velocity_kmh,snr_db,trials,"
        "nmse_model,nmse_model_se,nmse_est_dse,nmse_est_dse_se,"
        "nmse_est_nodse,nmse_est_nodse_se,ber_perfect_dse,ber_perfect_dse_se,"
        "ber_perfect_nodse,ber_perfect_nodse_se,ber_est_dse,ber_est_dse_se,"
        "ber_est_nodse,ber_est_nodse_se");
}

TEST_CASE("experiments are deterministic across worker counts") {
  ExperimentSpec spec = desk_spec(ExperimentKind::Estimate);
  spec.threads = 1;
  const std::vector<ResultRow> one = run_experiment(spec);
  spec.threads = 4;
  const std::vector<ResultRow> four = run_experiment(spec);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(same_row(one[i], four[i]));
}

TEST_CASE("sweep points share common random numbers") {
  ExperimentSpec wide = desk_spec(ExperimentKind::Ber);
  wide.snr_db_list = {20.0, 30.0};
  const std::vector<ResultRow> rows_wide = run_experiment(wide);
  REQUIRE(rows_wide.size() == 2);

  ExperimentSpec narrow = desk_spec(ExperimentKind::Ber);
  narrow.snr_db_list = {30.0};
  const std::vector<ResultRow> rows_narrow = run_experiment(narrow);
  REQUIRE(rows_narrow.size() == 1);

  // dropping the 20 dB point leaves the 30 dB row untouched
  CHECK(same_row(rows_wide[1], rows_narrow[0]));

  ExperimentSpec faster = desk_spec(ExperimentKind::Ber);
  faster.velocity_kmh_list = {30000.0, faster.sim.velocity_kmh};
  const std::vector<ResultRow> rows_v = run_experiment(faster);
  REQUIRE(rows_v.size() == 2);
  CHECK(same_row(rows_v[1], rows_narrow[0]));
}

TEST_CASE("estimate experiment produces only estimation metrics") {
  const std::vector<ResultRow> rows = run_experiment(desk_spec(ExperimentKind::Estimate));
  REQUIRE(rows.size() == 1);
  const ResultRow& r = rows[0];
  CHECK(r.m == 64);
  CHECK(r.n == 16);
  CHECK(r.trials == 4);
  CHECK(std::isfinite(r.nmse_est_dse));
  CHECK(std::isfinite(r.nmse_est_dse_se));
  CHECK(std::isfinite(r.nmse_est_nodse));
  CHECK(r.nmse_est_dse >= 0.0);
  CHECK(std::isnan(r.nmse_model));
  CHECK(std::isnan(r.ber_perfect_dse));
  CHECK(std::isnan(r.ber_est_dse));
}

TEST_CASE("model mismatch experiment reports the squint error floor") {
  ExperimentSpec spec = desk_spec(ExperimentKind::NmseModel);
  spec.trials = 30;
  spec.seed = 11;
  const std::vector<ResultRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 1);
  // the squint-ignorant matrix misses the desk channel by roughly ten percent
  CHECK(rows[0].nmse_model > 0.05);
  CHECK(rows[0].nmse_model < 0.25);
  CHECK(std::isnan(rows[0].ber_est_dse));
}

TEST_CASE("aware estimation beats ignorant estimation on the desk setup") {
  ExperimentSpec spec = desk_spec(ExperimentKind::Estimate);
  spec.trials = 30;
  spec.seed = 11;
  const std::vector<ResultRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].nmse_est_dse < 0.5 * rows[0].nmse_est_nodse);
}

TEST_CASE("experiment validation") {
  SUBCASE("empty sweep lists") {
    ExperimentSpec spec = desk_spec(ExperimentKind::Estimate);
    spec.snr_db_list.clear();
    CHECK_THROWS_AS((void)run_experiment(spec), std::invalid_argument);
  }
  SUBCASE("non-positive trials") {
    ExperimentSpec spec = desk_spec(ExperimentKind::Estimate);
    spec.trials = 0;
    CHECK_THROWS_AS((void)run_experiment(spec), std::invalid_argument);
  }
  SUBCASE("negative threshold multiplier") {
    ExperimentSpec spec = desk_spec(ExperimentKind::Estimate);
    spec.gamma_sigma_mult = -1.0;
    CHECK_THROWS_AS((void)run_experiment(spec), std::invalid_argument);
  }
  SUBCASE("an infeasible sweep point is rejected up front") {
    ExperimentSpec spec = desk_spec(ExperimentKind::Estimate);
    spec.m_list = {64, 6}; // CP no longer fits below the delay budget
    CHECK_THROWS_AS((void)run_experiment(spec), ConfigError);
  }
  SUBCASE("large dimensioned error-rate runs need the full-scale flag") {
    ExperimentSpec spec = desk_spec(ExperimentKind::Ber);
    spec.m_list = {1024};
    spec.velocity_kmh_list = {30000.0}; // keep the sweep point itself admissible
    spec.trials = 100;
    try {
      (void)run_experiment(spec);
      FAIL("expected the scale gate to throw");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("--full-scale") != std::string::npos);
    }
  }
}
