// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "udep/bench.hpp"
#include "udep/errors.hpp"
#include "udep/linalg.hpp"
#include "udep/metrics.hpp"

using namespace udep;

TEST_CASE("rayleigh moments") {
  Rng rng(1);
  const int draws = 100000;
  double mean_re = 0.0, power = 0.0;
  for (int t = 0; t < draws; ++t) {
    const CMat h = rayleigh(1, 1, rng);
    mean_re += h(0, 0).real();
    power += std::norm(h(0, 0));
  }
  CHECK(power / draws == doctest::Approx(1.0).epsilon(0.02));
  // Mean within 3 sigma of zero (per-draw std of the real part is 1/sqrt(2)).
  CHECK(std::abs(mean_re / draws) <= 3.0 / std::sqrt(2.0 * draws));

  Rng a(9), b(9);
  CHECK(fro_dist(rayleigh(3, 2, a), rayleigh(3, 2, b)) == 0.0);
}

TEST_CASE("sample_symmetric_unitary structure") {
  Rng rng(2);
  for (std::size_t n : {1, 3, 6}) {
    const CMat u = sample_symmetric_unitary(n, rng);
    CHECK(fro_dist(u, u.transpose()) <= 1e-10 * n);
    CHECK(unitarity_defect(u) <= 1e-10 * n);
  }
}

TEST_CASE("fris_optimal_theta closed cases") {
  CMat h1(2, 2), h2(2, 2);
  h1(0, 0) = 2.0;
  h1(1, 1) = 1.0;
  h2(0, 0) = 1.0;
  h2(1, 1) = 3.0;
  const CMat theta = fris_optimal_theta(h1, h2);
  CHECK(std::abs(theta(0, 1)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(theta(1, 0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(theta(0, 0)) <= 1e-10);

  const CMat tid = fris_optimal_theta(CMat::identity(3), CMat::identity(3));
  CHECK(unitarity_defect(tid) <= 1e-9 * 3);
  // Identity channels: any unitary is optimal; just require unit singulars.
}

TEST_CASE("fris_optimal_theta dominates random configurations") {
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    const CMat h1 = rayleigh(6, 4, rng);
    const CMat h2 = rayleigh(4, 3, rng);
    const CMat theta = fris_optimal_theta(h1, h2);
    CHECK(unitarity_defect(theta) <= 1e-9 * 4);
    const double best = logdet_capacity(h1 * theta * h2, 10.0);
    for (int q = 0; q < 20; ++q) {
      const CMat rndq = haar_unitary(4, rng);
      CHECK(best >= logdet_capacity(h1 * rndq * h2, 10.0) - 1e-9);
    }
  }
}

TEST_CASE("noiseless awgn control run is exact") {
  BenchConfig cfg;
  cfg.experiment = Experiment::AwgnSweep;
  cfg.n = 4;
  cfg.trials = 5;
  cfg.seed = 11;
  cfg.sweep = {6.0};
  cfg.noiseless = true;
  for (const TrialRecord& r : run_awgn_sweep(cfg)) {
    CHECK(r.mse <= 1e-18);
    if (r.fidelity) CHECK(*r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("awgn record counts and determinism") {
  BenchConfig cfg;
  cfg.experiment = Experiment::AwgnSweep;
  cfg.n = 3;
  cfg.trials = 10;
  cfg.seed = 7;
  cfg.methods = {"dep", "naive"};
  cfg.sweep = {2.0, 4.0, 6.0, 8.0, 10.0};
  const auto rows = run_awgn_sweep(cfg);
  CHECK(rows.size() == 2 * 5 * 10);
  const std::string csv1 = records_to_csv("awgn", rows);
  const std::string csv2 = records_to_csv("awgn", run_awgn_sweep(cfg));
  CHECK(csv1 == csv2);
  CHECK(csv1.substr(0, csv1.find('\n')) == "experiment,method,sweep,trial,mse,fidelity,ratio");
  // The naive method has no fidelity: its rows carry an empty cell.
  CHECK(csv1.find(",naive,") != std::string::npos);
}

TEST_CASE("high-rate quantization is nearly lossless") {
  BenchConfig cfg;
  cfg.experiment = Experiment::QuantSweep;
  cfg.n = 4;
  cfg.trials = 10;
  cfg.seed = 5;
  cfg.methods = {"dep"};
  cfg.sweep = {16.0};
  for (const TrialRecord& r : run_quant_sweep(cfg)) CHECK(r.mse <= 1e-6);
}

TEST_CASE("csi perfect feedback attains capacity") {
  BenchConfig cfg;
  cfg.experiment = Experiment::Csi;
  cfg.n = 3;
  cfg.m = 8;
  cfg.trials = 10;
  cfg.seed = 13;
  cfg.snr_db = 10.0;
  cfg.methods = {"dep", "givens", "naive"};
  cfg.sweep = {4.0};
  cfg.noiseless = true;
  for (const TrialRecord& r : run_csi(cfg)) {
    REQUIRE(r.ratio.has_value());
    CHECK(*r.ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("fris perfect feedback attains the optimum") {
  BenchConfig cfg;
  cfg.experiment = Experiment::Fris;
  cfg.n = 4;
  cfg.m = 6;
  cfg.k = 3;
  cfg.trials = 5;
  cfg.seed = 17;
  cfg.methods = {"dep", "naive"};
  cfg.sweep = {4.0};
  cfg.noiseless = true;
  for (const TrialRecord& r : run_fris(cfg)) {
    REQUIRE(r.ratio.has_value());
    CHECK(*r.ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*r.ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("fris noisy ratios stay within [0, 1]") {
  BenchConfig cfg;
  cfg.experiment = Experiment::Fris;
  cfg.n = 4;
  cfg.m = 6;
  cfg.k = 3;
  cfg.trials = 10;
  cfg.seed = 19;
  cfg.methods = {"dep", "naive"};
  cfg.sweep = {2.0};
  for (const TrialRecord& r : run_fris(cfg)) {
    REQUIRE(r.ratio.has_value());
    CHECK(*r.ratio >= 0.0);
    CHECK(*r.ratio <= 1.0 + 1e-9);
    CHECK(r.mse >= 0.0);
  }
}

TEST_CASE("blockdiag payload dims and exact transport") {
  CHECK(blockdiag_payload_dims({4, 4}, false) == 32);
  CHECK(blockdiag_payload_dims({4, 4}, true) == 64);

  BenchConfig cfg;
  cfg.experiment = Experiment::BlockDiag;
  cfg.blocks = {2, 3};
  cfg.n = 5;
  cfg.trials = 5;
  cfg.seed = 23;
  cfg.methods = {"dep", "naive"};
  cfg.sweep = {6.0};
  cfg.noiseless = true;
  for (const TrialRecord& r : run_blockdiag(cfg)) CHECK(r.mse <= 1e-18);
}

TEST_CASE("aggregate csv groups by method and sweep") {
  BenchConfig cfg;
  cfg.experiment = Experiment::AwgnSweep;
  cfg.n = 2;
  cfg.trials = 4;
  cfg.seed = 3;
  cfg.methods = {"dep"};
  cfg.sweep = {4.0, 8.0};
  const std::string agg = records_to_aggregate_csv("awgn", run_awgn_sweep(cfg));
  // Header + one line per (method, sweep) pair.
  CHECK(std::count(agg.begin(), agg.end(), '\n') == 3);
}

TEST_CASE("configuration validation") {
  BenchConfig cfg;
  cfg.methods = {"nope"};
  CHECK_THROWS_AS(run_awgn_sweep(cfg), PreconditionError);
  cfg.methods = {"dep"};
  cfg.sweep = {};
  CHECK_THROWS_AS(run_awgn_sweep(cfg), PreconditionError);
  cfg.sweep = {3.5};
  CHECK_THROWS_AS(run_quant_sweep(cfg), PreconditionError);  // non-integer bits
  cfg.sweep = {4.0};
  cfg.experiment = Experiment::BlockDiag;
  cfg.blocks = {};
  CHECK_THROWS_AS(run_blockdiag(cfg), PreconditionError);
}
