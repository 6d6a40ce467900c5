// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udep/complex_matrix.hpp"
#include "udep/rng.hpp"

namespace udep {

enum class Experiment { AwgnSweep, QuantSweep, Csi, Fris, BlockDiag };

/// Monte Carlo experiment configuration. `sweep` holds capacity values
/// (bits/use) for AWGN-style experiments or bit depths for quantizer sweeps.
struct BenchConfig {
  Experiment experiment = Experiment::AwgnSweep;
  std::size_t n = 8;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> methods = {"dep", "givens", "naive", "naive-proj"};
  std::vector<double> sweep = {6.0};
  double overrange = 1.0;
  double snr_db = 10.0;
  std::size_t m = 32;                // BS antennas (CSI/FRIS)
  std::size_t k = 8;                 // UE antennas (FRIS)
  std::vector<std::size_t> blocks;   // BlockDiag only
  bool noiseless = false;            // control runs: channel is a no-op
};

struct TrialRecord {
  std::string method;
  double sweep = 0.0;
  std::size_t trial = 0;
  double mse = 0.0;
  std::optional<double> fidelity;  // unitary reconstructions only
  std::optional<double> ratio;     // rate/capacity ratio where applicable
};

/// i.i.d. circularly-symmetric complex Gaussian entries, unit variance.
CMat rayleigh(std::size_t m, std::size_t n, Rng& rng);

/// Symmetric unitary sample V V^T for Haar V.
CMat sample_symmetric_unitary(std::size_t n, Rng& rng);

/// Capacity-optimal FRIS reflection matrix V1 U2^H from the cascade SVDs.
CMat fris_optimal_theta(const CMat& h1, const CMat& h2);

std::vector<TrialRecord> run_awgn_sweep(const BenchConfig& cfg);
std::vector<TrialRecord> run_quant_sweep(const BenchConfig& cfg);
std::vector<TrialRecord> run_csi(const BenchConfig& cfg);
std::vector<TrialRecord> run_fris(const BenchConfig& cfg);
std::vector<TrialRecord> run_blockdiag(const BenchConfig& cfg);

/// Dispatch on cfg.experiment.
std::vector<TrialRecord> run_bench(const BenchConfig& cfg);

/// Real feedback dimensions for a block-diagonal target.
std::size_t blockdiag_payload_dims(const std::vector<std::size_t>& blocks, bool naive);

/// Per-row CSV: header `experiment,method,sweep,trial,mse,fidelity,ratio`;
/// absent optionals become empty cells. Deterministic byte output.
std::string records_to_csv(const std::string& experiment, const std::vector<TrialRecord>& rows);

/// Mean/std aggregate per (method, sweep), in first-appearance order.
std::string records_to_aggregate_csv(const std::string& experiment,
                                     const std::vector<TrialRecord>& rows);

}  // namespace udep
