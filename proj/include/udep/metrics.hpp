// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "udep/complex_matrix.hpp"

namespace udep {

/// Waterfilling output: per-stream linear powers summing to the total budget.
struct PowerAllocation {
  std::vector<double> powers;
  double total = 0.0;
};

/// (1/N^2) ||U - Uhat||_F^2 for one realization.
double mse(const CMat& u, const CMat& uhat);

/// |trace(U^H Uhat)| / N in [0, 1]; invariant to a global phase. Both inputs
/// must be unitary.
double fidelity(const CMat& u, const CMat& uhat);

/// Same trace formula without the unitarity check, for logging baselines whose
/// reconstructions may leave the unitary group.
double fidelity_unchecked(const CMat& u, const CMat& uhat);

/// Capacity-optimal allocation maximizing sum log2(1 + gain_i * p_i); exact
/// sort-and-deactivate solution.
PowerAllocation waterfilling(const std::vector<double>& channel_gains, double total_power);

/// log2 det(I + snr H H^H) via singular values.
double logdet_capacity(const CMat& h, double snr);

/// Sum of per-stream log2(1 + SINR) with the true left basis as equalizer and
/// a possibly mismatched precoder; unit-variance noise.
double stream_sinr_rate(const CMat& h, const CMat& u_true_left, const CMat& v_hat,
                        const PowerAllocation& p_hat);

}  // namespace udep
