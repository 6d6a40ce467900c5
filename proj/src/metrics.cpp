// SPDX-License-Identifier: Apache-2.0
#include "udep/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "udep/errors.hpp"
#include "udep/linalg.hpp"

namespace udep {

double mse(const CMat& u, const CMat& uhat) {
  if (u.rows() != uhat.rows() || u.cols() != uhat.cols())
    throw ShapeError("mse: shape mismatch");
  const double d = fro_dist(u, uhat);
  return d * d / static_cast<double>(u.rows() * u.cols());
}

double fidelity_unchecked(const CMat& u, const CMat& uhat) {
  if (u.rows() != uhat.rows() || u.cols() != uhat.cols())
    throw ShapeError("fidelity: shape mismatch");
  cplx t = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < u.rows(); ++k) t += std::conj(u(k, i)) * uhat(k, i);
  return std::abs(t) / static_cast<double>(u.rows());
}

double fidelity(const CMat& u, const CMat& uhat) {
  const double tol = 1e-8 * static_cast<double>(u.rows());
  if (unitarity_defect(u) > tol || unitarity_defect(uhat) > tol)
    throw PreconditionError("fidelity: inputs must be unitary");
  return std::min(1.0, fidelity_unchecked(u, uhat));
}

PowerAllocation waterfilling(const std::vector<double>& channel_gains, double total_power) {
  if (channel_gains.empty()) throw PreconditionError("waterfilling: empty gains");
  if (!(total_power > 0.0)) throw PreconditionError("waterfilling: total power must be > 0");
  for (double g : channel_gains)
    if (!(g > 0.0)) throw PreconditionError("waterfilling: gains must be > 0");

  const std::size_t n = channel_gains.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return channel_gains[a] > channel_gains[b];
  });

  PowerAllocation out;
  out.total = total_power;
  out.powers.assign(n, 0.0);
  // Deactivate the weakest streams until all active powers are non-negative.
  for (std::size_t k = n; k >= 1; --k) {
    double inv_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) inv_sum += 1.0 / channel_gains[order[i]];
    const double level = (total_power + inv_sum) / static_cast<double>(k);
    if (level - 1.0 / channel_gains[order[k - 1]] >= 0.0) {
      for (std::size_t i = 0; i < k; ++i)
        out.powers[order[i]] = level - 1.0 / channel_gains[order[i]];
      break;
    }
  }
  return out;
}

double logdet_capacity(const CMat& h, double snr) {
  if (!(snr > 0.0)) throw PreconditionError("logdet_capacity: snr must be > 0");
  const SvdResult s = svd(h);
  double cap = 0.0;
  for (double sigma : s.singulars) cap += std::log2(1.0 + snr * sigma * sigma);
  return cap;
}

double stream_sinr_rate(const CMat& h, const CMat& u_true_left, const CMat& v_hat,
                        const PowerAllocation& p_hat) {
  const std::size_t n = h.cols();
  if (u_true_left.rows() != h.rows() || u_true_left.cols() != n ||
      v_hat.rows() != n || v_hat.cols() != n || p_hat.powers.size() != n)
    throw ShapeError("stream_sinr_rate: dimension mismatch");

  CMat g = u_true_left.adjoint() * (h * v_hat);
  for (std::size_t j = 0; j < n; ++j) {
    const double scale = std::sqrt(std::max(0.0, p_hat.powers[j]));
    for (std::size_t i = 0; i < n; ++i) g(i, j) *= scale;
  }
  double rate = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double interference = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) interference += std::norm(g(i, j));
    const double sinr = std::norm(g(i, i)) / (1.0 + interference);
    rate += std::log2(1.0 + sinr);
  }
  return rate;
}

}  // namespace udep
