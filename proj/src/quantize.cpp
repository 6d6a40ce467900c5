// SPDX-License-Identifier: Apache-2.0
#include "udep/quantize.hpp"

#include <cmath>

#include "udep/errors.hpp"

namespace udep {

namespace {

void check_spec(const QuantizerSpec& spec) {
  if (spec.bits < 1 || spec.bits > 16)
    throw PreconditionError("quantizer: bits must be in [1, 16]");
  if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
    throw PreconditionError("quantizer: need finite lo < hi");
}

}  // namespace

std::vector<std::uint32_t> quantize(const std::vector<double>& v, const QuantizerSpec& spec) {
  check_spec(spec);
  const double step = spec.step();
  const std::uint32_t top = (1u << spec.bits) - 1u;
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (double x : v) {
    const double cell = std::floor((x - spec.lo) / step);
    std::uint32_t idx = 0;
    if (cell >= static_cast<double>(top))
      idx = top;
    else if (cell > 0.0)
      idx = static_cast<std::uint32_t>(cell);
    out.push_back(idx);
  }
  return out;
}

std::vector<double> dequantize(const std::vector<std::uint32_t>& indices,
                               const QuantizerSpec& spec) {
  check_spec(spec);
  const double step = spec.step();
  const std::uint32_t levels = 1u << spec.bits;
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::uint32_t idx : indices) {
    if (idx >= levels)
      throw FormatError(FormatCode::IndexOverflow, "dequantize: index exceeds 2^bits - 1");
    out.push_back(spec.lo + step * (static_cast<double>(idx) + 0.5));
  }
  return out;
}

QuantizerSpec overrange_spec(double bound, double overrange, int bits) {
  if (!(bound > 0.0)) throw PreconditionError("overrange_spec: bound must be positive");
  if (!(overrange >= 1.0)) throw PreconditionError("overrange_spec: overrange must be >= 1");
  const double half = bound / overrange;
  return QuantizerSpec{bits, -half, half};
}

std::vector<double> awgn_transmit(const std::vector<double>& v, double capacity_per_dim,
                                  Rng& rng) {
  if (!(capacity_per_dim > 0.0))
    throw PreconditionError("awgn_transmit: capacity must be positive");
  double power = 0.0;
  for (double x : v) power += x * x;
  if (v.empty() || power == 0.0) return v;
  power /= static_cast<double>(v.size());
  const double snr = std::exp2(capacity_per_dim) - 1.0;
  const double sigma = std::sqrt(power / snr);
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(x + sigma * rng.gaussian());
  return out;
}

}  // namespace udep
