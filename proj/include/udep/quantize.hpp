// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "udep/rng.hpp"

namespace udep {

/// Midrise uniform quantizer over [lo, hi) with 2^bits levels.
struct QuantizerSpec {
  int bits = 8;
  double lo = -1.0;
  double hi = 1.0;

  double step() const { return (hi - lo) / static_cast<double>(1u << bits); }
  bool operator==(const QuantizerSpec& o) const {
    return bits == o.bits && lo == o.lo && hi == o.hi;
  }
};

/// index = clamp(floor((v - lo)/step), 0, 2^bits - 1); out-of-range clips.
std::vector<std::uint32_t> quantize(const std::vector<double>& v, const QuantizerSpec& spec);

/// Cell-midpoint reconstruction lo + step*(index + 1/2).
std::vector<double> dequantize(const std::vector<std::uint32_t>& indices,
                               const QuantizerSpec& spec);

/// Symmetric spec [-bound/overrange, +bound/overrange]; overrange >= 1 shrinks
/// the quantizer range below the known bound.
QuantizerSpec overrange_spec(double bound, double overrange, int bits);

/// Per-dimension AWGN at the given capacity (bits per channel use):
/// SNR = 2^C - 1, noise variance = (mean signal power)/SNR.
std::vector<double> awgn_transmit(const std::vector<double>& v, double capacity_per_dim,
                                  Rng& rng);

}  // namespace udep
