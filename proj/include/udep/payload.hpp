// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "udep/basis.hpp"
#include "udep/quantize.hpp"

namespace udep {

/// Serialized coordinate payload: raw f64 coordinates, or per-segment
/// quantizer specs plus bit-packed indices. Segments carry coordinate groups
/// with distinct ranges (DEP coords; Givens amplitudes vs phases; power
/// ratios).
struct EncodedPayload {
  struct Segment {
    QuantizerSpec spec;
    std::vector<std::uint32_t> indices;
    bool operator==(const Segment& o) const {
      return spec == o.spec && indices == o.indices;
    }
  };

  std::size_t n = 0;
  Variant variant;
  bool quantized = false;
  std::optional<int> det_sign;  // Rotation variant only, +1/-1
  std::vector<double> raw;          // !quantized
  std::vector<Segment> segments;    // quantized

  bool operator==(const EncodedPayload& o) const {
    return n == o.n && variant == o.variant && quantized == o.quantized &&
           det_sign == o.det_sign && raw == o.raw && segments == o.segments;
  }
};

/// UDEP binary format, little-endian, bit-exact round trip.
std::vector<std::uint8_t> serialize(const EncodedPayload& p);
EncodedPayload deserialize(const std::vector<std::uint8_t>& bytes);

}  // namespace udep
