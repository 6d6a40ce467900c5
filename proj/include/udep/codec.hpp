// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "udep/basis.hpp"
#include "udep/complex_matrix.hpp"

namespace udep {

/// Rotation-variant code: coordinates plus the determinant sign bit.
struct RotationCode {
  CoordVector coords;  // Rotation variant
  int det_sign = 1;    // +1 or -1
};

/// Givens-rotation baseline parameters. Total parameter count N^2:
/// N(N-1)/2 amplitudes in [0,1], N(N-1)/2 rotation phases in (-pi,pi],
/// N diagonal phases in (-pi,pi].
struct GivensParams {
  std::size_t n = 0;
  std::vector<double> amplitudes;
  std::vector<double> rotation_phases;
  std::vector<double> diagonal_phases;
};

/// Upper bound sqrt(N)*pi on every Full-variant coordinate.
double coefficient_bound(std::size_t n);

/// Maps a unitary matrix to its real coordinate vector.
CoordVector encode(const CMat& u, const Variant& variant);

/// Inverse map; output is unitary by construction for any finite coordinates.
CMat decode(const CoordVector& alpha);

RotationCode encode_rotation(const CMat& o);
CMat decode_rotation(const RotationCode& code);

GivensParams givens_encode(const CMat& u);
/// Out-of-range inputs are clamped (amplitudes) / wrapped (phases) first.
CMat givens_decode(const GivensParams& p);

/// Flattens GivensParams as [amplitudes | rotation phases | diagonal phases].
std::vector<double> givens_flatten(const GivensParams& p);
GivensParams givens_unflatten(std::size_t n, const std::vector<double>& v);

/// Interleaved re/im row-major entries, 2N^2 reals.
std::vector<double> naive_encode(const CMat& u);
CMat naive_decode(std::size_t n, const std::vector<double>& v, bool project);

}  // namespace udep
