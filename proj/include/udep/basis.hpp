// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "udep/complex_matrix.hpp"

namespace udep {

enum class VariantKind : int {
  Full = 0,
  SpecialUnitary = 1,
  Symmetric = 2,
  Rotation = 3,
  BlockDiagonal = 4,
};

/// Coordinate-space variant; BlockDiagonal carries the block size list.
struct Variant {
  VariantKind kind = VariantKind::Full;
  std::vector<std::size_t> blocks;  // BlockDiagonal only

  static Variant full() { return {VariantKind::Full, {}}; }
  static Variant special_unitary() { return {VariantKind::SpecialUnitary, {}}; }
  static Variant symmetric() { return {VariantKind::Symmetric, {}}; }
  static Variant rotation() { return {VariantKind::Rotation, {}}; }
  static Variant block_diagonal(std::vector<std::size_t> sizes) {
    return {VariantKind::BlockDiagonal, std::move(sizes)};
  }

  bool operator==(const Variant& o) const {
    return kind == o.kind && blocks == o.blocks;
  }
};

/// Real coordinate vector of a skew-Hermitian matrix in the fixed basis order:
/// identity, diagonals, imaginary-symmetric, real-antisymmetric.
struct CoordVector {
  std::size_t n = 0;
  Variant variant;
  std::vector<double> coords;
};

/// Number of real coordinates for the variant at size n.
std::size_t dims(const Variant& variant, std::size_t n);

/// Row-major upper-triangular pair for off-diagonal element index n (1-based):
/// (1,2), (1,3), ..., (1,N), (2,3), ..., (N-1,N). Returned pair is 1-based.
std::pair<std::size_t, std::size_t> pair_of_index(std::size_t n, std::size_t size);

/// Basis element B_n (1-based, n in [1, N^2]); skew-Hermitian, unit Frobenius
/// norm, traceless except B_1.
CMat basis_element(std::size_t n, std::size_t size);

/// Coordinates of a skew-Hermitian X in the basis, restricted to the variant's
/// active positions. Closed-form O(N^2); the basis is never materialized.
CoordVector coords_from_skew(const CMat& x, const Variant& variant);

/// Inverse of coords_from_skew on its image: X = sum alpha_n B_n.
CMat skew_from_coords(const CoordVector& alpha);

}  // namespace udep
