// SPDX-License-Identifier: Apache-2.0
#include "udep/basis.hpp"

#include <cmath>
#include <string>

#include "udep/errors.hpp"

namespace udep {

std::size_t dims(const Variant& variant, std::size_t n) {
  switch (variant.kind) {
    case VariantKind::Full:
      return n * n;
    case VariantKind::SpecialUnitary:
      return n * n - 1;
    case VariantKind::Symmetric:
      return n * (n + 1) / 2;
    case VariantKind::Rotation:
      return n * (n - 1) / 2;
    case VariantKind::BlockDiagonal: {
      std::size_t total = 0;
      std::size_t sum = 0;
      for (std::size_t b : variant.blocks) {
        if (b == 0) throw StructureError("dims: block sizes must be positive");
        total += b * b;
        sum += b;
      }
      if (sum != n) throw StructureError("dims: block sizes must sum to N");
      return total;
    }
  }
  throw StructureError("dims: invalid variant");
}

std::pair<std::size_t, std::size_t> pair_of_index(std::size_t n, std::size_t size) {
  const std::size_t count = size * (size - 1) / 2;
  if (n < 1 || n > count)
    throw IndexError("pair_of_index: index " + std::to_string(n) + " out of range");
  std::size_t rem = n;
  for (std::size_t k = 1; k < size; ++k) {
    const std::size_t row_len = size - k;
    if (rem <= row_len) return {k, k + rem};
    rem -= row_len;
  }
  throw IndexError("pair_of_index: internal enumeration error");
}

CMat basis_element(std::size_t n, std::size_t size) {
  const std::size_t total = size * size;
  if (n < 1 || n > total)
    throw IndexError("basis_element: index " + std::to_string(n) + " out of range");
  CMat b(size, size);
  if (n == 1) {
    const cplx v(0.0, 1.0 / std::sqrt(static_cast<double>(size)));
    for (std::size_t i = 0; i < size; ++i) b(i, i) = v;
    return b;
  }
  if (n <= size) {
    // Diagonal element: (j / sqrt(n(n-1))) (sum_{i<n} E_ii - (n-1) E_nn).
    const double scale = 1.0 / std::sqrt(static_cast<double>(n * (n - 1)));
    for (std::size_t i = 0; i + 1 < n; ++i) b(i, i) = cplx(0.0, scale);
    b(n - 1, n - 1) = cplx(0.0, -scale * static_cast<double>(n - 1));
    return b;
  }
  const std::size_t pairs = size * (size - 1) / 2;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (n <= size + pairs) {
    const auto [k, l] = pair_of_index(n - size, size);
    b(k - 1, l - 1) = cplx(0.0, inv_sqrt2);
    b(l - 1, k - 1) = cplx(0.0, inv_sqrt2);
  } else {
    const auto [k, l] = pair_of_index(n - size - pairs, size);
    b(k - 1, l - 1) = cplx(inv_sqrt2, 0.0);
    b(l - 1, k - 1) = cplx(-inv_sqrt2, 0.0);
  }
  return b;
}

namespace {

void check_skew(const CMat& x) {
  const double fro = x.fro_norm();
  const double defect = fro_dist(x, x.adjoint() * cplx(-1.0, 0.0));
  if (defect > 1e-9 * std::max(1.0, fro))
    throw PreconditionError("coords_from_skew: input is not skew-Hermitian");
}

double real_part_norm(const CMat& x) {
  double s = 0.0;
  for (const cplx& z : x.data()) s += z.real() * z.real();
  return std::sqrt(s);
}

double imag_part_norm(const CMat& x) {
  double s = 0.0;
  for (const cplx& z : x.data()) s += z.imag() * z.imag();
  return std::sqrt(s);
}

// Full-variant coordinates of an N x N skew-Hermitian block, appended to out.
void full_coords_of_block(const CMat& x, std::vector<double>& out) {
  const std::size_t n = x.rows();
  const double sqrt2 = std::sqrt(2.0);
  double prefix = 0.0;  // sum_{i<m} Im(X_ii)
  std::vector<double> diag_im(n);
  for (std::size_t i = 0; i < n; ++i) diag_im[i] = x(i, i).imag();

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += diag_im[i];
  out.push_back(total / std::sqrt(static_cast<double>(n)));
  for (std::size_t m = 2; m <= n; ++m) {
    prefix += diag_im[m - 2];
    const double coeff =
        (prefix - static_cast<double>(m - 1) * diag_im[m - 1]) /
        std::sqrt(static_cast<double>(m * (m - 1)));
    out.push_back(coeff);
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) out.push_back(sqrt2 * x(k, l).imag());
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) out.push_back(sqrt2 * x(k, l).real());
}

void block_offsets(const Variant& variant, std::vector<std::size_t>& starts) {
  starts.clear();
  std::size_t pos = 0;
  for (std::size_t b : variant.blocks) {
    starts.push_back(pos);
    pos += b;
  }
}

}  // namespace

CoordVector coords_from_skew(const CMat& x, const Variant& variant) {
  if (!x.square()) throw ShapeError("coords_from_skew: matrix must be square");
  check_skew(x);
  const std::size_t n = x.rows();
  CoordVector out;
  out.n = n;
  out.variant = variant;
  out.coords.reserve(dims(variant, n));

  switch (variant.kind) {
    case VariantKind::Full:
      full_coords_of_block(x, out.coords);
      break;
    case VariantKind::SpecialUnitary: {
      std::vector<double> full;
      full_coords_of_block(x, full);
      out.coords.assign(full.begin() + 1, full.end());
      break;
    }
    case VariantKind::Symmetric: {
      if (real_part_norm(x) > 1e-8 * std::max(1.0, x.fro_norm()))
        throw StructureError("coords_from_skew: Symmetric variant needs purely imaginary X");
      std::vector<double> full;
      full_coords_of_block(x, full);
      const std::size_t keep = n + n * (n - 1) / 2;  // identity+diagonals+imag-sym
      out.coords.assign(full.begin(), full.begin() + keep);
      break;
    }
    case VariantKind::Rotation: {
      if (imag_part_norm(x) > 1e-8 * std::max(1.0, x.fro_norm()))
        throw StructureError("coords_from_skew: Rotation variant needs purely real X");
      const double sqrt2 = std::sqrt(2.0);
      for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          out.coords.push_back(sqrt2 * x(k, l).real());
      break;
    }
    case VariantKind::BlockDiagonal: {
      (void)dims(variant, n);  // validates block sizes
      std::vector<std::size_t> starts;
      block_offsets(variant, starts);
      double off = 0.0;
      for (std::size_t bi = 0; bi < variant.blocks.size(); ++bi)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const bool in_block_i =
                i >= starts[bi] && i < starts[bi] + variant.blocks[bi];
            const bool in_block_j =
                j >= starts[bi] && j < starts[bi] + variant.blocks[bi];
            if (in_block_i && !in_block_j) off = std::max(off, std::abs(x(i, j)));
          }
      if (off > 1e-10)
        throw StructureError("coords_from_skew: off-block entries exceed tolerance");
      for (std::size_t bi = 0; bi < variant.blocks.size(); ++bi) {
        const std::size_t b = variant.blocks[bi];
        CMat sub(b, b);
        for (std::size_t i = 0; i < b; ++i)
          for (std::size_t j = 0; j < b; ++j) sub(i, j) = x(starts[bi] + i, starts[bi] + j);
        full_coords_of_block(sub, out.coords);
      }
      break;
    }
  }
  return out;
}

namespace {

// Adds the Full-variant synthesis of `coords[pos..pos+b*b)` into the b x b
// window of X at diagonal offset `start`.
void add_full_block(CMat& x, std::size_t start, std::size_t b,
                    const std::vector<double>& coords, std::size_t pos) {
  const double inv_sqrtb = 1.0 / std::sqrt(static_cast<double>(b));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double a1 = coords[pos];
  for (std::size_t i = 0; i < b; ++i) x(start + i, start + i) += cplx(0.0, a1 * inv_sqrtb);
  for (std::size_t m = 2; m <= b; ++m) {
    const double c = coords[pos + m - 1] / std::sqrt(static_cast<double>(m * (m - 1)));
    for (std::size_t i = 0; i + 1 < m; ++i) x(start + i, start + i) += cplx(0.0, c);
    x(start + m - 1, start + m - 1) -= cplx(0.0, c * static_cast<double>(m - 1));
  }
  std::size_t idx = pos + b;
  for (std::size_t k = 0; k + 1 < b; ++k)
    for (std::size_t l = k + 1; l < b; ++l, ++idx) {
      const cplx v(0.0, coords[idx] * inv_sqrt2);
      x(start + k, start + l) += v;
      x(start + l, start + k) += v;
    }
  for (std::size_t k = 0; k + 1 < b; ++k)
    for (std::size_t l = k + 1; l < b; ++l, ++idx) {
      const double v = coords[idx] * inv_sqrt2;
      x(start + k, start + l) += v;
      x(start + l, start + k) -= v;
    }
}

}  // namespace

CMat skew_from_coords(const CoordVector& alpha) {
  const std::size_t n = alpha.n;
  if (n == 0) throw ShapeError("skew_from_coords: n must be >= 1");
  if (alpha.coords.size() != dims(alpha.variant, n))
    throw ShapeError("skew_from_coords: coordinate length mismatch");
  CMat x(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  switch (alpha.variant.kind) {
    case VariantKind::Full:
      add_full_block(x, 0, n, alpha.coords, 0);
      break;
    case VariantKind::SpecialUnitary: {
      std::vector<double> full(1, 0.0);
      full.insert(full.end(), alpha.coords.begin(), alpha.coords.end());
      add_full_block(x, 0, n, full, 0);
      break;
    }
    case VariantKind::Symmetric: {
      std::vector<double> full(alpha.coords);
      full.resize(n * n, 0.0);
      add_full_block(x, 0, n, full, 0);
      break;
    }
    case VariantKind::Rotation: {
      std::size_t idx = 0;
      for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l, ++idx) {
          const double v = alpha.coords[idx] * inv_sqrt2;
          x(k, l) += v;
          x(l, k) -= v;
        }
      break;
    }
    case VariantKind::BlockDiagonal: {
      std::vector<std::size_t> starts;
      block_offsets(alpha.variant, starts);
      std::size_t pos = 0;
      for (std::size_t bi = 0; bi < alpha.variant.blocks.size(); ++bi) {
        const std::size_t b = alpha.variant.blocks[bi];
        add_full_block(x, starts[bi], b, alpha.coords, pos);
        pos += b * b;
      }
      break;
    }
  }
  return x;
}

}  // namespace udep
