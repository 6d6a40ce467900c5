// SPDX-License-Identifier: Apache-2.0
#include "udep/codec.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "udep/errors.hpp"
#include "udep/linalg.hpp"

namespace udep {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unitary(const CMat& u, const char* who) {
  if (!u.square()) throw PreconditionError(std::string(who) + ": matrix must be square");
  const double defect = unitarity_defect(u);
  if (defect > 1e-8 * static_cast<double>(u.rows()))
    throw PreconditionError(std::string(who) + ": input is not unitary (defect " +
                            std::to_string(defect) + ")");
}

double wrap_phase(double p) {
  p = std::remainder(p, 2.0 * kPi);
  if (p <= -kPi) p = kPi;
  return p;
}

}  // namespace

double coefficient_bound(std::size_t n) {
  if (n < 1) throw PreconditionError("coefficient_bound: n must be >= 1");
  return std::sqrt(static_cast<double>(n)) * kPi;
}

CoordVector encode(const CMat& u, const Variant& variant) {
  check_unitary(u, "encode");
  const std::size_t n = u.rows();

  switch (variant.kind) {
    case VariantKind::Full:
      return coords_from_skew(matrix_log_unitary(u), variant);
    case VariantKind::SpecialUnitary: {
      // Project onto SU(N) with the principal det root before encoding.
      const cplx det = determinant(u);
      const double psi = std::arg(det);
      const cplx scale = std::polar(1.0, -psi / static_cast<double>(n));
      CMat su = u;
      su *= scale;
      return coords_from_skew(matrix_log_unitary(su), variant);
    }
    case VariantKind::Symmetric: {
      if (fro_dist(u, u.transpose()) > 1e-8)
        throw StructureError("encode: Symmetric variant needs U = U^T");
      return coords_from_skew(matrix_log_unitary(u), variant);
    }
    case VariantKind::Rotation:
      return coords_from_skew(matrix_log_unitary(u), variant);
    case VariantKind::BlockDiagonal: {
      (void)dims(variant, n);
      CoordVector out;
      out.n = n;
      out.variant = variant;
      std::size_t start = 0;
      double off = 0.0;
      for (std::size_t b : variant.blocks) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const bool ri = i >= start && i < start + b;
            const bool rj = j >= start && j < start + b;
            if (ri != rj && ri) off = std::max(off, std::abs(u(i, j)));
          }
        start += b;
      }
      if (off > 1e-10)
        throw StructureError("encode: BlockDiagonal variant needs zero off-block entries");
      start = 0;
      for (std::size_t b : variant.blocks) {
        CMat sub(b, b);
        for (std::size_t i = 0; i < b; ++i)
          for (std::size_t j = 0; j < b; ++j) sub(i, j) = u(start + i, start + j);
        const CoordVector block = encode(sub, Variant::full());
        out.coords.insert(out.coords.end(), block.coords.begin(), block.coords.end());
        start += b;
      }
      return out;
    }
  }
  throw StructureError("encode: invalid variant");
}

CMat decode(const CoordVector& alpha) {
  if (alpha.variant.kind == VariantKind::BlockDiagonal) {
    if (alpha.coords.size() != dims(alpha.variant, alpha.n))
      throw ShapeError("decode: coordinate length mismatch");
    CMat out(alpha.n, alpha.n);
    std::size_t start = 0;
    std::size_t pos = 0;
    for (std::size_t b : alpha.variant.blocks) {
      CoordVector sub;
      sub.n = b;
      sub.variant = Variant::full();
      sub.coords.assign(alpha.coords.begin() + pos, alpha.coords.begin() + pos + b * b);
      const CMat ub = decode(sub);
      for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) out(start + i, start + j) = ub(i, j);
      start += b;
      pos += b * b;
    }
    return out;
  }
  return matrix_exp_skew(skew_from_coords(alpha));
}

RotationCode encode_rotation(const CMat& o) {
  if (!o.square()) throw PreconditionError("encode_rotation: matrix must be square");
  if (o.max_abs_imag() > 1e-9)
    throw PreconditionError("encode_rotation: input is not real");
  check_unitary(o, "encode_rotation");
  const std::size_t n = o.rows();

  const double det = determinant(o).real();
  RotationCode code;
  code.det_sign = det >= 0.0 ? 1 : -1;
  CMat r = o;
  if (code.det_sign < 0)
    for (std::size_t j = 0; j < n; ++j) r(n - 1, j) = -r(n - 1, j);

  const UnitaryEig ue = unitary_eig(r);
  for (double phi : ue.phases)
    if (std::abs(phi - kPi) <= 1e-9)
      throw BranchDegeneracyError(
          "encode_rotation: rotation has eigenvalue -1 (principal log is not real)");
  CMat x = matrix_log_unitary(r);
  code.coords = coords_from_skew(x, Variant::rotation());
  return code;
}

CMat decode_rotation(const RotationCode& code) {
  if (code.det_sign != 1 && code.det_sign != -1)
    throw PreconditionError("decode_rotation: det_sign must be +1 or -1");
  CMat u = decode(code.coords);
  const std::size_t n = u.rows();
  CMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = u(i, j).real();
  if (code.det_sign < 0)
    for (std::size_t j = 0; j < n; ++j) out(n - 1, j) = -out(n - 1, j);
  return out;
}

GivensParams givens_encode(const CMat& u) {
  check_unitary(u, "givens_encode");
  const std::size_t n = u.rows();
  GivensParams p;
  p.n = n;
  p.amplitudes.reserve(n * (n - 1) / 2);
  p.rotation_phases.reserve(n * (n - 1) / 2);
  p.diagonal_phases.resize(n, 0.0);

  CMat w = u;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    // Phase-normalize rows c..N-1 so column c becomes real non-negative.
    for (std::size_t r = c; r < n; ++r) {
      const cplx e = w(r, c);
      const double theta = (e == cplx(0.0, 0.0)) ? 0.0 : std::arg(e);
      if (r == c)
        p.diagonal_phases[c] = theta;
      else
        p.rotation_phases.push_back(theta);
      const cplx rot = std::polar(1.0, -theta);
      for (std::size_t j = 0; j < n; ++j) w(r, j) *= rot;
    }
    // Real Givens rotations zeroing sub-diagonal entries of column c.
    for (std::size_t r = c + 1; r < n; ++r) {
      const double a = w(c, c).real();
      const double b = w(r, c).real();
      const double psi = std::atan2(b, a);
      const double cp = std::cos(psi);
      const double sp = std::sin(psi);
      p.amplitudes.push_back(std::min(1.0, std::max(0.0, cp)));
      for (std::size_t j = 0; j < n; ++j) {
        const cplx xc = w(c, j);
        const cplx xr = w(r, j);
        w(c, j) = cp * xc + sp * xr;
        w(r, j) = -sp * xc + cp * xr;
      }
    }
  }
  p.diagonal_phases[n - 1] = std::arg(w(n - 1, n - 1));
  if (p.diagonal_phases[n - 1] <= -kPi) p.diagonal_phases[n - 1] = kPi;
  return p;
}

CMat givens_decode(const GivensParams& p) {
  const std::size_t n = p.n;
  if (n == 0) throw ShapeError("givens_decode: n must be >= 1");
  const std::size_t pairs = n * (n - 1) / 2;
  if (p.amplitudes.size() != pairs || p.rotation_phases.size() != pairs ||
      p.diagonal_phases.size() != n)
    throw ShapeError("givens_decode: parameter length mismatch");

  CMat w = CMat::identity(n);
  w(n - 1, n - 1) = std::polar(1.0, wrap_phase(p.diagonal_phases[n - 1]));

  // Apply inverse operations in exact reverse order of givens_encode.
  for (std::size_t c = n - 1; c-- > 0;) {
    const std::size_t base = c * (n - 1) - c * (c - 1) / 2;  // index of (c, c+1) entry
    for (std::size_t r = n; r-- > c + 1;) {
      const double amp = std::min(1.0, std::max(0.0, p.amplitudes[base + (r - c - 1)]));
      const double psi = std::acos(amp);
      const double cp = std::cos(psi);
      const double sp = std::sin(psi);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx xc = w(c, j);
        const cplx xr = w(r, j);
        w(c, j) = cp * xc - sp * xr;
        w(r, j) = sp * xc + cp * xr;
      }
    }
    {
      const cplx rot = std::polar(1.0, wrap_phase(p.diagonal_phases[c]));
      for (std::size_t j = 0; j < n; ++j) w(c, j) *= rot;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx rot = std::polar(1.0, wrap_phase(p.rotation_phases[base + (r - c - 1)]));
      for (std::size_t j = 0; j < n; ++j) w(r, j) *= rot;
    }
  }
  return w;
}

std::vector<double> givens_flatten(const GivensParams& p) {
  std::vector<double> v;
  v.reserve(p.n * p.n);
  v.insert(v.end(), p.amplitudes.begin(), p.amplitudes.end());
  v.insert(v.end(), p.rotation_phases.begin(), p.rotation_phases.end());
  v.insert(v.end(), p.diagonal_phases.begin(), p.diagonal_phases.end());
  return v;
}

GivensParams givens_unflatten(std::size_t n, const std::vector<double>& v) {
  const std::size_t pairs = n * (n - 1) / 2;
  if (v.size() != n * n) throw ShapeError("givens_unflatten: expected N^2 values");
  GivensParams p;
  p.n = n;
  p.amplitudes.assign(v.begin(), v.begin() + pairs);
  p.rotation_phases.assign(v.begin() + pairs, v.begin() + 2 * pairs);
  p.diagonal_phases.assign(v.begin() + 2 * pairs, v.end());
  return p;
}

std::vector<double> naive_encode(const CMat& u) {
  std::vector<double> v;
  v.reserve(2 * u.rows() * u.cols());
  for (const cplx& z : u.data()) {
    v.push_back(z.real());
    v.push_back(z.imag());
  }
  return v;
}

CMat naive_decode(std::size_t n, const std::vector<double>& v, bool project) {
  if (v.size() != 2 * n * n) throw ShapeError("naive_decode: expected 2N^2 values");
  CMat u(n, n);
  for (std::size_t i = 0; i < n * n; ++i)
    u.data()[i] = cplx(v[2 * i], v[2 * i + 1]);
  if (project) return nearest_unitary(u);
  return u;
}

}  // namespace udep
