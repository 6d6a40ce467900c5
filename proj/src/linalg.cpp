// SPDX-License-Identifier: Apache-2.0
#include "udep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace udep {

namespace {

constexpr double kJacobiConvTol = 1e-12;
constexpr int kJacobiMaxSweeps = 40;

double offdiag_norm(const CMat& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing A(p,q); A Hermitian, V accumulates.
void jacobi_rotate(CMat& a, CMat& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r <= 0.0) return;
  const cplx f = apq / r;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx fs = f * s;
  const cplx fc = f * c;
  const cplx cfs = std::conj(f) * s;
  const cplx cfc = std::conj(f) * c;

  const std::size_t n = a.rows();
  // Rows: A <- J^H A.
  {
    cplx* rp = a.row_ptr(p);
    cplx* rq = a.row_ptr(q);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx xp = rp[k];
      const cplx xq = rq[k];
      rp[k] = c * xp - fs * xq;
      rq[k] = s * xp + fc * xq;
    }
  }
  // Columns: A <- A J.
  for (std::size_t k = 0; k < n; ++k) {
    cplx* rk = a.row_ptr(k);
    const cplx xp = rk[p];
    const cplx xq = rk[q];
    rk[p] = c * xp - cfs * xq;
    rk[q] = s * xp + cfc * xq;
  }
  // Eigenvectors: V <- V J.
  for (std::size_t k = 0; k < v.rows(); ++k) {
    cplx* rk = v.row_ptr(k);
    const cplx xp = rk[p];
    const cplx xq = rk[q];
    rk[p] = c * xp - cfs * xq;
    rk[q] = s * xp + cfc * xq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cplx(a(p, p).real(), 0.0);
  a(q, q) = cplx(a(q, q).real(), 0.0);
}

}  // namespace

HermitianEig hermitian_eig(const CMat& a) {
  if (!a.square()) throw PreconditionError("hermitian_eig: matrix must be square");
  if (!a.all_finite()) throw PreconditionError("hermitian_eig: non-finite entries");
  const double fro = a.fro_norm();
  const double herm_defect = fro_dist(a, a.adjoint());
  if (herm_defect > 1e-10 * std::max(fro, 1e-300))
    throw PreconditionError("hermitian_eig: input is not Hermitian");

  const std::size_t n = a.rows();
  CMat work = a;
  // Symmetrize exactly; removes the allowed sub-tolerance defect.
  for (std::size_t i = 0; i < n; ++i) {
    work(i, i) = cplx(work(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (work(i, j) + std::conj(work(j, i)));
      work(i, j) = m;
      work(j, i) = std::conj(m);
    }
  }
  CMat v = CMat::identity(n);

  const double conv = kJacobiConvTol * std::max(fro, 1e-300);
  const double skip = conv / (2.0 * static_cast<double>(n));
  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (offdiag_norm(work) <= conv) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(work(p, q)) > skip) jacobi_rotate(work, v, p, q);
  }
  if (!converged && offdiag_norm(work) > conv)
    throw ConvergenceError("hermitian_eig: Jacobi did not converge within 40 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work(i, i).real() < work(j, j).real();
  });
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = work(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

double unitarity_defect(const CMat& a) {
  if (!a.square()) throw PreconditionError("unitarity_defect: matrix must be square");
  CMat g = a.adjoint() * a;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.fro_norm();
}

namespace {

// Assemble phases from a candidate eigenbasis via Rayleigh quotients of U.
std::vector<double> phases_from_basis(const CMat& u, const CMat& v) {
  const std::size_t n = u.rows();
  const CMat w = u * v;
  std::vector<double> phases(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += std::conj(v(i, j)) * w(i, j);
    double phi = std::arg(mu);
    if (phi <= -std::numbers::pi) phi = std::numbers::pi;
    phases[j] = phi;
  }
  return phases;
}

double eig_residual(const CMat& u, const CMat& v, const std::vector<double>& phases) {
  const std::size_t n = u.rows();
  CMat scaled = v;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx e = std::polar(1.0, phases[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= e;
  }
  return fro_dist(scaled * v.adjoint(), u);
}

}  // namespace

UnitaryEig unitary_eig(const CMat& u, double cluster_tol) {
  if (!u.square()) throw PreconditionError("unitary_eig: matrix must be square");
  const std::size_t n = u.rows();
  const double defect = unitarity_defect(u);
  if (defect > 1e-8 * static_cast<double>(n))
    throw PreconditionError("unitary_eig: input is not unitary (defect " +
                            std::to_string(defect) + ")");

  const CMat uh = u.adjoint();
  CMat h(n, n), k(n, n);
  const cplx half(0.5, 0.0);
  const cplx mhalf_j(0.0, -0.5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = half * (u(i, j) + uh(i, j));
      k(i, j) = mhalf_j * (u(i, j) - uh(i, j));
    }
  const HermitianEig he = hermitian_eig(h);

  UnitaryEig best;
  double best_res = -1.0;
  for (double ctol : {cluster_tol, cluster_tol * 1e2, cluster_tol * 1e4}) {
    CMat v = he.eigenvectors;
    // Cluster near-degenerate H-eigenvalues, split each cluster with K.
    std::size_t start = 0;
    while (start < n) {
      std::size_t end = start + 1;
      while (end < n && he.eigenvalues[end] - he.eigenvalues[end - 1] <= ctol) ++end;
      const std::size_t m = end - start;
      if (m >= 2) {
        CMat vc(n, m);
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t i = 0; i < n; ++i) vc(i, j) = v(i, start + j);
        CMat b = vc.adjoint() * (k * vc);
        // Force Hermitian before the small eigensolve.
        for (std::size_t i = 0; i < m; ++i) {
          b(i, i) = cplx(b(i, i).real(), 0.0);
          for (std::size_t j = i + 1; j < m; ++j) {
            const cplx mij = 0.5 * (b(i, j) + std::conj(b(j, i)));
            b(i, j) = mij;
            b(j, i) = std::conj(mij);
          }
        }
        const HermitianEig sub = hermitian_eig(b);
        const CMat rotated = vc * sub.eigenvectors;
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t i = 0; i < n; ++i) v(i, start + j) = rotated(i, j);
      }
      start = end;
    }
    std::vector<double> phases = phases_from_basis(u, v);
    const double res = eig_residual(u, v, phases);
    if (best_res < 0.0 || res < best_res) {
      best_res = res;
      best.phases = std::move(phases);
      best.eigenvectors = std::move(v);
    }
    if (best_res <= 1e-12 * static_cast<double>(n)) break;
  }
  return best;
}

CMat matrix_log_unitary(const CMat& u) {
  const UnitaryEig ue = unitary_eig(u);
  const std::size_t n = u.rows();
  CMat scaled = ue.eigenvectors;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx jphi(0.0, ue.phases[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= jphi;
  }
  CMat x = scaled * ue.eigenvectors.adjoint();
  // Project out the roundoff Hermitian component; X is skew by construction.
  CMat xh = x.adjoint();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = 0.5 * (x(i, j) - xh(i, j));
  return x;
}

CMat matrix_exp_skew(const CMat& x) {
  if (!x.square()) throw PreconditionError("matrix_exp_skew: matrix must be square");
  const double fro = x.fro_norm();
  const double skew_defect = fro_dist(x, x.adjoint() * cplx(-1.0, 0.0));
  if (fro > 0.0 && skew_defect > 1e-9 * fro)
    throw PreconditionError("matrix_exp_skew: input is not skew-Hermitian");

  const std::size_t n = x.rows();
  // H = -jX is Hermitian; exponentiate its spectrum on the unit circle.
  CMat h(n, n);
  const CMat xh = x.adjoint();
  const cplx mhalf_j(0.0, -0.5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = mhalf_j * (x(i, j) - xh(i, j));
  const HermitianEig he = hermitian_eig(h);
  CMat scaled = he.eigenvectors;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx e = std::polar(1.0, he.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= e;
  }
  return scaled * he.eigenvectors.adjoint();
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass; returns the norm
// of the column before normalization (0 if it vanished).
double mgs_insert(CMat& q, std::size_t col, std::vector<cplx>& v) {
  const std::size_t m = v.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < col; ++j) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < m; ++i) proj += std::conj(q(i, j)) * v[i];
      for (std::size_t i = 0; i < m; ++i) v[i] -= proj * q(i, j);
    }
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) norm += std::norm(v[i]);
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (std::size_t i = 0; i < m; ++i) q(i, col) = v[i] / norm;
  return norm;
}

}  // namespace

SvdResult svd(const CMat& a) {
  if (!a.all_finite()) throw PreconditionError("svd: non-finite entries");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    SvdResult t = svd(a.adjoint());
    return SvdResult{std::move(t.right), std::move(t.singulars), std::move(t.left)};
  }
  CMat g = a.adjoint() * a;
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = cplx(g(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx mid = 0.5 * (g(i, j) + std::conj(g(j, i)));
      g(i, j) = mid;
      g(j, i) = std::conj(mid);
    }
  }
  const HermitianEig he = hermitian_eig(g);

  SvdResult out;
  out.singulars.resize(n);
  out.right = CMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = n - 1 - j;  // descending
    out.singulars[j] = std::sqrt(std::max(0.0, he.eigenvalues[src]));
    for (std::size_t i = 0; i < n; ++i) out.right(i, j) = he.eigenvectors(i, src);
  }

  out.left = CMat(m, n);
  const double sigma_max = out.singulars.empty() ? 0.0 : out.singulars[0];
  const double rank_tol = 1e-12 * sigma_max;
  std::size_t col = 0;
  for (; col < n; ++col) {
    if (out.singulars[col] <= rank_tol) break;
    std::vector<cplx> v(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += a(i, t) * out.right(t, col);
      v[i] = s / out.singulars[col];
    }
    mgs_insert(out.left, col, v);
  }
  // Null-space completion for vanished singular values.
  for (std::size_t cand = 0; col < n && cand < m; ++cand) {
    std::vector<cplx> v(m, 0.0);
    v[cand] = 1.0;
    if (mgs_insert(out.left, col, v) > 0.3) ++col;
  }
  return out;
}

CMat complete_unitary(const CMat& partial) {
  const std::size_t m = partial.rows();
  const std::size_t k = partial.cols();
  if (k > m) throw ShapeError("complete_unitary: more columns than rows");
  CMat q(m, m);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) q(i, j) = partial(i, j);
  std::size_t col = k;
  for (std::size_t cand = 0; col < m && cand < m; ++cand) {
    std::vector<cplx> v(m, 0.0);
    v[cand] = 1.0;
    if (mgs_insert(q, col, v) > 0.3) ++col;
  }
  if (col < m) throw ConvergenceError("complete_unitary: could not complete basis");
  return q;
}

CMat nearest_unitary(const CMat& a) {
  if (!a.square()) throw PreconditionError("nearest_unitary: matrix must be square");
  const SvdResult s = svd(a);
  const double sigma_max = s.singulars[0];
  const double sigma_min = s.singulars[a.rows() - 1];
  if (sigma_max <= 0.0 || sigma_min < 1e-12 * sigma_max)
    throw DegenerateProjectionError("nearest_unitary: rank-deficient input");
  return s.left * s.right.adjoint();
}

CMat haar_unitary(std::size_t n, Rng& rng) {
  if (n < 1) throw PreconditionError("haar_unitary: n must be >= 1");
  CMat g(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) = cplx(rng.gaussian(), rng.gaussian()) * inv_sqrt2;
  // MGS QR with positive real R diagonal is already phase-corrected Haar.
  CMat q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
    if (mgs_insert(q, j, v) <= 0.0)
      throw ConvergenceError("haar_unitary: degenerate Gaussian sample");
  }
  return q;
}

CMat haar_rotation(std::size_t n, Rng& rng) {
  if (n < 1) throw PreconditionError("haar_rotation: n must be >= 1");
  CMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  CMat q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
    if (mgs_insert(q, j, v) <= 0.0)
      throw ConvergenceError("haar_rotation: degenerate Gaussian sample");
  }
  if (determinant(q).real() < 0.0)
    for (std::size_t i = 0; i < n; ++i) q(i, n - 1) = -q(i, n - 1);
  return q;
}

cplx determinant(const CMat& a) {
  if (!a.square()) throw PreconditionError("determinant: matrix must be square");
  const std::size_t n = a.rows();
  CMat lu = a;
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = std::abs(lu(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double mag = std::abs(lu(r, c));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(c, j), lu(piv, j));
      det = -det;
    }
    det *= lu(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx factor = lu(r, c) / lu(c, c);
      for (std::size_t j = c; j < n; ++j) lu(r, j) -= factor * lu(c, j);
    }
  }
  return det;
}

}  // namespace udep
