// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "udep/codec.hpp"
#include "udep/linalg.hpp"

using namespace udep;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("coefficient_bound values") {
  CHECK(coefficient_bound(1) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(coefficient_bound(2) == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-15));
  CHECK(coefficient_bound(4) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("encode basic values") {
  const CoordVector c0 = encode(CMat::identity(2), Variant::full());
  for (double v : c0.coords) CHECK(std::abs(v) <= 1e-14);

  for (double phi : {0.3, -2.5, kPi}) {
    CMat u(1, 1);
    u(0, 0) = std::polar(1.0, phi);
    const CoordVector c = encode(u, Variant::full());
    CHECK(c.coords.size() == 1);
    CHECK(c.coords[0] == doctest::Approx(phi).epsilon(1e-12));
  }

  CMat mi = CMat::identity(2);
  mi *= cplx(-1.0, 0.0);
  const CoordVector cm = encode(mi, Variant::full());
  CHECK(cm.coords[0] == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-14));
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(cm.coords[i]) <= 1e-13);

  CMat bad = CMat::identity(2);
  bad *= cplx(1.5, 0.0);
  CHECK_THROWS_AS(encode(bad, Variant::full()), PreconditionError);
}

TEST_CASE("decode basic values and unitarity by construction") {
  CHECK(fro_dist(decode({2, Variant::full(), {0, 0, 0, 0}}), CMat::identity(2)) <= 1e-14);

  CMat mi = CMat::identity(2);
  mi *= cplx(-1.0, 0.0);
  CHECK(fro_dist(decode({2, Variant::full(), {std::sqrt(2.0) * kPi, 0, 0, 0}}), mi) <= 1e-12);

  Rng rng(2);
  const double bound = coefficient_bound(8);
  for (int t = 0; t < 50; ++t) {
    CoordVector alpha;
    alpha.n = 8;
    alpha.variant = Variant::full();
    for (int i = 0; i < 64; ++i)
      alpha.coords.push_back(bound * (2.0 * rng.uniform() - 1.0));
    CHECK(unitarity_defect(decode(alpha)) <= 1e-9 * 8);
  }
}

TEST_CASE("full-variant round trip on Haar samples") {
  Rng rng(101);
  for (std::size_t n : {1, 2, 3, 4, 8}) {
    for (int t = 0; t < 25; ++t) {
      const CMat u = haar_unitary(n, rng);
      CHECK(fro_dist(decode(encode(u, Variant::full())), u) <= 1e-9 * n);
    }
  }
}

TEST_CASE("full-variant coordinates stay within the bound") {
  Rng rng(55);
  for (std::size_t n : {4, 8}) {
    const double bound = coefficient_bound(n) + 1e-9;
    for (int t = 0; t < 200; ++t) {
      const CoordVector c = encode(haar_unitary(n, rng), Variant::full());
      for (double v : c.coords) CHECK(std::abs(v) <= bound);
    }
  }
}

TEST_CASE("encodings of distinct matrices differ") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const CMat u = haar_unitary(3, rng);
    const CMat v = haar_unitary(3, rng);
    if (fro_dist(u, v) <= 1e-3) continue;
    const CoordVector cu = encode(u, Variant::full());
    const CoordVector cv = encode(v, Variant::full());
    double d = 0.0;
    for (std::size_t i = 0; i < cu.coords.size(); ++i) {
      const double e = cu.coords[i] - cv.coords[i];
      d += e * e;
    }
    CHECK(d > 0.0);
  }
}

TEST_CASE("special-unitary variant round trips inside SU(N)") {
  Rng rng(31);
  for (std::size_t n : {2, 4, 5}) {
    for (int t = 0; t < 20; ++t) {
      const CMat u = haar_unitary(n, rng);
      const CoordVector c = encode(u, Variant::special_unitary());
      CHECK(c.coords.size() == n * n - 1);
      const CMat uhat = decode(c);
      // The dropped global-phase coordinate leaves an N-th root-of-unity
      // ambiguity; the reconstruction matches up to that scalar.
      CHECK(std::abs(std::abs(determinant(uhat)) - 1.0) <= 1e-9);
      const cplx det = determinant(uhat);
      CHECK(std::abs(det - cplx(1.0, 0.0)) <= 1e-8);
      // Phase-invariant agreement with the input.
      cplx tr = 0.0;
      const CMat uh = u.adjoint() * uhat;
      for (std::size_t i = 0; i < n; ++i) tr += uh(i, i);
      CHECK(std::abs(tr) / n == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("symmetric variant round trip") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const CMat v = haar_unitary(5, rng);
    const CMat u = v * v.transpose();
    const CoordVector c = encode(u, Variant::symmetric());
    CHECK(c.coords.size() == 15);
    const CMat uhat = decode(c);
    CHECK(fro_dist(uhat, u) <= 1e-9 * 5);
    CHECK(fro_dist(uhat, uhat.transpose()) <= 1e-9 * 5);
  }
  CHECK_THROWS_AS(encode(haar_unitary(4, rng), Variant::symmetric()), StructureError);
}

TEST_CASE("rotation codec") {
  const RotationCode ci = encode_rotation(CMat::identity(3));
  CHECK(ci.det_sign == 1);
  for (double v : ci.coords.coords) CHECK(std::abs(v) <= 1e-14);

  CMat r2(2, 2);
  const double theta = kPi / 3;
  r2(0, 0) = std::cos(theta);
  r2(0, 1) = std::sin(theta);
  r2(1, 0) = -std::sin(theta);
  r2(1, 1) = std::cos(theta);
  const RotationCode c2 = encode_rotation(r2);
  CHECK(c2.coords.coords.size() == 1);
  CHECK(std::abs(c2.coords.coords[0]) ==
        doctest::Approx(std::sqrt(2.0) * theta).epsilon(1e-12));
  CHECK(fro_dist(decode_rotation(c2), r2) <= 1e-12);

  CMat refl = CMat::identity(3);
  refl(2, 2) = -1.0;
  const RotationCode c3 = encode_rotation(refl);
  CHECK(c3.det_sign == -1);
  for (double v : c3.coords.coords) CHECK(std::abs(v) <= 1e-12);
  CHECK(fro_dist(decode_rotation(c3), refl) <= 1e-12);

  CMat halfturn = CMat::identity(3);
  halfturn(0, 0) = -1.0;
  halfturn(1, 1) = -1.0;  // rotation by pi: eigenvalue -1 pair
  CHECK_THROWS_AS(encode_rotation(halfturn), BranchDegeneracyError);
}

TEST_CASE("rotation round trip on Haar rotations") {
  Rng rng(59);
  int done = 0;
  while (done < 30) {
    const CMat o = haar_rotation(5, rng);
    RotationCode code;
    try {
      code = encode_rotation(o);
    } catch (const BranchDegeneracyError&) {
      continue;
    }
    CHECK(code.coords.coords.size() == 10);
    CHECK(fro_dist(decode_rotation(code), o) <= 1e-9 * 5);
    ++done;
  }
}

TEST_CASE("block-diagonal codec") {
  Rng rng(71);
  const Variant variant = Variant::block_diagonal({2, 3});
  CMat w(5, 5);
  const CMat b1 = haar_unitary(2, rng);
  const CMat b2 = haar_unitary(3, rng);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) w(i, j) = b1(i, j);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) w(2 + i, 2 + j) = b2(i, j);

  const CoordVector c = encode(w, variant);
  CHECK(c.coords.size() == 13);
  const CMat what = decode(c);
  CHECK(fro_dist(what, w) <= 1e-9 * 5);
  // Off-block entries are exactly zero by per-block synthesis.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 2; j < 5; ++j) {
      CHECK(what(i, j) == cplx(0.0, 0.0));
      CHECK(what(j, i) == cplx(0.0, 0.0));
    }

  CHECK_THROWS_AS(encode(haar_unitary(5, rng), variant), StructureError);
}

TEST_CASE("givens codec basic values") {
  const GivensParams pi = givens_encode(CMat::identity(4));
  for (double a : pi.amplitudes) CHECK(a == doctest::Approx(1.0).epsilon(1e-14));
  for (double p : pi.rotation_phases) CHECK(std::abs(p) <= 1e-14);
  for (double p : pi.diagonal_phases) CHECK(std::abs(p) <= 1e-14);
  CHECK(fro_dist(givens_decode(pi), CMat::identity(4)) <= 1e-12);

  CMat d(2, 2);
  d(0, 0) = std::polar(1.0, 0.7);
  d(1, 1) = std::polar(1.0, -1.2);
  const GivensParams pd = givens_encode(d);
  CHECK(pd.amplitudes[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(pd.rotation_phases[0]) <= 1e-12);
  CHECK(pd.diagonal_phases[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(pd.diagonal_phases[1] == doctest::Approx(-1.2).epsilon(1e-12));
  CHECK(fro_dist(givens_decode(pd), d) <= 1e-12);
}

TEST_CASE("givens round trip and parameter ranges") {
  Rng rng(83);
  for (std::size_t n : {2, 4, 6}) {
    for (int t = 0; t < 20; ++t) {
      const CMat u = haar_unitary(n, rng);
      const GivensParams p = givens_encode(u);
      CHECK(p.amplitudes.size() == n * (n - 1) / 2);
      CHECK(p.rotation_phases.size() == n * (n - 1) / 2);
      CHECK(p.diagonal_phases.size() == n);
      for (double a : p.amplitudes) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
      }
      for (double ph : p.rotation_phases) {
        CHECK(ph > -kPi - 1e-15);
        CHECK(ph <= kPi + 1e-15);
      }
      CHECK(fro_dist(givens_decode(p), u) <= 1e-9 * n);
    }
  }
}

TEST_CASE("givens decoder clamps and wraps noisy parameters") {
  Rng rng(97);
  for (int t = 0; t < 30; ++t) {
    GivensParams p;
    p.n = 4;
    for (int i = 0; i < 6; ++i) {
      p.amplitudes.push_back(-0.5 + 2.0 * rng.uniform());      // may leave [0,1]
      p.rotation_phases.push_back(8.0 * rng.gaussian());       // may leave (-pi,pi]
    }
    for (int i = 0; i < 4; ++i) p.diagonal_phases.push_back(8.0 * rng.gaussian());
    CHECK(unitarity_defect(givens_decode(p)) <= 1e-9 * 4);
  }
}

TEST_CASE("givens flatten/unflatten") {
  Rng rng(103);
  const CMat u = haar_unitary(4, rng);
  const GivensParams p = givens_encode(u);
  const std::vector<double> flat = givens_flatten(p);
  CHECK(flat.size() == 16);
  const GivensParams q = givens_unflatten(4, flat);
  CHECK(q.amplitudes == p.amplitudes);
  CHECK(q.rotation_phases == p.rotation_phases);
  CHECK(q.diagonal_phases == p.diagonal_phases);
  CHECK_THROWS_AS(givens_unflatten(4, std::vector<double>(15, 0.0)), ShapeError);
}

TEST_CASE("naive codec") {
  const std::vector<double> v = naive_encode(CMat::identity(2));
  CHECK(v == std::vector<double>{1, 0, 0, 0, 0, 0, 1, 0});

  Rng rng(107);
  const CMat u = haar_unitary(3, rng);
  CHECK(fro_dist(naive_decode(3, naive_encode(u), false), u) == 0.0);

  // Additive noise leaves the group; projection restores it.
  std::vector<double> noisy = naive_encode(CMat::identity(2));
  for (double& x : noisy) x += 0.05;
  const CMat raw = naive_decode(2, noisy, false);
  CHECK(unitarity_defect(raw) > 1e-3);
  CHECK(unitarity_defect(naive_decode(2, noisy, true)) <= 1e-9);
}
