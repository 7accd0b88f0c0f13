// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "mpshift/factorizations.hpp"
#include "mpshift/fixtures.hpp"
#include "mpshift/shifts.hpp"
#include "mpshift/spectra.hpp"
#include "support.hpp"

using namespace mpshift;
using testsupport::Rng;

namespace {

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::InvalidArgument;
}

CMatrix scalar(Complex x) { return CMatrix::Constant(1, 1, x); }

// Brute-force G+ by fixed-point iteration X <- -(A_0 + A_1 X)^{-1} A_{-1}.
CMatrix fixed_point_g(const QuadCoeffs& q) {
  CMatrix x = CMatrix::Zero(q.a0.rows(), q.a0.cols());
  for (int k = 0; k < 20000; ++k) {
    const CMatrix next = -Eigen::PartialPivLU<CMatrix>(q.a0 + q.a1 * x).solve(q.am1);
    if ((next - x).norm() <= 1e-15 * std::max(1.0, x.norm())) return next;
    x = next;
  }
  return x;
}

}  // namespace

TEST_CASE("scalar quadratic has closed-form factors") {
  const QuadCoeffs q = QuadCoeffs::from(fixtures::scalar_quadratic());
  const QuadFactorization f = cr_quadratic(q);
  const double g = 2.0 - std::sqrt(3.0);
  CHECK(std::abs(f.Gplus(0, 0) - g) <= 1e-14);
  CHECK(std::abs(f.Rplus(0, 0) - g) <= 1e-14);
  CHECK(std::abs(f.Kplus(0, 0) - (1.0 - g / 4.0)) <= 1e-14);
  CHECK(std::abs(h0_series(f)(0, 0) - 2.0 / std::sqrt(3.0)) <= 1e-13);
  CHECK(f.residual <= 1e-14);
}

TEST_CASE("cyclic reduction stops immediately when the outer blocks vanish") {
  const QuadCoeffs q{scalar(0.0), scalar(3.0), scalar(0.0)};
  const CyclicReduction cr = cyclic_reduction(q);
  CHECK(cr.iterations == 0);
  const QuadFactorization f = cr_quadratic(q);
  CHECK(f.Gplus(0, 0) == Complex{0.0, 0.0});
  CHECK(f.Kplus(0, 0) == Complex{3.0, 0.0});
}

TEST_CASE("cyclic reduction errors") {
  CHECK(error_code([] { cyclic_reduction({scalar(1.0), scalar(0.0), scalar(1.0)}); }) ==
        Errc::SingularPivot);
  CHECK(error_code([] { cr_quadratic({scalar(-1.0), scalar(2.0), scalar(-1.0)}, 1e-14, 10); }) ==
        Errc::NoConvergence);
  CHECK(error_code([] { cr_quadratic({scalar(-2.0), scalar(1.0), scalar(-0.1)}); }) ==
        Errc::NotCanonical);
  CHECK(error_code([] { cyclic_reduction({scalar(1.0), CMatrix::Identity(2, 2), scalar(1.0)}); }) ==
        Errc::DimensionMismatch);
}

TEST_CASE("cyclic reduction recovers canonical factors of random instances") {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testsupport::canonical_instance(rng, rng.integer(1, 4));
    const QuadFactorization f = cr_quadratic(inst.q);
    const double s = inst.q.am1.norm() + inst.q.a0.norm() + inst.q.a1.norm();
    CHECK((f.Gplus - inst.G).norm() <= 1e-10 * s);
    CHECK((f.Rplus - inst.R).norm() <= 1e-10 * s);
    CHECK((f.Kplus - inst.K).norm() <= 1e-10 * s);
    CHECK(f.residual <= 1e-12);
    CHECK(spectral_radius(f.Gplus) < 1.0);
    CHECK(spectral_radius(f.Rplus) < 1.0);
  }
}

TEST_CASE("QBD instances agree with functional iteration") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const QuadCoeffs q = testsupport::qbd_instance(rng, rng.integer(2, 5));
    const QuadFactorization f = cr_quadratic(q);
    CHECK((f.Gplus - fixed_point_g(q)).norm() <= 1e-11);
    CHECK(f.Gplus.imag().norm() <= 1e-14);
    CHECK(f.Gplus.real().minCoeff() >= -1e-14);
  }
}

TEST_CASE("inverse coefficients invert A on the unit circle") {
  Rng rng(53);
  const auto inst = testsupport::canonical_instance(rng, 3, 0.5);
  const QuadFactorization f = cr_quadratic(inst.q);
  const LaurentPoly h = inverse_coefficients(f, 60);
  CHECK(h.lo() == -60);
  CHECK(h.truncated());
  CHECK((h[0] - h0_series(f)).norm() <= 1e-13 * h[0].norm());
  const LaurentPoly a = inst.q.to_laurent();
  for (const Complex z : unit_circle_points(8)) {
    const CMatrix prod = evaluate(a, z) * evaluate(h, z);
    CHECK((prod - CMatrix::Identity(3, 3)).norm() <= 1e-10);
  }
  CHECK(error_code([&] { inverse_coefficients(f, -1); }) == Errc::InvalidArgument);
}

TEST_CASE("reversed factorization from W = H_0") {
  Rng rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testsupport::canonical_instance(rng, 3);
    const QuadFactorization f = cr_quadratic(inst.q);
    const ReversedFactorization rf = reversed_factorization(inst.q, f);
    CHECK(rf.residual <= 1e-10);
    CHECK((rf.W - h0_series(f)).norm() == 0.0);
    // Independent check: factor the reversed quadratic directly.
    const QuadCoeffs rev{inst.q.a1, inst.q.a0, inst.q.am1};
    const QuadFactorization direct = cr_quadratic(rev);
    CHECK((direct.Gplus - rf.Gminus).norm() <= 1e-10);
    CHECK((direct.Rplus - rf.Rminus).norm() <= 1e-10);
    CHECK((direct.Kplus - rf.Kminus).norm() <= 1e-10);
  }
}

TEST_CASE("canonical factors reproduce A") {
  Rng rng(55);
  const auto inst = testsupport::canonical_instance(rng, 3);
  const QuadFactorization f = cr_quadratic(inst.q);
  const LaurentPoly prod = CanonicalFactors::from(f).product();
  CHECK(testsupport::max_coeff_diff(prod, inst.q.to_laurent()) <= 1e-12);
}

TEST_CASE("both-sides update agrees with refactoring the shifted quadratic") {
  Rng rng(56);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testsupport::canonical_instance(rng, rng.integer(2, 4));
    const QuadFactorization f = cr_quadratic(inst.q);
    const ReversedFactorization rf = reversed_factorization(inst.q, f);
    const auto [lam, u] = testsupport::dominant_pair(f.Gplus);
    const Complex mu = rng.in_disk(0.2);
    const RightShift s{lam, mu, u, std::nullopt};
    const auto [ft, rt] = shifted_factorization_both(inst.q, f, rf, s);
    const QuadCoeffs qt = QuadCoeffs::from(right_shift_laurent(inst.q.to_laurent(), s));
    const QuadFactorization direct = cr_quadratic(qt);
    const QuadFactorization direct_rev = cr_quadratic({qt.a1, qt.a0, qt.am1});
    const double scale = inst.q.am1.norm() + inst.q.a0.norm() + inst.q.a1.norm();
    CHECK((ft.Gplus - direct.Gplus).norm() <= 1e-10 * scale);
    CHECK((ft.Rplus - direct.Rplus).norm() <= 1e-10 * scale);
    CHECK((ft.Kplus - direct.Kplus).norm() <= 1e-10 * scale);
    CHECK((rt.Gminus - direct_rev.Gplus).norm() <= 1e-10 * scale);
    CHECK((rt.Rminus - direct_rev.Rplus).norm() <= 1e-10 * scale);
    CHECK((rt.Kminus - direct_rev.Kplus).norm() <= 1e-10 * scale);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("both-sides update preconditions") {
  Rng rng(57);
  const auto inst = testsupport::canonical_instance(rng, 2);
  const QuadFactorization f = cr_quadratic(inst.q);
  const ReversedFactorization rf = reversed_factorization(inst.q, f);
  const auto [lam, u] = testsupport::dominant_pair(f.Gplus);
  CHECK(error_code([&] { shifted_factorization_both(inst.q, f, rf, {lam, 1.5, u, std::nullopt}); }) ==
        Errc::ShiftOutsideDisk);
}

TEST_CASE("right-shift update on L keeps U and matches the shifted polynomial") {
  Rng rng(58);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testsupport::canonical_instance(rng, 3);
    const QuadFactorization f = cr_quadratic(inst.q);
    const CanonicalFactors cf = CanonicalFactors::from(f);
    const auto [lam, u] = testsupport::dominant_pair(f.Gplus);
    const RightShift s{lam, rng.in_disk(0.3), u, std::nullopt};
    const CanonicalFactors sf = shifted_factorization_right(cf, s);
    CHECK(sf.U == cf.U);
    const LaurentPoly expected = right_shift_laurent(inst.q.to_laurent(), s);
    CHECK(testsupport::max_coeff_diff(sf.product(), expected) <= 1e-12);
    // For the quadratic the closed form is G~ = G + (mu - lambda) Q.
    const CMatrix Q = u * normalized_dual(u, std::nullopt).adjoint();
    CHECK((sf.L[1] + f.Gplus + (s.mu - lam) * Q).norm() <= 1e-12);
  }
  const auto inst = testsupport::canonical_instance(rng, 2);
  const CanonicalFactors cf = CanonicalFactors::from(cr_quadratic(inst.q));
  CVector e = CVector::Zero(2);
  e(0) = 1.0;
  CHECK(error_code([&] { shifted_factorization_right(cf, {1.2, 0.0, e, std::nullopt}); }) ==
        Errc::ShiftOutsideDisk);
}

TEST_CASE("double-shift update on both factors") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testsupport::canonical_instance(rng, 3);
    const QuadFactorization f = cr_quadratic(inst.q);
    const CanonicalFactors cf = CanonicalFactors::from(f);
    const auto [l1, u] = testsupport::dominant_pair(f.Gplus);
    const auto [r, y] = testsupport::dominant_pair(f.Rplus.adjoint());
    // Left eigenvector of U(z) = K - z R K at z = 1/conj(r): y^* (I - z R) = 0.
    const Complex l2 = 1.0 / std::conj(r);
    const RightShift rs{l1, rng.in_disk(0.3), u, std::nullopt};
    const LeftShift ls{l2, 3.0 * rng.in_annulus(1.0, 1.2), y, std::nullopt};
    const CanonicalFactors df = double_shift_factorization(cf, rs, ls);
    const LaurentPoly expected = left_shift_laurent(right_shift_laurent(inst.q.to_laurent(), rs), ls);
    CHECK(testsupport::max_coeff_diff(df.product(), expected) <= 1e-11 * coeff_scale(expected));
  }
  const auto inst = testsupport::canonical_instance(rng, 2);
  const CanonicalFactors cf = CanonicalFactors::from(cr_quadratic(inst.q));
  CVector e = CVector::Zero(2);
  e(0) = 1.0;
  CHECK(error_code([&] {
          double_shift_factorization(cf, {0.5, 0.1, e, std::nullopt}, {0.5, 2.0, e, std::nullopt});
        }) == Errc::ModulusConstraintViolated);
}

TEST_CASE("polynomial factorization A(z) = U(z)(zI - G)") {
  Rng rng(60);
  const auto inst = testsupport::canonical_instance(rng, 3);
  const QuadFactorization f = cr_quadratic(inst.q);
  // z A(z) is the polynomial A_{-1} + z A_0 + z^2 A_1 with minimal solvent G+.
  const MatrixPoly p({inst.q.am1, inst.q.a0, inst.q.a1});
  const PolyFactorization pf = poly_factorization(p, f.Gplus);
  REQUIRE(pf.U.size() == 2);
  CHECK(pf.consistency <= 1e-12);
  CHECK((pf.U[1] - p[2]).norm() == 0.0);
  for (const Complex z : unit_circle_points(8)) {
    const CMatrix rhs = (pf.U[0] + z * pf.U[1]) * (z * CMatrix::Identity(3, 3) - f.Gplus);
    CHECK((evaluate(p, z) - rhs).norm() <= 1e-12 * coeff_scale(p));
  }
  CHECK(error_code([&] { poly_factorization(p, 5.0 * CMatrix::Identity(3, 3)); }) == Errc::NotASolvent);
  CHECK(error_code([&] { poly_factorization(p, CMatrix::Identity(2, 2)); }) == Errc::DimensionMismatch);
}

TEST_CASE("shifted W equals the H_0 series of the shifted factors") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testsupport::canonical_instance(rng, 3);
    const QuadFactorization f = cr_quadratic(inst.q);
    const ReversedFactorization rf = reversed_factorization(inst.q, f);
    const auto [lam, u] = testsupport::dominant_pair(f.Gplus);
    const Complex mu = trial == 0 ? Complex{0.0, 0.0} : rng.in_disk(0.5);
    const auto [ft, rt] = shifted_factorization_both(inst.q, f, rf, {lam, mu, u, std::nullopt});
    CHECK((rt.W - h0_series(ft)).norm() <= 1e-12 * rt.W.norm());
    if (trial == 0) {
      const CMatrix Q = u * normalized_dual(u, std::nullopt).adjoint();
      CHECK((rt.W - (rf.W - lam * Q * rf.W * f.Rplus)).norm() <= 1e-13 * rt.W.norm());
    }
  }
}
