// SPDX-License-Identifier: Apache-2.0

#include "mpshift/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpshift/spectra.hpp"

namespace mpshift {

namespace {

constexpr double kFactorTol = 1e-10;
constexpr double kRadiusMargin = 1e-8;

double inf_norm(const CMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

void require_square_triple(const QuadCoeffs& q) {
  const Index n = q.a0.rows();
  for (const CMatrix* m : {&q.am1, &q.a0, &q.a1}) {
    if (m->rows() != n || m->cols() != n) {
      throw Error(Errc::DimensionMismatch, "quadratic coefficients must be square and equal-sized");
    }
  }
}

Eigen::PartialPivLU<CMatrix> checked_lu(const CMatrix& m, int step) {
  if (reciprocal_condition(m) < 1e-14) {
    throw Error(Errc::SingularPivot, "singular pivot at cyclic reduction step " + std::to_string(step));
  }
  return Eigen::PartialPivLU<CMatrix>(m);
}

double quad_scale(const QuadCoeffs& q) {
  return std::max(q.am1.norm() + q.a0.norm() + q.a1.norm(), kTinyFloor);
}

}  // namespace

QuadCoeffs QuadCoeffs::from(const LaurentPoly& p) {
  if (p.lo() < -1 || p.hi() > 1) {
    throw Error(Errc::InvalidArgument, "expected a Laurent polynomial supported on {-1, 0, 1}");
  }
  const CMatrix zero = CMatrix::Zero(p.dim(), p.dim());
  return {p.lo() <= -1 ? p[-1] : zero, p[0], p.hi() >= 1 ? p[1] : zero};
}

LaurentPoly QuadCoeffs::to_laurent() const { return LaurentPoly(-1, {am1, a0, a1}); }

CyclicReduction cyclic_reduction(const QuadCoeffs& q, double tol, int maxit) {
  require_square_triple(q);
  CMatrix bm1 = q.am1;
  CMatrix b0 = q.a0;
  CMatrix b1 = q.a1;
  CyclicReduction cr{q.a0, q.a0, 0};
  const double scale = inf_norm(q.am1) + inf_norm(q.a0) + inf_norm(q.a1);

  while (std::min(inf_norm(bm1), inf_norm(b1)) > tol * scale) {
    if (cr.iterations >= maxit) {
      throw Error(Errc::NoConvergence,
                  "cyclic reduction did not converge in " + std::to_string(maxit) + " steps");
    }
    const auto lu = checked_lu(b0, cr.iterations + 1);
    const CMatrix s_bm1 = lu.solve(bm1);
    const CMatrix s_b1 = lu.solve(b1);
    const CMatrix b1_s_bm1 = b1 * s_bm1;
    const CMatrix bm1_s_b1 = bm1 * s_b1;
    cr.hhat -= b1_s_bm1;
    cr.hcheck -= bm1_s_b1;
    b0 -= b1_s_bm1 + bm1_s_b1;
    bm1 = -(bm1 * s_bm1);
    b1 = -(b1 * s_b1);
    ++cr.iterations;
  }
  return cr;
}

double quad_factor_residual(const QuadCoeffs& q, const CMatrix& R, const CMatrix& K,
                            const CMatrix& G, bool reversed) {
  const Index n = q.a0.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  double worst = 0.0;
  for (const Complex z : unit_circle_points(8)) {
    const Complex w = reversed ? 1.0 / z : z;
    const CMatrix a = q.am1 / w + q.a0 + w * q.a1;
    const CMatrix f = (I - z * R) * K * (I - G / z);
    worst = std::max(worst, (a - f).norm());
  }
  return worst / quad_scale(q);
}

QuadFactorization cr_quadratic(const QuadCoeffs& q, double tol, int maxit) {
  const CyclicReduction cr = cyclic_reduction(q, tol, maxit);
  QuadFactorization f;
  f.iterations = cr.iterations;
  // Both factors come from the limit of hhat, which equals K+.
  const auto lu = checked_lu(cr.hhat, cr.iterations);
  f.Gplus = -lu.solve(q.am1);
  f.Rplus = -q.a1 * lu.inverse();
  f.Kplus = q.a0 + q.a1 * f.Gplus;

  const double rg = spectral_radius(f.Gplus);
  const double rr = spectral_radius(f.Rplus);
  if (rg >= 1.0 - kRadiusMargin || rr >= 1.0 - kRadiusMargin) {
    throw Error(Errc::NotCanonical, "rho(G+) = " + std::to_string(rg) +
                                        ", rho(R+) = " + std::to_string(rr));
  }

  const double scale = quad_scale(q);
  const CMatrix& G = f.Gplus;
  const CMatrix& R = f.Rplus;
  const double res_g = (q.am1 + q.a0 * G + q.a1 * G * G).norm() / scale;
  const double res_r = (R * R * q.am1 + R * q.a0 + q.a1).norm() / scale;
  const double res_k = (q.a0 - f.Kplus - R * f.Kplus * G).norm() / scale;
  f.residual = quad_factor_residual(q, R, f.Kplus, G);
  if (res_g > kFactorTol || res_r > kFactorTol || res_k > kFactorTol || f.residual > kFactorTol) {
    throw Error(Errc::ResidualCheckFailed,
                "cyclic reduction residuals " + std::to_string(res_g) + ", " +
                    std::to_string(res_r) + ", " + std::to_string(res_k) + ", " +
                    std::to_string(f.residual));
  }
  return f;
}

CMatrix h0_series(const QuadFactorization& f) {
  const CMatrix kinv = Eigen::PartialPivLU<CMatrix>(f.Kplus).inverse();
  CMatrix h0 = kinv;
  CMatrix term = kinv;
  for (int j = 1; j < 100000; ++j) {
    term = f.Gplus * term * f.Rplus;
    h0 += term;
    if (term.norm() <= 1e-16 * h0.norm()) return h0;
  }
  throw Error(Errc::NoConvergence, "H_0 series did not converge");
}

LaurentPoly inverse_coefficients(const QuadFactorization& f, int m) {
  if (m < 0) throw Error(Errc::InvalidArgument, "coefficient range must be nonnegative");
  const CMatrix h0 = h0_series(f);
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(2 * m + 1));
  coeffs[static_cast<std::size_t>(m)] = h0;
  CMatrix left = h0;
  CMatrix right = h0;
  for (int i = 1; i <= m; ++i) {
    left = f.Gplus * left;
    right = right * f.Rplus;
    coeffs[static_cast<std::size_t>(m - i)] = left;
    coeffs[static_cast<std::size_t>(m + i)] = right;
  }
  return LaurentPoly(-m, std::move(coeffs), true);
}

ReversedFactorization reversed_factorization(const QuadCoeffs& q, const QuadFactorization& f) {
  ReversedFactorization rf;
  rf.W = h0_series(f);
  rf.rcond = reciprocal_condition(rf.W);
  if (rf.rcond < 1e-12) {
    throw Error(Errc::SingularH0, "H_0 reciprocal condition " + std::to_string(rf.rcond));
  }
  const Eigen::PartialPivLU<CMatrix> lu(rf.W);
  rf.Gminus = rf.W * f.Rplus * lu.inverse();
  rf.Rminus = lu.solve(f.Gplus * rf.W);
  rf.Kminus = q.a0 + q.am1 * rf.Gminus;

  const double scale = quad_scale(q);
  const double k_gap = (rf.Kminus - (q.a0 + rf.Rminus * q.a1)).norm() / scale;
  rf.residual = quad_factor_residual(q, rf.Rminus, rf.Kminus, rf.Gminus, true);
  if (k_gap > kFactorTol || rf.residual > kFactorTol) {
    throw Error(Errc::ResidualCheckFailed, "reversed factorization residuals " +
                                               std::to_string(k_gap) + ", " +
                                               std::to_string(rf.residual));
  }
  return rf;
}

CanonicalFactors CanonicalFactors::from(const QuadFactorization& f) {
  const Index n = f.Kplus.rows();
  return {MatrixPoly({f.Kplus, -(f.Rplus * f.Kplus)}),
          MatrixPoly({CMatrix::Identity(n, n), -f.Gplus})};
}

LaurentPoly CanonicalFactors::product() const {
  const int du = U.degree();
  const int dl = L.degree();
  const Index n = U.dim();
  std::vector<CMatrix> c(static_cast<std::size_t>(du + dl + 1), CMatrix::Zero(n, n));
  for (int i = 0; i <= du; ++i) {
    for (int j = 0; j <= dl; ++j) c[static_cast<std::size_t>(i - j + dl)] += U[i] * L[j];
  }
  return LaurentPoly(-dl, std::move(c));
}

namespace {

// L(z^{-1}) as a Laurent polynomial with support [-q, 0].
LaurentPoly l_as_laurent(const MatrixPoly& L) {
  std::vector<CMatrix> c(L.coeffs().rbegin(), L.coeffs().rend());
  return LaurentPoly(-L.degree(), std::move(c));
}

MatrixPoly l_from_laurent(const LaurentPoly& lp) {
  std::vector<CMatrix> c(lp.coeffs().rbegin(), lp.coeffs().rend());
  return MatrixPoly(std::move(c));
}

void require_inside(Complex z, const char* name) {
  if (!(std::abs(z) < 1.0)) {
    throw Error(Errc::ShiftOutsideDisk, std::string(name) + " must lie inside the unit disk");
  }
}

}  // namespace

CanonicalFactors shifted_factorization_right(const CanonicalFactors& f, const RightShift& s) {
  require_inside(s.lambda, "lambda");
  require_inside(s.mu, "mu");
  const MatrixPoly lt = l_from_laurent(right_shift_laurent(l_as_laurent(f.L), s));
  if (lt.degree() >= 1) {
    for (const auto& ep : polyeig(lt).pairs) {
      if (ep.value.is_finite() && std::abs(ep.value.value()) <= 1.0) {
        throw Error(Errc::NotCanonical, "shifted L(w) is singular inside the closed unit disk");
      }
    }
  }
  return {f.U, lt};
}

std::pair<QuadFactorization, ReversedFactorization> shifted_factorization_both(
    const QuadCoeffs& q, const QuadFactorization& f, const ReversedFactorization& rf,
    const RightShift& s) {
  require_inside(s.lambda, "lambda");
  require_inside(s.mu, "mu");
  const LaurentPoly shifted = right_shift_laurent(q.to_laurent(), s);
  const QuadCoeffs qt = QuadCoeffs::from(shifted);

  const CVector v = normalized_dual(s.u, s.v);
  const CMatrix Q = s.u * v.adjoint();
  const Complex cond = (s.lambda - s.mu) * v.dot(rf.Gminus * s.u) - 1.0;
  if (std::abs(cond) < 1e-10) {
    throw Error(Errc::DegenerateShift, "(lambda - mu) v^* G- u is too close to 1");
  }

  QuadFactorization ft;
  ft.Gplus = f.Gplus + (s.mu - s.lambda) * Q;
  ft.Rplus = f.Rplus;
  ft.Kplus = f.Kplus;
  ft.residual = quad_factor_residual(qt, ft.Rplus, ft.Kplus, ft.Gplus);

  ReversedFactorization rt;
  // Sum of G~^i K^{-1} R^i with G~^i = G^i + (mu - lambda) sum_j mu^j Q G^{i-1-j}.
  const Index n = f.Rplus.rows();
  const CMatrix tail =
      Eigen::PartialPivLU<CMatrix>(CMatrix::Identity(n, n) - s.mu * f.Rplus).solve(f.Rplus);
  rt.W = rf.W + (s.mu - s.lambda) * Q * rf.W * tail;
  rt.rcond = reciprocal_condition(rt.W);
  if (rt.rcond < 1e-12) throw Error(Errc::SingularWtilde, "shifted W is singular");
  const Eigen::PartialPivLU<CMatrix> lu(rt.W);
  rt.Gminus = rt.W * f.Rplus * lu.inverse();
  rt.Rminus = lu.solve(ft.Gplus * rt.W);
  rt.Kminus = qt.a0 + qt.am1 * rt.Gminus;
  rt.residual = quad_factor_residual(qt, rt.Rminus, rt.Kminus, rt.Gminus, true);

  const double k_gap = (rt.Kminus - (qt.a0 + rt.Rminus * qt.a1)).norm() / quad_scale(qt);
  if (ft.residual > kFactorTol || rt.residual > kFactorTol || k_gap > kFactorTol) {
    throw Error(Errc::ResidualCheckFailed, "shifted factorization residuals " +
                                               std::to_string(ft.residual) + ", " +
                                               std::to_string(rt.residual) + ", " +
                                               std::to_string(k_gap));
  }
  return {ft, rt};
}

CanonicalFactors double_shift_factorization(const CanonicalFactors& f, const RightShift& right,
                                            const LeftShift& left) {
  if (!(std::abs(right.lambda) < 1.0 && std::abs(right.mu) < 1.0 &&
        std::abs(left.lambda) > 1.0 && std::abs(left.mu) > 1.0)) {
    throw Error(Errc::ModulusConstraintViolated,
                "need |lambda1|, |mu1| < 1 and |lambda2|, |mu2| > 1");
  }
  const MatrixPoly lt = l_from_laurent(right_shift_laurent(l_as_laurent(f.L), right));
  const MatrixPoly ut = left_shift_poly(f.U, left);
  return {ut, lt};
}

PolyFactorization poly_factorization(const MatrixPoly& p, const CMatrix& G) {
  const Index n = p.dim();
  if (G.rows() != n || G.cols() != n) throw Error(Errc::DimensionMismatch, "G must be n x n");
  if (p.degree() < 1) throw Error(Errc::InvalidArgument, "need degree >= 1");

  const double g = std::max(1.0, G.norm());
  double scale = 0.0;
  for (int i = 0; i <= p.degree(); ++i) scale += p[i].norm() * std::pow(g, i);
  scale = std::max(scale, kTinyFloor);

  CMatrix res = p.leading();
  for (int i = p.degree() - 1; i >= 0; --i) res = res * G + p[i];
  const double rho = spectral_radius(G);
  if (rho >= 1.0 || res.norm() > kFactorTol * scale) {
    throw Error(Errc::NotASolvent, "rho(G) = " + std::to_string(rho) + ", residual " +
                                       std::to_string(res.norm() / scale));
  }

  PolyFactorization pf;
  pf.G = G;
  pf.U.assign(static_cast<std::size_t>(p.degree()), CMatrix());
  pf.U.back() = p.leading();
  for (int i = p.degree() - 1; i >= 1; --i) {
    pf.U[static_cast<std::size_t>(i - 1)] = p[i] + pf.U[static_cast<std::size_t>(i)] * G;
  }
  pf.consistency = (p[0] + pf.U[0] * G).norm() / scale;
  if (pf.consistency > 1e-8) {
    throw Error(Errc::NotASolvent, "A_0 + U_0 G does not vanish");
  }
  return pf;
}

}  // namespace mpshift
