// SPDX-License-Identifier: Apache-2.0

#include "mpshift/shifts.hpp"

#include <algorithm>
#include <cmath>

#include "mpshift/spectra.hpp"

namespace mpshift {

namespace {

constexpr double kPairTol = 1e-8;

// Plain triple-loop products. Single shifts and multishifts share these so
// that a packet of size one reproduces the single shift bit for bit.
CMatrix mul(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      Complex s{0.0, 0.0};
      for (Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

// a * b^*
CMatrix mul_adj(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.rows(); ++j) {
      Complex s{0.0, 0.0};
      for (Index k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
      c(i, j) = s;
    }
  }
  return c;
}

CMatrix small_inverse(const CMatrix& m) {
  if (m.rows() == 1) return CMatrix::Constant(1, 1, Complex{1.0, 0.0} / m(0, 0));
  return Eigen::PartialPivLU<CMatrix>(m).inverse();
}

CMatrix column(const CVector& x) { return CMatrix(x); }

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

// A~_i = A_i + sum_k A_{k+i+1} U Lambda^k D V^*           (i >= 0)
// A~_i = A_i - sum_k A_{i-k} U Lambda^{-k-1} D V^*         (i < 0)
// with D = Lambda - S.
LaurentPoly right_update(const LaurentPoly& p, const CMatrix& U, const CMatrix& lambda,
                         const CMatrix& lambda_inv, const CMatrix& D, const CMatrix& V) {
  std::vector<CMatrix> out = p.coeffs();
  const int lo = p.lo();
  auto at = [&](int i) -> CMatrix& { return out[static_cast<std::size_t>(i - lo)]; };

  CMatrix y = CMatrix::Zero(p.dim(), U.cols());
  for (int i = p.hi() - 1; i >= 0; --i) {
    y = mul(p[i + 1], U) + mul(y, lambda);
    at(i) = p[i] + mul_adj(mul(y, D), V);
  }
  CMatrix z = CMatrix::Zero(p.dim(), U.cols());
  for (int i = lo; i < 0; ++i) {
    z = mul(mul(p[i], U) + z, lambda_inv);
    at(i) = p[i] - mul_adj(mul(z, D), V);
  }
  return LaurentPoly(lo, std::move(out), p.truncated());
}

void require_vector(const LaurentPoly& p, const CVector& x, const char* name) {
  if (x.size() != p.dim()) {
    throw Error(Errc::DimensionMismatch, std::string(name) + " has length " +
                                             std::to_string(x.size()) + ", expected " +
                                             std::to_string(p.dim()));
  }
  if (x.norm() == 0.0) throw Error(Errc::InvalidArgument, std::string(name) + " must be nonzero");
}

void require_right_pair(const LaurentPoly& p, Complex lambda, const CVector& u) {
  require_vector(p, u, "u");
  if (p.lo() < 0 && lambda == Complex{0.0, 0.0}) {
    throw Error(Errc::ZeroLambdaWithNegativePowers, "lambda = 0 with negative powers present");
  }
  const double res = right_residual(p, lambda, u);
  if (!(res <= kPairTol)) {
    throw Error(Errc::NotAnEigenpair, "||A(lambda) u|| relative residual " + std::to_string(res));
  }
}

void require_left_pair(const LaurentPoly& p, Complex lambda, const CVector& v) {
  require_vector(p, v, "v");
  if (p.lo() < 0 && lambda == Complex{0.0, 0.0}) {
    throw Error(Errc::ZeroLambdaWithNegativePowers, "lambda = 0 with negative powers present");
  }
  const double res = left_residual(p, lambda, v);
  if (!(res <= kPairTol)) {
    throw Error(Errc::NotAnEigenpair, "||v^* A(lambda)|| relative residual " + std::to_string(res));
  }
}

LaurentPoly right_unchecked(const LaurentPoly& p, Complex lambda, Complex mu, const CVector& u,
                            const CVector& v) {
  const CMatrix lam = scalar(lambda);
  const CMatrix lam_inv = p.lo() < 0 ? small_inverse(lam) : CMatrix();
  return right_update(p, column(u), lam, lam_inv, scalar(lambda - mu), column(v));
}

LaurentPoly left_unchecked(const LaurentPoly& p, Complex lambda, Complex mu, const CVector& v,
                           const CVector& y) {
  // v^* A(lambda) = 0 is a right eigenpair of the coefficientwise adjoint.
  const LaurentPoly shifted =
      right_unchecked(adjoint_coeffs(p), std::conj(lambda), std::conj(mu), v, y);
  return adjoint_coeffs(shifted);
}

double coincidence_gap(Complex a, Complex b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

CVector normalized_dual(const CVector& u, const std::optional<CVector>& dual) {
  if (!dual) return u / u.squaredNorm();
  if (dual->size() != u.size()) throw Error(Errc::DimensionMismatch, "dual vector has the wrong length");
  const Complex vu = dual->dot(u);
  if (std::abs(vu) <= 1e-14 * dual->norm() * u.norm()) {
    throw Error(Errc::InvalidArgument, "dual vector is orthogonal to the eigenvector");
  }
  return *dual / std::conj(vu);
}

CMatrix right_shift_pencil(const CMatrix& a, const RightShift& s) {
  if (a.rows() != a.cols() || s.u.size() != a.rows()) {
    throw Error(Errc::DimensionMismatch, "pencil shift needs square A and matching u");
  }
  if (s.u.norm() == 0.0) throw Error(Errc::InvalidArgument, "u must be nonzero");
  const double res = (a * s.u - s.lambda * s.u).norm();
  if (res > kPairTol * std::max(a.norm(), kTinyFloor) * s.u.norm()) {
    throw Error(Errc::NotAnEigenpair, "A u != lambda u");
  }
  const CVector v = normalized_dual(s.u, s.v);
  return a - mul_adj(mul(column(s.u), scalar(s.lambda - s.mu)), column(v));
}

LaurentPoly right_shift_laurent(const LaurentPoly& p, const RightShift& s) {
  require_right_pair(p, s.lambda, s.u);
  return right_unchecked(p, s.lambda, s.mu, s.u, normalized_dual(s.u, s.v));
}

LaurentPoly left_shift_laurent(const LaurentPoly& p, const LeftShift& s) {
  require_left_pair(p, s.lambda, s.v);
  return left_unchecked(p, s.lambda, s.mu, s.v, normalized_dual(s.v, s.y));
}

MatrixPoly right_shift_poly(const MatrixPoly& p, const RightShift& s) {
  return right_shift_laurent(LaurentPoly(p), s).to_poly();
}

MatrixPoly left_shift_poly(const MatrixPoly& p, const LeftShift& s) {
  return left_shift_laurent(LaurentPoly(p), s).to_poly();
}

LaurentPoly double_shift_laurent(const LaurentPoly& p, const RightShift& right,
                                 const LeftShift& left, ShiftOrder order) {
  if (coincidence_gap(right.lambda, left.lambda) <= 1e-12) {
    throw Error(Errc::CoincidentEigenvalues, "double shift needs lambda1 != lambda2");
  }
  require_right_pair(p, right.lambda, right.u);
  require_left_pair(p, left.lambda, left.v);
  const CVector w = normalized_dual(right.u, right.v);
  const CVector y = normalized_dual(left.v, left.y);
  if (order == ShiftOrder::RightFirst) {
    return left_unchecked(right_unchecked(p, right.lambda, right.mu, right.u, w), left.lambda,
                          left.mu, left.v, y);
  }
  return right_unchecked(left_unchecked(p, left.lambda, left.mu, left.v, y), right.lambda,
                         right.mu, right.u, w);
}

CMatrix invariance_residual(const LaurentPoly& p, const CMatrix& U, const CMatrix& Lambda) {
  CMatrix r = p[p.hi()] * U;
  for (int i = p.hi() - 1; i >= p.lo(); --i) r = r * Lambda + p[i] * U;
  if (p.lo() < 0) {
    const CMatrix inv = Eigen::PartialPivLU<CMatrix>(Lambda).inverse();
    for (int k = 0; k < -p.lo(); ++k) r = r * inv;
  }
  return r;
}

namespace {

void validate_multishift(Index n, const MultiShift& s) {
  const Index m = s.U.cols();
  if (s.U.rows() != n || s.V.rows() != n || s.V.cols() != m || s.Lambda.rows() != m ||
      s.Lambda.cols() != m || s.S.rows() != m || s.S.cols() != m) {
    throw Error(Errc::DimensionMismatch, "multishift blocks have inconsistent sizes");
  }
  if (m < 1 || m >= n) throw Error(Errc::InvalidArgument, "multishift needs 1 <= m < n");
  const double vu = (s.V.adjoint() * s.U - CMatrix::Identity(m, m)).norm();
  if (vu > 1e-10) {
    throw Error(Errc::InvalidArgument, "V^* U differs from I by " + std::to_string(vu));
  }
}

}  // namespace

CMatrix multishift_pencil(const CMatrix& a, const MultiShift& s) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "pencil matrix must be square");
  validate_multishift(a.rows(), s);
  const double res = (a * s.U - s.U * s.Lambda).norm();
  if (res > kPairTol * (a.norm() + s.Lambda.norm()) * s.U.norm()) {
    throw Error(Errc::NotInvariant, "A U != U Lambda");
  }
  return a - mul_adj(mul(s.U, s.Lambda - s.S), s.V);
}

LaurentPoly multishift_laurent(const LaurentPoly& p, const MultiShift& s) {
  validate_multishift(p.dim(), s);
  CMatrix lam_inv;
  double lam_scale = s.Lambda.norm();
  double inv_scale = 0.0;
  if (p.lo() < 0) {
    if (reciprocal_condition(s.Lambda) < 1e-14) {
      throw Error(Errc::SingularLambda, "Lambda must be nonsingular with negative powers present");
    }
    lam_inv = small_inverse(s.Lambda);
    inv_scale = lam_inv.norm();
  }
  double scale = 0.0;
  for (int i = p.lo(); i <= p.hi(); ++i) {
    scale += p[i].norm() * std::pow(i >= 0 ? lam_scale : inv_scale, std::abs(i));
  }
  const double res = invariance_residual(p, s.U, s.Lambda).norm();
  if (!(res <= kPairTol * std::max(scale, kTinyFloor) * s.U.norm())) {
    throw Error(Errc::NotInvariant, "sum A_i U Lambda^i has relative size " +
                                        std::to_string(res / std::max(scale, kTinyFloor)));
  }
  return right_update(p, s.U, s.Lambda, lam_inv, s.Lambda - s.S, s.V);
}

MatrixPoly multishift_poly(const MatrixPoly& p, const MultiShift& s) {
  return multishift_laurent(LaurentPoly(p), s).to_poly();
}

MatrixPoly shift_from_infinity(const MatrixPoly& p, Complex mu, const CVector& u,
                               const std::optional<CVector>& v) {
  const LaurentPoly lp(p);
  require_vector(lp, u, "u");
  if (mu == Complex{0.0, 0.0}) throw Error(Errc::ZeroMu, "mu must be nonzero");
  if ((p.leading() * u).norm() > kPairTol * p.leading().norm() * u.norm()) {
    throw Error(Errc::NotInKernel, "A_d u != 0");
  }
  const CMatrix w = column(normalized_dual(u, v));
  const CMatrix uc = column(u);
  const CMatrix inv = scalar(Complex{1.0, 0.0} / mu);
  std::vector<CMatrix> out = p.coeffs();
  for (int i = 1; i <= p.degree(); ++i) {
    out[static_cast<std::size_t>(i)] = p[i] - mul_adj(mul(mul(p[i - 1], uc), inv), w);
  }
  return MatrixPoly(std::move(out));
}

MatrixPoly shift_to_infinity(const MatrixPoly& p, Complex lambda, const CVector& u,
                             const std::optional<CVector>& v) {
  const LaurentPoly lp(p);
  if (lambda == Complex{0.0, 0.0}) throw Error(Errc::ZeroLambda, "lambda must be nonzero");
  require_right_pair(lp, lambda, u);
  const CMatrix w = column(normalized_dual(u, v));
  const CMatrix uc = column(u);
  const CMatrix inv = scalar(Complex{1.0, 0.0} / lambda);
  std::vector<CMatrix> out = p.coeffs();
  CMatrix e = CMatrix::Zero(p.dim(), 1);
  for (int i = 1; i <= p.degree(); ++i) {
    e = mul(mul(p[i - 1], uc) + e, inv);
    out[static_cast<std::size_t>(i)] = p[i] + mul_adj(e, w);
  }
  return MatrixPoly(std::move(out));
}

namespace {

double palindromic_deviation(const std::vector<CMatrix>& c) {
  const std::size_t d = c.size() - 1;
  double dev = 0.0;
  for (std::size_t i = 0; i <= d; ++i) dev = std::max(dev, (c[i] - c[d - i].adjoint()).norm());
  return dev;
}

double sum_norms(const std::vector<CMatrix>& c) {
  double s = 0.0;
  for (const auto& m : c) s += m.norm();
  return s;
}

}  // namespace

PalindromicShift palindromic_shift(const MatrixPoly& p, Complex lambda, Complex mu,
                                   const CVector& u) {
  const double scale = std::max(sum_norms(p.coeffs()), kTinyFloor);
  if (palindromic_deviation(p.coeffs()) > 1e-12 * scale) {
    throw Error(Errc::NotPalindromic, "A_i != A_{d-i}^*");
  }
  const LaurentPoly lp(p);
  require_right_pair(lp, lambda, u);

  PalindromicShift result{p, 0.0, {}};
  if (std::abs(std::norm(lambda) - 1.0) <= 1e-8) {
    result.warnings.emplace_back("lambda is on the unit circle, so lambda and 1/conj(lambda) coincide");
  }

  const CVector w = u / u.squaredNorm();
  const std::vector<CMatrix> hat = right_unchecked(lp, lambda, mu, u, w).coeffs();

  // Second stage moves 1/conj(lambda) to 1/conj(mu) from the left, with left
  // eigenvector u: A~_i = A^_i + (conj(lambda) - conj(mu)) Q F_i.
  const Complex lb = std::conj(lambda);
  const CMatrix coef = scalar(lb - std::conj(mu));
  const CMatrix wc = column(w);
  const CMatrix uc = column(u);
  const int d = p.degree();
  std::vector<CMatrix> out = hat;
  CMatrix f = CMatrix::Zero(p.dim(), p.dim());
  for (int i = 1; i <= d; ++i) {
    f = hat[static_cast<std::size_t>(i - 1)] + lb * f;
    // Q F_i = w (u^* F_i)
    const CMatrix row = mul(coef, mul(uc.adjoint(), f));
    out[static_cast<std::size_t>(i)] = hat[static_cast<std::size_t>(i)] + mul(wc, row);
  }

  result.deviation = palindromic_deviation(out);
  if (result.deviation > 1e-12 * std::max(sum_norms(out), kTinyFloor)) {
    throw Error(Errc::SymmetryLoss, "shifted coefficients drifted from palindromic form by " +
                                        std::to_string(result.deviation));
  }
  std::vector<CMatrix> sym(out.size());
  for (int i = 0; i <= d; ++i) {
    sym[static_cast<std::size_t>(i)] =
        (out[static_cast<std::size_t>(i)] + out[static_cast<std::size_t>(d - i)].adjoint()) / 2.0;
  }
  result.poly = MatrixPoly(std::move(sym));
  return result;
}

MatrixPoly shift_poly(const MatrixPoly& p, ExtComplex lambda, ExtComplex mu, const CVector& u,
                      const std::optional<CVector>& v) {
  if (lambda.is_infinite() && mu.is_infinite()) {
    throw Error(Errc::MixedInfinity, "lambda and mu cannot both be infinite");
  }
  if (lambda.is_infinite()) return shift_from_infinity(p, mu.value(), u, v);
  if (mu.is_infinite()) return shift_to_infinity(p, lambda.value(), u, v);
  return right_shift_poly(p, RightShift{lambda.value(), mu.value(), u, v});
}

DetRatio single_shift_ratio(Complex lambda, Complex mu) { return {{lambda}, {mu}, {1.0, 0.0}}; }

DetRatio from_infinity_ratio(Complex mu) { return {{}, {mu}, -Complex{1.0, 0.0} / mu}; }

DetRatio to_infinity_ratio(Complex lambda) { return {{lambda}, {}, -lambda}; }

DetRatio palindromic_ratio(Complex lambda, Complex mu) {
  DetRatio r{{lambda}, {mu}, {1.0, 0.0}};
  const Complex lb = std::conj(lambda);
  const Complex mb = std::conj(mu);
  const Complex zero{0.0, 0.0};
  // det(I + (lb - mb) z / (1 - lb z) Q) = (1 - mb z) / (1 - lb z)
  if (lb != zero) r.removed.push_back(1.0 / lb);
  if (mb != zero) r.added.push_back(1.0 / mb);
  if (lb != zero && mb != zero) {
    r.constant = mb / lb;
  } else if (mb != zero) {
    r.constant = -mb;
  } else if (lb != zero) {
    r.constant = -1.0 / lb;
  }
  return r;
}

DetRatio multishift_ratio(const MultiShift& s) {
  DetRatio r;
  const CVector l = eigenvalues(s.Lambda);
  const CVector m = eigenvalues(s.S);
  r.removed.assign(l.data(), l.data() + l.size());
  r.added.assign(m.data(), m.data() + m.size());
  return r;
}

}  // namespace mpshift
