// SPDX-License-Identifier: Apache-2.0
//
// Seeded random instances and brute-force oracles shared by the test binaries.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mpshift/core.hpp"
#include "mpshift/factorizations.hpp"
#include "mpshift/shifts.hpp"
#include "mpshift/spectra.hpp"

namespace testsupport {

using mpshift::CMatrix;
using mpshift::Complex;
using mpshift::CVector;
using mpshift::Index;
using mpshift::LaurentPoly;
using mpshift::MatrixPoly;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  Complex complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  /// Uniform in the disk of the given radius.
  Complex in_disk(double radius) {
    return std::polar(radius * std::sqrt(uniform()), 2.0 * std::numbers::pi * uniform());
  }
  Complex in_annulus(double r1, double r2) {
    return std::polar(uniform(r1, r2), 2.0 * std::numbers::pi * uniform());
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1); }

  CMatrix matrix(Index r, Index c) {
    CMatrix m(r, c);
    for (Index i = 0; i < r; ++i) {
      for (Index j = 0; j < c; ++j) m(i, j) = complex();
    }
    return m;
  }
  CMatrix matrix(Index n) { return matrix(n, n); }
  CVector vector(Index n) { return matrix(n, 1).col(0); }

  std::vector<CMatrix> coeffs(Index n, int count) {
    std::vector<CMatrix> c;
    for (int i = 0; i < count; ++i) c.push_back(matrix(n));
    return c;
  }

 private:
  std::mt19937_64 gen_;
};

inline LaurentPoly with_coeff(const LaurentPoly& p, int i, const CMatrix& value) {
  std::vector<CMatrix> c = p.coeffs();
  c[static_cast<std::size_t>(i - p.lo())] = value;
  return LaurentPoly(p.lo(), std::move(c), p.truncated());
}

/// Adjusts A_0 by a rank-m update so that A(lambda_j) u_j = 0 for all j.
inline LaurentPoly impose_right_pairs(const LaurentPoly& p, const std::vector<Complex>& lambdas,
                                      const CMatrix& U) {
  CMatrix R(p.dim(), U.cols());
  for (Index j = 0; j < U.cols(); ++j) R.col(j) = mpshift::evaluate(p, lambdas[static_cast<std::size_t>(j)]) * U.col(j);
  const CMatrix pinv = U.completeOrthogonalDecomposition().pseudoInverse();
  return with_coeff(p, 0, p[0] - R * pinv);
}

/// Adjusts A_0 so that v^* A(lambda) = 0.
inline LaurentPoly impose_left_pair(const LaurentPoly& p, Complex lambda, const CVector& v) {
  const CMatrix s = v.adjoint() * mpshift::evaluate(p, lambda);
  return with_coeff(p, 0, p[0] - v * s / v.squaredNorm());
}

/// Adjusts A_0 and A_1 so that A(l1) u = 0 and v^* A(l2) = 0 (l1 != l2).
inline LaurentPoly impose_right_left(const LaurentPoly& p, Complex l1, const CVector& u, Complex l2,
                                     const CVector& v) {
  const CMatrix m1 = -(mpshift::evaluate(p, l1) * u) * u.adjoint() / u.squaredNorm();
  const CMatrix m2 = -v * (v.adjoint() * mpshift::evaluate(p, l2)) / v.squaredNorm();
  const CMatrix y = (m1 - m2) / (l1 - l2);
  const CMatrix x = m1 - l1 * y;
  LaurentPoly q = with_coeff(p, 0, p[0] + x);
  return with_coeff(q, 1, q[1] + y);
}

struct PairInstance {
  LaurentPoly poly;
  Complex lambda;
  CVector vec;
};

inline PairInstance right_pair_instance(Rng& rng, Index n, int lo, int hi) {
  const LaurentPoly base(lo, rng.coeffs(n, hi - lo + 1));
  const Complex lambda = rng.in_annulus(0.3, 1.5);
  const CVector u = rng.vector(n);
  return {impose_right_pairs(base, {lambda}, CMatrix(u)), lambda, u};
}

inline PairInstance left_pair_instance(Rng& rng, Index n, int lo, int hi) {
  const LaurentPoly base(lo, rng.coeffs(n, hi - lo + 1));
  const Complex lambda = rng.in_annulus(0.3, 1.5);
  const CVector v = rng.vector(n);
  return {impose_left_pair(base, lambda, v), lambda, v};
}

/// Quadratic Laurent polynomial built from its canonical factors,
/// A(z) = (I - z R) K (I - z^{-1} G), with rho(G), rho(R) <= radius.
struct CanonicalInstance {
  mpshift::QuadCoeffs q;
  CMatrix G;
  CMatrix R;
  CMatrix K;
};

inline CMatrix scaled_to_radius(const CMatrix& m, double radius) {
  return m * (radius / mpshift::spectral_radius(m));
}

inline CanonicalInstance canonical_instance(Rng& rng, Index n, double radius = 0.6) {
  CanonicalInstance c;
  c.G = scaled_to_radius(rng.matrix(n), radius * rng.uniform(0.6, 1.0));
  c.R = scaled_to_radius(rng.matrix(n), radius * rng.uniform(0.6, 1.0));
  c.K = CMatrix::Identity(n, n) * 2.0 + 0.5 * rng.matrix(n);
  c.q.am1 = -(c.K * c.G);
  c.q.a0 = c.K + c.R * c.K * c.G;
  c.q.a1 = -(c.R * c.K);
  return c;
}

/// Substochastic quasi-birth-death blocks: A_{-1} = B_{-1}, A_0 = B_0 - I,
/// A_1 = B_1 with nonnegative B_i whose rows sum to `mass` < 1.
inline mpshift::QuadCoeffs qbd_instance(Rng& rng, Index n, double mass = 0.9) {
  std::vector<Eigen::MatrixXd> b(3, Eigen::MatrixXd(n, n));
  for (auto& m : b) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) m(i, j) = rng.uniform();
    }
  }
  for (Index i = 0; i < n; ++i) {
    const double s = b[0].row(i).sum() + b[1].row(i).sum() + b[2].row(i).sum();
    for (auto& m : b) m.row(i) *= mass / s;
  }
  mpshift::QuadCoeffs q;
  q.am1 = b[0].cast<Complex>();
  q.a0 = b[1].cast<Complex>() - CMatrix::Identity(n, n);
  q.a1 = b[2].cast<Complex>();
  return q;
}

/// Eigenpair (lambda, u) of G with the largest modulus eigenvalue.
inline std::pair<Complex, CVector> dominant_pair(const CMatrix& G) {
  Eigen::ComplexEigenSolver<CMatrix> es(G);
  Index best = 0;
  for (Index i = 1; i < G.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(best))) best = i;
  }
  return {es.eigenvalues()(best), es.eigenvectors().col(best)};
}

/// Roots of the scalar polynomial c_0 + c_1 z + ... + c_m z^m.
inline std::vector<Complex> durand_kerner(const std::vector<Complex>& c) {
  const std::size_t m = c.size() - 1;
  std::vector<Complex> monic(c.size());
  for (std::size_t i = 0; i <= m; ++i) monic[i] = c[i] / c[m];
  auto eval = [&](Complex z) {
    Complex acc = monic[m];
    for (std::size_t i = m; i-- > 0;) acc = acc * z + monic[i];
    return acc;
  };
  double bound = 1.0;
  for (std::size_t i = 0; i < m; ++i) bound = std::max(bound, 1.0 + std::abs(monic[i]));
  std::vector<Complex> z(m);
  const Complex seed{0.4, 0.9};
  for (std::size_t k = 0; k < m; ++k) z[k] = bound * 0.5 * std::pow(seed, static_cast<int>(k));
  for (int it = 0; it < 5000; ++it) {
    double change = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      Complex den{1.0, 0.0};
      for (std::size_t j = 0; j < m; ++j) {
        if (j != k) den *= (z[k] - z[j]);
      }
      const Complex step = eval(z[k]) / den;
      z[k] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Newton polish on the original polynomial.
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      Complex p = monic[m];
      Complex dp{0.0, 0.0};
      for (std::size_t i = m; i-- > 0;) {
        dp = dp * r + p;
        p = p * r + monic[i];
      }
      if (dp != Complex{0.0, 0.0}) r -= p / dp;
    }
  }
  return z;
}

/// Coefficients of det A(z) by interpolation on N = nd + 1 roots of unity.
inline std::vector<Complex> det_coefficients(const MatrixPoly& p) {
  const int N = static_cast<int>(p.dim()) * p.degree() + 1;
  std::vector<Complex> vals(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    vals[static_cast<std::size_t>(j)] =
        mpshift::det_at(p, std::polar(1.0, 2.0 * std::numbers::pi * j / N));
  }
  std::vector<Complex> c(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    Complex s{0.0, 0.0};
    for (int j = 0; j < N; ++j) s += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / N);
    c[static_cast<std::size_t>(k)] = s / static_cast<double>(N);
  }
  return c;
}

/// Largest distance in a greedy nearest matching between two multisets.
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](const Complex& p, const Complex& q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline std::vector<Complex> finite_values(const mpshift::Spectrum& s) {
  std::vector<Complex> out;
  for (const auto& ep : s.pairs) {
    if (ep.value.is_finite()) out.push_back(ep.value.value());
  }
  return out;
}

inline double max_coeff_diff(const LaurentPoly& a, const LaurentPoly& b) {
  double d = 0.0;
  for (int i = a.lo(); i <= a.hi(); ++i) d = std::max(d, (a[i] - b[i]).norm());
  return d;
}

inline mpshift::OracleReport run_oracle(const LaurentPoly& a, const LaurentPoly& b,
                                        const mpshift::DetRatio& r, int samples = 16,
                                        std::uint64_t seed = 42) {
  mpshift::OracleOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.constant = r.constant;
  return mpshift::det_ratio_oracle(a, b, r.removed, r.added, opt);
}

/// Random *-palindromic polynomial of degree d: A_i = A_{d-i}^*. The middle
/// coefficients are weighted so that eigenvalues split away from |z| = 1.
inline MatrixPoly palindromic_instance(Rng& rng, Index n, int d) {
  std::vector<CMatrix> c(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d / 2; ++i) {
    CMatrix m = rng.matrix(n) * (2 * i >= d - 1 ? 4.0 : 1.0);
    if (i == d - i) m = (m + m.adjoint()).eval();
    c[static_cast<std::size_t>(i)] = m;
    c[static_cast<std::size_t>(d - i)] = m.adjoint();
  }
  return MatrixPoly(std::move(c));
}

/// First eigenpair whose modulus is clearly away from one, so that lambda and
/// 1/conj(lambda) are distinct.
inline mpshift::EigenPair off_circle_pair(const MatrixPoly& p) {
  for (const auto& ep : mpshift::polyeig(p).pairs) {
    if (ep.value.is_finite() && std::abs(ep.value.abs() - 1.0) > 1e-3) return ep;
  }
  throw mpshift::Error(mpshift::Errc::InvalidArgument, "no eigenvalue off the unit circle");
}

}  // namespace testsupport
