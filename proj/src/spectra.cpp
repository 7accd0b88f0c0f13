// SPDX-License-Identifier: Apache-2.0

#include "mpshift/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mpshift {

CompanionPencil companion(const MatrixPoly& p) {
  const Index n = p.dim();
  const int d = p.degree();
  if (d < 1) throw Error(Errc::InvalidArgument, "companion pencil needs degree >= 1");
  const Index N = n * d;
  CompanionPencil cp{CMatrix::Zero(N, N), CMatrix::Identity(N, N)};
  for (int b = 0; b + 1 < d; ++b) {
    cp.c1.block(b * n, (b + 1) * n, n, n).setIdentity();
  }
  for (int j = 0; j < d; ++j) {
    cp.c1.block((d - 1) * n, j * n, n, n) = -p[j];
  }
  cp.c2.block((d - 1) * n, (d - 1) * n, n, n) = p.leading();
  return cp;
}

CVector normalize_phase(const CVector& x) {
  const double nrm = x.norm();
  if (nrm == 0.0) return x;
  CVector y = x / nrm;
  const double cutoff = 1e-8 * y.cwiseAbs().maxCoeff();
  for (Index i = 0; i < y.size(); ++i) {
    if (std::abs(y(i)) > cutoff) {
      y *= std::conj(y(i)) / std::abs(y(i));
      y(i) = Complex{y(i).real(), 0.0};
      break;
    }
  }
  return y;
}

CVector null_vector(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  return normalize_phase(svd.matrixV().col(m.cols() - 1));
}

CVector left_null_vector(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
  return normalize_phase(svd.matrixU().col(m.rows() - 1));
}

CVector eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) {
    throw Error(Errc::EigensolverFailure, "QR iteration did not converge");
  }
  return es.eigenvalues();
}

double spectral_radius(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

double reciprocal_condition(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

EigenPair finite_pair(const MatrixPoly& p, Complex z, bool with_left) {
  const CMatrix az = evaluate(p, z);
  EigenPair ep;
  ep.value = z;
  ep.right = null_vector(az);
  if (with_left) ep.left = left_null_vector(az);
  ep.residual = right_residual(p, z, ep.right);
  return ep;
}

EigenPair infinite_pair(const MatrixPoly& p, bool with_left) {
  const CMatrix& ad = p.leading();
  EigenPair ep;
  ep.value = ExtComplex::infinity();
  ep.right = null_vector(ad);
  if (with_left) ep.left = left_null_vector(ad);
  const double scale = std::max(ad.norm(), kTinyFloor);
  ep.residual = (ad * ep.right).norm() / scale;
  return ep;
}

}  // namespace

Spectrum polyeig(const MatrixPoly& p, std::uint64_t seed, bool with_left) {
  Spectrum spec;
  std::mt19937_64 rng(seed);

  bool found = false;
  for (int attempt = 0; attempt < 10 && !found; ++attempt) {
    spec.cayley_point = std::polar(0.9, 2.0 * std::numbers::pi * unit_draw(rng));
    found = reciprocal_condition(evaluate(p, spec.cayley_point)) > 1e-12;
  }
  if (!found) {
    throw Error(Errc::DegeneratePolynomial, "det A(z) vanishes at every trial Cayley point");
  }
  if (p.degree() == 0) return spec;

  const CompanionPencil cp = companion(p);
  const CMatrix shifted = cp.c1 - spec.cayley_point * cp.c2;
  const CMatrix m = Eigen::PartialPivLU<CMatrix>(shifted).solve(cp.c2);
  const CVector theta = eigenvalues(m);

  const double threshold = 1e-10 * m.norm();
  for (Index k = 0; k < theta.size(); ++k) {
    const double mag = std::abs(theta(k));
    if (mag <= threshold) {
      EigenPair ep = infinite_pair(p, with_left);
      ep.borderline = mag > 1e-2 * threshold;
      if (ep.borderline) spec.warnings.emplace_back("eigenvalue classified as infinite near the threshold");
      spec.pairs.push_back(std::move(ep));
    } else {
      EigenPair ep = finite_pair(p, spec.cayley_point + 1.0 / theta(k), with_left);
      ep.borderline = mag <= 1e2 * threshold;
      if (ep.borderline) spec.warnings.emplace_back("large finite eigenvalue near the infinity threshold");
      spec.pairs.push_back(std::move(ep));
    }
  }

  std::stable_sort(spec.pairs.begin(), spec.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.value.is_infinite() != b.value.is_infinite()) return b.value.is_infinite();
    if (a.value.is_infinite()) return false;
    const double ma = std::abs(a.value.value());
    const double mb = std::abs(b.value.value());
    if (ma != mb) return ma < mb;
    return std::arg(a.value.value()) < std::arg(b.value.value());
  });
  return spec;
}

EigenPair refine_pair(const LaurentPoly& p, Complex lambda, const CVector& u) {
  if (u.norm() == 0.0) throw Error(Errc::InvalidArgument, "refine_pair needs a nonzero vector");
  EigenPair best;
  best.value = lambda;
  best.right = u;
  best.residual = right_residual(p, lambda, u);

  Complex lam = lambda;
  CVector vec = normalize_phase(u);
  for (int it = 0; it < 8 && best.residual > 0.0; ++it) {
    const CVector r = evaluate(p, lam) * vec;
    const CVector jac = derivative(p, lam) * vec;
    const double denom = jac.squaredNorm();
    if (denom == 0.0) break;
    const Complex next = lam - jac.dot(r) / denom;
    if (p.lo() < 0 && next == Complex{0.0, 0.0}) break;
    const CVector next_vec = null_vector(evaluate(p, next));
    const double res = right_residual(p, next, next_vec);
    if (!(res < best.residual)) break;
    best.value = next;
    best.right = next_vec;
    best.residual = res;
    lam = next;
    vec = next_vec;
  }
  return best;
}

InvariantPair invariant_pair(const LaurentPoly& p, std::span<const EigenPair> selected) {
  const Index n = p.dim();
  const auto m = static_cast<Index>(selected.size());
  if (m == 0) throw Error(Errc::InvalidArgument, "invariant_pair needs at least one eigenpair");
  if (m >= n) throw Error(Errc::InvalidArgument, "invariant pair size must be smaller than n");

  InvariantPair ip{CMatrix(n, m), CMatrix::Zero(m, m), CMatrix(), 0.0};
  double max_abs = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < m; ++j) {
    const EigenPair& ep = selected[static_cast<std::size_t>(j)];
    if (ep.value.is_infinite()) throw Error(Errc::InfiniteValue, "invariant pairs need finite eigenvalues");
    const Complex lam = ep.value.value();
    for (Index k = 0; k < j; ++k) {
      const Complex other = ip.Lambda(k, k);
      if (std::abs(lam - other) <= 1e-8 * std::max(1.0, std::abs(lam))) {
        throw Error(Errc::DistinctnessViolated, "selected eigenvalues must be pairwise distinct");
      }
    }
    ip.U.col(j) = ep.right / ep.right.norm();
    ip.Lambda(j, j) = lam;
    max_abs = std::max(max_abs, std::abs(lam));
    min_abs = std::min(min_abs, std::abs(lam));
  }

  Eigen::JacobiSVD<CMatrix> svd(ip.U);
  if (svd.singularValues()(m - 1) < 1e-8) {
    throw Error(Errc::DependentEigenvectors, "selected eigenvectors are numerically dependent");
  }

  CMatrix res(n, m);
  for (Index j = 0; j < m; ++j) res.col(j) = evaluate(p, ip.Lambda(j, j)) * ip.U.col(j);
  ip.residual = res.norm();
  double scale = 0.0;
  for (int i = p.lo(); i <= p.hi(); ++i) {
    scale += p[i].norm() * std::pow(i >= 0 ? max_abs : min_abs, i);
  }
  if (ip.residual > 1e-8 * scale * std::sqrt(static_cast<double>(m))) {
    throw Error(Errc::NotInvariant, "sum A_i U Lambda^i is not small");
  }

  ip.V = ip.U * (ip.U.adjoint() * ip.U).inverse();
  return ip;
}

}  // namespace mpshift
