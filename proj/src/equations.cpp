// SPDX-License-Identifier: Apache-2.0

#include "mpshift/equations.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mpshift/shifts.hpp"
#include "mpshift/spectra.hpp"

namespace mpshift {

ReblockedQuadratic reblock(const MatrixPoly& p) {
  const int d = p.degree();
  if (d < 2) throw Error(Errc::InvalidArgument, "reblocking needs degree >= 2");
  if (d == 2) return {p[0], p[1], p[2]};
  const Index n = p.dim();
  const int k = d - 1;
  const Index N = n * k;
  ReblockedQuadratic r{CMatrix::Zero(N, N), CMatrix::Zero(N, N), CMatrix::Zero(N, N)};
  r.bm1.topLeftCorner(n, n) = p[0];
  for (int j = 0; j < k; ++j) r.b0.block(0, j * n, n, n) = p[j + 1];
  for (int i = 1; i < k; ++i) {
    r.b0.block(i * n, i * n, n, n) = -CMatrix::Identity(n, n);
    r.b1.block(i * n, (i - 1) * n, n, n).setIdentity();
  }
  r.b1.block(0, (k - 1) * n, n, n) = p[d];
  return r;
}

CMatrix block_solvent(const CMatrix& G, int degree) {
  const Index n = G.rows();
  const int k = std::max(degree - 1, 1);
  CMatrix out = CMatrix::Zero(n * k, n * k);
  CMatrix power = G;
  for (int i = 0; i < k; ++i) {
    out.block(i * n, 0, n, n) = power;
    power = power * G;
  }
  return out;
}

double solvent_residual(const MatrixPoly& p, const CMatrix& G) {
  CMatrix r = p.leading();
  for (int i = p.degree() - 1; i >= 0; --i) r = r * G + p[i];
  double scale = 0.0;
  for (const auto& a : p.coeffs()) scale += a.norm();
  return r.norm() / std::max(scale, kTinyFloor);
}

Splitting splitting(const MatrixPoly& p, std::uint64_t seed) {
  Splitting s;
  s.min_outside = std::numeric_limits<double>::infinity();
  bool any_inside = false;
  bool any_outside = false;
  for (const auto& ep : polyeig(p, seed).pairs) {
    const double m = ep.value.abs();
    if (m <= 1.0 + 1e-9) {
      any_inside = true;
      s.max_inside = std::max(s.max_inside, m);
    } else {
      any_outside = true;
      s.min_outside = std::min(s.min_outside, m);
    }
  }
  if (!any_inside || !any_outside) {
    throw Error(Errc::NoSplitting, "need eigenvalues both inside and outside the unit circle");
  }
  s.sigma = s.max_inside / s.min_outside;
  return s;
}

double convergence_ratio(const MatrixPoly& p, std::uint64_t seed) { return splitting(p, seed).sigma; }

int expected_iterations(double sigma, double tol) {
  return static_cast<int>(std::ceil(std::log2(std::log(tol) / std::log(sigma))));
}

namespace {

double sigma_or_nan(const MatrixPoly& p, std::uint64_t seed) {
  try {
    return convergence_ratio(p, seed);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

CMatrix solve_by_cr(const MatrixPoly& p, const SolveOptions& o, int& iterations) {
  const ReblockedQuadratic r = reblock(p);
  const CyclicReduction cr = cyclic_reduction(r.coeffs(), o.tol, o.maxit);
  iterations = cr.iterations;
  if (reciprocal_condition(cr.hhat) < 1e-14) {
    throw Error(Errc::SingularPivot, "final H is singular");
  }
  const Index n = p.dim();
  const CMatrix big = -Eigen::PartialPivLU<CMatrix>(cr.hhat).solve(r.bm1);
  return big.topLeftCorner(n, n);
}

CMatrix solve_by_eigen(const MatrixPoly& p, std::uint64_t seed) {
  const Index n = p.dim();
  const Spectrum spec = polyeig(p, seed);
  const auto& pairs = spec.pairs;
  if (static_cast<Index>(pairs.size()) < n || pairs[static_cast<std::size_t>(n - 1)].value.is_infinite()) {
    throw Error(Errc::SplittingFailure, "fewer than n finite eigenvalues");
  }
  const double inner = pairs[static_cast<std::size_t>(n - 1)].value.abs();
  if (static_cast<Index>(pairs.size()) > n) {
    const double outer = pairs[static_cast<std::size_t>(n)].value.abs();
    if (!(inner < outer * (1.0 - 1e-8))) {
      throw Error(Errc::SplittingFailure, "no gap between the n-th and (n+1)-th eigenvalue moduli");
    }
  }
  CMatrix V(n, n);
  CMatrix D = CMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    V.col(j) = pairs[static_cast<std::size_t>(j)].right;
    D(j, j) = pairs[static_cast<std::size_t>(j)].value.value();
  }
  if (reciprocal_condition(V) < 1e-10) {
    throw Error(Errc::IllConditionedEigenbasis, "eigenvector matrix is ill conditioned");
  }
  return V * D * Eigen::PartialPivLU<CMatrix>(V).inverse();
}

}  // namespace

SolveReport solve_unilateral(const MatrixPoly& p, const SolveOptions& options) {
  if (p.degree() < 1) throw Error(Errc::InvalidArgument, "need degree >= 1");
  SolveReport rep;
  if (p.degree() == 1) {
    if (reciprocal_condition(p[1]) < 1e-14) throw Error(Errc::SingularPivot, "A_1 is singular");
    rep.G = -Eigen::PartialPivLU<CMatrix>(p[1]).solve(p[0]);
    rep.iterations = 1;
  } else if (options.method == SolveMethod::CR) {
    rep.G = solve_by_cr(p, options, rep.iterations);
  } else {
    rep.G = solve_by_eigen(p, options.seed);
  }
  rep.residual = solvent_residual(p, rep.G);
  rep.sigma = sigma_or_nan(p, options.seed);
  if (!(rep.residual <= 1e-10)) {
    throw Error(Errc::ResidualCheckFailed, "solvent residual " + std::to_string(rep.residual));
  }
  return rep;
}

SolveReport shift_accelerated_solve(const MatrixPoly& p, Complex lambda, const CVector& u,
                                    const std::optional<CVector>& v, Complex mu,
                                    const SolveOptions& options) {
  if (lambda == mu) throw Error(Errc::InvalidArgument, "mu = lambda is not an acceleration");
  const CVector w = normalized_dual(u, v);
  const MatrixPoly shifted = right_shift_poly(p, RightShift{lambda, mu, u, w});
  SolveReport rep = solve_unilateral(shifted, options);
  const CMatrix Q = u * w.adjoint();
  rep.G += (lambda - mu) * Q;
  rep.residual = solvent_residual(p, rep.G);
  rep.shifted = true;
  rep.recovery = Recovery{lambda, mu, Q};
  if (!(rep.residual <= 1e-8)) {
    throw Error(Errc::ResidualCheckFailed,
                "recovered solvent residual " + std::to_string(rep.residual));
  }
  return rep;
}

}  // namespace mpshift
