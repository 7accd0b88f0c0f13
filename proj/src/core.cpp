// SPDX-License-Identifier: Apache-2.0

#include "mpshift/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mpshift {

double frobenius(const CMatrix& m) { return m.norm(); }

Complex ipow(Complex z, int k) {
  const bool negative = k < 0;
  unsigned e = negative ? static_cast<unsigned>(-static_cast<long>(k)) : static_cast<unsigned>(k);
  Complex result{1.0, 0.0};
  Complex base = z;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return negative ? Complex{1.0, 0.0} / result : result;
}

CMatrix evaluate(const MatrixPoly& p, Complex z) {
  CMatrix acc = p.leading();
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc *= z;
    acc += p[i];
  }
  return acc;
}

CMatrix evaluate(const LaurentPoly& p, Complex z) {
  if (p.lo() < 0 && z == Complex{0.0, 0.0}) {
    throw Error(Errc::ZeroAtNegativePower, "cannot evaluate negative powers at z = 0");
  }
  CMatrix acc = p[p.hi()];
  for (int i = p.hi() - 1; i >= p.lo(); --i) {
    acc *= z;
    acc += p[i];
  }
  if (p.lo() < 0) acc *= ipow(z, p.lo());
  return acc;
}

CMatrix derivative(const LaurentPoly& p, Complex z) {
  CMatrix acc = CMatrix::Zero(p.dim(), p.dim());
  for (int i = p.lo(); i <= p.hi(); ++i) {
    if (i == 0) continue;
    acc += (static_cast<double>(i) * ipow(z, i - 1)) * p[i];
  }
  return acc;
}

Complex det_at(const LaurentPoly& p, Complex z) {
  return Eigen::PartialPivLU<CMatrix>(evaluate(p, z)).determinant();
}

MatrixPoly reverse(const MatrixPoly& p) {
  std::vector<CMatrix> c(p.coeffs().rbegin(), p.coeffs().rend());
  return MatrixPoly(std::move(c));
}

LaurentPoly adjoint_coeffs(const LaurentPoly& p) {
  std::vector<CMatrix> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.emplace_back(a.adjoint());
  return LaurentPoly(p.lo(), std::move(c), p.truncated());
}

MatrixPoly as_polynomial(const LaurentPoly& p) { return MatrixPoly(p.coeffs()); }

double coeff_scale(const LaurentPoly& p) {
  double s = 0.0;
  for (const auto& a : p.coeffs()) s += a.norm();
  return s;
}

double eval_scale(const LaurentPoly& p, Complex z) {
  const double r = std::abs(z);
  double s = 0.0;
  for (int i = p.lo(); i <= p.hi(); ++i) s += p[i].norm() * std::pow(r, i);
  return std::max(s, kTinyFloor);
}

double right_residual(const LaurentPoly& p, Complex z, const CVector& u) {
  const double un = std::max(u.norm(), kTinyFloor);
  return (evaluate(p, z) * u).norm() / (un * eval_scale(p, z));
}

double left_residual(const LaurentPoly& p, Complex z, const CVector& v) {
  const double vn = std::max(v.norm(), kTinyFloor);
  return (v.adjoint() * evaluate(p, z)).norm() / (vn * eval_scale(p, z));
}

namespace {

double hadamard_bound(const CMatrix& m) {
  double b = 1.0;
  for (Index j = 0; j < m.cols(); ++j) b *= m.col(j).norm();
  return b;
}

Complex product_of_differences(Complex z, std::span<const Complex> roots) {
  Complex p{1.0, 0.0};
  for (const auto& r : roots) p *= (z - r);
  return p;
}

}  // namespace

OracleReport det_ratio_oracle(const LaurentPoly& a, const LaurentPoly& shifted,
                              std::span<const Complex> removed,
                              std::span<const Complex> added, const OracleOptions& options) {
  if (a.dim() != shifted.dim()) {
    throw Error(Errc::DimensionMismatch, "oracle operands have different dimensions");
  }
  if (options.samples <= 0 || options.radii.empty()) {
    throw Error(Errc::InvalidArgument, "oracle needs at least one sample and one radius");
  }

  std::mt19937_64 rng(options.seed);
  auto draw_point = [&](int k) {
    const double radius = options.radii[static_cast<std::size_t>(k) % options.radii.size()];
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const Complex z = std::polar(radius, 2.0 * std::numbers::pi * unit);
      const auto near = [&](const Complex& w) { return std::abs(z - w) < options.exclusion; };
      if (std::none_of(removed.begin(), removed.end(), near) &&
          std::none_of(added.begin(), added.end(), near)) {
        return z;
      }
    }
    throw Error(Errc::InvalidArgument, "could not draw an oracle sample away from shift values");
  };

  OracleReport report;
  report.constant = options.constant;
  bool constant_fitted = !options.fit_constant;
  bool any_nondegenerate = false;

  for (int k = 0; k < options.samples; ++k) {
    const Complex z = draw_point(k);
    const CMatrix az = evaluate(a, z);
    const Complex det_a = Eigen::PartialPivLU<CMatrix>(az).determinant();
    if (std::abs(det_a) > 1e-12 * hadamard_bound(az)) any_nondegenerate = true;

    const Complex lhs = det_at(shifted, z) * product_of_differences(z, removed);
    const Complex base = det_a * product_of_differences(z, added);
    if (!constant_fitted) {
      if (std::abs(base) <= options.floor) continue;
      report.constant = lhs / base;
      constant_fitted = true;
      ++report.samples;
      continue;
    }
    const Complex rhs = report.constant * base;
    const double err = std::abs(lhs - rhs) / std::max(std::abs(rhs), options.floor);
    report.max_error = std::max(report.max_error, err);
    ++report.samples;
  }

  if (!any_nondegenerate) {
    throw Error(Errc::DegeneratePolynomial, "det A(z) vanishes at every oracle sample point");
  }
  report.pass = constant_fitted && report.max_error <= options.tolerance;
  return report;
}

std::vector<Complex> unit_circle_points(int count) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    pts.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / count));
  }
  return pts;
}

}  // namespace mpshift
