// SPDX-License-Identifier: Apache-2.0

#include "mpshift/types.hpp"

#include <limits>
#include <utility>

namespace mpshift {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ZeroAtNegativePower: return "ZeroAtNegativePower";
    case Errc::DegeneratePolynomial: return "DegeneratePolynomial";
    case Errc::EigensolverFailure: return "EigensolverFailure";
    case Errc::DependentEigenvectors: return "DependentEigenvectors";
    case Errc::DistinctnessViolated: return "DistinctnessViolated";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NotAnEigenpair: return "NotAnEigenpair";
    case Errc::ZeroLambdaWithNegativePowers: return "ZeroLambdaWithNegativePowers";
    case Errc::CoincidentEigenvalues: return "CoincidentEigenvalues";
    case Errc::SingularLambda: return "SingularLambda";
    case Errc::NotInKernel: return "NotInKernel";
    case Errc::ZeroMu: return "ZeroMu";
    case Errc::ZeroLambda: return "ZeroLambda";
    case Errc::NotPalindromic: return "NotPalindromic";
    case Errc::SymmetryLoss: return "SymmetryLoss";
    case Errc::InfiniteValue: return "InfiniteValue";
    case Errc::MixedInfinity: return "MixedInfinity";
    case Errc::SingularPivot: return "SingularPivot";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotCanonical: return "NotCanonical";
    case Errc::SingularH0: return "SingularH0";
    case Errc::ShiftOutsideDisk: return "ShiftOutsideDisk";
    case Errc::DegenerateShift: return "DegenerateShift";
    case Errc::SingularWtilde: return "SingularWtilde";
    case Errc::ModulusConstraintViolated: return "ModulusConstraintViolated";
    case Errc::NotASolvent: return "NotASolvent";
    case Errc::SplittingFailure: return "SplittingFailure";
    case Errc::IllConditionedEigenbasis: return "IllConditionedEigenbasis";
    case Errc::NoSplitting: return "NoSplitting";
    case Errc::ResidualCheckFailed: return "ResidualCheckFailed";
    case Errc::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Complex ExtComplex::value() const {
  if (infinite_) throw Error(Errc::InfiniteValue, "finite value requested from the point at infinity");
  return z_;
}

double ExtComplex::abs() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : std::abs(z_);
}

namespace {

Index check_square_coeffs(const std::vector<CMatrix>& coeffs) {
  if (coeffs.empty()) throw Error(Errc::InvalidArgument, "polynomial needs at least one coefficient");
  const Index n = coeffs.front().rows();
  if (n <= 0) throw Error(Errc::DimensionMismatch, "coefficients must be nonempty");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].rows() != n || coeffs[i].cols() != n) {
      throw Error(Errc::DimensionMismatch,
                  "coefficient " + std::to_string(i) + " is " + std::to_string(coeffs[i].rows()) +
                      "x" + std::to_string(coeffs[i].cols()) + ", expected " +
                      std::to_string(n) + "x" + std::to_string(n));
    }
  }
  return n;
}

}  // namespace

MatrixPoly::MatrixPoly(std::vector<CMatrix> coeffs)
    : n_(check_square_coeffs(coeffs)), coeffs_(std::move(coeffs)) {}

bool operator==(const MatrixPoly& a, const MatrixPoly& b) {
  if (a.n_ != b.n_ || a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  }
  return true;
}

LaurentPoly::LaurentPoly(int lo, std::vector<CMatrix> coeffs, bool truncated)
    : n_(check_square_coeffs(coeffs)), lo_(lo), coeffs_(std::move(coeffs)), truncated_(truncated) {
  if (lo_ > 0 || hi() < 0) {
    throw Error(Errc::InvalidArgument, "Laurent support must satisfy lo <= 0 <= hi");
  }
}

LaurentPoly::LaurentPoly(const MatrixPoly& p) : n_(p.dim()), lo_(0), coeffs_(p.coeffs()) {}

const CMatrix& LaurentPoly::operator[](int i) const {
  if (i < lo_ || i > hi()) {
    throw Error(Errc::InvalidArgument, "coefficient index " + std::to_string(i) +
                                           " outside [" + std::to_string(lo_) + ", " +
                                           std::to_string(hi()) + "]");
  }
  return coeffs_[static_cast<std::size_t>(i - lo_)];
}

MatrixPoly LaurentPoly::to_poly() const {
  if (lo_ != 0) throw Error(Errc::InvalidArgument, "Laurent polynomial has negative powers");
  return MatrixPoly(coeffs_);
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.n_ != b.n_ || a.lo_ != b.lo_ || a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  }
  return true;
}

}  // namespace mpshift
