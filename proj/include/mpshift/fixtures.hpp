// SPDX-License-Identifier: Apache-2.0
//
// Reference problems with exactly known coefficients.

#pragma once

#include <string_view>
#include <vector>

#include "mpshift/types.hpp"

namespace mpshift::fixtures {

/// 2x2 quadratic with eigenvalues 1/3, 1/2 and a double eigenvalue 1.
MatrixPoly p1();
/// p1 after moving the eigenvalue 1 (u = v = e_1) to 0.
MatrixPoly p1_shifted();
/// 3x3 quadratic with two infinite eigenvalues and +-i sqrt(3), +-i.
MatrixPoly p2();
/// 5x5 quartic A(z) = z I - sum_i z^i B_i with sum_i B_i stochastic.
MatrixPoly p3();
/// Integer numerators N_i with B_i = D^{-1} N_i in p3.
std::vector<Eigen::MatrixXi> p3_numerators();
/// D = diag(57, 49, 41, 33, 25).
Eigen::VectorXi p3_denominators();
/// Scalar Laurent polynomial -z^{-1}/4 + 1 - z/4.
LaurentPoly scalar_quadratic();

/// Names accepted by `by_name`.
const std::vector<std::string_view>& names();
/// Throws UnknownFixture.
LaurentPoly by_name(std::string_view name);

}  // namespace mpshift::fixtures
