// SPDX-License-Identifier: Apache-2.0

#include "mpshift/fixtures.hpp"

#include <string>

namespace mpshift::fixtures {

namespace {

CMatrix real(std::initializer_list<std::initializer_list<double>> rows) {
  CMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double x : row) m(r, c++) = Complex{x, 0.0};
    ++r;
  }
  return m;
}

}  // namespace

MatrixPoly p1() {
  return MatrixPoly({real({{-1, -1}, {0, -1}}), real({{4, 3}, {1, 4}}), real({{-3, 0}, {-1, -2}})});
}

MatrixPoly p1_shifted() {
  return MatrixPoly({real({{0, -1}, {0, -1}}), real({{1, 3}, {0, 4}}), real({{-3, 0}, {-1, -2}})});
}

MatrixPoly p2() {
  return MatrixPoly({real({{1, 0, -1}, {1, 2, 0}, {1, 1, 1}}),
                     real({{0, 1, 1}, {0, 1, 1}, {0, 1, 1}}),
                     real({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
}

Eigen::VectorXi p3_denominators() {
  Eigen::VectorXi d(5);
  d << 57, 49, 41, 33, 25;
  return d;
}

std::vector<Eigen::MatrixXi> p3_numerators() {
  const int n = 5;
  Eigen::MatrixXi upper = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) upper(i, j) = 1;
  }
  const Eigen::MatrixXi ones = Eigen::MatrixXi::Ones(n, n);
  return {9 * upper, upper.transpose(), ones, ones, Eigen::MatrixXi::Identity(n, n)};
}

MatrixPoly p3() {
  const Eigen::VectorXi d = p3_denominators();
  const auto num = p3_numerators();
  const Index n = d.size();
  std::vector<CMatrix> a;
  for (const auto& ni : num) {
    CMatrix b(n, n);
    for (Index r = 0; r < n; ++r) {
      for (Index c = 0; c < n; ++c) b(r, c) = static_cast<double>(ni(r, c)) / d(r);
    }
    a.push_back(-b);
  }
  a[1] += CMatrix::Identity(n, n);
  return MatrixPoly(std::move(a));
}

LaurentPoly scalar_quadratic() {
  return LaurentPoly(-1, {real({{-0.25}}), real({{1.0}}), real({{-0.25}})});
}

const std::vector<std::string_view>& names() {
  static const std::vector<std::string_view> all{"p1", "p1-shifted", "p2", "p3", "scalar-quad"};
  return all;
}

LaurentPoly by_name(std::string_view name) {
  if (name == "p1") return p1();
  if (name == "p1-shifted") return p1_shifted();
  if (name == "p2") return p2();
  if (name == "p3") return p3();
  if (name == "scalar-quad") return scalar_quadratic();
  throw Error(Errc::UnknownFixture, "unknown fixture \"" + std::string(name) + "\"");
}

}  // namespace mpshift::fixtures
