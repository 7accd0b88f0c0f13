// SPDX-License-Identifier: Apache-2.0
//
// mpshift: command-line front end for eigenvalue shifts of matrix
// polynomials, canonical factorizations and unilateral matrix equations.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpshift/equations.hpp"
#include "mpshift/factorizations.hpp"
#include "mpshift/fixtures.hpp"
#include "mpshift/io.hpp"
#include "mpshift/shifts.hpp"
#include "mpshift/spectra.hpp"

namespace {

using mpshift::CMatrix;
using mpshift::Complex;
using mpshift::CVector;
using mpshift::Errc;
using mpshift::Index;
using mpshift::Error;
using mpshift::LaurentPoly;
using mpshift::MatrixPoly;
using nlohmann::json;
namespace io = mpshift::io;

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const CVector& x) {
  json out = json::array();
  for (Index i = 0; i < x.size(); ++i) out.push_back(complex_json(x(i)));
  return out;
}

std::string matrix_text(const CMatrix& m) {
  std::ostringstream os;
  for (Index r = 0; r < m.rows(); ++r) {
    os << "  [";
    for (Index c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << io::format_complex(m(r, c));
    os << "]\n";
  }
  return os.str();
}

std::string value_text(const mpshift::ExtComplex& z) {
  return z.is_infinite() ? std::string("Inf") : io::format_complex(z.value());
}

CVector parse_vector(const std::string& text, Index n, const char* flag) {
  const std::vector<Complex> xs = io::parse_complex_list(text);
  if (static_cast<Index>(xs.size()) != n) {
    throw Usage(std::string(flag) + " needs " + std::to_string(n) + " entries, got " +
                std::to_string(xs.size()));
  }
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = xs[static_cast<std::size_t>(i)];
  return v;
}

mpshift::ExtComplex parse_ext(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return mpshift::ExtComplex::infinity();
  return io::parse_complex(text);
}

void write_poly(const LaurentPoly& p, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << io::write_string(p);
  } else {
    io::write_file(out, p);
  }
}

void require_polynomial(const LaurentPoly& p, const char* what) {
  if (!p.is_polynomial()) throw Usage(std::string(what) + " needs a polynomial input (lo = 0)");
}

// ---------------------------------------------------------------- fixture

struct FixtureArgs {
  std::string name;
  std::string out;
};

int run_fixture(const FixtureArgs& a) {
  write_poly(mpshift::fixtures::by_name(a.name), a.out);
  return 0;
}

// -------------------------------------------------------------------- eig

struct EigArgs {
  std::string input;
  bool left = false;
  std::string format = "table";
  std::uint64_t seed = 42;
};

int run_eig(const EigArgs& a) {
  const LaurentPoly p = io::read_file(a.input);
  const mpshift::Spectrum spec = mpshift::polyeig(mpshift::as_polynomial(p), a.seed, a.left);
  if (a.format == "json") {
    json j;
    j["cayley_point"] = complex_json(spec.cayley_point);
    j["warnings"] = spec.warnings;
    json pairs = json::array();
    for (const auto& ep : spec.pairs) {
      json e;
      e["value"] = ep.value.is_infinite() ? json("inf") : complex_json(ep.value.value());
      e["modulus"] = ep.value.is_infinite() ? json("inf") : json(ep.value.abs());
      e["residual"] = ep.residual;
      e["borderline"] = ep.borderline;
      e["right"] = vector_json(ep.right);
      if (ep.left) e["left"] = vector_json(*ep.left);
      pairs.push_back(std::move(e));
    }
    j["eigenvalues"] = std::move(pairs);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "# value modulus residual\n";
  for (const auto& ep : spec.pairs) {
    std::cout << value_text(ep.value) << " "
              << (ep.value.is_infinite() ? std::string("Inf") : io::format_double(ep.value.abs()))
              << " " << io::format_double(ep.residual) << (ep.borderline ? " borderline" : "")
              << "\n";
    if (a.left && ep.left) std::cout << "  left: " << vector_json(*ep.left).dump() << "\n";
  }
  for (const auto& w : spec.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

// ------------------------------------------------------------------ shift

struct ShiftArgs {
  std::string input;
  std::string lambda;
  std::string mu;
  std::string side = "right";
  std::string u = "auto";
  std::string v = "auto";
  std::string y = "auto";
  bool dbl = false;
  std::string lambda2;
  std::string mu2;
  std::string v2 = "auto";
  std::string y2 = "auto";
  std::string multi;
  bool from_inf = false;
  bool to_inf = false;
  bool palindromic = false;
  std::string out;
  int samples = 16;
  std::uint64_t seed = 42;
  std::string format = "table";
};

Complex finite_value(const std::string& text, const char* flag) {
  if (text.empty()) throw Usage(std::string(flag) + " is required");
  const auto z = parse_ext(text);
  if (z.is_infinite()) throw Usage(std::string(flag) + " must be finite in this mode");
  return z.value();
}

CVector right_vector(const LaurentPoly& p, Complex lambda, const std::string& spec, const char* flag) {
  if (spec == "auto") return mpshift::null_vector(mpshift::evaluate(p, lambda));
  return parse_vector(spec, p.dim(), flag);
}

CVector left_vector(const LaurentPoly& p, Complex lambda, const std::string& spec, const char* flag) {
  if (spec == "auto") return mpshift::left_null_vector(mpshift::evaluate(p, lambda));
  return parse_vector(spec, p.dim(), flag);
}

std::optional<CVector> dual_vector(const LaurentPoly& p, const std::string& spec, const char* flag) {
  if (spec == "auto") return std::nullopt;
  return parse_vector(spec, p.dim(), flag);
}

CMatrix spec_matrix(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::ParseError, std::string("multishift spec lacks \"") + key + "\"");
  return io::matrix_from_json(j[key], key);
}

Complex spec_scalar(const json& j) {
  if (j.is_string()) return io::parse_complex(j.get<std::string>());
  return io::complex_from_json(j, "multishift value");
}

mpshift::MultiShift read_multishift(const LaurentPoly& p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  mpshift::MultiShift ms;
  if (j.contains("lambdas")) {
    std::vector<mpshift::EigenPair> pairs;
    for (const auto& x : j["lambdas"]) {
      const Complex lam = spec_scalar(x);
      pairs.push_back(mpshift::refine_pair(p, lam, mpshift::null_vector(mpshift::evaluate(p, lam))));
    }
    const mpshift::InvariantPair ip = mpshift::invariant_pair(p, pairs);
    ms.U = ip.U;
    ms.Lambda = ip.Lambda;
    ms.V = ip.V;
    if (j.contains("S")) {
      ms.S = spec_matrix(j, "S");
    } else if (j.contains("mus")) {
      const auto& mus = j["mus"];
      if (mus.size() != pairs.size()) throw Usage("\"mus\" must match \"lambdas\" in length");
      ms.S = CMatrix::Zero(ms.Lambda.rows(), ms.Lambda.cols());
      for (std::size_t k = 0; k < mus.size(); ++k) {
        ms.S(static_cast<Index>(k), static_cast<Index>(k)) = spec_scalar(mus[k]);
      }
    } else {
      throw Error(Errc::ParseError, "multishift spec needs \"S\" or \"mus\"");
    }
    return ms;
  }
  ms.U = spec_matrix(j, "U");
  ms.Lambda = spec_matrix(j, "Lambda");
  ms.S = spec_matrix(j, "S");
  if (j.contains("V")) {
    ms.V = spec_matrix(j, "V");
  } else {
    ms.V = ms.U * (ms.U.adjoint() * ms.U).inverse();
  }
  return ms;
}

int report_oracle(const LaurentPoly& a, const LaurentPoly& shifted, const mpshift::DetRatio& ratio,
                  const ShiftArgs& args, const std::vector<std::string>& warnings) {
  mpshift::OracleOptions opt;
  opt.samples = args.samples;
  opt.seed = args.seed;
  opt.constant = ratio.constant;
  const mpshift::OracleReport rep = mpshift::det_ratio_oracle(a, shifted, ratio.removed, ratio.added, opt);
  std::ostream& os = (args.out.empty() || args.out == "-") ? std::cerr : std::cout;
  if (args.format == "json") {
    json j;
    j["oracle"] = rep.pass ? "PASS" : "FAIL";
    j["max_error"] = rep.max_error;
    j["samples"] = rep.samples;
    j["warnings"] = warnings;
    os << j.dump() << "\n";
  } else {
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    os << "oracle: " << (rep.pass ? "PASS" : "FAIL") << " max_error=" << io::format_double(rep.max_error)
       << " samples=" << rep.samples << "\n";
  }
  return rep.pass ? 0 : kExitNumeric;
}

int run_shift(const ShiftArgs& a) {
  const int modes = static_cast<int>(a.dbl) + static_cast<int>(!a.multi.empty()) +
                    static_cast<int>(a.from_inf) + static_cast<int>(a.to_inf) +
                    static_cast<int>(a.palindromic);
  if (modes > 1) throw Usage("choose at most one of --double, --multi, --from-inf, --to-inf, --palindromic");
  if (a.side != "right" && a.side != "left") throw Usage("--side must be right or left");
  if (modes == 1 && a.side == "left") throw Usage("--side left only applies to single shifts");
  if (a.samples < 1) throw Usage("--samples must be positive");

  const LaurentPoly p = io::read_file(a.input);
  std::vector<std::string> warnings;
  if (p.truncated()) warnings.emplace_back("input is a truncated series; sums use the stored range only");

  if (a.from_inf) {
    require_polynomial(p, "--from-inf");
    if (!a.lambda.empty() && !parse_ext(a.lambda).is_infinite()) {
      throw Usage("--from-inf takes lambda = inf");
    }
    const Complex mu = finite_value(a.mu, "--mu");
    const MatrixPoly mp = p.to_poly();
    const CVector u = a.u == "auto" ? mpshift::null_vector(mp.leading()) : parse_vector(a.u, p.dim(), "--u");
    const MatrixPoly out = mpshift::shift_from_infinity(mp, mu, u, dual_vector(p, a.v, "--v"));
    write_poly(out, a.out);
    return report_oracle(p, out, mpshift::from_infinity_ratio(mu), a, warnings);
  }
  if (a.to_inf) {
    require_polynomial(p, "--to-inf");
    if (!a.mu.empty() && !parse_ext(a.mu).is_infinite()) throw Usage("--to-inf takes mu = inf");
    const Complex lambda = finite_value(a.lambda, "--lambda");
    const CVector u = right_vector(p, lambda, a.u, "--u");
    const MatrixPoly out = mpshift::shift_to_infinity(p.to_poly(), lambda, u, dual_vector(p, a.v, "--v"));
    write_poly(out, a.out);
    return report_oracle(p, out, mpshift::to_infinity_ratio(lambda), a, warnings);
  }
  if (!a.multi.empty()) {
    const mpshift::MultiShift ms = read_multishift(p, a.multi);
    const LaurentPoly out = mpshift::multishift_laurent(p, ms);
    write_poly(out, a.out);
    return report_oracle(p, out, mpshift::multishift_ratio(ms), a, warnings);
  }

  if (a.lambda.empty() || a.mu.empty()) throw Usage("--lambda and --mu are required");
  const auto lam_ext = parse_ext(a.lambda);
  const auto mu_ext = parse_ext(a.mu);
  if (lam_ext.is_infinite() || mu_ext.is_infinite()) {
    // Generic entry point for infinite values: route to the infinity shifts.
    if (a.dbl || a.palindromic || a.side == "left") throw Usage("infinite values need a plain right shift");
    require_polynomial(p, "an infinite shift");
    const MatrixPoly mp = p.to_poly();
    CVector u;
    if (lam_ext.is_infinite() && a.u == "auto") {
      u = mpshift::null_vector(mp.leading());
    } else if (lam_ext.is_finite()) {
      u = right_vector(p, lam_ext.value(), a.u, "--u");
    } else {
      u = parse_vector(a.u, p.dim(), "--u");
    }
    const MatrixPoly out = mpshift::shift_poly(mp, lam_ext, mu_ext, u, dual_vector(p, a.v, "--v"));
    write_poly(out, a.out);
    const auto ratio = lam_ext.is_infinite() ? mpshift::from_infinity_ratio(mu_ext.value())
                                             : mpshift::to_infinity_ratio(lam_ext.value());
    return report_oracle(p, out, ratio, a, warnings);
  }
  const Complex lambda = lam_ext.value();
  const Complex mu = mu_ext.value();

  if (a.palindromic) {
    require_polynomial(p, "--palindromic");
    const CVector u = right_vector(p, lambda, a.u, "--u");
    const mpshift::PalindromicShift ps = mpshift::palindromic_shift(p.to_poly(), lambda, mu, u);
    warnings.insert(warnings.end(), ps.warnings.begin(), ps.warnings.end());
    write_poly(ps.poly, a.out);
    return report_oracle(p, ps.poly, mpshift::palindromic_ratio(lambda, mu), a, warnings);
  }
  if (a.dbl) {
    const Complex lambda2 = finite_value(a.lambda2, "--lambda2");
    const Complex mu2 = finite_value(a.mu2, "--mu2");
    const mpshift::RightShift r{lambda, mu, right_vector(p, lambda, a.u, "--u"), dual_vector(p, a.v, "--v")};
    const mpshift::LeftShift l{lambda2, mu2, left_vector(p, lambda2, a.v2, "--v2"),
                               dual_vector(p, a.y2, "--y2")};
    const LaurentPoly out = mpshift::double_shift_laurent(p, r, l);
    write_poly(out, a.out);
    mpshift::DetRatio ratio{{lambda, lambda2}, {mu, mu2}, {1.0, 0.0}};
    return report_oracle(p, out, ratio, a, warnings);
  }

  if (lambda == mu) {
    warnings.emplace_back("lambda equals mu; the polynomial is returned unchanged");
    write_poly(p, a.out);
    return report_oracle(p, p, mpshift::single_shift_ratio(lambda, mu), a, warnings);
  }
  LaurentPoly out = p;
  if (a.side == "right") {
    const CVector u = right_vector(p, lambda, a.u, "--u");
    out = mpshift::right_shift_laurent(p, {lambda, mu, u, dual_vector(p, a.v, "--v")});
  } else {
    const CVector v = left_vector(p, lambda, a.v, "--v");
    out = mpshift::left_shift_laurent(p, {lambda, mu, v, dual_vector(p, a.y, "--y")});
  }
  write_poly(out, a.out);
  return report_oracle(p, out, mpshift::single_shift_ratio(lambda, mu), a, warnings);
}

// ----------------------------------------------------------------- factor

struct FactorArgs {
  std::string input;
  bool quad = false;
  bool both = false;
  double tol = 1e-14;
  int maxit = 64;
  std::string format = "table";
};

int run_factor(const FactorArgs& a) {
  const LaurentPoly p = io::read_file(a.input);
  const bool quadratic_support = p.lo() >= -1 && p.hi() <= 1;
  if (a.quad && !quadratic_support) throw Usage("--quad needs coefficients of z^-1, z^0, z^1 only");
  if (a.both && !quadratic_support) throw Usage("--both needs a quadratic Laurent polynomial");

  json j;
  std::ostringstream text;
  if (quadratic_support && (a.quad || a.both || p.lo() == -1)) {
    const auto q = mpshift::QuadCoeffs::from(p);
    const auto f = mpshift::cr_quadratic(q, a.tol, a.maxit);
    j["Gplus"] = io::matrix_to_json(f.Gplus);
    j["Rplus"] = io::matrix_to_json(f.Rplus);
    j["Kplus"] = io::matrix_to_json(f.Kplus);
    j["iterations"] = f.iterations;
    j["residual"] = f.residual;
    text << "G+ =\n" << matrix_text(f.Gplus) << "R+ =\n" << matrix_text(f.Rplus) << "K+ =\n"
         << matrix_text(f.Kplus) << "iterations " << f.iterations << "\nresidual "
         << io::format_double(f.residual) << "\n";
    if (a.both) {
      const auto rf = mpshift::reversed_factorization(q, f);
      j["Gminus"] = io::matrix_to_json(rf.Gminus);
      j["Rminus"] = io::matrix_to_json(rf.Rminus);
      j["Kminus"] = io::matrix_to_json(rf.Kminus);
      j["W"] = io::matrix_to_json(rf.W);
      j["reversed_residual"] = rf.residual;
      text << "G- =\n" << matrix_text(rf.Gminus) << "R- =\n" << matrix_text(rf.Rminus) << "K- =\n"
           << matrix_text(rf.Kminus) << "W =\n" << matrix_text(rf.W) << "reversed residual "
           << io::format_double(rf.residual) << "\n";
    }
  } else {
    require_polynomial(p, "factor");
    const MatrixPoly mp = p.to_poly();
    mpshift::SolveOptions opt;
    opt.tol = a.tol;
    opt.maxit = a.maxit;
    const auto rep = mpshift::solve_unilateral(mp, opt);
    const auto pf = mpshift::poly_factorization(mp, rep.G);
    j["G"] = io::matrix_to_json(pf.G);
    json us = json::array();
    for (const auto& u : pf.U) us.push_back(io::matrix_to_json(u));
    j["U"] = std::move(us);
    j["iterations"] = rep.iterations;
    j["consistency"] = pf.consistency;
    text << "G =\n" << matrix_text(pf.G);
    for (std::size_t i = 0; i < pf.U.size(); ++i) text << "U" << i << " =\n" << matrix_text(pf.U[i]);
    text << "iterations " << rep.iterations << "\nconsistency " << io::format_double(pf.consistency)
         << "\n";
  }
  std::cout << (a.format == "json" ? j.dump(2) + "\n" : text.str());
  return 0;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
  std::string input;
  std::string shift;
  std::string u = "auto";
  std::string v = "auto";
  std::string method = "cr";
  double tol = 1e-14;
  int maxit = 64;
  std::uint64_t seed = 42;
  std::string format = "table";
};

int run_solve(const SolveArgs& a) {
  const LaurentPoly p = io::read_file(a.input);
  require_polynomial(p, "solve");
  const MatrixPoly mp = p.to_poly();
  mpshift::SolveOptions opt;
  if (a.method == "cr") {
    opt.method = mpshift::SolveMethod::CR;
  } else if (a.method == "eigen") {
    opt.method = mpshift::SolveMethod::Eigen;
  } else {
    throw Usage("--method must be cr or eigen");
  }
  opt.tol = a.tol;
  opt.maxit = a.maxit;
  opt.seed = a.seed;

  mpshift::SolveReport rep;
  if (a.shift.empty()) {
    rep = mpshift::solve_unilateral(mp, opt);
  } else {
    const std::vector<Complex> lm = io::parse_complex_list(a.shift);
    if (lm.empty() || lm.size() > 2) throw Usage("--shift takes LAMBDA or LAMBDA,MU");
    const Complex lambda = lm[0];
    const Complex mu = lm.size() == 2 ? lm[1] : Complex{0.0, 0.0};
    const CVector u = right_vector(p, lambda, a.u, "--u");
    rep = mpshift::shift_accelerated_solve(mp, lambda, u, dual_vector(p, a.v, "--v"), mu, opt);
  }

  if (a.format == "json") {
    json j;
    j["G"] = io::matrix_to_json(rep.G);
    j["iterations"] = rep.iterations;
    j["residual"] = rep.residual;
    j["sigma"] = std::isnan(rep.sigma) ? json(nullptr) : json(rep.sigma);
    j["shifted"] = rep.shifted;
    if (rep.recovery) {
      j["recovery"] = {{"lambda", complex_json(rep.recovery->lambda)},
                       {"mu", complex_json(rep.recovery->mu)},
                       {"Q", io::matrix_to_json(rep.recovery->Q)}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "G =\n" << matrix_text(rep.G) << "iterations " << rep.iterations << "\nresidual "
            << io::format_double(rep.residual) << "\nsigma "
            << (std::isnan(rep.sigma) ? std::string("n/a") : io::format_double(rep.sigma)) << "\n";
  if (rep.recovery) {
    std::cout << "shifted lambda " << io::format_complex(rep.recovery->lambda) << " -> mu "
              << io::format_complex(rep.recovery->mu) << "\nQ =\n" << matrix_text(rep.recovery->Q)
              << "original residual " << io::format_double(rep.residual) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  std::string a;
  std::string b;
  std::string removed;
  std::string added;
  int samples = 32;
  std::string constant = "1";
  std::uint64_t seed = 42;
  std::string format = "table";
};

int run_check(const CheckArgs& c) {
  const LaurentPoly a = io::read_file(c.a);
  const LaurentPoly b = io::read_file(c.b);
  if (c.samples < 2) throw Usage("--samples must be at least 2");
  mpshift::OracleOptions opt;
  opt.samples = c.samples;
  opt.seed = c.seed;
  if (c.constant == "fit") {
    opt.fit_constant = true;
  } else {
    opt.constant = io::parse_complex(c.constant);
  }
  const auto removed = io::parse_complex_list(c.removed);
  const auto added = io::parse_complex_list(c.added);
  const auto rep = mpshift::det_ratio_oracle(a, b, removed, added, opt);
  if (c.format == "json") {
    json j{{"oracle", rep.pass ? "PASS" : "FAIL"},
           {"max_error", rep.max_error},
           {"samples", rep.samples},
           {"constant", complex_json(rep.constant)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "oracle: " << (rep.pass ? "PASS" : "FAIL") << " max_error="
              << io::format_double(rep.max_error) << " samples=" << rep.samples
              << " constant=" << io::format_complex(rep.constant) << "\n";
  }
  return rep.pass ? 0 : kExitNumeric;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::DimensionMismatch:
    case Errc::UnknownFixture:
    case Errc::InvalidArgument:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue shifts, canonical factorizations and matrix equations"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"table", "json"};

  FixtureArgs fx;
  auto* fixture = app.add_subcommand("fixture", "Write a reference problem");
  fixture->add_option("name", fx.name, "p1, p1-shifted, p2, p3 or scalar-quad")->required();
  fixture->add_option("-o,--output", fx.out, "Output file (default stdout)");

  EigArgs ea;
  auto* eig = app.add_subcommand("eig", "Eigenvalues of a matrix polynomial");
  eig->add_option("input", ea.input)->required();
  eig->add_flag("--left", ea.left, "Also print left eigenvectors");
  eig->add_option("--format", ea.format)->check(CLI::IsMember(formats));
  eig->add_option("--seed", ea.seed);

  ShiftArgs sa;
  auto* shift = app.add_subcommand("shift", "Apply an eigenvalue shift and verify it");
  shift->add_option("input", sa.input)->required();
  shift->add_option("--lambda", sa.lambda, "Eigenvalue to move (RE, RE+IMi or inf)");
  shift->add_option("--mu", sa.mu, "Target value (RE, RE+IMi or inf)");
  shift->add_option("--side", sa.side, "right or left");
  shift->add_option("--u", sa.u, "Right eigenvector (auto or comma list)");
  shift->add_option("--v", sa.v, "Dual of u, or the left eigenvector with --side left");
  shift->add_option("--y", sa.y, "Dual of v for --side left");
  shift->add_flag("--double", sa.dbl, "Right shift of lambda plus left shift of lambda2");
  shift->add_option("--lambda2", sa.lambda2);
  shift->add_option("--mu2", sa.mu2);
  shift->add_option("--v2", sa.v2, "Left eigenvector for lambda2");
  shift->add_option("--y2", sa.y2, "Dual of v2");
  shift->add_option("--multi", sa.multi, "JSON multishift spec");
  shift->add_flag("--from-inf", sa.from_inf, "Move an infinite eigenvalue to mu");
  shift->add_flag("--to-inf", sa.to_inf, "Move lambda to infinity");
  shift->add_flag("--palindromic", sa.palindromic, "Structure-preserving pair shift");
  shift->add_option("-o,--output", sa.out, "Output file (default stdout)");
  shift->add_option("--samples", sa.samples, "Oracle sample count");
  shift->add_option("--seed", sa.seed);
  shift->add_option("--format", sa.format)->check(CLI::IsMember(formats));

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "Canonical factorization");
  factor->add_option("input", fa.input)->required();
  factor->add_flag("--quad", fa.quad, "Quadratic Laurent factorization");
  factor->add_flag("--both", fa.both, "Also factor A(1/z)");
  factor->add_option("--tol", fa.tol);
  factor->add_option("--maxit", fa.maxit);
  factor->add_option("--format", fa.format)->check(CLI::IsMember(formats));

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "Minimal solvent of sum A_i X^i = 0");
  solve->add_option("input", so.input)->required();
  solve->add_option("--shift", so.shift, "LAMBDA[,MU] shift before solving (MU defaults to 0)");
  solve->add_option("--u", so.u, "Eigenvector for the shift (auto or comma list)");
  solve->add_option("--v", so.v, "Dual vector for the shift");
  solve->add_option("--method", so.method, "cr or eigen");
  solve->add_option("--tol", so.tol);
  solve->add_option("--maxit", so.maxit);
  solve->add_option("--seed", so.seed);
  solve->add_option("--format", so.format)->check(CLI::IsMember(formats));

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Determinant-ratio oracle between two files");
  check->add_option("a", ca.a)->required();
  check->add_option("b", ca.b)->required();
  check->add_option("--removed", ca.removed, "Comma list of removed eigenvalues");
  check->add_option("--added", ca.added, "Comma list of added eigenvalues");
  check->add_option("--samples", ca.samples);
  check->add_option("--constant", ca.constant, "Expected constant or 'fit'");
  check->add_option("--seed", ca.seed);
  check->add_option("--format", ca.format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fixture) return run_fixture(fx);
    if (*eig) return run_eig(ea);
    if (*shift) return run_shift(sa);
    if (*factor) return run_factor(fa);
    if (*solve) return run_solve(so);
    if (*check) return run_check(ca);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
