// SPDX-License-Identifier: Apache-2.0

#include "mpshift/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mpshift::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(std::string_view where, const std::string& msg) {
  throw Error(Errc::ParseError, std::string(where) + ": " + msg);
}

double number_from_json(const json& j, std::string_view what) {
  if (!j.is_number()) parse_fail(what, "expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

Complex complex_from_json(const json& j, std::string_view what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_fail(what, "expected [re, im], got " + j.dump());
  return {number_from_json(j[0], what), number_from_json(j[1], what)};
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, std::string_view what) {
  if (!j.is_array() || j.empty()) parse_fail(what, "expected a nonempty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) parse_fail(what, "row 0 is not a nonempty array");
  const auto cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string where = std::string(what) + " row " + std::to_string(r);
    if (!row.is_array()) parse_fail(where, "is not an array");
    if (static_cast<Index>(row.size()) != cols) {
      parse_fail(where, "ragged row: has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(cols));
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  where + " col " + std::to_string(c));
    }
  }
  return m;
}

json to_json(const LaurentPoly& p) {
  json j;
  j["n"] = p.dim();
  j["lo"] = p.lo();
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(matrix_to_json(c));
  j["coeffs"] = std::move(coeffs);
  if (p.truncated()) j["truncated"] = true;
  return j;
}

LaurentPoly from_json(const json& j) {
  if (!j.is_object()) parse_fail("document", "expected a JSON object");
  for (const char* key : {"n", "lo", "coeffs"}) {
    if (!j.contains(key)) parse_fail("document", std::string("missing field \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0) {
    parse_fail("field n", "expected a positive integer");
  }
  if (!j["lo"].is_number_integer()) parse_fail("field lo", "expected an integer");
  const auto n = static_cast<Index>(j["n"].get<long long>());
  const int lo = j["lo"].get<int>();
  const json& cj = j["coeffs"];
  if (!cj.is_array() || cj.empty()) parse_fail("field coeffs", "expected a nonempty array");

  std::vector<CMatrix> coeffs;
  coeffs.reserve(cj.size());
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const std::string what = "coeffs[" + std::to_string(k) + "]";
    CMatrix m = matrix_from_json(cj[k], what);
    if (m.rows() != n || m.cols() != n) {
      throw Error(Errc::DimensionMismatch, what + " is " + std::to_string(m.rows()) + "x" +
                                               std::to_string(m.cols()) + " but n = " +
                                               std::to_string(n));
    }
    coeffs.push_back(std::move(m));
  }
  const bool truncated = j.contains("truncated") && j["truncated"].is_boolean() &&
                         j["truncated"].get<bool>();
  const int hi = lo + static_cast<int>(coeffs.size()) - 1;
  if (lo > 0 || hi < 0) {
    parse_fail("field lo", "support [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "] must contain 0");
  }
  return LaurentPoly(lo, std::move(coeffs), truncated);
}

std::string write_string(const LaurentPoly& p) { return to_json(p).dump() + "\n"; }

LaurentPoly read_string(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail("json", e.what());
  }
  return from_json(j);
}

void write_file(const std::filesystem::path& path, const LaurentPoly& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open " + path.string() + " for writing");
  out << write_string(p);
}

LaurentPoly read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_string(ss.str());
}

std::string format_double(double x) {
  char buf[64];
  // Adding zero maps -0 to 0.
  const auto res = std::to_chars(buf, buf + sizeof(buf), x + 0.0);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(std::abs(z.imag()));
  return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(Errc::ParseError, "bad complex literal \"" + std::string(whole) + "\"");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty complex literal");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  const std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_part, text);
  }
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return {re, im};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!trim(item).empty()) out.push_back(parse_complex(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace mpshift::io
