// SPDX-License-Identifier: Apache-2.0
//
// `.mp.json` serialization:
//   {"n": int, "lo": int, "coeffs": [C_lo, ..., C_hi]}
// where each C is an n-element array of n-element arrays of [re, im] pairs.
// An optional "truncated": true marks a cut Laurent series.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpshift/types.hpp"

namespace mpshift::io {

nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly from_json(const nlohmann::json& j);

/// Matrix as an array of rows of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
/// Accepts [re, im] pairs or plain numbers per entry.
CMatrix matrix_from_json(const nlohmann::json& j, std::string_view what);
Complex complex_from_json(const nlohmann::json& j, std::string_view what);

std::string write_string(const LaurentPoly& p);
LaurentPoly read_string(std::string_view text);

void write_file(const std::filesystem::path& path, const LaurentPoly& p);
LaurentPoly read_file(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
/// "RE", "RE+IMi" or "RE-IMi" using format_double.
std::string format_complex(Complex z);

/// Parses "RE", "IMi", "RE+IMi", "RE-IMi" (also "i", "-i"). Throws ParseError.
Complex parse_complex(std::string_view text);
/// Comma separated list of complex literals.
std::vector<Complex> parse_complex_list(std::string_view text);

}  // namespace mpshift::io
