#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "koebe/series.hpp"

namespace koebe {

namespace detail {

// 17 significant digits: lossless decimal round-trip for doubles.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(std::string_view tok, std::size_t pos_for_error) {
  std::string s(tok);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError("expected a number, got '" + s + "'", pos_for_error);
  if (!std::isfinite(v))
    throw ParseError("number out of range: '" + s + "'", pos_for_error);
  return v;
}

}  // namespace detail

// CSV rows `n,re,im`, one per coefficient, with a header line.
inline std::string series_to_csv(const Series& s) {
  std::string out = "n,re,im\n";
  for (int n = 0; n <= s.trunc_order(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += detail::fmt17(s[n].real());
    out += ',';
    out += detail::fmt17(s[n].imag());
    out += '\n';
  }
  return out;
}

inline Series series_from_csv(std::string_view text) {
  std::vector<complex> coeffs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    std::size_t line_start = pos;
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (line.empty()) continue;
    if (line.substr(0, 2) == "n,") continue;  // header
    std::size_t c1 = line.find(',');
    std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos)
      throw ParseError("expected 'n,re,im' row", line_start);
    int n = static_cast<int>(detail::parse_double(line.substr(0, c1), line_start));
    double re = detail::parse_double(line.substr(c1 + 1, c2 - c1 - 1), line_start);
    double im = detail::parse_double(line.substr(c2 + 1), line_start);
    if (n != static_cast<int>(coeffs.size()))
      throw ParseError("coefficient rows must be consecutive from 0", line_start);
    coeffs.emplace_back(re, im);
  }
  if (coeffs.empty()) throw ParseError("no coefficient rows found", 0);
  return Series(std::move(coeffs));
}

// JSON form { "trunc": N, "coeffs": [[re,im],...] }.
inline nlohmann::json series_to_json(const Series& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = 0; n <= s.trunc_order(); ++n)
    coeffs.push_back({s[n].real(), s[n].imag()});
  return nlohmann::json{{"trunc", s.trunc_order()}, {"coeffs", std::move(coeffs)}};
}

inline Series series_from_json(const nlohmann::json& j) {
  if (!j.contains("trunc") || !j.contains("coeffs"))
    throw ParseError("series JSON needs 'trunc' and 'coeffs'", 0);
  std::vector<complex> coeffs;
  for (const auto& pair : j.at("coeffs"))
    coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  Series s(std::move(coeffs));
  if (s.trunc_order() != j.at("trunc").get<int>())
    throw ParseError("'trunc' disagrees with coefficient count", 0);
  return s;
}

}  // namespace koebe
