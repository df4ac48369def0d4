#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "koebe/errors.hpp"
#include "koebe/maps.hpp"
#include "koebe/series_io.hpp"
#include "koebe/shear.hpp"

namespace koebe {

// Parsed form of the CLI map-spec grammar `name[:key=val{,key=val}]`.
// Complex values are written `re` or `re,im`; lambda/mu are degrees of
// argument of a unimodular number; nested specs appear in `shear:`.
struct MapSpec;
using MapSpecPtr = std::shared_ptr<const MapSpec>;

struct MapSpec {
  struct Koebe {};
  struct GKoebe { complex a; };
  struct K0 {};
  struct Lens { double R; };
  struct HpPhi {};
  struct HKoebe {};
  struct Halfplane {};
  struct Kar { double a; double R; };
  struct Ghk { double lambda_deg; complex a; double mu_deg; double R; };
  struct Shear { MapSpecPtr phi; MapSpecPtr omega; double theta; };

  std::variant<Koebe, GKoebe, K0, Lens, HpPhi, HKoebe, Halfplane, Kar, Ghk, Shear> v;
  std::string raw;
};

namespace detail {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t pos;
};

// Split `key=val{,key=val}` where a comma-separated segment that does not
// introduce a known key continues the previous value (complex second
// components, and nested specs under `shear:`).
inline std::vector<KeyValue> split_key_values(std::string_view rest, std::size_t base,
                                              const std::set<std::string, std::less<>>& keys,
                                              bool reject_unknown) {
  std::vector<KeyValue> out;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const std::size_t comma = rest.find(',', start);
    const std::string_view seg =
        rest.substr(start, comma == std::string_view::npos ? comma : comma - start);
    const std::size_t seg_pos = base + start;
    const std::size_t eq = seg.find('=');
    bool new_key = false;
    std::string key;
    if (eq != std::string_view::npos) {
      key = std::string(seg.substr(0, eq));
      if (keys.count(key) > 0) {
        new_key = true;
      } else if (reject_unknown) {
        throw ParseError("unknown key '" + key + "'", seg_pos);
      }
    }
    if (new_key) {
      for (const KeyValue& kv : out)
        if (kv.key == key) throw ParseError("duplicate key '" + key + "'", seg_pos);
      out.push_back({key, std::string(seg.substr(eq + 1)), seg_pos});
    } else {
      if (out.empty()) throw ParseError("expected key=value", seg_pos);
      out.back().value += ',';
      out.back().value += seg;
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline const KeyValue* find_key(const std::vector<KeyValue>& kvs, std::string_view key) {
  for (const KeyValue& kv : kvs)
    if (kv.key == key) return &kv;
  return nullptr;
}

inline const KeyValue& require_key(const std::vector<KeyValue>& kvs, std::string_view key,
                                   std::size_t spec_pos) {
  const KeyValue* kv = find_key(kvs, key);
  if (!kv) throw ParseError("missing key '" + std::string(key) + "'", spec_pos);
  return *kv;
}

inline complex parse_complex_value(const KeyValue& kv) {
  const std::size_t comma = kv.value.find(',');
  if (comma == std::string::npos) return complex{parse_double(kv.value, kv.pos), 0.0};
  return complex{parse_double(std::string_view(kv.value).substr(0, comma), kv.pos),
                 parse_double(std::string_view(kv.value).substr(comma + 1), kv.pos)};
}

inline double parse_real_value(const KeyValue& kv) { return parse_double(kv.value, kv.pos); }

}  // namespace detail

inline MapSpec parse_map_spec(const std::string& s);

namespace detail {

inline MapSpecPtr parse_nested(const KeyValue& kv) {
  try {
    return std::make_shared<const MapSpec>(parse_map_spec(kv.value));
  } catch (const ParseError& e) {
    // kv.pos addresses the key; the nested text starts after "key=".
    throw ParseError(std::string("in nested spec '") + kv.key + "': " + e.what(),
                     kv.pos + kv.key.size() + 1 + e.position);
  }
}

}  // namespace detail

inline MapSpec parse_map_spec(const std::string& s) {
  using detail::split_key_values;
  MapSpec spec;
  spec.raw = s;
  const std::size_t colon = s.find(':');
  const std::string name = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  const std::size_t rest_pos = colon == std::string::npos ? s.size() : colon + 1;
  if (colon != std::string::npos && rest.empty())
    throw ParseError("expected key=value after ':'", rest_pos);

  auto no_params = [&](auto tag) {
    if (!rest.empty()) throw ParseError("'" + name + "' takes no parameters", rest_pos);
    spec.v = tag;
  };

  if (name == "koebe") {
    no_params(MapSpec::Koebe{});
  } else if (name == "k0") {
    no_params(MapSpec::K0{});
  } else if (name == "hp-phi") {
    no_params(MapSpec::HpPhi{});
  } else if (name == "hkoebe") {
    no_params(MapSpec::HKoebe{});
  } else if (name == "halfplane") {
    no_params(MapSpec::Halfplane{});
  } else if (name == "gkoebe") {
    auto kvs = split_key_values(rest, rest_pos, {"a"}, true);
    spec.v = MapSpec::GKoebe{detail::parse_complex_value(detail::require_key(kvs, "a", 0))};
  } else if (name == "lens") {
    auto kvs = split_key_values(rest, rest_pos, {"R"}, true);
    const double R = detail::parse_real_value(detail::require_key(kvs, "R", 0));
    if (!(R >= 0.0 && R <= 1.0))
      throw RangeError("lens parameter R must lie in [0,1], got " + std::to_string(R));
    spec.v = MapSpec::Lens{R};
  } else if (name == "kar") {
    auto kvs = split_key_values(rest, rest_pos, {"a", "R"}, true);
    const double a = detail::parse_real_value(detail::require_key(kvs, "a", 0));
    const double R = detail::parse_real_value(detail::require_key(kvs, "R", 0));
    if (!(R >= 0.0 && R <= 1.0))
      throw RangeError("kar parameter R must lie in [0,1], got " + std::to_string(R));
    spec.v = MapSpec::Kar{a, R};
  } else if (name == "ghk") {
    auto kvs = split_key_values(rest, rest_pos, {"lambda", "a", "mu", "R"}, true);
    MapSpec::Ghk g;
    g.lambda_deg = detail::parse_real_value(detail::require_key(kvs, "lambda", 0));
    g.a = detail::parse_complex_value(detail::require_key(kvs, "a", 0));
    g.mu_deg = detail::parse_real_value(detail::require_key(kvs, "mu", 0));
    g.R = detail::parse_real_value(detail::require_key(kvs, "R", 0));
    if (!(g.R >= 0.0 && g.R <= 1.0))
      throw RangeError("ghk parameter R must lie in [0,1], got " + std::to_string(g.R));
    spec.v = g;
  } else if (name == "shear") {
    auto kvs = split_key_values(rest, rest_pos, {"phi", "omega", "theta"}, false);
    MapSpec::Shear sh;
    sh.phi = detail::parse_nested(detail::require_key(kvs, "phi", rest_pos));
    sh.omega = detail::parse_nested(detail::require_key(kvs, "omega", rest_pos));
    sh.theta = detail::parse_real_value(detail::require_key(kvs, "theta", rest_pos));
    if (!(sh.theta >= 0.0 && sh.theta < std::numbers::pi))
      throw RangeError("shear direction must lie in [0, pi), got " + std::to_string(sh.theta));
    spec.v = sh;
  } else {
    throw ParseError("unknown map name '" + name + "'", 0);
  }
  return spec;
}

namespace detail {

inline std::string fmt_complex_value(complex v) {
  if (v.imag() == 0.0) return fmt17(v.real());
  return fmt17(v.real()) + "," + fmt17(v.imag());
}

}  // namespace detail

inline std::string print_map_spec(const MapSpec& spec) {
  using detail::fmt17;
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MapSpec::Koebe>) return "koebe";
        else if constexpr (std::is_same_v<T, MapSpec::K0>) return "k0";
        else if constexpr (std::is_same_v<T, MapSpec::HpPhi>) return "hp-phi";
        else if constexpr (std::is_same_v<T, MapSpec::HKoebe>) return "hkoebe";
        else if constexpr (std::is_same_v<T, MapSpec::Halfplane>) return "halfplane";
        else if constexpr (std::is_same_v<T, MapSpec::GKoebe>)
          return "gkoebe:a=" + detail::fmt_complex_value(m.a);
        else if constexpr (std::is_same_v<T, MapSpec::Lens>) return "lens:R=" + fmt17(m.R);
        else if constexpr (std::is_same_v<T, MapSpec::Kar>)
          return "kar:a=" + fmt17(m.a) + ",R=" + fmt17(m.R);
        else if constexpr (std::is_same_v<T, MapSpec::Ghk>)
          return "ghk:lambda=" + fmt17(m.lambda_deg) + ",a=" + detail::fmt_complex_value(m.a) +
                 ",mu=" + fmt17(m.mu_deg) + ",R=" + fmt17(m.R);
        else
          return "shear:phi=" + print_map_spec(*m.phi) + ",omega=" + print_map_spec(*m.omega) +
                 ",theta=" + fmt17(m.theta);
      },
      spec.v);
}

inline bool operator==(const MapSpec& a, const MapSpec& b);

namespace detail {

struct SpecEq {
  const MapSpec& other;
  template <typename T>
  bool operator()(const T& m) const {
    const T* o = std::get_if<T>(&other.v);
    if (!o) return false;
    if constexpr (std::is_same_v<T, MapSpec::GKoebe>) return m.a == o->a;
    else if constexpr (std::is_same_v<T, MapSpec::Lens>) return m.R == o->R;
    else if constexpr (std::is_same_v<T, MapSpec::Kar>) return m.a == o->a && m.R == o->R;
    else if constexpr (std::is_same_v<T, MapSpec::Ghk>)
      return m.lambda_deg == o->lambda_deg && m.a == o->a && m.mu_deg == o->mu_deg && m.R == o->R;
    else if constexpr (std::is_same_v<T, MapSpec::Shear>)
      return *m.phi == *o->phi && *m.omega == *o->omega && m.theta == o->theta;
    else
      return true;
  }
};

}  // namespace detail

inline bool operator==(const MapSpec& a, const MapSpec& b) {
  return std::visit(detail::SpecEq{b}, a.v);
}

inline bool spec_is_harmonic(const MapSpec& spec) {
  return std::holds_alternative<MapSpec::HKoebe>(spec.v) ||
         std::holds_alternative<MapSpec::Halfplane>(spec.v) ||
         std::holds_alternative<MapSpec::Kar>(spec.v) ||
         std::holds_alternative<MapSpec::Ghk>(spec.v) ||
         std::holds_alternative<MapSpec::Shear>(spec.v);
}

inline AnalyticMap make_analytic_map(const MapSpec& spec) {
  if (spec_is_harmonic(spec))
    throw BadParameter("spec '" + print_map_spec(spec) + "' names a harmonic map");
  if (std::holds_alternative<MapSpec::Koebe>(spec.v)) return koebe_map();
  if (std::holds_alternative<MapSpec::K0>(spec.v)) return k0_map();
  if (std::holds_alternative<MapSpec::HpPhi>(spec.v)) return halfplane_phi();
  if (const auto* g = std::get_if<MapSpec::GKoebe>(&spec.v)) return generalized_koebe(g->a);
  const auto& l = std::get<MapSpec::Lens>(spec.v);
  return lens_map(l.R);
}

inline HarmonicMap make_harmonic_map(const MapSpec& spec) {
  if (!spec_is_harmonic(spec)) return harmonic_from_analytic(make_analytic_map(spec));
  if (std::holds_alternative<MapSpec::HKoebe>(spec.v)) return kar_closed_form(2.0, 1.0);
  if (std::holds_alternative<MapSpec::Halfplane>(spec.v)) return halfplane_map();
  if (const auto* k = std::get_if<MapSpec::Kar>(&spec.v)) return kar_closed_form(k->a, k->R);
  if (const auto* g = std::get_if<MapSpec::Ghk>(&spec.v)) {
    GHKParams p;
    p.lambda = std::polar(1.0, g->lambda_deg * std::numbers::pi / 180.0);
    p.a = g->a;
    p.mu = std::polar(1.0, g->mu_deg * std::numbers::pi / 180.0);
    p.R = g->R;
    return generalized_harmonic_koebe(p);
  }
  const auto& sh = std::get<MapSpec::Shear>(spec.v);
  return shear(make_analytic_map(*sh.phi), make_analytic_map(*sh.omega), sh.theta);
}

}  // namespace koebe
