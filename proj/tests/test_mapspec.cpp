#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "koebe/mapspec.hpp"
#include "koebe/series.hpp"

using koebe::complex;
using koebe::MapSpec;

TEST_CASE("canonical specs round-trip through print") {
  const std::vector<std::string> canonical = {
      "koebe",
      "k0",
      "hp-phi",
      "hkoebe",
      "halfplane",
      "gkoebe:a=1.5",
      "gkoebe:a=1.5,-0.25",
      "lens:R=0.5",
      "kar:a=2,R=1",
      "ghk:lambda=30,a=1,0.5,mu=90,R=0.5",
      "shear:phi=gkoebe:a=2,omega=lens:R=0.5,theta=0",
  };
  for (const std::string& s : canonical) {
    const MapSpec spec = koebe::parse_map_spec(s);
    const std::string printed = koebe::print_map_spec(spec);
    CHECK(koebe::parse_map_spec(printed) == spec);
    CHECK(printed == s);
  }
}

TEST_CASE("nested shear specs parse through continuation segments") {
  const MapSpec spec = koebe::parse_map_spec(
      "shear:phi=ghk:lambda=0,a=1,0.25,mu=0,R=0.5,omega=lens:R=0.25,theta=0.7");
  const auto& sh = std::get<MapSpec::Shear>(spec.v);
  const auto& phi = std::get<MapSpec::Ghk>(sh.phi->v);
  CHECK(phi.a == complex{1.0, 0.25});
  CHECK(phi.R == 0.5);
  CHECK(std::get<MapSpec::Lens>(sh.omega->v).R == 0.25);
  CHECK(sh.theta == 0.7);
  CHECK(koebe::parse_map_spec(koebe::print_map_spec(spec)) == spec);
}

TEST_CASE("alias: hkoebe equals kar with a=2, R=1") {
  const koebe::HarmonicMap a = koebe::make_harmonic_map(koebe::parse_map_spec("hkoebe"));
  const koebe::HarmonicMap b = koebe::make_harmonic_map(koebe::parse_map_spec("kar:a=2,R=1"));
  CHECK(max_coeff_diff(a.analytic_part().series(16), b.analytic_part().series(16)) == 0.0);
  CHECK(max_coeff_diff(a.coanalytic_part().series(16), b.coanalytic_part().series(16)) == 0.0);
}

TEST_CASE("specs build the right maps") {
  const koebe::AnalyticMap g =
      koebe::make_analytic_map(koebe::parse_map_spec("gkoebe:a=1.5"));
  CHECK(std::abs(g.series(2)[2] - 1.5) < 1e-15);

  const koebe::AnalyticMap l = koebe::make_analytic_map(koebe::parse_map_spec("lens:R=0.5"));
  CHECK(l.parameter_R() == 0.5);

  // a shear spec reproducing the harmonic Koebe function
  const koebe::HarmonicMap sh = koebe::make_harmonic_map(
      koebe::parse_map_spec("shear:phi=koebe,omega=lens:R=1,theta=0"));
  const koebe::HarmonicMap hk = koebe::make_harmonic_map(koebe::parse_map_spec("hkoebe"));
  CHECK(max_coeff_diff(sh.analytic_part().series(20), hk.analytic_part().series(20)) < 1e-10);

  // analytic specs wrap with a vanishing co-analytic part
  const koebe::HarmonicMap wrapped = koebe::make_harmonic_map(koebe::parse_map_spec("k0"));
  CHECK(max_abs_coeff(wrapped.coanalytic_part().series(8)) == 0.0);

  CHECK_THROWS_AS(koebe::make_analytic_map(koebe::parse_map_spec("kar:a=1,R=0.5")),
                  koebe::BadParameter);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(koebe::parse_map_spec("squircle"), koebe::ParseError);

  try {
    koebe::parse_map_spec("lens:Q=0.5");
    FAIL("expected ParseError");
  } catch (const koebe::ParseError& e) {
    CHECK(e.position == 5);
    CHECK(std::string(e.what()).find("unknown key 'Q'") != std::string::npos);
  }

  try {
    koebe::parse_map_spec("kar:a=2,a=3,R=1");
    FAIL("expected ParseError");
  } catch (const koebe::ParseError& e) {
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    CHECK(e.position == 8);
  }

  CHECK_THROWS_AS(koebe::parse_map_spec("kar:a=2"), koebe::ParseError);       // missing R
  CHECK_THROWS_AS(koebe::parse_map_spec("gkoebe:a=fish"), koebe::ParseError);
  CHECK_THROWS_AS(koebe::parse_map_spec("koebe:a=1"), koebe::ParseError);
  CHECK_THROWS_AS(koebe::parse_map_spec("lens:0.5"), koebe::ParseError);
  CHECK_THROWS_AS(koebe::parse_map_spec("koebe:"), koebe::ParseError);
  CHECK_THROWS_AS(koebe::parse_map_spec("kar:a=1e999,R=0.5"), koebe::ParseError);
  CHECK_THROWS_AS(koebe::parse_map_spec("kar:a=nan,R=0.5"), koebe::ParseError);
  CHECK_THROWS_AS(koebe::parse_map_spec(""), koebe::ParseError);
}

TEST_CASE("out-of-domain parameters raise range errors") {
  CHECK_THROWS_AS(koebe::parse_map_spec("lens:R=1.5"), koebe::RangeError);
  CHECK_THROWS_AS(koebe::parse_map_spec("kar:a=1,R=-0.25"), koebe::RangeError);
  CHECK_THROWS_AS(koebe::parse_map_spec("ghk:lambda=0,a=1,mu=0,R=2"), koebe::RangeError);
  CHECK_THROWS_AS(koebe::parse_map_spec("shear:phi=koebe,omega=lens:R=1,theta=3.5"),
                  koebe::RangeError);
}

TEST_CASE("harmonic classification") {
  CHECK(koebe::spec_is_harmonic(koebe::parse_map_spec("kar:a=1,R=0.5")));
  CHECK(koebe::spec_is_harmonic(koebe::parse_map_spec("halfplane")));
  CHECK_FALSE(koebe::spec_is_harmonic(koebe::parse_map_spec("gkoebe:a=1")));
  CHECK_FALSE(koebe::spec_is_harmonic(koebe::parse_map_spec("koebe")));
}
