// Command-line front end: coefficient dumps, pointwise evaluation,
// verification suites, collision search, growth/distortion reports,
// Schwarzian evaluation, and polar-grid rendering.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "koebe/analysis.hpp"
#include "koebe/families.hpp"
#include "koebe/maps.hpp"
#include "koebe/mapspec.hpp"
#include "koebe/render.hpp"
#include "koebe/series_io.hpp"
#include "koebe/shear.hpp"
#include "koebe/verify.hpp"

namespace {

using koebe::complex;

constexpr int kMaxCoeffOrder = 256;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw koebe::IoError("cannot open '" + out_path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw koebe::IoError("short write to '" + out_path + "'");
}

complex parse_point(const std::string& s) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos) return {koebe::detail::parse_double(s, 0), 0.0};
  return {koebe::detail::parse_double(std::string_view(s).substr(0, comma), 0),
          koebe::detail::parse_double(std::string_view(s).substr(comma + 1), 0)};
}

std::string fmt_complex(complex v) {
  std::string s = koebe::detail::fmt17(v.real());
  s += v.imag() < 0.0 ? "-" : "+";
  s += koebe::detail::fmt17(std::abs(v.imag()));
  s += "i";
  return s;
}

std::string coeffs_text(const koebe::MapSpec& spec, int n, const std::string& format) {
  if (n < 0 || n > kMaxCoeffOrder)
    throw koebe::BadParameter("coefficient order must lie in [0, " +
                              std::to_string(kMaxCoeffOrder) + "]");
  if (koebe::spec_is_harmonic(spec)) {
    const koebe::HarmonicMap f = koebe::make_harmonic_map(spec);
    const koebe::Series h = f.analytic_part().series(n);
    const koebe::Series g = f.coanalytic_part().series(n);
    if (format == "json") {
      return nlohmann::json{{"h", koebe::series_to_json(h)}, {"g", koebe::series_to_json(g)}}
                 .dump(2) +
             "\n";
    }
    std::string out = "part,n,re,im\n";
    for (int i = 0; i <= n; ++i)
      out += "h," + std::to_string(i) + "," + koebe::detail::fmt17(h[i].real()) + "," +
             koebe::detail::fmt17(h[i].imag()) + "\n";
    for (int i = 0; i <= n; ++i)
      out += "g," + std::to_string(i) + "," + koebe::detail::fmt17(g[i].real()) + "," +
             koebe::detail::fmt17(g[i].imag()) + "\n";
    return out;
  }
  const koebe::Series s = koebe::make_analytic_map(spec).series(n);
  if (format == "json") return koebe::series_to_json(s).dump(2) + "\n";
  return koebe::series_to_csv(s);
}

int cmd_collide(double a, double R, int samples, std::uint64_t seed, const std::string& out) {
  std::string text = "z1,z2,image_gap,preimage_gap\n";
  bool found = false;
  if (std::abs(a) > 2.0) {
    const koebe::CollisionWitness w = koebe::collision_witness(a, R);
    text += fmt_complex(w.z1) + "," + fmt_complex(w.z2) + "," +
            koebe::detail::fmt17(w.image_gap) + "," + koebe::detail::fmt17(w.preimage_gap) +
            "\n";
    found = true;
  } else {
    const auto w =
        koebe::injectivity_probe(koebe::kar_closed_form(a, R), samples, seed);
    if (w) {
      text += fmt_complex(w->z1) + "," + fmt_complex(w->z2) + "," +
              koebe::detail::fmt17(w->image_gap) + "," +
              koebe::detail::fmt17(w->preimage_gap) + "\n";
      found = true;
    }
  }
  write_output(text, out);
  return found ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized (harmonic) Koebe maps: series, shears, and verification"};
  app.require_subcommand(1);

  int n = 16;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 7;
  std::optional<double> atol, rtol;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", n, "truncation order");
    sub->add_option("--format", format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "output file (default: stdout)");
    sub->add_option("--seed", seed, "seed for sampled checks");
    sub->add_option("--atol", atol, "absolute tolerance override");
    sub->add_option("--rtol", rtol, "relative tolerance override");
  };

  std::string spec_str;
  auto* coeffs = app.add_subcommand("coeffs", "Taylor coefficients of a map");
  coeffs->add_option("spec", spec_str, "map spec, e.g. kar:a=2,R=1")->required();
  add_common(coeffs);

  std::vector<std::string> points;
  auto* eval = app.add_subcommand("eval", "evaluate a map at points");
  eval->add_option("spec", spec_str)->required();
  eval->add_option("--z", points, "evaluation point re[,im]")->required();
  add_common(eval);

  std::string suite;
  std::optional<double> opt_a, opt_R;
  std::string which = "i";
  int samples = 200;
  int verify_n = 40;
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite, "marty|ode|symmetry|dilatation|bounds|schwarzian|expansion")
      ->required();
  verify->add_option("--a", opt_a, "parameter a");
  verify->add_option("--R", opt_R, "parameter R");
  verify->add_option("--which", which, "symmetry identity: i|ii|iii");
  verify->add_option("--samples", samples, "sample count for sampled checks");
  verify->add_option("--n", verify_n, "truncation order for coefficient checks");
  verify->add_option("--format", format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", out, "output file (default: stdout)");
  verify->add_option("--seed", seed, "seed for sampled checks");
  verify->add_option("--atol", atol, "absolute tolerance override");
  verify->add_option("--rtol", rtol, "relative tolerance override");

  double collide_a = 2.5, collide_R = 0.0;
  int collide_samples = 5000;
  auto* collide = app.add_subcommand("collide", "collision witness / injectivity probe");
  collide->add_option("--a", collide_a, "parameter a of K_{a,R}")->required();
  collide->add_option("--R", collide_R, "parameter R of K_{a,R}");
  collide->add_option("--samples", collide_samples, "probe sample count for |a| <= 2");
  add_common(collide);

  std::optional<double> alpha;
  double radius = 0.5;
  auto* bounds = app.add_subcommand("bounds", "growth/distortion bounds and equality report");
  bounds->add_option("--alpha", alpha, "order (bounds only)");
  bounds->add_option("--a", opt_a, "parameter a (equality report)");
  bounds->add_option("--R", opt_R, "parameter R (equality report)");
  bounds->add_option("--r", radius, "radius in (0,1)");
  add_common(bounds);

  bool norm_mode = false;
  int grid = 64;
  auto* schwarz = app.add_subcommand("schwarzian", "Schwarzian derivative of an analytic map");
  schwarz->add_option("spec", spec_str)->required();
  schwarz->add_option("--z", points, "evaluation point re[,im]");
  schwarz->add_flag("--norm", norm_mode, "weighted sup-norm over a polar grid");
  schwarz->add_option("--grid", grid, "polar grid size for --norm");
  add_common(schwarz);

  koebe::RenderSpec rspec;
  std::string render_format = "svg";
  std::string window_str;
  auto* render = app.add_subcommand("render", "polar-grid image of a map (SVG or PPM)");
  render->add_option("spec", spec_str)->required();
  render->add_option("--rings", rspec.rings, "number of concentric circles");
  render->add_option("--spokes", rspec.spokes, "number of radial lines (1 = none)");
  render->add_option("--max-radius", rspec.max_radius, "outer sampling radius < 1");
  render->add_option("--size", rspec.size_px, "image size in pixels");
  render->add_option("--circle-samples", rspec.circle_samples, "vertices per circle");
  render->add_option("--radial-samples", rspec.radial_samples, "vertices per spoke");
  render->add_option("--window", window_str, "view window xmin,xmax,ymin,ymax");
  render->add_option("--format", render_format, "svg|ppm")
      ->check(CLI::IsMember({"svg", "ppm"}));
  render->add_option("--out", out, "output file (default: stdout)");
  render->add_option("--seed", seed, "unused; accepted for interface uniformity");
  render->add_option("--atol", atol, "unused; accepted for interface uniformity");
  render->add_option("--rtol", rtol, "unused; accepted for interface uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (coeffs->parsed()) {
      write_output(coeffs_text(koebe::parse_map_spec(spec_str), n, format), out);
      return 0;
    }

    if (eval->parsed()) {
      const koebe::MapSpec spec = koebe::parse_map_spec(spec_str);
      const bool harmonic = koebe::spec_is_harmonic(spec);
      const koebe::HarmonicMap f = koebe::make_harmonic_map(spec);
      nlohmann::json rows = nlohmann::json::array();
      std::string text = harmonic ? "re_z,im_z,re_f,im_f,re_h,im_h,re_g,im_g\n"
                                  : "re_z,im_z,re_f,im_f\n";
      for (const std::string& p : points) {
        const complex z = parse_point(p);
        const complex hv = f.analytic_part().value(z);
        const complex gv = f.coanalytic_part().value(z);
        const complex fv = hv + std::conj(gv);
        using koebe::detail::fmt17;
        text += fmt17(z.real()) + "," + fmt17(z.imag()) + "," + fmt17(fv.real()) + "," +
                fmt17(fv.imag());
        nlohmann::json row{{"z", {z.real(), z.imag()}}, {"f", {fv.real(), fv.imag()}}};
        if (harmonic) {
          text += "," + fmt17(hv.real()) + "," + fmt17(hv.imag()) + "," + fmt17(gv.real()) +
                  "," + fmt17(gv.imag());
          row["h"] = {hv.real(), hv.imag()};
          row["g"] = {gv.real(), gv.imag()};
        }
        text += "\n";
        rows.push_back(std::move(row));
      }
      write_output(format == "json" ? rows.dump(2) + "\n" : text, out);
      return 0;
    }

    if (verify->parsed()) {
      koebe::VerifyOptions vo;
      vo.a = opt_a;
      vo.R = opt_R;
      vo.which = which;
      vo.n = verify_n;
      vo.samples = samples;
      vo.seed = seed;
      vo.atol = atol;
      vo.rtol = rtol;
      const koebe::VerifyReport rep = koebe::run_verify_suite(suite, vo);
      write_output(koebe::verify_report_to_json(rep).dump(2) + "\n", out);
      return rep.pass ? 0 : 1;
    }

    if (collide->parsed()) return cmd_collide(collide_a, collide_R, collide_samples, seed, out);

    if (bounds->parsed()) {
      using koebe::detail::fmt17;
      if (alpha && !opt_a) {
        const auto [glo, ghi] = koebe::growth_bounds(*alpha, radius);
        const auto [dlo, dhi] = koebe::distortion_bounds(*alpha, radius);
        if (format == "json") {
          nlohmann::json j{{"alpha", *alpha},        {"r", radius},
                           {"growth_lower", glo},    {"growth_upper", ghi},
                           {"distortion_lower", dlo}, {"distortion_upper", dhi}};
          write_output(j.dump(2) + "\n", out);
        } else {
          write_output("alpha,r,growth_lower,growth_upper,distortion_lower,distortion_upper\n" +
                           fmt17(*alpha) + "," + fmt17(radius) + "," + fmt17(glo) + "," +
                           fmt17(ghi) + "," + fmt17(dlo) + "," + fmt17(dhi) + "\n",
                       out);
        }
        return 0;
      }
      if (!opt_a || !opt_R)
        throw koebe::BadParameter("bounds needs either --alpha or both --a and --R");
      const koebe::BoundReport br =
          koebe::equality_report(*opt_a, *opt_R, radius, atol.value_or(1e-9));
      if (format == "json") {
        nlohmann::json j{{"a", *opt_a},
                         {"R", *opt_R},
                         {"r", br.r},
                         {"alpha", br.alpha},
                         {"growth_lower", br.growth_lower},
                         {"growth_upper", br.growth_upper},
                         {"distortion_lower", br.distortion_lower},
                         {"distortion_upper", br.distortion_upper},
                         {"measured_growth", br.measured_growth},
                         {"measured_distortion_sum", br.measured_distortion_sum},
                         {"measured_distortion_diff", br.measured_distortion_diff},
                         {"growth_equality", br.growth_equality},
                         {"distortion_upper_equality", br.distortion_upper_equality},
                         {"distortion_lower_equality", br.distortion_lower_equality}};
        write_output(j.dump(2) + "\n", out);
      } else {
        write_output(
            "r,alpha,growth_upper,measured_growth,distortion_upper,measured_sum,distortion_"
            "lower,measured_diff,all_equal\n" +
                fmt17(br.r) + "," + fmt17(br.alpha) + "," + fmt17(br.growth_upper) + "," +
                fmt17(br.measured_growth) + "," + fmt17(br.distortion_upper) + "," +
                fmt17(br.measured_distortion_sum) + "," + fmt17(br.distortion_lower) + "," +
                fmt17(br.measured_distortion_diff) + "," +
                (br.all_equalities() ? "1" : "0") + "\n",
            out);
      }
      return br.all_equalities() ? 0 : 1;
    }

    if (schwarz->parsed()) {
      const koebe::AnalyticMap phi = koebe::make_analytic_map(koebe::parse_map_spec(spec_str));
      using koebe::detail::fmt17;
      if (norm_mode) {
        const double norm = koebe::schwarzian_norm(phi, grid);
        if (format == "json")
          write_output(nlohmann::json{{"grid", grid}, {"norm", norm}}.dump(2) + "\n", out);
        else
          write_output("grid,norm\n" + std::to_string(grid) + "," + fmt17(norm) + "\n", out);
        return 0;
      }
      if (points.empty()) throw koebe::BadParameter("schwarzian needs --z points or --norm");
      std::string text = "re_z,im_z,re_S,im_S\n";
      nlohmann::json rows = nlohmann::json::array();
      for (const std::string& p : points) {
        const complex z = parse_point(p);
        const complex s = koebe::schwarzian(phi, z);
        text += fmt17(z.real()) + "," + fmt17(z.imag()) + "," + fmt17(s.real()) + "," +
                fmt17(s.imag()) + "\n";
        rows.push_back({{"z", {z.real(), z.imag()}}, {"S", {s.real(), s.imag()}}});
      }
      write_output(format == "json" ? rows.dump(2) + "\n" : text, out);
      return 0;
    }

    if (render->parsed()) {
      const koebe::MapSpec spec = koebe::parse_map_spec(spec_str);
      const koebe::HarmonicMap f = koebe::make_harmonic_map(spec);
      if (!window_str.empty()) {
        std::array<double, 4> w{};
        std::string rest = window_str;
        for (int i = 0; i < 4; ++i) {
          const std::size_t comma = rest.find(',');
          const std::string tok = rest.substr(0, comma);
          w[static_cast<std::size_t>(i)] = koebe::detail::parse_double(tok, 0);
          if (comma == std::string::npos && i < 3)
            throw koebe::BadParameter("window needs four comma-separated values");
          rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        }
        rspec.window = w;
      }
      rspec.format = render_format == "ppm" ? koebe::RenderSpec::Format::ppm
                                            : koebe::RenderSpec::Format::svg;
      const koebe::GridImage img =
          koebe::render_grid([&](complex z) { return koebe::eval_harmonic(f, z); }, rspec);
      write_output(rspec.format == koebe::RenderSpec::Format::ppm ? koebe::to_ppm(img, rspec)
                                                                  : koebe::to_svg(img, rspec),
                   out);
      return 0;
    }
  } catch (const koebe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
