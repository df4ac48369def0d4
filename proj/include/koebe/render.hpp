#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "koebe/errors.hpp"
#include "koebe/series.hpp"

namespace koebe {

// Polar-grid sampling of the unit disk and the geometry of its image.
struct RenderSpec {
  int rings = 8;
  int spokes = 12;
  double max_radius = 0.9;
  enum class Format { svg, ppm };
  Format format = Format::svg;
  int size_px = 640;
  // xmin, xmax, ymin, ymax; absent means auto-fit with a 5% margin.
  std::optional<std::array<double, 4>> window;
  int circle_samples = 256;
  int radial_samples = 64;
};

struct Polyline {
  std::vector<complex> pts;
  bool closed = false;
};

struct GridImage {
  std::vector<Polyline> lines;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

// Images of concentric circles and radial segments under f. A spoke count
// of 1 draws no radial lines (a full turn has no dividing spoke).
inline GridImage render_grid(const std::function<complex(complex)>& f, const RenderSpec& rs) {
  if (rs.rings < 1 || rs.spokes < 1)
    throw BadParameter("rings and spokes must be at least 1");
  if (!(rs.max_radius > 0.0 && rs.max_radius < 1.0))
    throw BadParameter("max_radius must lie in (0,1), got " + std::to_string(rs.max_radius));
  if (rs.circle_samples < 3 || rs.radial_samples < 2)
    throw BadParameter("sampling resolutions too small");

  GridImage img;
  bool first = true;
  auto push = [&](Polyline&& pl) {
    for (const complex& w : pl.pts) {
      if (first) {
        img.xmin = img.xmax = w.real();
        img.ymin = img.ymax = w.imag();
        first = false;
      } else {
        img.xmin = std::min(img.xmin, w.real());
        img.xmax = std::max(img.xmax, w.real());
        img.ymin = std::min(img.ymin, w.imag());
        img.ymax = std::max(img.ymax, w.imag());
      }
    }
    img.lines.push_back(std::move(pl));
  };

  for (int i = 1; i <= rs.rings; ++i) {
    const double r = rs.max_radius * double(i) / double(rs.rings);
    Polyline pl;
    pl.closed = true;
    pl.pts.reserve(static_cast<std::size_t>(rs.circle_samples));
    for (int k = 0; k < rs.circle_samples; ++k) {
      const double t = 2.0 * std::numbers::pi * double(k) / double(rs.circle_samples);
      pl.pts.push_back(f(std::polar(r, t)));
    }
    push(std::move(pl));
  }
  if (rs.spokes > 1) {
    for (int j = 0; j < rs.spokes; ++j) {
      const double t = 2.0 * std::numbers::pi * double(j) / double(rs.spokes);
      Polyline pl;
      pl.pts.reserve(static_cast<std::size_t>(rs.radial_samples));
      for (int m = 0; m < rs.radial_samples; ++m) {
        const double r = rs.max_radius * double(m) / double(rs.radial_samples - 1);
        pl.pts.push_back(f(std::polar(r, t)));
      }
      push(std::move(pl));
    }
  }
  return img;
}

namespace detail {

struct PixelTransform {
  double x0, y0, scale;
  int size;

  // SVG/raster y axis points down.
  std::pair<double, double> operator()(complex w) const {
    return {(w.real() - x0) * scale, double(size) - (w.imag() - y0) * scale};
  }
};

inline PixelTransform pixel_transform(const GridImage& img, const RenderSpec& rs) {
  double xmin = img.xmin, xmax = img.xmax, ymin = img.ymin, ymax = img.ymax;
  if (rs.window) {
    xmin = (*rs.window)[0];
    xmax = (*rs.window)[1];
    ymin = (*rs.window)[2];
    ymax = (*rs.window)[3];
  } else {
    const double mx = 0.05 * std::max(xmax - xmin, 1e-12);
    const double my = 0.05 * std::max(ymax - ymin, 1e-12);
    xmin -= mx;
    xmax += mx;
    ymin -= my;
    ymax += my;
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  return {xmin, ymin, double(rs.size_px) / span, rs.size_px};
}

inline std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

// SVG 1.1 document with one path per polyline. Output bytes are a pure
// function of the input geometry.
inline std::string to_svg(const GridImage& img, const RenderSpec& rs) {
  const auto px = detail::pixel_transform(img, rs);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(rs.size_px) + "\" height=\"" + std::to_string(rs.size_px) +
         "\" viewBox=\"0 0 " + std::to_string(rs.size_px) + " " + std::to_string(rs.size_px) +
         "\">\n";
  out += "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
  for (const Polyline& pl : img.lines) {
    out += "<path d=\"";
    for (std::size_t i = 0; i < pl.pts.size(); ++i) {
      const auto [x, y] = px(pl.pts[i]);
      out += (i == 0 ? "M " : " L ");
      out += detail::fmt_px(x);
      out += ' ';
      out += detail::fmt_px(y);
    }
    if (pl.closed) out += " Z";
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

// Binary PPM (P6), white background, black one-pixel lines drawn by an
// integer Bresenham walk: no anti-aliasing, so bytes are reproducible.
inline std::string to_ppm(const GridImage& img, const RenderSpec& rs) {
  const auto px = detail::pixel_transform(img, rs);
  const int n = rs.size_px;
  std::vector<unsigned char> canvas(static_cast<std::size_t>(n) * n, 255);

  auto plot = [&](int x, int y) {
    if (x >= 0 && x < n && y >= 0 && y < n)
      canvas[static_cast<std::size_t>(y) * n + x] = 0;
  };
  auto draw = [&](complex a, complex b) {
    const auto [xa, ya] = px(a);
    const auto [xb, yb] = px(b);
    int x0 = static_cast<int>(std::lround(xa)), y0 = static_cast<int>(std::lround(ya));
    const int x1 = static_cast<int>(std::lround(xb)), y1 = static_cast<int>(std::lround(yb));
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      plot(x0, y0);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  };

  for (const Polyline& pl : img.lines) {
    for (std::size_t i = 0; i + 1 < pl.pts.size(); ++i) draw(pl.pts[i], pl.pts[i + 1]);
    if (pl.closed && pl.pts.size() > 2) draw(pl.pts.back(), pl.pts.front());
  }

  std::string out = "P6\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  out.reserve(out.size() + canvas.size() * 3);
  for (unsigned char v : canvas) {
    out.push_back(static_cast<char>(v));
    out.push_back(static_cast<char>(v));
    out.push_back(static_cast<char>(v));
  }
  return out;
}

}  // namespace koebe
