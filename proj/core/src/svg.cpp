#include "monoeit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace monoeit {

namespace {

struct Rgb {
  double r, g, b;
};

// Compact viridis-like ramp, t in [0,1].
Rgb colormap(double t) {
  static const Rgb stops[] = {{0.267, 0.005, 0.329},
                              {0.283, 0.141, 0.458},
                              {0.254, 0.265, 0.530},
                              {0.207, 0.372, 0.553},
                              {0.164, 0.471, 0.558},
                              {0.128, 0.567, 0.551},
                              {0.135, 0.659, 0.518},
                              {0.267, 0.749, 0.441},
                              {0.478, 0.821, 0.318},
                              {0.741, 0.873, 0.150},
                              {0.993, 0.906, 0.144}};
  constexpr int n = static_cast<int>(std::size(stops));
  t = std::clamp(t, 0.0, 1.0) * (n - 1);
  const int i = std::min(static_cast<int>(t), n - 2);
  const double f = t - i;
  return Rgb{stops[i].r + f * (stops[i + 1].r - stops[i].r),
             stops[i].g + f * (stops[i + 1].g - stops[i].g),
             stops[i].b + f * (stops[i + 1].b - stops[i].b)};
}

std::string color_string(Rgb c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(255 * c.r)),
                static_cast<int>(std::lround(255 * c.g)),
                static_cast<int>(std::lround(255 * c.b)));
  return buf;
}

}  // namespace

void render_svg(const ReconResult& result, const Phantom* phantom,
                const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());

  double max_eig = 0.0;
  for (const CellResult& cell : result.cells) {
    if (cell.accepted) max_eig = std::max(max_eig, cell.min_eigenvalue);
  }
  if (max_eig == 0.0) max_eig = 1.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"640\" height=\"640\">\n";
  // Flip the y axis so the disk renders in mathematical orientation.
  out << "<g transform=\"scale(1,-1)\">\n";
  out << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888\" "
         "stroke-width=\"0.006\"/>\n";

  const double hr = result.hex_radius;
  for (const CellResult& cell : result.cells) {
    if (!cell.accepted) continue;
    const std::string fill =
        color_string(colormap(cell.min_eigenvalue / max_eig));
    out << "<polygon points=\"";
    for (int k = 0; k < 6; ++k) {
      const Complex corner =
          cell.center + std::polar(hr, k * kTwoPi / 6.0);
      out << corner.real() << "," << corner.imag()
          << (k + 1 < 6 ? " " : "");
    }
    out << "\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
  }

  if (phantom) {
    for (const Shape& shape : phantom->shapes) {
      if (const auto* b = std::get_if<BallShape>(&shape)) {
        out << "<circle cx=\"" << b->ball.center.real() << "\" cy=\""
            << b->ball.center.imag() << "\" r=\"" << b->ball.radius
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.008\"/>\n";
      } else {
        const auto& poly = std::get<PolygonShape>(shape);
        out << "<polygon points=\"";
        for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
          out << poly.vertices[k].real() << "," << poly.vertices[k].imag()
              << (k + 1 < poly.vertices.size() ? " " : "");
        }
        out << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.008\"/>\n";
      }
    }
  }
  out << "</g>\n</svg>\n";
}

}  // namespace monoeit
