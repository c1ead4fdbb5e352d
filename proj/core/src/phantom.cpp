#include "monoeit/phantom.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace monoeit {

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool polygon_contains(const std::vector<Complex>& poly, Complex p) {
  // Even-odd crossing rule.
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = poly[i].real(), yi = poly[i].imag();
    const double xj = poly[j].real(), yj = poly[j].imag();
    if ((yi > p.imag()) != (yj > p.imag())) {
      const double x_cross = xi + (p.imag() - yi) / (yj - yi) * (xj - xi);
      if (p.real() < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_boundary_distance(const std::vector<Complex>& poly, Complex p) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    d = std::min(d, point_segment_distance(p, poly[j], poly[i]));
  }
  return polygon_contains(poly, p) ? -d : d;
}

double shape_max_extent(const Shape& s) {
  if (const auto* b = std::get_if<BallShape>(&s)) {
    return std::abs(b->ball.center) + b->ball.radius;
  }
  const auto& poly = std::get<PolygonShape>(s);
  double r = 0.0;
  for (const Complex& v : poly.vertices) r = std::max(r, std::abs(v));
  return r;
}

bool shapes_overlap(const Shape& a, const Shape& b) {
  // Boundary-sample test: closures intersect iff one contains a point of
  // the other or their boundaries come arbitrarily close. Sampling each
  // boundary and checking signed distances is enough for validation.
  auto samples = [](const Shape& s) {
    std::vector<Complex> pts;
    if (const auto* bs = std::get_if<BallShape>(&s)) {
      for (int k = 0; k < 256; ++k) {
        pts.push_back(bs->ball.center +
                      std::polar(bs->ball.radius, kTwoPi * k / 256.0));
      }
      pts.push_back(bs->ball.center);
    } else {
      const auto& poly = std::get<PolygonShape>(s);
      const std::size_t n = poly.vertices.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        for (int k = 0; k < 32; ++k) {
          pts.push_back(poly.vertices[j] +
                        (poly.vertices[i] - poly.vertices[j]) * (k / 32.0));
        }
      }
    }
    return pts;
  };
  for (const Complex& p : samples(a)) {
    if (shape_boundary_distance(b, p) <= 0.0) return true;
  }
  for (const Complex& p : samples(b)) {
    if (shape_boundary_distance(a, p) <= 0.0) return true;
  }
  return false;
}

}  // namespace

const BallShape* Phantom::single_ball() const {
  if (shapes.size() != 1) return nullptr;
  return std::get_if<BallShape>(&shapes.front());
}

double shape_contrast(const Shape& s) {
  return std::visit([](const auto& v) { return v.contrast; }, s);
}

bool shape_contains(const Shape& s, Complex p) {
  if (const auto* b = std::get_if<BallShape>(&s)) {
    return std::abs(p - b->ball.center) < b->ball.radius;
  }
  return polygon_contains(std::get<PolygonShape>(s).vertices, p);
}

double shape_boundary_distance(const Shape& s, Complex p) {
  if (const auto* b = std::get_if<BallShape>(&s)) {
    return std::abs(p - b->ball.center) - b->ball.radius;
  }
  return polygon_boundary_distance(std::get<PolygonShape>(s).vertices, p);
}

double phantom_conductivity(const Phantom& phantom, Complex x) {
  for (const Shape& s : phantom.shapes) {
    if (shape_contains(s, x)) return 1.0 + shape_contrast(s);
  }
  return 1.0;
}

void validate_phantom(const Phantom& p) {
  for (const Shape& s : p.shapes) {
    if (!(shape_contrast(s) > 0.0)) {
      throw std::invalid_argument("phantom: contrasts must be positive");
    }
    if (const auto* b = std::get_if<BallShape>(&s)) {
      validate_ball(b->ball, /*strict=*/true);
    } else {
      const auto& poly = std::get<PolygonShape>(s);
      if (poly.vertices.size() < 3) {
        throw std::invalid_argument("phantom: polygon needs >= 3 vertices");
      }
    }
    if (!(shape_max_extent(s) < 1.0)) {
      throw std::invalid_argument(
          "phantom: shapes must be strictly inside the unit disk");
    }
  }
  for (std::size_t i = 0; i < p.shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < p.shapes.size(); ++j) {
      if (shapes_overlap(p.shapes[i], p.shapes[j])) {
        throw std::invalid_argument("phantom: shapes overlap");
      }
    }
  }
}

std::string phantom_to_json(const Phantom& p) {
  nlohmann::json root;
  root["shapes"] = nlohmann::json::array();
  for (const Shape& s : p.shapes) {
    nlohmann::json item;
    if (const auto* b = std::get_if<BallShape>(&s)) {
      item["type"] = "ball";
      item["center"] = {b->ball.center.real(), b->ball.center.imag()};
      item["radius"] = b->ball.radius;
      item["contrast"] = b->contrast;
    } else {
      const auto& poly = std::get<PolygonShape>(s);
      item["type"] = "polygon";
      auto verts = nlohmann::json::array();
      for (const Complex& v : poly.vertices) {
        verts.push_back({v.real(), v.imag()});
      }
      item["vertices"] = std::move(verts);
      item["contrast"] = poly.contrast;
    }
    root["shapes"].push_back(std::move(item));
  }
  return root.dump(2);
}

Phantom phantom_from_json(const std::string& text) {
  const nlohmann::json root = nlohmann::json::parse(text);
  Phantom p;
  for (const auto& item : root.at("shapes")) {
    const std::string type = item.at("type");
    if (type == "ball") {
      BallShape b;
      b.ball.center = {item.at("center").at(0).get<double>(),
                       item.at("center").at(1).get<double>()};
      b.ball.radius = item.at("radius").get<double>();
      b.contrast = item.at("contrast").get<double>();
      p.shapes.emplace_back(std::move(b));
    } else if (type == "polygon") {
      PolygonShape poly;
      for (const auto& v : item.at("vertices")) {
        poly.vertices.emplace_back(v.at(0).get<double>(),
                                   v.at(1).get<double>());
      }
      poly.contrast = item.at("contrast").get<double>();
      p.shapes.emplace_back(std::move(poly));
    } else {
      throw std::invalid_argument("phantom: unknown shape type " + type);
    }
  }
  validate_phantom(p);
  return p;
}

Phantom load_phantom(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open phantom file " + file.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return phantom_from_json(buffer.str());
}

void save_phantom(const Phantom& p, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write phantom file " + file.string());
  }
  out << phantom_to_json(p) << "\n";
}

}  // namespace monoeit
