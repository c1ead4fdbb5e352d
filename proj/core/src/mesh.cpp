#include "monoeit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace monoeit {

namespace {

double signed_area(Complex a, Complex b, Complex c) {
  const Complex u = b - a, v = c - a;
  return 0.5 * (u.real() * v.imag() - u.imag() * v.real());
}

// Crossing parameter t in (0,1) of segment [u,v] with the shape boundary,
// or a negative value when none is found.
double crossing_parameter(const Shape& shape, Complex u, Complex v) {
  if (const auto* b = std::get_if<BallShape>(&shape)) {
    const Complex d = v - u;
    const Complex w = u - b->ball.center;
    const double qa = std::norm(d);
    const double qb = 2.0 * (w.real() * d.real() + w.imag() * d.imag());
    const double qc = std::norm(w) - b->ball.radius * b->ball.radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0 || qa == 0.0) return -1.0;
    const double sq = std::sqrt(disc);
    for (const double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
      if (t > 0.0 && t < 1.0) return t;
    }
    return -1.0;
  }
  const auto& poly = std::get<PolygonShape>(shape).vertices;
  double best = -1.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex p = poly[j], q = poly[i];
    const Complex r = v - u, s = q - p;
    const double denom = r.real() * s.imag() - r.imag() * s.real();
    if (denom == 0.0) continue;
    const Complex pu = p - u;
    const double t = (pu.real() * s.imag() - pu.imag() * s.real()) / denom;
    const double w = (pu.real() * r.imag() - pu.imag() * r.real()) / denom;
    if (t > 0.0 && t < 1.0 && w >= 0.0 && w <= 1.0) {
      if (best < 0.0 || t < best) best = t;
    }
  }
  return best;
}

Complex project_to_shape(const Shape& shape, Complex p) {
  if (const auto* b = std::get_if<BallShape>(&shape)) {
    const Complex d = p - b->ball.center;
    const double len = std::abs(d);
    if (len == 0.0) return b->ball.center + Complex{b->ball.radius, 0.0};
    return b->ball.center + d * (b->ball.radius / len);
  }
  const auto& poly = std::get<PolygonShape>(shape).vertices;
  Complex best = poly.front();
  double best_d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = poly[j], b = poly[i];
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a).real() * ab.real() +
                             (p - a).imag() * ab.imag()) / len2
                          : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Complex cand = a + t * ab;
    const double d = std::abs(p - cand);
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  }
  return best;
}

class MeshBuilder {
 public:
  MeshBuilder(const Phantom& phantom, double h) : phantom_(phantom) {
    rings_ = std::max(2, static_cast<int>(std::lround(1.0 / h)));
    mesh_.h = 1.0 / rings_;
    build_structured();
    for (const Shape& shape : phantom.shapes) align_with(shape);
    orient_and_classify();
  }

  DiskMesh take() { return std::move(mesh_); }

 private:
  void build_structured() {
    auto& vx = mesh_.vertices;
    vx.emplace_back(0.0, 0.0);
    std::vector<int> ring_start(rings_ + 1, 0);
    for (int i = 1; i <= rings_; ++i) {
      ring_start[i] = static_cast<int>(vx.size());
      const int count = 6 * i;
      const double radius = static_cast<double>(i) / rings_;
      for (int j = 0; j < count; ++j) {
        vx.push_back(std::polar(radius, kTwoPi * j / count));
      }
    }
    // Central fan.
    for (int j = 0; j < 6; ++j) {
      mesh_.triangles.push_back(
          {0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});
    }
    // Annuli: merge the two rings by angle; integer comparison
    // (o+1)*inner_count vs (i+1)*outer_count keeps it exact.
    for (int ring = 1; ring < rings_; ++ring) {
      const int ni = 6 * ring, no = 6 * (ring + 1);
      const int bi = ring_start[ring], bo = ring_start[ring + 1];
      int i = 0, o = 0;
      while (i < ni || o < no) {
        const bool advance_outer =
            o < no &&
            (i == ni ||
             static_cast<long>(o + 1) * ni <= static_cast<long>(i + 1) * no);
        if (advance_outer) {
          mesh_.triangles.push_back(
              {bi + i % ni, bo + o % no, bo + (o + 1) % no});
          ++o;
        } else {
          mesh_.triangles.push_back(
              {bi + i % ni, bo + o % no, bi + (i + 1) % ni});
          ++i;
        }
      }
    }
    const int bm = ring_start[rings_];
    for (int j = 0; j < 6 * rings_; ++j) mesh_.boundary.push_back(bm + j);
    outer_ring_start_ = bm;
  }

  std::vector<std::vector<int>> vertex_incidence() const {
    std::vector<std::vector<int>> inc(mesh_.vertices.size());
    for (std::size_t t = 0; t < mesh_.triangles.size(); ++t) {
      for (int v : mesh_.triangles[t]) inc[v].push_back(static_cast<int>(t));
    }
    return inc;
  }

  bool move_keeps_valid(const std::vector<int>& incident, int vertex,
                        Complex target) const {
    const double area_floor = 1e-4 * mesh_.h * mesh_.h;
    for (int t : incident) {
      std::array<Complex, 3> p;
      for (int k = 0; k < 3; ++k) {
        const int v = mesh_.triangles[t][k];
        p[k] = (v == vertex) ? target : mesh_.vertices[v];
      }
      if (signed_area(p[0], p[1], p[2]) <= area_floor) return false;
    }
    return true;
  }

  void snap_vertices(const Shape& shape) {
    const auto incidence = vertex_incidence();
    const double snap_tol = 0.35 * mesh_.h;

    // Polygon corners first: a corner becomes an exact mesh vertex.
    if (const auto* poly = std::get_if<PolygonShape>(&shape)) {
      for (const Complex& corner : poly->vertices) {
        std::vector<std::pair<double, int>> near;
        for (std::size_t v = 0; v < mesh_.vertices.size(); ++v) {
          if (static_cast<int>(v) >= outer_ring_start_) break;
          near.emplace_back(std::abs(mesh_.vertices[v] - corner),
                            static_cast<int>(v));
        }
        std::partial_sort(near.begin(),
                          near.begin() + std::min<std::size_t>(5, near.size()),
                          near.end());
        for (std::size_t k = 0; k < std::min<std::size_t>(5, near.size());
             ++k) {
          const int v = near[k].second;
          if (v == 0) continue;  // keep the disk centre in place
          if (move_keeps_valid(incidence[v], v, corner)) {
            mesh_.vertices[v] = corner;
            break;
          }
        }
      }
    }

    for (std::size_t v = 1; v < mesh_.vertices.size(); ++v) {
      if (static_cast<int>(v) >= outer_ring_start_) break;  // unit circle
      const double d = shape_boundary_distance(shape, mesh_.vertices[v]);
      if (std::abs(d) >= snap_tol || d == 0.0) continue;
      const Complex target = project_to_shape(shape, mesh_.vertices[v]);
      if (move_keeps_valid(incidence[static_cast<int>(v)],
                           static_cast<int>(v), target)) {
        mesh_.vertices[v] = target;
      }
    }
  }

  void split_crossing_edges(const Shape& shape) {
    constexpr double kOnCurve = 1e-12;
    for (int sweep = 0; sweep < 64; ++sweep) {
      std::unordered_map<long long, std::vector<int>> edge_tris;
      const long long stride = static_cast<long long>(mesh_.vertices.size());
      for (std::size_t t = 0; t < mesh_.triangles.size(); ++t) {
        const auto& tri = mesh_.triangles[t];
        for (int e = 0; e < 3; ++e) {
          const int u = tri[e], v = tri[(e + 1) % 3];
          const long long key =
              std::min(u, v) * stride + std::max(u, v);
          edge_tris[key].push_back(static_cast<int>(t));
        }
      }
      std::vector<double> dist(mesh_.vertices.size());
      for (std::size_t v = 0; v < mesh_.vertices.size(); ++v) {
        dist[v] = shape_boundary_distance(shape, mesh_.vertices[v]);
      }

      std::vector<char> dirty(mesh_.triangles.size(), 0);
      bool split_any = false;
      for (const auto& [key, tris] : edge_tris) {
        const int u = static_cast<int>(key / stride);
        const int v = static_cast<int>(key % stride);
        if (std::abs(dist[u]) <= kOnCurve || std::abs(dist[v]) <= kOnCurve) {
          continue;
        }
        if (dist[u] * dist[v] > 0.0) continue;
        bool blocked = false;
        for (int t : tris) blocked = blocked || dirty[t];
        if (blocked) continue;

        double t_cross =
            crossing_parameter(shape, mesh_.vertices[u], mesh_.vertices[v]);
        if (t_cross < 0.0) {
          t_cross = std::abs(dist[u]) / (std::abs(dist[u]) + std::abs(dist[v]));
        }
        const Complex w_pos = mesh_.vertices[u] +
                              t_cross * (mesh_.vertices[v] - mesh_.vertices[u]);
        const int w = static_cast<int>(mesh_.vertices.size());
        mesh_.vertices.push_back(project_to_shape(shape, w_pos));

        for (int t : tris) {
          auto tri = mesh_.triangles[t];
          for (int e = 0; e < 3; ++e) {
            const int p = tri[e], q = tri[(e + 1) % 3], r = tri[(e + 2) % 3];
            if ((p == u && q == v) || (p == v && q == u)) {
              mesh_.triangles[t] = {p, w, r};
              mesh_.triangles.push_back({w, q, r});
              dirty[t] = 1;
              dirty.push_back(1);
              break;
            }
          }
        }
        split_any = true;
      }
      if (!split_any) return;
    }
    throw std::runtime_error("mesh_disk: boundary alignment did not converge");
  }

  void align_with(const Shape& shape) {
    snap_vertices(shape);
    split_crossing_edges(shape);
  }

  void orient_and_classify() {
    mesh_.labels.assign(mesh_.triangles.size(), -1);
    for (std::size_t t = 0; t < mesh_.triangles.size(); ++t) {
      auto& tri = mesh_.triangles[t];
      const double area = signed_area(mesh_.vertices[tri[0]],
                                      mesh_.vertices[tri[1]],
                                      mesh_.vertices[tri[2]]);
      if (area < 0.0) std::swap(tri[1], tri[2]);
      if (area == 0.0) {
        throw std::runtime_error("mesh_disk: degenerate element");
      }
      const Complex c = (mesh_.vertices[tri[0]] + mesh_.vertices[tri[1]] +
                         mesh_.vertices[tri[2]]) / 3.0;
      for (std::size_t s = 0; s < phantom_.shapes.size(); ++s) {
        if (shape_contains(phantom_.shapes[s], c)) {
          mesh_.labels[t] = static_cast<int>(s);
          break;
        }
      }
    }
  }

  const Phantom& phantom_;
  int rings_ = 0;
  int outer_ring_start_ = 0;
  DiskMesh mesh_;
};

}  // namespace

double DiskMesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

Complex DiskMesh::centroid(int t) const {
  const auto& tri = triangles[t];
  return (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
}

DiskMesh mesh_disk(const Phantom& phantom, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("mesh_disk: h must be > 0");
  validate_phantom(phantom);
  MeshBuilder builder(phantom, h);
  return builder.take();
}

}  // namespace monoeit
