#include "lavrentiev/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lavrentiev/format.hpp"

namespace lavrentiev {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::unordered_map<std::uint64_t, int> edge_counts(
    const std::vector<Triangle>& triangles) {
  std::unordered_map<std::uint64_t, int> counts;
  counts.reserve(triangles.size() * 2);
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) ++counts[edge_key(t[e], t[(e + 1) % 3])];
  }
  return counts;
}

void require_level(int level) {
  if (level < 1) throw std::invalid_argument("mesh level must be >= 1");
}

}  // namespace

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double distance(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
           std::vector<bool> boundary, DomainShape shape,
           std::vector<std::pair<int, int>> parents)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_(std::move(boundary)),
      parents_(std::move(parents)),
      shape_(shape) {
  const int nv = num_vertices();
  if (boundary_.size() != vertices_.size()) {
    throw std::invalid_argument("boundary flag count differs from vertex count");
  }
  if (!parents_.empty() && parents_.size() != vertices_.size()) {
    throw std::invalid_argument("parent map size differs from vertex count");
  }
  for (std::size_t k = 0; k < triangles_.size(); ++k) {
    const auto& t = triangles_[k];
    for (int v : t) {
      if (v < 0 || v >= nv) {
        throw std::invalid_argument("triangle " + std::to_string(k) +
                                    " references vertex out of range");
      }
    }
    const double a = signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    if (!(a > 0.0)) {
      throw std::invalid_argument("triangle " + std::to_string(k) +
                                  " has non-positive signed area");
    }
    area_ += a;
    for (int e = 0; e < 3; ++e) {
      h_ = std::max(h_, distance(vertices_[t[e]], vertices_[t[(e + 1) % 3]]));
    }
  }
  vertex_to_dof_.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (!boundary_[v]) {
      vertex_to_dof_[v] = static_cast<int>(dof_to_vertex_.size());
      dof_to_vertex_.push_back(v);
    }
  }
}

std::vector<bool> topological_boundary(int num_vertices,
                                       const std::vector<Triangle>& triangles) {
  std::vector<bool> flags(num_vertices, false);
  for (const auto& [key, count] : edge_counts(triangles)) {
    if (count == 1) {
      flags[static_cast<int>(key >> 32)] = true;
      flags[static_cast<int>(key & 0xffffffffu)] = true;
    }
  }
  return flags;
}

Mesh square_mesh(double side, int level) {
  require_level(level);
  if (!(side > 0.0)) throw std::invalid_argument("side length must be positive");
  const int n = 1 << level;
  const double step = side / n;
  const auto index = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<Point> vertices;
  std::vector<bool> boundary;
  vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // i == n must land exactly on `side`
      vertices.push_back({i == n ? side : i * step, j == n ? side : j * step});
      boundary.push_back(i == 0 || j == 0 || i == n || j == n);
    }
  }
  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = index(i, j), v10 = index(i + 1, j);
      const int v11 = index(i + 1, j + 1), v01 = index(i, j + 1);
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(boundary),
              {DomainKind::square, side});
}

Mesh disc_mesh(double radius, int level) {
  require_level(level);
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  std::vector<Point> vertices = {
      {0.0, 0.0}, {radius, 0.0}, {0.0, radius}, {-radius, 0.0}, {0.0, -radius}};
  std::vector<Triangle> triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}};
  std::vector<bool> boundary = {false, true, true, true, true};
  Mesh mesh(std::move(vertices), std::move(triangles), std::move(boundary),
            {DomainKind::disc, radius});
  for (int k = 0; k < level; ++k) mesh = refine(mesh);
  return mesh;
}

Mesh refine(const Mesh& mesh) {
  const auto counts = edge_counts(mesh.triangles());
  std::vector<Point> vertices = mesh.vertices();
  std::vector<bool> boundary = mesh.boundary_flags();
  std::vector<std::pair<int, int>> parents;
  parents.reserve(vertices.size() + counts.size());
  for (int v = 0; v < mesh.num_vertices(); ++v) parents.emplace_back(v, v);

  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(counts.size());
  const DomainShape shape = mesh.shape();

  const auto midpoint_of = [&](int a, int b) {
    const auto key = edge_key(a, b);
    if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
    const Point& pa = mesh.vertices()[a];
    const Point& pb = mesh.vertices()[b];
    Point m{0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
    const bool on_boundary = counts.at(key) == 1;
    if (on_boundary && shape.kind == DomainKind::disc) {
      const double r = std::hypot(m.x, m.y);
      m = {m.x * shape.extent / r, m.y * shape.extent / r};
    }
    const int id = static_cast<int>(vertices.size());
    vertices.push_back(m);
    boundary.push_back(on_boundary);
    parents.emplace_back(std::min(a, b), std::max(a, b));
    midpoint.emplace(key, id);
    return id;
  };

  std::vector<Triangle> triangles;
  triangles.reserve(mesh.triangles().size() * 4);
  for (const auto& t : mesh.triangles()) {
    const int ab = midpoint_of(t[0], t[1]);
    const int bc = midpoint_of(t[1], t[2]);
    const int ca = midpoint_of(t[2], t[0]);
    triangles.push_back({t[0], ab, ca});
    triangles.push_back({ab, t[1], bc});
    triangles.push_back({ca, bc, t[2]});
    triangles.push_back({ab, bc, ca});
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(boundary),
              shape, std::move(parents));
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q;
  q.h = mesh.h();
  q.min_inscribed_diameter = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles()) {
    const Point& a = mesh.vertices()[t[0]];
    const Point& b = mesh.vertices()[t[1]];
    const Point& c = mesh.vertices()[t[2]];
    const double perimeter = distance(a, b) + distance(b, c) + distance(c, a);
    // inradius = area / semi-perimeter
    const double d = 4.0 * signed_area(a, b, c) / perimeter;
    q.min_inscribed_diameter = std::min(q.min_inscribed_diameter, d);
  }
  q.ratio = q.h / q.min_inscribed_diameter;
  return q;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  for (const auto& p : mesh.vertices()) {
    out << format_roundtrip(p.x) << ' ' << format_roundtrip(p.y) << '\n';
  }
  for (const auto& t : mesh.triangles()) {
    out << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    out << (mesh.is_boundary(v) ? 1 : 0) << '\n';
  }
}

Mesh read_mesh(std::istream& in) {
  long nv = -1, nt = -1;
  if (!(in >> nv >> nt) || nv < 0 || nt < 0) {
    throw std::runtime_error("mesh file: malformed header");
  }
  std::vector<Point> vertices(nv);
  std::string xs, ys;
  for (auto& p : vertices) {
    if (!(in >> xs >> ys)) throw std::runtime_error("mesh file: truncated coordinates");
    p = {parse_real(xs), parse_real(ys)};
  }
  std::vector<Triangle> triangles(nt);
  for (auto& t : triangles) {
    if (!(in >> t[0] >> t[1] >> t[2])) {
      throw std::runtime_error("mesh file: truncated triangle list");
    }
    for (int& v : t) --v;
  }
  std::vector<bool> boundary(nv);
  for (long v = 0; v < nv; ++v) {
    int flag = 0;
    if (!(in >> flag) || (flag != 0 && flag != 1)) {
      throw std::runtime_error("mesh file: bad boundary flag");
    }
    boundary[v] = flag == 1;
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(boundary));
}

}  // namespace lavrentiev
