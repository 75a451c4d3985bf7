#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

namespace lavrentiev {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Triangle = std::array<int, 3>;

enum class DomainKind { square, disc, polygon };

/// Geometry the mesh approximates. Refinement uses it to place new boundary
/// vertices: on a disc they are projected radially onto the circle.
struct DomainShape {
  DomainKind kind = DomainKind::polygon;
  double extent = 0.0;  // side length (square) or radius (disc)
};

double signed_area(const Point& a, const Point& b, const Point& c);
double distance(const Point& a, const Point& b);

/// Conforming P1 triangulation with homogeneous Dirichlet boundary.
///
/// Vertices flagged as boundary carry no degree of freedom; the remaining
/// vertices are numbered 0..num_dofs()-1 in vertex order. Immutable after
/// construction.
class Mesh {
 public:
  /// Validates indices and orientation (every triangle must have strictly
  /// positive signed area); throws std::invalid_argument otherwise.
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
       std::vector<bool> boundary, DomainShape shape = {},
       std::vector<std::pair<int, int>> parents = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_dofs() const { return static_cast<int>(dof_to_vertex_.size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<bool>& boundary_flags() const { return boundary_; }
  bool is_boundary(int vertex) const { return boundary_[vertex]; }

  /// Interior dof index of a vertex, or -1 for boundary vertices.
  int dof_of(int vertex) const { return vertex_to_dof_[vertex]; }
  int vertex_of(int dof) const { return dof_to_vertex_[dof]; }
  const Point& dof_point(int dof) const { return vertices_[dof_to_vertex_[dof]]; }

  /// Longest edge over all triangles.
  double h() const { return h_; }
  /// Sum of triangle areas (area of the polygonal domain).
  double area() const { return area_; }
  const DomainShape& shape() const { return shape_; }

  /// For meshes produced by refine(): the pair of coarse vertices each vertex
  /// was created from (equal entries for vertices inherited from the parent).
  /// Empty for meshes that were generated directly.
  const std::vector<std::pair<int, int>>& parents() const { return parents_; }

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<bool> boundary_;
  std::vector<int> vertex_to_dof_;
  std::vector<int> dof_to_vertex_;
  std::vector<std::pair<int, int>> parents_;
  DomainShape shape_;
  double h_ = 0.0;
  double area_ = 0.0;
};

/// Uniform triangulation of [0, side]^2 with 2^level cells per side, each cell
/// split along its (i,j)-(i+1,j+1) diagonal. Vertices are numbered
/// lexicographically by (y, x).
Mesh square_mesh(double side, int level);

/// Triangulation of the disc of the given radius centred at the origin: the
/// inscribed square (centre plus four boundary vertices) refined `level` times
/// with radial projection of boundary midpoints.
Mesh disc_mesh(double radius, int level);

/// Regular (red) refinement: every triangle splits into four through its edge
/// midpoints. Parent vertices keep their indices; new vertices follow in order
/// of first appearance.
Mesh refine(const Mesh& mesh);

/// Vertices lying on edges that belong to exactly one triangle.
std::vector<bool> topological_boundary(int num_vertices,
                                       const std::vector<Triangle>& triangles);

struct MeshQuality {
  double h = 0.0;
  double min_inscribed_diameter = 0.0;
  double ratio = 0.0;  // h / min_inscribed_diameter
};
MeshQuality mesh_quality(const Mesh& mesh);

/// Plain-text mesh format:
///   N_vertices N_triangles
///   x y                    (one line per vertex, shortest round-trip decimals)
///   i j k                  (one line per triangle, 1-based)
///   flag                   (one line per vertex, 1 = boundary)
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

}  // namespace lavrentiev
