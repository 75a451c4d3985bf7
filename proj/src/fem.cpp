#include "lavrentiev/fem.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lavrentiev {

LocalMatrix local_stiffness(const Point& a, const Point& b, const Point& c) {
  const std::array<const Point*, 3> p = {&a, &b, &c};
  const double area = signed_area(a, b, c);
  std::array<double, 3> bx{}, cy{};
  for (int i = 0; i < 3; ++i) {
    const Point& q = *p[(i + 1) % 3];
    const Point& r = *p[(i + 2) % 3];
    bx[i] = q.y - r.y;
    cy[i] = r.x - q.x;
  }
  LocalMatrix k{};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      k[i][j] = k[j][i] = (bx[i] * bx[j] + cy[i] * cy[j]) / (4.0 * area);
    }
  }
  return k;
}

LocalMatrix local_mass(const Point& a, const Point& b, const Point& c) {
  const double s = signed_area(a, b, c) / 12.0;
  LocalMatrix m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 2.0 * s : s;
  }
  return m;
}

namespace {

template <typename Local>
SparseMatrix assemble(const Mesh& mesh, DofSet dofs, Local local) {
  const bool all = dofs == DofSet::all;
  const int n = all ? mesh.num_vertices() : mesh.num_dofs();
  if (n == 0) throw std::invalid_argument("mesh has no interior degrees of freedom");
  const auto index = [&](int v) { return all ? v : mesh.dof_of(v); };

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 9);
  const auto& xy = mesh.vertices();
  for (const auto& t : mesh.triangles()) {
    const LocalMatrix e = local(xy[t[0]], xy[t[1]], xy[t[2]]);
    for (int i = 0; i < 3; ++i) {
      const int r = index(t[i]);
      if (r < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int c = index(t[j]);
        if (c >= 0) triplets.emplace_back(r, c, e[i][j]);
      }
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  a.makeCompressed();
  return a;
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh, DofSet dofs) {
  return assemble(mesh, dofs, local_stiffness);
}

SparseMatrix assemble_mass(const Mesh& mesh, DofSet dofs) {
  return assemble(mesh, dofs, local_mass);
}

Vector lump_mass(const SparseMatrix& mass) {
  Vector w = Vector::Zero(mass.rows());
  for (int k = 0; k < mass.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(mass, k); it; ++it) w[it.row()] += it.value();
  }
  return w;
}

FemMatrices assemble_fem(const Mesh& mesh) {
  FemMatrices fem;
  fem.K = assemble_stiffness(mesh);
  fem.M = assemble_mass(mesh);
  fem.W = lump_mass(fem.M);
  return fem;
}

Vector nodal_values(const Mesh& mesh, const ScalarField& f, DofSet dofs) {
  const bool all = dofs == DofSet::all;
  const int n = all ? mesh.num_vertices() : mesh.num_dofs();
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    const int v = all ? i : mesh.vertex_of(i);
    const Point& p = mesh.vertices()[v];
    const double value = f(p);
    if (!std::isfinite(value)) {
      throw EvaluationError("non-finite value at node " + std::to_string(i) + " (" +
                                std::to_string(p.x) + ", " + std::to_string(p.y) + ")",
                            i);
    }
    out[i] = value;
  }
  return out;
}

Vector extend_by_zero(const Mesh& mesh, const Vector& interior) {
  Vector full = Vector::Zero(mesh.num_vertices());
  for (int d = 0; d < mesh.num_dofs(); ++d) full[mesh.vertex_of(d)] = interior[d];
  return full;
}

Vector prolongate(const Mesh& fine, const Mesh& coarse, const Vector& interior) {
  const auto& parents = fine.parents();
  if (parents.empty()) throw std::invalid_argument("fine mesh has no parent map");
  if (interior.size() != coarse.num_dofs()) {
    throw std::invalid_argument("coarse vector length differs from coarse dof count");
  }
  const Vector full = extend_by_zero(coarse, interior);
  Vector out(fine.num_dofs());
  for (int d = 0; d < fine.num_dofs(); ++d) {
    const auto [a, b] = parents[fine.vertex_of(d)];
    out[d] = 0.5 * (full[a] + full[b]);
  }
  return out;
}

}  // namespace lavrentiev
