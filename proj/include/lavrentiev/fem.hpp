#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

#include "lavrentiev/linalg.hpp"
#include "lavrentiev/mesh.hpp"

namespace lavrentiev {

using LocalMatrix = std::array<std::array<double, 3>, 3>;

/// Exact P1 element matrices on the triangle (a, b, c).
LocalMatrix local_stiffness(const Point& a, const Point& b, const Point& c);
LocalMatrix local_mass(const Point& a, const Point& b, const Point& c);

/// Which rows/columns to keep: interior dofs (Dirichlet restriction) or every
/// vertex (used by tests and full-domain norms).
enum class DofSet { interior, all };

/// Throws std::invalid_argument for DofSet::interior on a mesh without
/// interior vertices.
SparseMatrix assemble_stiffness(const Mesh& mesh, DofSet dofs = DofSet::interior);
SparseMatrix assemble_mass(const Mesh& mesh, DofSet dofs = DofSet::interior);

/// Row sums of M, i.e. the diagonal of the lumped mass matrix.
Vector lump_mass(const SparseMatrix& mass);

struct FemMatrices {
  SparseMatrix K;
  SparseMatrix M;
  Vector W;  // diagonal of the lumped mass matrix
};

FemMatrices assemble_fem(const Mesh& mesh);

class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, int node)
      : std::runtime_error(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

using ScalarField = std::function<double(const Point&)>;

/// f at every interior dof (or every vertex). Throws EvaluationError naming
/// the first node where f is not finite.
Vector nodal_values(const Mesh& mesh, const ScalarField& f,
                    DofSet dofs = DofSet::interior);

/// Interior-dof vector padded with zeros on boundary vertices.
Vector extend_by_zero(const Mesh& mesh, const Vector& interior);

/// Interpolates a coarse-mesh interior vector onto refine(coarse), using the
/// parent map of the fine mesh.
Vector prolongate(const Mesh& fine, const Mesh& coarse, const Vector& interior);

}  // namespace lavrentiev
