#include "lavrentiev/linalg.hpp"

#ifdef LAVRENTIEV_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#endif

namespace lavrentiev {

struct DirectSolver::Impl {
  SparseMatrix matrix;
#ifdef LAVRENTIEV_HAVE_UMFPACK
  Eigen::UmfPackLU<SparseMatrix> lu;
#else
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
#endif
  bool ready = false;
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}

DirectSolver::DirectSolver(const SparseMatrix& matrix) : DirectSolver() {
  factorize(matrix);
}

DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

void DirectSolver::factorize(const SparseMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("direct solver: matrix is not square");
  }
  impl_ = std::make_unique<Impl>();
  impl_->matrix = matrix;
  impl_->matrix.makeCompressed();
  impl_->lu.compute(impl_->matrix);
  if (impl_->lu.info() != Eigen::Success) {
    impl_->ready = false;
    throw SingularMatrixError("direct solver: factorization failed (singular matrix?)");
  }
  impl_->ready = true;
}

Vector DirectSolver::solve(const Vector& rhs) const {
  if (!ready()) throw std::logic_error("direct solver: no factorization");
  Vector x = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success || !x.allFinite()) {
    throw SingularMatrixError("direct solver: back substitution failed");
  }
  return x;
}

bool DirectSolver::ready() const { return impl_ && impl_->ready; }

const char* DirectSolver::backend() {
#ifdef LAVRENTIEV_HAVE_UMFPACK
  return "umfpack";
#else
  return "eigen-sparselu";
#endif
}

}  // namespace lavrentiev
