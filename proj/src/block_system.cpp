#include "lavrentiev/block_system.hpp"

#include <cmath>
#include <stdexcept>

namespace lavrentiev {

Block& Block::add(double scale, const SparseMatrix& matrix) {
  terms_.push_back({scale, &matrix});
  return *this;
}

Block& Block::add_diagonal(const Vector& diagonal) {
  if (diagonal_.size() == 0) {
    diagonal_ = diagonal;
  } else {
    diagonal_ += diagonal;
  }
  return *this;
}

void Block::apply_add(const Vector& x, Eigen::Ref<Vector> y) const {
  for (const auto& t : terms_) y.noalias() += t.scale * (*t.matrix * x);
  if (diagonal_.size() != 0) y += diagonal_.cwiseProduct(x);
}

void Block::append_triplets(int row0, int col0, std::vector<Triplet>& out) const {
  for (const auto& t : terms_) {
    if (t.scale == 0.0) continue;
    for (int k = 0; k < t.matrix->outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(*t.matrix, k); it; ++it) {
        out.emplace_back(row0 + static_cast<int>(it.row()), col0 + static_cast<int>(it.col()),
                         t.scale * it.value());
      }
    }
  }
  for (Eigen::Index i = 0; i < diagonal_.size(); ++i) {
    if (diagonal_[i] != 0.0) out.emplace_back(row0 + i, col0 + i, diagonal_[i]);
  }
}

template <int B>
void BlockSystem<B>::apply(const Vector& x, Vector& y) const {
  y = Vector::Zero(B * n);
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      blocks[i][j].apply_add(x.segment(j * n, n), y.segment(i * n, n));
    }
  }
}

template <int B>
SparseMatrix BlockSystem<B>::assemble() const {
  std::vector<Triplet> triplets;
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) blocks[i][j].append_triplets(i * n, j * n, triplets);
  }
  SparseMatrix a(B * n, B * n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  a.makeCompressed();
  return a;
}

template <int B>
double BlockSystem<B>::row_residual(int i, const Vector& x) const {
  Vector r = -rhs.segment(i * n, n);
  for (int j = 0; j < B; ++j) blocks[i][j].apply_add(x.segment(j * n, n), r);
  return r.norm();
}

template struct BlockSystem<2>;
template struct BlockSystem<3>;
template struct BlockSystem<4>;

template <int B>
BlockSolver<B>::BlockSolver(BlockSystem<B> system, InnerSolve options,
                            Vector precond_diagonal)
    : system_(std::move(system)), options_(options) {
  if (options_.method == LinearMethod::direct) {
    direct_.factorize(system_.assemble());
    return;
  }
  if (precond_diagonal.size() == 0) {
    const SparseMatrix a = system_.assemble();
    precond_diagonal = a.diagonal();
  }
  if (precond_diagonal.size() != B * system_.n) {
    throw std::invalid_argument("block solver: preconditioner has wrong length");
  }
  inverse_diagonal_ = precond_diagonal.unaryExpr(
      [](double d) { return d != 0.0 ? 1.0 / d : 1.0; });
}

template <int B>
Vector BlockSolver<B>::solve(const Vector& rhs, const Vector* guess) {
  if (rhs.size() != B * system_.n) throw std::invalid_argument("block solver: bad rhs length");
  if (options_.method == LinearMethod::direct) {
    Vector x = direct_.solve(rhs);
    last_iterations_ = 1;
    Vector ax;
    system_.apply(x, ax);
    const double nb = rhs.norm();
    last_residual_ = nb > 0.0 ? (rhs - ax).norm() / nb : (rhs - ax).norm();
    return x;
  }
  const LinearOperator apply = [this](const Vector& x, Vector& y) { system_.apply(x, y); };
  const LinearOperator precond = [this](const Vector& x, Vector& y) {
    y = inverse_diagonal_.cwiseProduct(x);
  };
  GmresResult r = gmres(apply, rhs, precond, options_.gmres, guess);
  last_iterations_ = r.iterations;
  last_residual_ = r.residual;
  return std::move(r.x);
}

template class BlockSolver<2>;
template class BlockSolver<3>;
template class BlockSolver<4>;

Vector stack_blocks(std::initializer_list<const Vector*> parts) {
  Eigen::Index total = 0;
  for (const Vector* p : parts) total += p->size();
  Vector out(total);
  Eigen::Index offset = 0;
  for (const Vector* p : parts) {
    out.segment(offset, p->size()) = *p;
    offset += p->size();
  }
  return out;
}

BlockSystem<2> hadmm_operator(const FemMatrices& fem, double alpha, double lambda,
                              double sigma) {
  const double c = lambda * lambda * sigma + alpha;
  BlockSystem<2> s;
  s.n = static_cast<int>(fem.M.rows());
  s(0, 0).add(1.0 + sigma * alpha / c, fem.M);
  s(0, 1).add(lambda * sigma / c, fem.M).add(1.0, fem.K);
  s(1, 0).add(-lambda * sigma / c, fem.M).add(-1.0, fem.K);
  s(1, 1).add(1.0 / c, fem.M);
  return s;
}

Vector hadmm_rhs(const FemMatrices& fem, const Vector& y_d, double alpha, double lambda,
                 double sigma, const Vector& v, const Vector& mu) {
  const double c = lambda * lambda * sigma + alpha;
  const Vector m_shift = fem.M * (mu + sigma * v);
  const Vector top = fem.M * y_d + (alpha / c) * m_shift;
  const Vector bottom = -(lambda / c) * m_shift;
  return stack_blocks({&top, &bottom});
}

Vector hadmm_preconditioner(const FemMatrices& fem, double alpha, double lambda,
                            double sigma) {
  const double c = lambda * lambda * sigma + alpha;
  const Vector top = (1.0 + sigma * alpha / c) * fem.W;
  const Vector bottom = fem.W / c + Vector(fem.K.diagonal());
  return stack_blocks({&top, &bottom});
}

BlockSystem<3> cadmm_operator(const FemMatrices& fem, double alpha, double lambda,
                              double sigma) {
  const Eigen::Index n = fem.M.rows();
  BlockSystem<3> s;
  s.n = static_cast<int>(n);
  s(0, 0).add(1.0, fem.M).add_diagonal(Vector::Constant(n, sigma));
  s(0, 1).add_diagonal(Vector::Constant(n, lambda * sigma));
  s(0, 2).add(1.0, fem.K);
  s(1, 0).add_diagonal(Vector::Constant(n, lambda * sigma));
  s(1, 1).add(alpha, fem.M).add_diagonal(Vector::Constant(n, lambda * lambda * sigma));
  s(1, 2).add(-1.0, fem.M);
  s(2, 0).add(1.0, fem.K);
  s(2, 1).add(-1.0, fem.M);
  return s;
}

Vector cadmm_rhs(const FemMatrices& fem, const Vector& y_d, double lambda, double sigma,
                 const Vector& v, const Vector& mu) {
  const Vector shift = mu + sigma * v;
  const Vector top = fem.M * y_d + shift;
  const Vector middle = lambda * shift;
  const Vector bottom = Vector::Zero(fem.M.rows());
  return stack_blocks({&top, &middle, &bottom});
}

BlockSystem<4> pdas_system(const FemMatrices& fem, const Vector& y_d, double alpha,
                           double lambda, double lower, double upper, const Vector& e_a,
                           const Vector& e_b) {
  const Eigen::Index n = fem.M.rows();
  if (e_a.size() != n || e_b.size() != n) {
    throw std::invalid_argument("pdas system: indicator length mismatch");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if ((e_a[i] != 0.0 && e_a[i] != 1.0) || (e_b[i] != 0.0 && e_b[i] != 1.0) ||
        e_a[i] * e_b[i] != 0.0) {
      throw std::invalid_argument("pdas system: indicators must be disjoint 0/1 vectors");
    }
  }
  const Vector d = e_a + e_b;
  BlockSystem<4> s;
  s.n = static_cast<int>(n);
  s(0, 0).add(1.0, fem.M);
  s(0, 2).add_diagonal(d);
  s(0, 3).add(1.0, fem.K);
  s(1, 1).add(alpha, fem.M);
  s(1, 2).add_diagonal(lambda * d);
  s(1, 3).add(-1.0, fem.M);
  s(2, 0).add_diagonal(d);
  s(2, 1).add_diagonal(lambda * d);
  s(2, 2).add_diagonal(Vector::Ones(n) - d);
  s(3, 0).add(1.0, fem.K);
  s(3, 1).add(-1.0, fem.M);
  const Vector top = fem.M * y_d;
  const Vector zero = Vector::Zero(n);
  const Vector bounds = lower * e_a + upper * e_b;
  s.rhs = stack_blocks({&top, &zero, &bounds, &zero});
  return s;
}

namespace {

template <int B>
std::array<Vector, B> solve_block(const BlockSystem<B>& system, const InnerSolve& options,
                                  const Vector& precond_diagonal) {
  if (system.rhs.size() != B * system.n) {
    throw std::invalid_argument("block system has no right-hand side");
  }
  BlockSolver<B> solver(system, options, precond_diagonal);
  return split_blocks<B>(solver.solve(system.rhs), system.n);
}

}  // namespace

std::array<Vector, 2> solve_block_2x2(const BlockSystem<2>& system, const InnerSolve& options,
                                      const Vector& precond_diagonal) {
  return solve_block(system, options, precond_diagonal);
}

std::array<Vector, 3> solve_block_3x3(const BlockSystem<3>& system, const InnerSolve& options,
                                      const Vector& precond_diagonal) {
  return solve_block(system, options, precond_diagonal);
}

std::array<Vector, 4> solve_block_4x4(const BlockSystem<4>& system, const InnerSolve& options,
                                      const Vector& precond_diagonal) {
  return solve_block(system, options, precond_diagonal);
}

}  // namespace lavrentiev
