#pragma once

#include <array>
#include <vector>

#include "lavrentiev/fem.hpp"
#include "lavrentiev/linalg.hpp"

namespace lavrentiev {

/// One operator block: a sum of scaled references to shared matrices plus an
/// optional diagonal. The matrices are not copied and must outlive the block.
class Block {
 public:
  struct Term {
    double scale;
    const SparseMatrix* matrix;
  };

  Block& add(double scale, const SparseMatrix& matrix);
  Block& add_diagonal(const Vector& diagonal);

  bool empty() const { return terms_.empty() && diagonal_.size() == 0; }
  const std::vector<Term>& terms() const { return terms_; }
  const Vector& diagonal() const { return diagonal_; }

  /// y += B x
  void apply_add(const Vector& x, Eigen::Ref<Vector> y) const;
  void append_triplets(int row0, int col0, std::vector<Triplet>& out) const;

 private:
  std::vector<Term> terms_;
  Vector diagonal_;
};

template <int B>
struct BlockSystem {
  int n = 0;  // size of one block
  std::array<std::array<Block, B>, B> blocks;
  Vector rhs;  // length B*n; may be empty when only the operator is needed

  Block& operator()(int i, int j) { return blocks[i][j]; }
  const Block& operator()(int i, int j) const { return blocks[i][j]; }

  void apply(const Vector& x, Vector& y) const;
  /// Explicit (B n) x (B n) matrix, used for direct factorization and oracles.
  SparseMatrix assemble() const;
  /// Euclidean residual of block row i.
  double row_residual(int i, const Vector& x) const;
};

extern template struct BlockSystem<2>;
extern template struct BlockSystem<3>;
extern template struct BlockSystem<4>;

enum class LinearMethod { direct, gmres };

struct InnerSolve {
  LinearMethod method = LinearMethod::direct;
  GmresOptions gmres;
};

/// Solves repeatedly with one fixed block operator: the direct path factors
/// once, the GMRES path reuses the Jacobi-type diagonal preconditioner.
template <int B>
class BlockSolver {
 public:
  /// `precond_diagonal` is inverted entrywise; when empty the diagonal of the
  /// assembled operator is used (zeros replaced by one).
  BlockSolver(BlockSystem<B> system, InnerSolve options, Vector precond_diagonal = {});

  Vector solve(const Vector& rhs, const Vector* guess = nullptr);

  const BlockSystem<B>& system() const { return system_; }
  int last_iterations() const { return last_iterations_; }
  double last_residual() const { return last_residual_; }

 private:
  BlockSystem<B> system_;
  InnerSolve options_;
  DirectSolver direct_;
  Vector inverse_diagonal_;
  int last_iterations_ = 0;
  double last_residual_ = 0.0;
};

extern template class BlockSolver<2>;
extern template class BlockSolver<3>;
extern template class BlockSolver<4>;

/// Splits a stacked vector into its B blocks of length n.
template <int B>
std::array<Vector, B> split_blocks(const Vector& x, int n) {
  std::array<Vector, B> out;
  for (int i = 0; i < B; ++i) out[i] = x.segment(i * n, n);
  return out;
}

Vector stack_blocks(std::initializer_list<const Vector*> parts);

/// Reduced hADMM step-1 system in (y, p):
///   [ (1+σα/c) M        (λσ/c) M + K ] [y]   [ M y_d + (α/c) M (μ + σ v) ]
///   [ -(λσ/c) M - K     (1/c) M      ] [p] = [ -(λ/c) M (μ + σ v)        ]
/// with c = λ²σ + α. The rhs is left empty; see hadmm_rhs.
BlockSystem<2> hadmm_operator(const FemMatrices& fem, double alpha, double lambda,
                              double sigma);
Vector hadmm_rhs(const FemMatrices& fem, const Vector& y_d, double alpha, double lambda,
                 double sigma, const Vector& v, const Vector& mu);
/// diag((1+σα/c) W, W/c + diag K)
Vector hadmm_preconditioner(const FemMatrices& fem, double alpha, double lambda,
                            double sigma);

/// Classical ADMM step-1 KKT system in (y, u, p):
///   [ M + σI   λσ I         K ] [y]   [ M y_d + μ + σ v ]
///   [ λσ I     λ²σ I + αM  -M ] [u] = [ λ (μ + σ v)     ]
///   [ K        -M           0 ] [p]   [ 0               ]
BlockSystem<3> cadmm_operator(const FemMatrices& fem, double alpha, double lambda,
                              double sigma);
Vector cadmm_rhs(const FemMatrices& fem, const Vector& y_d, double lambda, double sigma,
                 const Vector& v, const Vector& mu);

/// PDAS Newton system in (y, u, μ, p) for active-set indicators e_a, e_b
/// (0/1 vectors, disjoint), D = diag(e_a + e_b):
///   [ M   0    D      K ] [y]   [ M y_d          ]
///   [ 0   αM   λD    -M ] [u] = [ 0              ]
///   [ D   λD   I - D  0 ] [μ]   [ a e_a + b e_b  ]
///   [ K  -M    0      0 ] [p]   [ 0              ]
BlockSystem<4> pdas_system(const FemMatrices& fem, const Vector& y_d, double alpha,
                           double lambda, double lower, double upper, const Vector& e_a,
                           const Vector& e_b);

std::array<Vector, 2> solve_block_2x2(const BlockSystem<2>& system, const InnerSolve& options,
                                      const Vector& precond_diagonal = {});
std::array<Vector, 3> solve_block_3x3(const BlockSystem<3>& system, const InnerSolve& options,
                                      const Vector& precond_diagonal = {});
std::array<Vector, 4> solve_block_4x4(const BlockSystem<4>& system, const InnerSolve& options,
                                      const Vector& precond_diagonal = {});

}  // namespace lavrentiev
