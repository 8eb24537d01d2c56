#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tridiag/core.hpp"

// Brute-force spectra of explicitly assembled matrices.  Nothing here uses
// the cosine formulas from closedform; these routines exist to check them.
namespace tridiag::oracle {

inline constexpr std::int64_t kMaxDenseOrder = 512;

struct TridiagonalToeplitzMatrix {
  std::int64_t order = 1;
  double diag = 0.0;
  double super = 0.0;
  double sub = 0.0;

  // Entry (i, j), zero outside the three central diagonals.
  double operator()(std::int64_t i, std::int64_t j) const;
};

class DenseSymmetricMatrix {
 public:
  explicit DenseSymmetricMatrix(std::int64_t order);

  std::int64_t order() const noexcept { return order_; }
  double operator()(std::int64_t i, std::int64_t j) const { return a_[index(i, j)]; }
  // Writes both (i, j) and (j, i).
  void set(std::int64_t i, std::int64_t j, double value);

 private:
  std::size_t index(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(i * order_ + j);
  }
  std::int64_t order_;
  std::vector<double> a_;
};

TridiagonalToeplitzMatrix assemble(const RealizedTriple& t, std::int64_t n);

// A^T A, stored dense.
DenseSymmetricMatrix gram_matrix(const TridiagonalToeplitzMatrix& m);

// Cyclic Jacobi, row-major sweeps over the upper triangle, until the
// off-diagonal Frobenius mass drops below tol times the diagonal mass.
// Throws NonConvergence after 100 sweeps, InvalidArgument past order 512.
std::vector<double> symmetric_eigenvalues_jacobi(const DenseSymmetricMatrix& m, double tol);

// Bisection with Sturm counts inside the Gershgorin interval; each returned
// eigenvalue is the midpoint of a bracket of width <= tol.
std::vector<double> sturm_tridiagonal_eigenvalues(std::span<const double> diag,
                                                  std::span<const double> offdiag, double tol);

// Number of eigenvalues strictly below lambda (negative LDL^T pivots).
std::int64_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                         double lambda);

// |p_n(lambda)| of the characteristic recurrence
//   p_k = (x - lambda) p_{k-1} - yz p_{k-2},
// with p_k and p_{k-1} divided by max(1, |p_k|) after every step.
double charpoly_residual(const RealizedTriple& t, std::int64_t n, std::complex<double> lambda);

// Singular values of the assembled matrix: square roots of the Jacobi
// eigenvalues of A^T A, sorted nondecreasing.
std::vector<double> singular_values(const RealizedTriple& t, std::int64_t n, double tol = 1e-15);

// Eigenvalues of the assembled non-symmetric matrix, via the diagonal
// similarity to a symmetric tridiagonal matrix and Sturm bisection.
// Sorted by (real, imag).
std::vector<std::complex<double>> nonsymmetric_eigenvalues(const RealizedTriple& t, std::int64_t n,
                                                           double tol);

}  // namespace tridiag::oracle
