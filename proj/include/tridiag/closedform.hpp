#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tridiag/core.hpp"

// Exact spectra of tridiagonal Toeplitz matrices and the per-realization
// n -> infinity extremes they converge to.
//
// The eigenvalues of the order-n matrix with diagonal x, superdiagonal y and
// subdiagonal z are x + 2 sqrt(yz) cos(pi j / (n + 1)), j = 1..n.  As n grows
// the cosine grid fills [-1, 1], so the extreme moduli converge to the
// extremes of |x + 2 sqrt(yz) alpha| over alpha in [-1, 1].
namespace tridiag::closedform {

enum class LimitCase {
  ZeroProduct,                 // yz = 0
  PositiveProductZeroInside,   // yz > 0, |x| <= 2 sqrt(yz)
  PositiveProductZeroOutside,  // yz > 0, |x| >  2 sqrt(yz)
  NegativeProduct,             // yz < 0
};

const char* to_string(LimitCase c);

// Moduli at the ends alpha = -1 and alpha = +1 of the limiting line.
struct BoundaryPair {
  double min = 0.0;  // m (symmetric) or mu (non-symmetric)
  double max = 0.0;  // M
};

// cos(pi j / (n + 1)), evaluated directly for each index; exact where the
// value is rational.
double grid_cosine(std::int64_t j, std::int64_t n);

// lambda_j for j = 1..n, in index order.  Purely real when yz >= 0.
std::vector<std::complex<double>> eigenvalues_nonsymmetric(const RealizedTriple& t, std::int64_t n);

// |x + 2|y| cos(pi j / (n + 1))|, sorted nondecreasing.
std::vector<double> singular_values_symmetric(double x, double y, std::int64_t n);

// Min and max over j of the closed-form moduli.  The symmetric kind reads
// only t.x and t.y.
SpectralExtremes finite_extremes(const RealizedTriple& t, std::int64_t n, SpectrumKind kind);

BoundaryPair boundary_values_symmetric(double x, double y);
BoundaryPair boundary_values_nonsymmetric(const RealizedTriple& t);

SpectralExtremes limit_extremes_symmetric(double x, double y);
SpectralExtremes limit_extremes_nonsymmetric(const RealizedTriple& t);
SpectralExtremes limit_extremes(const RealizedTriple& t, SpectrumKind kind);

LimitCase case_label(const RealizedTriple& t);

}  // namespace tridiag::closedform
