#include "tridiag/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tridiag::closedform {

namespace {

void require_order(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "matrix order must be >= 1");
}

// Modulus of x + 2 sqrt(p) c for real c; for p < 0 the square root is
// imaginary and only the modulus sqrt(x^2 + 4|p| c^2) matters.
double line_modulus(double x, double p, double c) {
  if (p >= 0.0) return std::abs(x + 2.0 * std::sqrt(p) * c);
  return std::hypot(x, 2.0 * std::sqrt(-p) * c);
}

}  // namespace

const char* to_string(LimitCase c) {
  switch (c) {
    case LimitCase::ZeroProduct: return "ZeroProduct";
    case LimitCase::PositiveProductZeroInside: return "PositiveProductZeroInside";
    case LimitCase::PositiveProductZeroOutside: return "PositiveProductZeroOutside";
    case LimitCase::NegativeProduct: return "NegativeProduct";
  }
  return "Unknown";
}

double grid_cosine(std::int64_t j, std::int64_t n) {
  // The rational values of cos(pi r), r rational, are 0, +-1/2 and +-1
  // (Niven).  Returning them exactly keeps exact spectral zeros at zero,
  // e.g. x = 1, yz = 1, j/(n+1) = 2/3.
  const std::int64_t m = n + 1;
  if (2 * j == m) return 0.0;
  if (3 * j == m) return 0.5;
  if (3 * j == 2 * m) return -0.5;
  if (j == 0) return 1.0;
  if (j == m) return -1.0;
  return std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
}

std::vector<std::complex<double>> eigenvalues_nonsymmetric(const RealizedTriple& t, std::int64_t n) {
  require_order(n);
  const double p = t.y * t.z;
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 1; j <= n; ++j) {
    const double c = grid_cosine(j, n);
    if (p >= 0.0) {
      out.emplace_back(t.x + 2.0 * std::sqrt(p) * c, 0.0);
    } else {
      out.emplace_back(t.x, 2.0 * std::sqrt(-p) * c);
    }
  }
  return out;
}

std::vector<double> singular_values_symmetric(double x, double y, std::int64_t n) {
  require_order(n);
  const double a = 2.0 * std::abs(y);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 1; j <= n; ++j) out.push_back(std::abs(x + a * grid_cosine(j, n)));
  std::sort(out.begin(), out.end());
  return out;
}

SpectralExtremes finite_extremes(const RealizedTriple& t, std::int64_t n, SpectrumKind kind) {
  require_order(n);
  // Symmetric: |x + 2|y| c| is the p = y^2 case of the non-symmetric modulus.
  const double p = kind == SpectrumKind::SymmetricSingular ? t.y * t.y : t.y * t.z;
  double lo = line_modulus(t.x, p, grid_cosine(1, n));
  double hi = lo;
  for (std::int64_t j = 2; j <= n; ++j) {
    const double v = line_modulus(t.x, p, grid_cosine(j, n));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return SpectralExtremes(lo, hi, kind, FiniteN{n});
}

BoundaryPair boundary_values_symmetric(double x, double y) {
  const double a = 2.0 * std::abs(y);
  const double u = std::abs(x - a);
  const double v = std::abs(x + a);
  return {std::min(u, v), std::max(u, v)};
}

BoundaryPair boundary_values_nonsymmetric(const RealizedTriple& t) {
  const double p = t.y * t.z;
  const double u = line_modulus(t.x, p, -1.0);
  const double v = line_modulus(t.x, p, 1.0);
  return {std::min(u, v), std::max(u, v)};
}

SpectralExtremes limit_extremes_symmetric(double x, double y) {
  const BoundaryPair b = boundary_values_symmetric(x, y);
  // Closed interval: a zero exactly at alpha = +-1 still counts.
  const double lo = std::abs(x) <= 2.0 * std::abs(y) ? 0.0 : b.min;
  return SpectralExtremes(lo, b.max, SpectrumKind::SymmetricSingular, Limit{});
}

SpectralExtremes limit_extremes_nonsymmetric(const RealizedTriple& t) {
  const BoundaryPair b = boundary_values_nonsymmetric(t);
  switch (case_label(t)) {
    case LimitCase::ZeroProduct: {
      const double ax = std::abs(t.x);
      return SpectralExtremes(ax, ax, SpectrumKind::NonsymmetricEigenModulus, Limit{});
    }
    case LimitCase::PositiveProductZeroInside:
      return SpectralExtremes(0.0, b.max, SpectrumKind::NonsymmetricEigenModulus, Limit{});
    case LimitCase::PositiveProductZeroOutside:
      return SpectralExtremes(b.min, b.max, SpectrumKind::NonsymmetricEigenModulus, Limit{});
    case LimitCase::NegativeProduct:
      // Moduli sqrt(x^2 + 4|yz| alpha^2) bottom out at alpha = 0.
      return SpectralExtremes(std::min(std::abs(t.x), b.max), b.max,
                              SpectrumKind::NonsymmetricEigenModulus, Limit{});
  }
  throw Error(ErrorKind::InternalInconsistency, "unhandled limit case");
}

SpectralExtremes limit_extremes(const RealizedTriple& t, SpectrumKind kind) {
  return kind == SpectrumKind::SymmetricSingular ? limit_extremes_symmetric(t.x, t.y)
                                                 : limit_extremes_nonsymmetric(t);
}

LimitCase case_label(const RealizedTriple& t) {
  const double p = t.y * t.z;
  if (p == 0.0) return LimitCase::ZeroProduct;
  if (p < 0.0) return LimitCase::NegativeProduct;
  return std::abs(t.x) <= 2.0 * std::sqrt(p) ? LimitCase::PositiveProductZeroInside
                                             : LimitCase::PositiveProductZeroOutside;
}

}  // namespace tridiag::closedform
