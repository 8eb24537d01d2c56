#include "tridiag/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tridiag::oracle {

namespace {

constexpr int kMaxSweeps = 100;

void require_order(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "matrix order must be >= 1");
}

}  // namespace

double TridiagonalToeplitzMatrix::operator()(std::int64_t i, std::int64_t j) const {
  if (i == j) return diag;
  if (j == i + 1) return super;
  if (i == j + 1) return sub;
  return 0.0;
}

DenseSymmetricMatrix::DenseSymmetricMatrix(std::int64_t order)
    : order_(order), a_(static_cast<std::size_t>(order * order), 0.0) {
  require_order(order);
}

void DenseSymmetricMatrix::set(std::int64_t i, std::int64_t j, double value) {
  a_[index(i, j)] = value;
  a_[index(j, i)] = value;
}

TridiagonalToeplitzMatrix assemble(const RealizedTriple& t, std::int64_t n) {
  require_order(n);
  return TridiagonalToeplitzMatrix{n, t.x, t.y, t.z};
}

DenseSymmetricMatrix gram_matrix(const TridiagonalToeplitzMatrix& m) {
  const std::int64_t n = m.order;
  DenseSymmetricMatrix g(n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      double sum = 0.0;
      for (std::int64_t k = 0; k < n; ++k) sum += m(k, i) * m(k, j);
      g.set(i, j, sum);
    }
  }
  return g;
}

std::vector<double> symmetric_eigenvalues_jacobi(const DenseSymmetricMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "jacobi tolerance must be positive");
  const std::int64_t n = m.order();
  if (n > kMaxDenseOrder) {
    throw Error(ErrorKind::InvalidArgument, "jacobi oracle is limited to order 512");
  }
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> a(N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a[i * N + j] = m(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * N + j]; };

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) s += 2.0 * at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  auto diag_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += at(i, i) * at(i, i);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (true) {
    const double off = off_mass();
    if (off == 0.0 || off < tol * diag_mass()) break;
    if (++sweep > kMaxSweeps) {
      throw Error(ErrorKind::NonConvergence,
                  "jacobi did not converge in 100 sweeps (off-diagonal mass " + format_double(off) + ")");
    }
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        // Negligible against both diagonal entries: drop it.
        if (sweep > 4 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = at(p, k) = c * akp - s * akq;
          at(k, q) = at(q, k) = s * akp + c * akq;
        }
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = at(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                         double lambda) {
  double max_e2 = 1.0;
  for (double e : offdiag) max_e2 = std::max(max_e2, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_e2;
  std::int64_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : offdiag[i - 1] * offdiag[i - 1];
    q = (diag[i] - lambda) - (i == 0 ? 0.0 : e2 / q);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> sturm_tridiagonal_eigenvalues(std::span<const double> diag,
                                                  std::span<const double> offdiag, double tol) {
  const std::size_t n = diag.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty tridiagonal matrix");
  if (offdiag.size() + 1 != n) {
    throw Error(ErrorKind::InvalidArgument, "offdiagonal length must be n - 1");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "bisection tolerance must be positive");

  // Gershgorin interval.
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(offdiag[i]);
    lower = std::min(lower, diag[i] - r);
    upper = std::max(upper, diag[i] + r);
  }
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lower), std::abs(upper));
  lower -= pad + tol;
  upper += pad + tol;

  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest lambda with more than k eigenvalues below it.
    double a = lower;
    double b = upper;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sturm_count(diag, offdiag, mid) > static_cast<std::int64_t>(k)) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

double charpoly_residual(const RealizedTriple& t, std::int64_t n, std::complex<double> lambda) {
  require_order(n);
  const std::complex<double> d = t.x - lambda;
  const double p = t.y * t.z;
  std::complex<double> prev = 1.0;  // p_{k-1}
  std::complex<double> cur = d;     // p_k
  auto rescale = [&] {
    const double s = std::max(1.0, std::abs(cur));
    cur /= s;
    prev /= s;
  };
  rescale();
  for (std::int64_t k = 2; k <= n; ++k) {
    const std::complex<double> next = d * cur - p * prev;
    prev = cur;
    cur = next;
    rescale();
  }
  return std::abs(cur);
}

std::vector<double> singular_values(const RealizedTriple& t, std::int64_t n, double tol) {
  auto eig = symmetric_eigenvalues_jacobi(gram_matrix(assemble(t, n)), tol);
  for (double& v : eig) v = std::sqrt(std::max(0.0, v));
  return eig;
}

std::vector<std::complex<double>> nonsymmetric_eigenvalues(const RealizedTriple& t, std::int64_t n,
                                                           double tol) {
  require_order(n);
  const auto N = static_cast<std::size_t>(n);
  const double p = t.y * t.z;
  std::vector<std::complex<double>> out;
  out.reserve(N);
  if (p == 0.0) {
    // Triangular.
    out.assign(N, {t.x, 0.0});
    return out;
  }
  // D^{-1} T D with D = diag(sqrt(z/y)^k) has off-diagonals sqrt(yz) when
  // yz > 0.  For yz < 0 the shifted matrix T - xI is similar to i S with S
  // symmetric tridiagonal, zero diagonal, off-diagonals sqrt(|yz|).
  const double e = std::sqrt(std::abs(p));
  std::vector<double> off(N - 1, e);
  if (p > 0.0) {
    std::vector<double> diag(N, t.x);
    for (double v : sturm_tridiagonal_eigenvalues(diag, off, tol)) out.emplace_back(v, 0.0);
  } else {
    std::vector<double> diag(N, 0.0);
    for (double v : sturm_tridiagonal_eigenvalues(diag, off, tol)) out.emplace_back(t.x, v);
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace tridiag::oracle
