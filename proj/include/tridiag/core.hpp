#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace tridiag {

enum class ErrorKind {
  InvalidArgument,
  DomainError,
  NonConvergence,
  DepthExceeded,
  QuadratureFailure,
  InternalInconsistency,
  Unsupported,
};

std::string to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// One draw of the diagonal (x), superdiagonal (y) and subdiagonal (z) entry.
struct RealizedTriple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  // Throws InvalidArgument on NaN or infinite entries.
  static RealizedTriple checked(double x, double y, double z);
  // The symmetric assignment Z := Y.
  static RealizedTriple symmetric(double x, double y) { return checked(x, y, y); }

  friend bool operator==(const RealizedTriple&, const RealizedTriple&) = default;
};

enum class SpectrumKind { SymmetricSingular, NonsymmetricEigenModulus };

struct FiniteN {
  std::int64_t n = 1;
  friend bool operator==(const FiniteN&, const FiniteN&) = default;
};
struct Limit {
  friend bool operator==(const Limit&, const Limit&) = default;
};
using Horizon = std::variant<FiniteN, Limit>;

// Extreme spectral moduli of one realization: singular values for the
// symmetric matrix, eigenvalue moduli for the non-symmetric one.
class SpectralExtremes {
 public:
  // Throws InvalidArgument unless 0 <= lo <= hi and FiniteN has n >= 1.
  SpectralExtremes(double lo, double hi, SpectrumKind kind, Horizon horizon);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  SpectrumKind kind() const noexcept { return kind_; }
  const Horizon& horizon() const noexcept { return horizon_; }
  bool is_limit() const noexcept { return std::holds_alternative<Limit>(horizon_); }

 private:
  double lo_;
  double hi_;
  SpectrumKind kind_;
  Horizon horizon_;
};

enum class Law { Rademacher, StandardNormal, StandardCauchy, PointMass };
enum class Assignment {
  SymmetricIID,     // X, Y independent, Z := Y
  NonsymmetricIID,  // X, Y, Z independent
};

// Joint law of (X, Y, Z).  A point mass fixes the whole triple; under the
// symmetric assignment its z is forced to y.
struct EntryDistribution {
  Law law = Law::StandardNormal;
  Assignment assignment = Assignment::SymmetricIID;
  RealizedTriple point{};

  static EntryDistribution standard(Law law, Assignment assignment);
  static EntryDistribution point_mass(const RealizedTriple& t, Assignment assignment);

  bool symmetric() const noexcept { return assignment == Assignment::SymmetricIID; }
  SpectrumKind kind() const noexcept {
    return symmetric() ? SpectrumKind::SymmetricSingular : SpectrumKind::NonsymmetricEigenModulus;
  }
};

std::string to_string(Law law);
std::string to_string(const EntryDistribution& dist);

// Extended nonnegative real: finite value >= 1 or +infinity.
class ConditionNumber {
 public:
  static ConditionNumber finite(double value);
  static ConditionNumber infinity() noexcept { return ConditionNumber(); }

  bool is_infinite() const noexcept { return infinite_; }
  // Throws DomainError when infinite.
  double value() const;
  // Finite value, or IEEE +inf for arithmetic that wants a double.
  double as_double() const noexcept;
  // "inf" or a 17-significant-digit decimal.
  std::string to_string() const;

  std::partial_ordering operator<=>(const ConditionNumber& other) const noexcept;
  bool operator==(const ConditionNumber& other) const noexcept = default;

 private:
  ConditionNumber() = default;
  double value_ = 0.0;
  bool infinite_ = true;
};

// hi/lo, +inf when lo = 0 < hi, and 1 for the all-zero spectrum.
ConditionNumber condition_number(const SpectralExtremes& e);

// Locale-independent decimal with 17 significant digits ("inf", "nan" for
// non-finite values).
std::string format_double(double value);

}  // namespace tridiag
