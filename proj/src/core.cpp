#include "tridiag/core.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <limits>
#include <system_error>

namespace tridiag {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

RealizedTriple RealizedTriple::checked(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(ErrorKind::InvalidArgument, "triple entries must be finite");
  }
  return RealizedTriple{x, y, z};
}

SpectralExtremes::SpectralExtremes(double lo, double hi, SpectrumKind kind, Horizon horizon)
    : lo_(lo), hi_(hi), kind_(kind), horizon_(horizon) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidArgument, "spectral extremes need 0 <= lo <= hi < inf");
  }
  if (const auto* f = std::get_if<FiniteN>(&horizon_); f && f->n < 1) {
    throw Error(ErrorKind::InvalidArgument, "finite horizon needs n >= 1");
  }
}

EntryDistribution EntryDistribution::standard(Law law, Assignment assignment) {
  if (law == Law::PointMass) {
    throw Error(ErrorKind::InvalidArgument, "point mass needs a value; use point_mass()");
  }
  return EntryDistribution{law, assignment, {}};
}

EntryDistribution EntryDistribution::point_mass(const RealizedTriple& t, Assignment assignment) {
  RealizedTriple v = RealizedTriple::checked(t.x, t.y, t.z);
  if (assignment == Assignment::SymmetricIID) v.z = v.y;
  return EntryDistribution{Law::PointMass, assignment, v};
}

std::string to_string(Law law) {
  switch (law) {
    case Law::Rademacher: return "rademacher";
    case Law::StandardNormal: return "gaussian";
    case Law::StandardCauchy: return "cauchy";
    case Law::PointMass: return "pointmass";
  }
  return "unknown";
}

std::string to_string(const EntryDistribution& dist) {
  std::string s = to_string(dist.law);
  if (dist.law == Law::PointMass) {
    s += ":" + format_double(dist.point.x) + "," + format_double(dist.point.y) + "," +
         format_double(dist.point.z);
  }
  return s + (dist.symmetric() ? " (symmetric)" : " (nonsymmetric)");
}

ConditionNumber ConditionNumber::finite(double value) {
  if (!std::isfinite(value) || value < 1.0) {
    throw Error(ErrorKind::InvalidArgument, "finite condition number must lie in [1, inf)");
  }
  ConditionNumber k;
  k.value_ = value;
  k.infinite_ = false;
  return k;
}

double ConditionNumber::value() const {
  if (infinite_) throw Error(ErrorKind::DomainError, "condition number is infinite");
  return value_;
}

double ConditionNumber::as_double() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string ConditionNumber::to_string() const {
  return infinite_ ? std::string("inf") : format_double(value_);
}

std::partial_ordering ConditionNumber::operator<=>(const ConditionNumber& other) const noexcept {
  if (infinite_ || other.infinite_) {
    return infinite_ == other.infinite_ ? std::partial_ordering::equivalent
           : infinite_                  ? std::partial_ordering::greater
                                        : std::partial_ordering::less;
  }
  return value_ <=> other.value_;
}

ConditionNumber condition_number(const SpectralExtremes& e) {
  if (e.lo() > 0.0) {
    const double ratio = e.hi() / e.lo();
    // Overflow for denormal lo; the ratio is not representable.
    if (!std::isfinite(ratio)) return ConditionNumber::infinity();
    return ConditionNumber::finite(std::max(1.0, ratio));
  }
  if (e.hi() > 0.0) return ConditionNumber::infinity();
  return ConditionNumber::finite(1.0);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace tridiag
