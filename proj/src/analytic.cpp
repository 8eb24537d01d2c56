#include "tridiag/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tridiag/montecarlo.hpp"
#include "tridiag/quadrature.hpp"

namespace tridiag::analytic {

namespace q = tridiag::quadrature;
using std::numbers::pi;

namespace {

// Absolute tolerances.  One-dimensional integrals run at 1e-8 or tighter;
// the nested condition-number integrals use 1e-4 / 1e-5 / 1e-6 from the
// outermost level inward.
constexpr double kTol1d = 1e-10;
constexpr double kVmaxOuterTol = 1e-8;
constexpr double kVmaxInnerTol = 1e-10;
constexpr double kKappaOuterTol = 1e-4;
constexpr double kKappaInnerTol = 1e-5;
constexpr double kKappaInnermostTol = 1e-6;
constexpr double kGaussianConstantAgreement = 1e-8;

// phi(v) underflows past v ~ 38.6 and K0(t) < 1e-27 past t = 60.  Limits
// are clipped there so that no panel is wider than the integrand's support.
constexpr double kGaussianSupport = 40.0;
constexpr double kProductSupport = 60.0;

[[noreturn]] void quadrature_failure(const std::string& where, const q::QuadratureResult& r) {
  throw Error(ErrorKind::QuadratureFailure,
              where + ": " + q::to_string(r.status) + " (value " + format_double(r.value) +
                  ", error estimate " + format_double(r.abs_error_estimate) + ")");
}

q::QuadratureResult require(q::QuadratureResult r, const std::string& where) {
  if (!r.converged) quadrature_failure(where, r);
  return r;
}

// Records inner-integral outcomes from inside an outer integrand.
struct InnerLog {
  double max_error = 0.0;
  std::optional<q::QuadratureResult> failure;
  std::string where;

  double take(const q::QuadratureResult& r, const char* what) {
    max_error = std::max(max_error, r.abs_error_estimate);
    if (!r.converged && !failure) {
      failure = r;
      where = what;
    }
    return r.value;
  }
  void check() const {
    if (failure) quadrature_failure(where, *failure);
  }
};

// Integral over (0, inf) of a function with an integrable singularity at 0.
q::QuadratureResult integrate_half_line_singular(const q::Integrand& f, double tol) {
  const q::QuadratureResult head = q::integrate_with_integrable_singularity(f, 0.0, 1.0, 0.0, 0.5 * tol);
  const q::QuadratureResult tail = q::integrate_semi_infinite(f, 1.0, 0.5 * tol);
  q::QuadratureResult r;
  r.value = head.value + tail.value;
  r.abs_error_estimate = head.abs_error_estimate + tail.abs_error_estimate;
  r.evaluations = head.evaluations + tail.evaluations;
  r.converged = head.converged && tail.converged;
  r.status = !head.converged ? head.status : tail.status;
  return r;
}

void require_continuous(LimitLaw law, const char* what) {
  if (is_discrete(law)) {
    throw Error(ErrorKind::Unsupported, std::string(what) + " is not defined for " + to_string(law));
  }
}

double enumerated_probability(LimitLaw law, auto predicate) {
  double p = 0.0;
  for (const auto& s : rademacher_patterns(law == LimitLaw::RademacherSym)) {
    if (predicate(s)) p += s.probability;
  }
  return p;
}

// Cached constants; each is computed once per process.
double c0() {
  static const double value = singularity_constant(LimitLaw::GaussianSym).value;
  return value;
}
double c1() {
  static const double value = singularity_constant(LimitLaw::GaussianNonsym).value;
  return value;
}
double c2() {
  static const double value = singularity_constant(LimitLaw::CauchySym).value;
  return value;
}

// 1/((1+v^2)(1+(w+2v)^2)) times the Jacobian 1 + v^2 of v = tan(b).
double cauchy_kernel(double w, double v) {
  const double u = w + 2.0 * v;
  return 1.0 / (1.0 + u * u);
}

}  // namespace

std::string to_string(LimitLaw law) {
  switch (law) {
    case LimitLaw::RademacherSym: return "RademacherSym";
    case LimitLaw::CauchySym: return "CauchySym";
    case LimitLaw::GaussianSym: return "GaussianSym";
    case LimitLaw::RademacherNonsym: return "RademacherNonsym";
    case LimitLaw::GaussianNonsym: return "GaussianNonsym";
  }
  return "Unknown";
}

bool is_discrete(LimitLaw law) {
  return law == LimitLaw::RademacherSym || law == LimitLaw::RademacherNonsym;
}

EntryDistribution entry_distribution(LimitLaw law) {
  switch (law) {
    case LimitLaw::RademacherSym:
      return EntryDistribution::standard(Law::Rademacher, Assignment::SymmetricIID);
    case LimitLaw::CauchySym:
      return EntryDistribution::standard(Law::StandardCauchy, Assignment::SymmetricIID);
    case LimitLaw::GaussianSym:
      return EntryDistribution::standard(Law::StandardNormal, Assignment::SymmetricIID);
    case LimitLaw::RademacherNonsym:
      return EntryDistribution::standard(Law::Rademacher, Assignment::NonsymmetricIID);
    case LimitLaw::GaussianNonsym:
      return EntryDistribution::standard(Law::StandardNormal, Assignment::NonsymmetricIID);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown limit law");
}

std::optional<LimitLaw> limit_law_for(const EntryDistribution& dist) {
  for (LimitLaw law : kAllLaws) {
    const EntryDistribution d = entry_distribution(law);
    if (d.law == dist.law && d.assignment == dist.assignment) return law;
  }
  return std::nullopt;
}

double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double std_normal_pdf(double t) {
  return std::exp(-0.5 * t * t) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

std::vector<SignPattern> rademacher_patterns(bool symmetric) {
  std::vector<SignPattern> out;
  const double weight = symmetric ? 0.25 : 0.125;
  for (double x : {-1.0, 1.0}) {
    for (double y : {-1.0, 1.0}) {
      for (double z : {-1.0, 1.0}) {
        if (symmetric && z != y) continue;
        const RealizedTriple t{x, y, z};
        if (symmetric) {
          out.push_back({t, weight, closedform::boundary_values_symmetric(x, y),
                         closedform::limit_extremes_symmetric(x, y)});
        } else {
          out.push_back({t, weight, closedform::boundary_values_nonsymmetric(t),
                         closedform::limit_extremes_nonsymmetric(t)});
        }
      }
    }
  }
  return out;
}

Estimate vmax_cdf(LimitLaw law, double y) {
  if (is_discrete(law)) {
    return {enumerated_probability(law, [y](const SignPattern& s) { return s.limit.hi() <= y; }), 0.0};
  }
  if (!(y > 0.0)) return {0.0, 0.0};

  switch (law) {
    case LimitLaw::GaussianSym: {
      // 2 int_0^{y/2} [Phi(y - 2v) - Phi(-y + 2v)] phi(v) dv
      auto f = [y](double v) {
        return 2.0 * (std_normal_cdf(y - 2.0 * v) - std_normal_cdf(-y + 2.0 * v)) * std_normal_pdf(v);
      };
      const double upper = std::min(0.5 * y, kGaussianSupport);
      const auto r = require(q::integrate_finite(f, 0.0, upper, kTol1d), "GaussianSym vmax_cdf");
      return {std::clamp(r.value, 0.0, 1.0), r.abs_error_estimate};
    }
    case LimitLaw::CauchySym: {
      // (4/pi^2) int_0^{y/2} int_0^{y-2v} 1/((1+t^2)(1+v^2)) dt dv, both
      // levels in the angle variables t = tan(a), v = tan(b).
      InnerLog log;
      auto outer = [&](double b) {
        const double v = std::tan(b);
        auto inner = [](double) { return 1.0; };
        const double in = log.take(q::integrate_finite(inner, 0.0, std::atan(y - 2.0 * v), kVmaxInnerTol),
                                   "CauchySym vmax_cdf inner");
        return 4.0 / (pi * pi) * in;
      };
      const auto r = require(q::integrate_finite(outer, 0.0, std::atan(0.5 * y), kVmaxOuterTol),
                             "CauchySym vmax_cdf");
      log.check();
      return {std::clamp(r.value, 0.0, 1.0), r.abs_error_estimate + log.max_error};
    }
    case LimitLaw::GaussianNonsym: {
      // 2 int_0^y [F(((y-v)/2)^2) + F((y^2-v^2)/4)] phi(v) dv,  F(T) = int_0^T f_YZ
      InnerLog log;
      auto outer = [&](double v) {
        const double a = 0.5 * (y - v);
        const double b = 0.25 * (y * y - v * v);
        auto half_cdf = [&](double upper) {
          auto r = q::integrate_with_integrable_singularity(product_normal_density_bessel, 0.0,
                                                            std::min(upper, kProductSupport), 0.0, kVmaxInnerTol);
          return log.take(r, "GaussianNonsym vmax_cdf inner");
        };
        return 2.0 * (half_cdf(a * a) + half_cdf(b)) * std_normal_pdf(v);
      };
      const auto r = require(q::integrate_finite(outer, 0.0, std::min(y, kGaussianSupport), kVmaxOuterTol),
                             "GaussianNonsym vmax_cdf");
      log.check();
      return {std::clamp(r.value, 0.0, 1.0), r.abs_error_estimate + 2.0 * log.max_error};
    }
    default:
      break;
  }
  throw Error(ErrorKind::Unsupported, "vmax_cdf: unsupported law");
}

double gaussian_sym_constant_closed_form() { return (pi + std::atan(24.0 / 7.0)) / (2.0 * pi); }

Estimate gaussian_sym_constant_quadrature() {
  // 4 int_0^inf [Phi(2v) - Phi(0)] phi(v) dv
  auto f = [](double v) { return 4.0 * (std_normal_cdf(2.0 * v) - std_normal_cdf(0.0)) * std_normal_pdf(v); };
  const auto r = require(q::integrate_semi_infinite(f, 0.0, 1e-12), "GaussianSym constant");
  return {r.value, r.abs_error_estimate};
}

Estimate cauchy_sym_constant_quadrature() {
  // (4/pi^2) int_0^inf atan(2v)/(1+v^2) dv
  auto f = [](double v) { return 4.0 / (pi * pi) * std::atan(2.0 * v) / (1.0 + v * v); };
  const auto r = require(q::integrate_semi_infinite(f, 0.0, kTol1d), "CauchySym constant");
  return {r.value, r.abs_error_estimate};
}

Estimate gaussian_nonsym_constant_quadrature() {
  // 2 int_0^inf Phi(2 sqrt t) f_YZ(t) dt - 1/2
  auto f = [](double t) { return 2.0 * std_normal_cdf(2.0 * std::sqrt(t)) * product_normal_density(t); };
  const q::QuadratureResult r = integrate_half_line_singular(f, 1e-9);
  require(r, "GaussianNonsym constant");
  return {r.value - 0.5, r.abs_error_estimate};
}

ConstantReport singularity_constant(LimitLaw law) {
  switch (law) {
    case LimitLaw::RademacherSym:
    case LimitLaw::RademacherNonsym:
      return {law, "enumeration",
              enumerated_probability(law, [](const SignPattern& s) { return s.limit.lo() == 0.0; }), 0.0};
    case LimitLaw::GaussianSym: {
      const double closed = gaussian_sym_constant_closed_form();
      const Estimate quad = gaussian_sym_constant_quadrature();
      if (std::abs(closed - quad.value) > kGaussianConstantAgreement) {
        throw Error(ErrorKind::InternalInconsistency,
                    "GaussianSym constant: closed form " + format_double(closed) + " vs quadrature " +
                        format_double(quad.value));
      }
      return {law, "closed-form", closed, 0.0};
    }
    case LimitLaw::CauchySym: {
      const Estimate e = cauchy_sym_constant_quadrature();
      return {law, "quadrature", e.value, e.abs_error};
    }
    case LimitLaw::GaussianNonsym: {
      const Estimate e = gaussian_nonsym_constant_quadrature();
      return {law, "quadrature", e.value, e.abs_error};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown limit law");
}

Estimate wmin_conditional_density(LimitLaw law, double w) {
  require_continuous(law, "wmin_conditional_density");
  if (!(w > 0.0)) return {0.0, 0.0};
  switch (law) {
    case LimitLaw::GaussianSym: {
      // (4/(1-c0)) int_0^inf phi(w+2v) phi(v) dv
      const double scale = 4.0 / (1.0 - c0());
      auto f = [&](double v) { return scale * std_normal_pdf(w + 2.0 * v) * std_normal_pdf(v); };
      const auto r = require(q::integrate_semi_infinite(f, 0.0, kTol1d), "GaussianSym density");
      return {r.value, r.abs_error_estimate};
    }
    case LimitLaw::CauchySym: {
      // (4/(pi^2 (1-c2))) int_0^inf 1/((1+v^2)(1+(w+2v)^2)) dv, with v = tan(b)
      const double scale = 4.0 / (pi * pi * (1.0 - c2()));
      const auto r = require(q::integrate_finite(
                                 [&](double b) { return scale * cauchy_kernel(w, std::tan(b)); }, 0.0,
                                 0.5 * pi, kTol1d),
                             "CauchySym density");
      return {r.value, r.abs_error_estimate};
    }
    case LimitLaw::GaussianNonsym: {
      // (1/(1-c1)) [phi(w) + 2 int_0^inf phi(w + 2 sqrt t) f_YZ(t) dt]
      const double scale = 1.0 / (1.0 - c1());
      auto f = [&](double t) { return 2.0 * std_normal_pdf(w + 2.0 * std::sqrt(t)) * product_normal_density_bessel(t); };
      const q::QuadratureResult r = integrate_half_line_singular(f, kTol1d);
      require(r, "GaussianNonsym density");
      return {scale * (std_normal_pdf(w) + r.value), scale * r.abs_error_estimate};
    }
    default:
      break;
  }
  throw Error(ErrorKind::Unsupported, "wmin_conditional_density: unsupported law");
}

std::vector<Atom> wmin_conditional_atoms(LimitLaw law) {
  if (law != LimitLaw::RademacherNonsym) {
    throw Error(ErrorKind::Unsupported, "conditional atoms exist only for RademacherNonsym; got " + to_string(law));
  }
  std::vector<Atom> atoms;
  double positive = 0.0;
  for (const auto& s : rademacher_patterns(false)) {
    if (s.limit.lo() == 0.0) continue;
    positive += s.probability;
    auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.value == s.limit.lo(); });
    if (it == atoms.end()) {
      atoms.push_back({s.limit.lo(), s.probability});
    } else {
      it->probability += s.probability;
    }
  }
  for (Atom& a : atoms) a.probability /= positive;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.value < r.value; });
  return atoms;
}

double product_normal_density(double t) {
  if (t == 0.0) throw Error(ErrorKind::DomainError, "product-normal density diverges at t = 0");
  if (!std::isfinite(t)) throw Error(ErrorKind::DomainError, "product-normal density needs finite t");
  const double at = std::abs(t);
  const double lower = std::sqrt(at);
  auto g = [at](double s) { return std::exp(-0.5 * (s * s + (at / s) * (at / s))) / s; };
  // int_V^inf (1/s) exp(-s^2/2) ds <= exp(-V^2/2) / V^2
  auto tail = [](double v) { return std::exp(-0.5 * v * v) / (v * v); };
  const double peak = g(lower);
  // K0(|t|) ~ exp(-|t|): below the double range past |t| ~ 745.
  if (peak == 0.0) return 0.0;
  const double tol = 1e-13 * peak * std::max(1.0, lower);
  const auto r = require(q::integrate_semi_infinite(g, lower, tol, tail), "product_normal_density");
  return 2.0 / pi * r.value;
}

double product_normal_density_bessel(double t) {
  if (t == 0.0) throw Error(ErrorKind::DomainError, "product-normal density diverges at t = 0");
  // K0(700) ~ 1e-305; libstdc++ throws instead of underflowing further out.
  if (std::abs(t) > 700.0) return 0.0;
  return std::cyl_bessel_k(0.0, std::abs(t)) / pi;
}

Estimate product_normal_half_cdf(double upper) {
  if (!(upper > 0.0)) return {0.0, 0.0};
  const auto r = q::integrate_with_integrable_singularity(product_normal_density_bessel, 0.0,
                                                          std::min(upper, kProductSupport), 0.0, kTol1d);
  require(r, "product_normal_half_cdf");
  return {r.value, r.abs_error_estimate};
}

Estimate kappa_cdf(LimitLaw law, double z) {
  if (law == LimitLaw::RademacherSym) {
    throw Error(ErrorKind::Unsupported, "kappa_cdf: RademacherSym is singular almost surely");
  }
  if (!(z >= 0.0)) throw Error(ErrorKind::InvalidArgument, "kappa_cdf needs z >= 0");
  if (law == LimitLaw::RademacherNonsym) {
    double positive = 0.0;
    double below = 0.0;
    for (const auto& s : rademacher_patterns(false)) {
      if (s.limit.lo() == 0.0) continue;
      positive += s.probability;
      if (condition_number(s.limit).as_double() <= z) below += s.probability;
    }
    return {below / positive, 0.0};
  }
  // kappa >= 1, and kappa = 1 needs V = W, a null event.
  if (z <= 1.0) return {0.0, 0.0};

  // Given W = w > 0 the maximum is w + 4u, where u = |Y| (symmetric) or
  // sqrt(YZ) (non-symmetric, YZ > 0); kappa <= z cuts the u-range of the
  // density integral at (z - 1) w / 4.
  const double cut = 0.25 * (z - 1.0);
  InnerLog log;
  switch (law) {
    case LimitLaw::GaussianSym: {
      const double scale = 4.0 / (1.0 - c0());
      auto outer = [&](double w) {
        auto inner = [w](double v) { return std_normal_pdf(w + 2.0 * v) * std_normal_pdf(v); };
        return scale * log.take(q::integrate_finite(inner, 0.0, std::min(cut * w, kGaussianSupport), kKappaInnerTol),
                                "GaussianSym kappa inner");
      };
      const auto r = require(q::integrate_semi_infinite(outer, 0.0, kKappaOuterTol), "GaussianSym kappa_cdf");
      log.check();
      return {std::clamp(r.value, 0.0, 1.0), r.abs_error_estimate + scale * log.max_error};
    }
    case LimitLaw::CauchySym: {
      const double scale = 4.0 / (pi * pi * (1.0 - c2()));
      auto outer = [&](double w) {
        auto inner = [w](double b) { return cauchy_kernel(w, std::tan(b)); };
        return scale * log.take(q::integrate_finite(inner, 0.0, std::atan(cut * w), kKappaInnerTol),
                                "CauchySym kappa inner");
      };
      const auto r = require(q::integrate_semi_infinite(outer, 0.0, kKappaOuterTol), "CauchySym kappa_cdf");
      log.check();
      return {std::clamp(r.value, 0.0, 1.0), r.abs_error_estimate + scale * log.max_error};
    }
    case LimitLaw::GaussianNonsym: {
      // YZ < 0: W = |X| = w and V = sqrt(w^2 + 4|YZ|) <= z w iff |YZ| <= (z^2 - 1) w^2 / 4.
      // YZ > 0: |X| = w + 2 sqrt(t), V = w + 4 sqrt(t) <= z w iff t <= (cut w)^2.
      const double scale = 1.0 / (1.0 - c1());
      auto outer = [&](double w) {
        const double negative_cap = std::min(0.25 * (z * z - 1.0) * w * w, kProductSupport);
        double negative = 0.0;
        if (negative_cap > 0.0) {
          negative = log.take(q::integrate_with_integrable_singularity(product_normal_density_bessel, 0.0,
                                                                       negative_cap, 0.0, kKappaInnerTol),
                              "GaussianNonsym kappa YZ<0");
        }
        const double positive_cap = std::min((cut * w) * (cut * w), kProductSupport);
        double positive = 0.0;
        if (positive_cap > 0.0) {
          auto inner = [w](double t) {
            return std_normal_pdf(w + 2.0 * std::sqrt(t)) * product_normal_density_bessel(t);
          };
          positive = log.take(q::integrate_with_integrable_singularity(inner, 0.0, positive_cap, 0.0,
                                                                       kKappaInnermostTol),
                              "GaussianNonsym kappa YZ>0");
        }
        return scale * (2.0 * std_normal_pdf(w) * negative + 2.0 * positive);
      };
      const auto r = require(q::integrate_semi_infinite(outer, 0.0, kKappaOuterTol), "GaussianNonsym kappa_cdf");
      log.check();
      return {std::clamp(r.value, 0.0, 1.0), r.abs_error_estimate + 2.0 * scale * log.max_error};
    }
    default:
      break;
  }
  throw Error(ErrorKind::Unsupported, "kappa_cdf: unsupported law");
}

namespace {

// The subtracted events are disjoint subsets of {M <= y}.
bool indicator_value(int value) {
  if (value != 0 && value != 1) {
    throw Error(ErrorKind::InternalInconsistency, "limit-law indicator outside {0, 1}");
  }
  return value == 1;
}

}  // namespace

bool theorem_indicator(const RealizedTriple& t, bool symmetric, double x, double y) {
  if (symmetric) {
    // P{M <= y} - P{x < 0 <= M <= y, -X/|Y| in [-2,2]} - P{x < m <= M <= y, -X/|Y| not in [-2,2]}
    const auto [m, M] = closedform::boundary_values_symmetric(t.x, t.y);
    const bool inside = std::abs(t.x) <= 2.0 * std::abs(t.y);
    const int value = int{M <= y} - int{inside && x < 0.0 && 0.0 <= M && M <= y} -
                      int{!inside && x < m && m <= M && M <= y};
    return indicator_value(value);
  }
  const double p = t.y * t.z;
  const auto [mu, M] = closedform::boundary_values_nonsymmetric(t);
  const double ax = std::abs(t.x);
  const bool zero_inside = p > 0.0 && ax <= 2.0 * std::sqrt(p);
  const int value = int{M <= y} - int{p == 0.0 && x < ax && ax <= y} -
                    int{zero_inside && x < 0.0 && 0.0 <= M && M <= y} -
                    int{p > 0.0 && !zero_inside && x < mu && mu <= M && M <= y} -
                    int{p < 0.0 && x < ax && ax <= M && M <= y};
  return indicator_value(value);
}

double theorem_joint_cdf(const EntryDistribution& dist, double x, double y, std::int64_t samples,
                         std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "theorem_joint_cdf needs samples >= 1");
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    if (theorem_indicator(montecarlo::trial_triple(dist, seed, i), dist.symmetric(), x, y)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace tridiag::analytic
