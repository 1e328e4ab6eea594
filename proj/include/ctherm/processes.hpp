#pragma once

// Sampled process curves: entropy action integrals, admissibility of curves
// on constitutive surfaces, the thermodynamic metric and the rate relation.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctherm/expr.hpp"
#include "ctherm/geometry.hpp"
#include "ctherm/legendre.hpp"

namespace ctherm::processes {

/// Samples (t_i, q_i) over named base coordinates with strictly increasing t.
class ProcessCurve {
 public:
  ProcessCurve(std::vector<std::string> names, std::vector<double> times, std::vector<std::vector<double>> points);

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return times_.size(); }
  std::size_t dimension() const noexcept { return names_.size(); }
  double time(std::size_t i) const { return times_.at(i); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& point(std::size_t i) const { return points_.at(i); }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }
  expr::Binding binding(std::size_t i) const;

  /// The inverse process: t -> -t, samples in reverse order.
  ProcessCurve reversed() const;

  /// dq/dt at sample i: (q_{i+1} - q_{i-1}) / (t_{i+1} - t_{i-1}) inside,
  /// one-sided at the two ends.
  std::vector<double> tangent(std::size_t i) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<double>> points_;
};

/// Builds a curve by sampling q(t) at n + 1 uniform times on [t0, t1].
ProcessCurve sample_curve(std::vector<std::string> names, double t0, double t1, std::size_t n,
                          const std::function<std::vector<double>(double)>& q);

inline constexpr int kDefaultActionNodes = 8;

/// Integral of the form along the piecewise-linear curve, Gauss-Legendre on
/// every interval. Form coordinates are matched to curve names; a form
/// coordinate named t that is not on the curve follows the curve time.
double entropy_action(const ProcessCurve& curve, const geometry::OneForm& eta, int nodes = kDefaultActionNodes);

inline constexpr double kDefaultAdmissibilityTol = 1e-9;

struct AdmissibilityReport {
  std::vector<double> rates;  // d sigma(q_i)(q'_i), one per sample
  bool admissible = true;
  std::vector<std::size_t> violations;  // samples with rate < -tol
  bool endpoints_included = false;
  double delta_sigma = 0.0;
  double delta_U = 0.0;
  double delta_s = 0.0;  // delta_U + delta_sigma
};

AdmissibilityReport admissibility(const legendre::ConstitutiveSurface& surface, const ProcessCurve& curve,
                                  double tol = kDefaultAdmissibilityTol, bool include_endpoints = false);

/// Entropy change along the lifted curve by quadrature, split into the
/// integral of the pulled-back contact form and of p dq.
struct LiftedEntropyChange {
  double contact_part = 0.0;
  double pdq_part = 0.0;
  double total() const { return contact_part + pdq_part; }
};

LiftedEntropyChange lifted_entropy_change(const legendre::ConstitutiveSurface& surface, const ProcessCurve& curve,
                                          int nodes = kDefaultActionNodes);

/// Hessian of U at q (q in U's coordinate order).
Eigen::MatrixXd thermo_metric(const expr::ScalarField& U, std::span<const double> q);

inline constexpr double kDegenerateDet = 1e-12;

struct Godograph {
  double det = 0.0;
  bool degenerate = false;  // |det| < 1e-12
};

Godograph godograph_det(const expr::ScalarField& U, std::span<const double> q);

/// Sign changes of f on [lo, hi]: scan on `samples` uniform cells, then
/// bisect every bracketing cell down to width xtol. Returns bracket midpoints.
std::vector<double> sign_changes(const std::function<double(double)>& f, double lo, double hi, std::size_t samples,
                                 double xtol);

/// Residual of dp_i/dt = U_{,q^i q^j} dq^j/dt + U_{,q^i t} at every interior
/// sample (max-abs over i), with p = dU/dq along the curve and both time
/// derivatives taken by central differences. U may depend on t.
std::vector<double> rate_relation_residual(const expr::ScalarField& U, const ProcessCurve& curve);

}  // namespace ctherm::processes
