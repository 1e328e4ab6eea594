#pragma once

// Standard contact chart on R^{2n+1} with form ds - sum_i p_i dq^i, Reeb flow,
// 1-forms over named coordinates and their closeness tests.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctherm/expr.hpp"

namespace ctherm::geometry {

/// Coordinates ordered (s; q^1..q^n; p_1..p_n). The contact form is implied
/// by the chart and never stored.
class ContactChart {
 public:
  ContactChart(std::string potential, std::vector<std::string> q, std::vector<std::string> p,
               bool time_extended = false);

  /// s; q1..qn; p1..pn
  static ContactChart canonical(std::size_t n, bool time_extended = false);

  std::size_t n() const noexcept { return q_.size(); }
  std::size_t dimension() const noexcept { return 2 * q_.size() + 1; }
  const std::string& potential_name() const noexcept { return s_; }
  const std::vector<std::string>& q_names() const noexcept { return q_; }
  const std::vector<std::string>& p_names() const noexcept { return p_; }
  std::vector<std::string> coordinate_names() const;

  /// The last extensive slot is time t.
  bool time_extended() const noexcept { return time_extended_; }

  static constexpr std::size_t s_index() { return 0; }
  std::size_t q_index(std::size_t i) const { return 1 + i; }
  std::size_t p_index(std::size_t i) const { return 1 + n() + i; }

 private:
  std::string s_;
  std::vector<std::string> q_;
  std::vector<std::string> p_;
  bool time_extended_;
};

/// A point of the chart, coordinates in chart order.
struct PhasePoint {
  std::vector<double> coords;

  double s() const { return coords.at(0); }
  double q(const ContactChart& c, std::size_t i) const { return coords.at(c.q_index(i)); }
  double p(const ContactChart& c, std::size_t i) const { return coords.at(c.p_index(i)); }

  static PhasePoint from_binding(const ContactChart& chart, const expr::Binding& b);
  expr::Binding to_binding(const ContactChart& chart) const;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// theta(x)(v) = v_s - sum_i p_i(x) v_{q^i}
double contact_eval(const ContactChart& chart, const PhasePoint& x, std::span<const double> v);

/// Flow of the Reeb field d/ds: only s moves.
PhasePoint reeb_flow(const PhasePoint& x, double tau);

Eigen::VectorXd reeb_field(const ContactChart& chart);

/// d(theta) = sum_i dq^i ^ dp_i as an antisymmetric matrix in chart order
/// (constant on the chart).
Eigen::MatrixXd contact_differential(const ContactChart& chart);

/// Columns {d/dp_i} then {d/dq^i + p_i d/ds}: a basis of ker theta at x.
Eigen::MatrixXd horizontal_basis(const ContactChart& chart, const PhasePoint& x);

/// det of d(theta) restricted to ker theta; nonzero iff the contact condition
/// holds at x.
double contact_nondegeneracy(const ContactChart& chart, const PhasePoint& x);

/// sum_i a_i dx^i over an ordered coordinate list. Coefficients may depend on
/// any of the coordinates.
class OneForm {
 public:
  OneForm(std::vector<std::string> coordinates, std::vector<expr::Expression> coefficients);

  /// dU, coefficients built symbolically from U.
  static OneForm exact(const expr::Expression& potential, std::vector<std::string> coordinates);

  const std::vector<std::string>& coordinates() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  const expr::ScalarField& coefficient(std::size_t i) const { return fields_.at(i); }
  const std::vector<expr::ScalarField>& coefficients() const noexcept { return fields_; }

  Eigen::VectorXd evaluate(std::span<const double> x) const;
  /// J(i, j) = d a_i / d x^j
  Eigen::MatrixXd jacobian(std::span<const double> x) const;

  /// Values of the coordinates, in form order, from a binding that contains
  /// all of them (extra names are ignored).
  std::vector<double> point_from(const expr::Binding& b) const;

 private:
  std::vector<std::string> coords_;
  std::vector<expr::ScalarField> fields_;
};

/// C_ij = d a_i/d x^j - d a_j/d x^i; each unordered pair is computed once, so
/// C is exactly antisymmetric.
Eigen::MatrixXd d_residual(const OneForm& form, std::span<const double> x);
Eigen::MatrixXd d_residual(const OneForm& form, const expr::Binding& x);

struct ClosenessReport {
  bool closed = true;
  double max_residual = 0.0;
  std::size_t worst_i = 0;  // coordinate pair of the largest |C_ij|
  std::size_t worst_j = 0;
  std::size_t worst_sample = 0;
};

inline constexpr double kDefaultClosenessTol = 1e-8;

ClosenessReport is_closed(const OneForm& form, const std::vector<std::vector<double>>& sample,
                          double tol = kDefaultClosenessTol);
ClosenessReport is_closed(const OneForm& form, const std::vector<expr::Binding>& sample,
                          double tol = kDefaultClosenessTol);

struct PotentialReconstruction {
  double value = 0.0;          // line integral base -> target, axis order
  double path_residual = 0.0;  // |value - integral along the reversed axis order|
};

/// Line integral along the axis-ordered staircase from base to target with
/// 32-node Gauss-Legendre per leg; U(base) = 0.
PotentialReconstruction reconstruct_potential(const OneForm& form, const expr::Binding& base,
                                              const expr::Binding& target);

}  // namespace ctherm::geometry
