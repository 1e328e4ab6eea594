#pragma once

// Pieces shared by the material-point models: coordinate naming, tensor
// flattening, time-function channels and the model error types.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctherm/expr.hpp"

namespace ctherm::material {

/// dU/deps vanished: temperature is undefined.
class TemperatureSingularity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The trajectory left the model domain (det F <= 0 or a potential domain
/// error) during a step. `time` is the start of the failing step.
class DomainExit : public std::runtime_error {
 public:
  DomainExit(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// prefix11, prefix12, ..., prefix33 (row-major).
std::vector<std::string> tensor_names(const std::string& prefix);
/// prefix1, prefix2, prefix3.
std::vector<std::string> vector_names(const std::string& prefix);

/// Row-major copy of a 3x3 matrix into out[0..8] and back.
void flatten(const Eigen::Matrix3d& m, double* out);
Eigen::Matrix3d unflatten(const double* in);

/// A scalar function of time given as an expression in t.
class TimeFunction {
 public:
  TimeFunction();  // identically 0
  explicit TimeFunction(expr::Expression e);
  static TimeFunction parse(const std::string& text);

  double operator()(double t) const;
  const expr::Expression& expression() const noexcept { return f_.expression(); }
  bool is_zero() const;

 private:
  expr::ScalarField f_;
};

using TimeVector = std::array<TimeFunction, 3>;
using TimeTensor = std::array<TimeFunction, 9>;  // row-major

Eigen::Vector3d evaluate(const TimeVector& v, double t);
Eigen::Matrix3d evaluate(const TimeTensor& m, double t);

}  // namespace ctherm::material
