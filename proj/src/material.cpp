#include "ctherm/material.hpp"

#include <fmt/format.h>

namespace ctherm::material {

std::vector<std::string> tensor_names(const std::string& prefix) {
  std::vector<std::string> out;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) out.push_back(fmt::format("{}{}{}", prefix, i, j));
  return out;
}

std::vector<std::string> vector_names(const std::string& prefix) {
  return {prefix + "1", prefix + "2", prefix + "3"};
}

void flatten(const Eigen::Matrix3d& m, double* out) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = m(i, j);
}

Eigen::Matrix3d unflatten(const double* in) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = in[3 * i + j];
  return m;
}

TimeFunction::TimeFunction() : f_(expr::Expression(), {"t"}) {}

TimeFunction::TimeFunction(expr::Expression e) : f_(std::move(e), {"t"}) {}

TimeFunction TimeFunction::parse(const std::string& text) { return TimeFunction(expr::Expression::parse(text)); }

double TimeFunction::operator()(double t) const { return f_.value(std::span<const double>(&t, 1)); }

bool TimeFunction::is_zero() const {
  const auto v = f_.expression().literal_value();
  return v && *v == 0.0;
}

Eigen::Vector3d evaluate(const TimeVector& v, double t) { return {v[0](t), v[1](t), v[2](t)}; }

Eigen::Matrix3d evaluate(const TimeTensor& m, double t) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m[static_cast<std::size_t>(3 * i + j)](t);
  return out;
}

}  // namespace ctherm::material
