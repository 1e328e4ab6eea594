#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ctherm/expr.hpp"

namespace ctherm::sampling {

/// Axis-aligned box over named coordinates.
struct Box {
  std::vector<std::string> names;
  std::vector<std::pair<double, double>> bounds;

  void add(std::string name, double lo, double hi);
  std::size_t dimension() const { return names.size(); }
};

/// `count` Sobol points in the box. seed 0 gives the plain sequence; any
/// other seed applies a random shift modulo 1 (Cranley-Patterson rotation)
/// drawn from a generator seeded with it.
std::vector<std::vector<double>> low_discrepancy(const Box& box, std::size_t count, std::uint64_t seed = 0);

std::vector<expr::Binding> low_discrepancy_bindings(const Box& box, std::size_t count, std::uint64_t seed = 0);

}  // namespace ctherm::sampling
