#include "ctherm/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>
#include <fmt/format.h>

namespace ctherm::sampling {

void Box::add(std::string name, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument(fmt::format("Box: empty interval for '{}'", name));
  names.push_back(std::move(name));
  bounds.emplace_back(lo, hi);
}

std::vector<std::vector<double>> low_discrepancy(const Box& box, std::size_t count, std::uint64_t seed) {
  const std::size_t dim = box.dimension();
  if (dim == 0) throw std::invalid_argument("low_discrepancy: empty box");
  if (box.bounds.size() != dim) throw std::invalid_argument("low_discrepancy: malformed box");

  std::vector<double> shift(dim, 0.0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift) s = u(rng);
  }

  boost::random::sobol qrng(dim);
  qrng.discard(dim);  // skip the all-zero first point
  boost::random::uniform_01<double> unit;
  std::vector<std::vector<double>> out(count, std::vector<double>(dim));
  for (auto& point : out) {
    for (std::size_t k = 0; k < dim; ++k) {
      double u = unit(qrng) + shift[k];
      u -= std::floor(u);
      const auto [lo, hi] = box.bounds[k];
      point[k] = lo + (hi - lo) * u;
    }
  }
  return out;
}

std::vector<expr::Binding> low_discrepancy_bindings(const Box& box, std::size_t count, std::uint64_t seed) {
  std::vector<expr::Binding> out;
  for (auto& p : low_discrepancy(box, count, seed)) out.emplace_back(box.names, std::move(p));
  return out;
}

}  // namespace ctherm::sampling
