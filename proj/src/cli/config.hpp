#pragma once

// Strict reader for JSON run configs. Every object is checked against its
// list of allowed keys before anything is computed.

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctherm/cli.hpp"
#include "ctherm/expr.hpp"
#include "ctherm/geometry.hpp"
#include "ctherm/material.hpp"
#include "ctherm/processes.hpp"
#include "ctherm/sampling.hpp"

namespace ctherm::cli {

using json = nlohmann::ordered_json;

/// A JSON value together with its dotted path.
class Node {
 public:
  Node(const json& value, std::string path) : j_(&value), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }
  const json& raw() const noexcept { return *j_; }

  /// Requires an object whose keys are all in `allowed`.
  const Node& object(std::initializer_list<const char*> allowed) const;

  bool has(const std::string& key) const;
  Node at(const std::string& key) const;  // required member
  std::optional<Node> find(const std::string& key) const;
  std::vector<Node> items() const;  // array elements
  std::vector<std::pair<std::string, Node>> entries() const;  // object members in order

  double number() const;
  std::size_t count() const;  // non-negative integer
  std::string string() const;
  bool boolean() const;
  std::vector<double> numbers(std::optional<std::size_t> size = std::nullopt) const;
  std::vector<std::string> strings() const;
  /// Expression text, or a bare number.
  expr::Expression expression() const;
  /// Expression compiled over `coords`; unbound names are reported at this path.
  expr::ScalarField field(const std::vector<std::string>& coords) const;

  double number_or(const std::string& key, double fallback) const;
  std::size_t count_or(const std::string& key, std::size_t fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::string child(const std::string& key) const;

  const json* j_;
  std::string path_;
};

json load_document(const std::filesystem::path& file);

geometry::ContactChart read_chart(const Node& n);

struct FormSpec {
  geometry::OneForm form;
  std::optional<expr::Expression> potential;  // set for potential-generated forms
};
FormSpec read_form(const Node& n);

struct Sampling {
  sampling::Box box;
  std::size_t count = 64;
  std::uint64_t seed = 0;
};
/// Box over `names`: per-name bounds from "box", falling back to "default".
Sampling read_sampling(const Node& n, const std::vector<std::string>& names);

struct Grid {
  std::vector<std::string> names;
  std::vector<std::vector<double>> axes;
  /// Tensor-product points, last name varying fastest.
  std::vector<std::vector<double>> points() const;
};
/// {"name": [lo, hi, count], ...} with exactly `names` as keys.
Grid read_grid(const Node& n, const std::vector<std::string>& names);

/// {"file": "curve.csv"} (columns t, names...) or
/// {"parametric": {"t0", "t1", "n", "q": {name: expr of t}}}.
processes::ProcessCurve read_curve(const Node& n, const std::filesystem::path& base);

processes::ProcessCurve read_curve_csv(const std::filesystem::path& file);

material::TimeFunction read_time_function(const Node& n);
material::TimeVector read_time_vector(const Node& n);
material::TimeTensor read_time_tensor(const Node& n);

}  // namespace ctherm::cli
