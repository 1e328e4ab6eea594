#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ctherm/ferroelectric.hpp"
#include "ctherm/thermoelastic.hpp"

namespace ctherm::cli {

using expr::Expression;

std::string Node::child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

void Node::fail(const std::string& message) const { throw ConfigError(path_, message); }

const Node& Node::object(std::initializer_list<const char*> allowed) const {
  if (!j_->is_object()) fail(fmt::format("expected an object, got {}", j_->type_name()));
  for (const auto& [key, value] : j_->items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError(child(key), "unknown key");
  }
  return *this;
}

bool Node::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

Node Node::at(const std::string& key) const {
  if (!j_->is_object()) fail(fmt::format("expected an object, got {}", j_->type_name()));
  const auto it = j_->find(key);
  if (it == j_->end()) throw ConfigError(child(key), "missing required key");
  return Node(*it, child(key));
}

std::optional<Node> Node::find(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

std::vector<Node> Node::items() const {
  if (!j_->is_array()) fail(fmt::format("expected an array, got {}", j_->type_name()));
  std::vector<Node> out;
  for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], fmt::format("{}[{}]", path_, i));
  return out;
}

std::vector<std::pair<std::string, Node>> Node::entries() const {
  if (!j_->is_object()) fail(fmt::format("expected an object, got {}", j_->type_name()));
  std::vector<std::pair<std::string, Node>> out;
  for (const auto& [key, value] : j_->items()) out.emplace_back(key, Node(value, child(key)));
  return out;
}

double Node::number() const {
  if (!j_->is_number()) fail(fmt::format("expected a number, got {}", j_->type_name()));
  return j_->get<double>();
}

std::size_t Node::count() const {
  if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<long long>() >= 0))
    fail("expected a non-negative integer");
  return j_->get<std::size_t>();
}

std::string Node::string() const {
  if (!j_->is_string()) fail(fmt::format("expected a string, got {}", j_->type_name()));
  return j_->get<std::string>();
}

bool Node::boolean() const {
  if (!j_->is_boolean()) fail(fmt::format("expected true or false, got {}", j_->type_name()));
  return j_->get<bool>();
}

std::vector<double> Node::numbers(std::optional<std::size_t> size) const {
  const auto xs = items();
  if (size && xs.size() != *size) fail(fmt::format("expected {} numbers, got {}", *size, xs.size()));
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(x.number());
  return out;
}

std::vector<std::string> Node::strings() const {
  std::vector<std::string> out;
  for (const auto& x : items()) out.push_back(x.string());
  return out;
}

Expression Node::expression() const {
  if (j_->is_number()) return Expression::constant(j_->get<double>());
  try {
    return Expression::parse(string());
  } catch (const expr::ParseError& e) {
    fail(e.what());
  }
}

expr::ScalarField Node::field(const std::vector<std::string>& coords) const {
  try {
    return expr::ScalarField(expression(), coords);
  } catch (const expr::BindError& e) {
    fail(e.what());
  }
}

double Node::number_or(const std::string& key, double fallback) const {
  const auto n = find(key);
  return n ? n->number() : fallback;
}

std::size_t Node::count_or(const std::string& key, std::size_t fallback) const {
  const auto n = find(key);
  return n ? n->count() : fallback;
}

bool Node::boolean_or(const std::string& key, bool fallback) const {
  const auto n = find(key);
  return n ? n->boolean() : fallback;
}

json load_document(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("", fmt::format("cannot open config '{}'", file.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", fmt::format("'{}' is not valid JSON: {}", file.string(), e.what()));
  }
}

geometry::ContactChart read_chart(const Node& n) {
  n.object({"n", "q", "p", "s", "time_extended"});
  if (n.has("n") == n.has("q")) n.fail("give exactly one of 'n' or 'q'");
  try {
    if (n.has("n")) {
      for (const char* key : {"p", "s"})
        if (n.has(key)) n.at(key).fail("not allowed together with 'n'");
      return geometry::ContactChart::canonical(n.at("n").count(), n.boolean_or("time_extended", false));
    }
    if (n.has("time_extended")) n.at("time_extended").fail("only allowed together with 'n'");
    const auto q = n.at("q").strings();
    std::vector<std::string> p;
    if (const auto pn = n.find("p")) {
      p = pn->strings();
    } else {
      for (const auto& name : q) p.push_back("p_" + name);
    }
    const auto s = n.find("s");
    return geometry::ContactChart(s ? s->string() : "s", q, p);
  } catch (const std::invalid_argument& e) {
    n.fail(e.what());
  }
}

FormSpec read_form(const Node& n) {
  n.object({"model", "coordinates", "potential", "coefficients", "rho"});
  if (n.has("model") == n.has("coordinates")) n.fail("give exactly one of 'model' or 'coordinates'");
  if (n.has("potential") == n.has("coefficients")) n.fail("give exactly one of 'potential' or 'coefficients'");

  std::string model;
  std::vector<std::string> coords;
  if (const auto m = n.find("model")) {
    model = m->string();
    if (model == "thermoelastic") coords = thermoelastic::base_coordinates();
    else if (model == "ferroelectric") coords = ferroelectric::base_coordinates();
    else m->fail(fmt::format("unknown model '{}' (thermoelastic, ferroelectric)", model));
  } else {
    coords = n.at("coordinates").strings();
    if (n.has("rho")) n.at("rho").fail("only allowed together with 'model'");
  }
  const double rho = n.number_or("rho", 1.0);
  if (!(rho > 0)) n.at("rho").fail("must be positive");

  auto build = [&](auto&& make) -> geometry::OneForm {
    try {
      return make();
    } catch (const expr::BindError& e) {
      n.fail(e.what());
    } catch (const std::invalid_argument& e) {
      n.fail(e.what());
    }
  };

  if (const auto p = n.find("potential")) {
    const Expression U = p->expression();
    // every name in U must be a coordinate
    p->field(coords);
    if (model == "thermoelastic")
      return {build([&] { return thermoelastic::entropy_form(thermoelastic::potential_coefficients(U, rho), rho); }), U};
    if (model == "ferroelectric")
      return {build([&] { return ferroelectric::entropy_form(ferroelectric::potential_coefficients(U, rho), rho); }), U};
    return {build([&] { return geometry::OneForm::exact(U, coords); }), U};
  }

  const Node c = n.at("coefficients");
  const auto entries = c.entries();
  for (const auto& [key, node] : entries)
    if (std::find(coords.begin(), coords.end(), key) == coords.end()) node.fail("not a coordinate of the form");
  std::vector<Expression> coeffs;
  for (const auto& name : coords) {
    const auto node = c.at(name);
    node.field(coords);
    coeffs.push_back(node.expression());
  }
  return {build([&] { return geometry::OneForm(coords, coeffs); }), std::nullopt};
}

Sampling read_sampling(const Node& n, const std::vector<std::string>& names) {
  n.object({"count", "seed", "default", "box"});
  Sampling s;
  s.count = n.count_or("count", s.count);
  if (s.count == 0) n.at("count").fail("must be positive");
  s.seed = n.count_or("seed", 0);
  std::optional<std::vector<double>> fallback;
  if (const auto d = n.find("default")) fallback = d->numbers(2);
  std::optional<Node> box = n.find("box");
  if (box) {
    for (const auto& [key, node] : box->entries())
      if (std::find(names.begin(), names.end(), key) == names.end()) node.fail("not a sampled coordinate");
  }
  for (const auto& name : names) {
    std::vector<double> b;
    if (box && box->has(name)) b = box->at(name).numbers(2);
    else if (fallback) b = *fallback;
    else throw ConfigError(box ? box->path() + "." + name : n.path() + ".box." + name, "no bounds (and no 'default')");
    if (!(b[0] < b[1]))
      throw ConfigError(box && box->has(name) ? box->at(name).path() : n.path() + ".default", "need lo < hi");
    s.box.add(name, b[0], b[1]);
  }
  return s;
}

std::vector<std::vector<double>> Grid::points() const {
  std::vector<std::vector<double>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (const double v : axis) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

Grid read_grid(const Node& n, const std::vector<std::string>& names) {
  for (const auto& [key, node] : n.entries())
    if (std::find(names.begin(), names.end(), key) == names.end()) node.fail("not a grid coordinate");
  Grid g;
  for (const auto& name : names) {
    const Node axis = n.at(name);
    const auto spec = axis.items();
    if (spec.size() != 3) axis.fail("expected [lo, hi, count]");
    const double lo = spec[0].number(), hi = spec[1].number();
    const std::size_t count = spec[2].count();
    if (count == 0) spec[2].fail("must be positive");
    if (count > 1 && !(lo < hi)) axis.fail("need lo < hi");
    std::vector<double> values;
    for (std::size_t i = 0; i < count; ++i)
      values.push_back(count == 1 ? lo
                       : i + 1 == count
                           ? hi
                           : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    g.names.push_back(name);
    g.axes.push_back(std::move(values));
  }
  return g;
}

processes::ProcessCurve read_curve_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("", fmt::format("cannot open curve '{}'", file.string()));
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      cells.push_back(cell);
    }
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("", fmt::format("curve '{}' is empty", file.string()));
  auto header = split(line);
  if (header.size() < 2 || header[0] != "t")
    throw ConfigError("", fmt::format("curve '{}': header must be t followed by coordinate names", file.string()));
  header.erase(header.begin());
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size() + 1)
      throw ConfigError("", fmt::format("curve '{}' line {}: expected {} values, got {}", file.string(), row,
                                        header.size() + 1, cells.size()));
    std::vector<double> values;
    for (const auto& c : cells) {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || end != c.data() + c.size())
        throw ConfigError("", fmt::format("curve '{}' line {}: '{}' is not a number", file.string(), row, c));
      values.push_back(v);
    }
    times.push_back(values[0]);
    points.emplace_back(values.begin() + 1, values.end());
  }
  try {
    return processes::ProcessCurve(header, times, points);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", fmt::format("curve '{}': {}", file.string(), e.what()));
  }
}

processes::ProcessCurve read_curve(const Node& n, const std::filesystem::path& base) {
  n.object({"file", "parametric"});
  if (n.has("file") == n.has("parametric")) n.fail("give exactly one of 'file' or 'parametric'");
  if (const auto f = n.find("file")) {
    std::filesystem::path p = f->string();
    if (p.is_relative()) p = base / p;
    try {
      return read_curve_csv(p);
    } catch (const ConfigError& e) {
      f->fail(e.what());
    }
  }
  const Node p = n.at("parametric");
  p.object({"t0", "t1", "n", "q"});
  const double t0 = p.at("t0").number(), t1 = p.at("t1").number();
  if (!(t0 < t1)) p.fail("need t0 < t1");
  const std::size_t count = p.at("n").count();
  if (count == 0) p.at("n").fail("must be positive");
  std::vector<std::string> names;
  std::vector<expr::ScalarField> fns;
  for (const auto& [name, node] : p.at("q").entries()) {
    names.push_back(name);
    fns.push_back(node.field({"t"}));
  }
  if (names.empty()) p.at("q").fail("needs at least one coordinate");
  try {
    return processes::sample_curve(names, t0, t1, count, [&](double t) {
      std::vector<double> q;
      for (const auto& f : fns) q.push_back(f.value(std::span<const double>(&t, 1)));
      return q;
    });
  } catch (const std::invalid_argument& e) {
    p.fail(e.what());
  }
}

material::TimeFunction read_time_function(const Node& n) { return material::TimeFunction(n.field({"t"}).expression()); }

material::TimeVector read_time_vector(const Node& n) {
  const auto xs = n.items();
  if (xs.size() != 3) n.fail(fmt::format("expected 3 entries, got {}", xs.size()));
  material::TimeVector v;
  for (std::size_t i = 0; i < 3; ++i) v[i] = read_time_function(xs[i]);
  return v;
}

material::TimeTensor read_time_tensor(const Node& n) {
  const auto xs = n.items();
  if (xs.size() != 9) n.fail(fmt::format("expected 9 entries (row-major), got {}", xs.size()));
  material::TimeTensor m;
  for (std::size_t i = 0; i < 9; ++i) m[i] = read_time_function(xs[i]);
  return m;
}

}  // namespace ctherm::cli
