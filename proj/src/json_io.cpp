#include "qmc/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qmc {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Complex complex_of(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ParseError(where + ": expected a number or an [re, im] pair");
}

ComplexMatrix matrix_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError(where + ": expected an array of row arrays");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError(where + ": ragged rows");
    for (int k = 0; k < cols; ++k)
      m(i, k) = complex_of(j[i][k],
                           where + "[" + std::to_string(i) + "][" +
                               std::to_string(k) + "]");
  }
  return m;
}

ComplexMatrix density_of(const json& j, int dim, const std::string& where) {
  if (j.is_object() && j.contains("diag")) {
    const json& diag = j["diag"];
    if (!diag.is_array() || static_cast<int>(diag.size()) != dim)
      throw ParseError(where + ".diag: expected " + std::to_string(dim) +
                       " entries");
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = complex_of(diag[i], where + ".diag");
    return m;
  }
  ComplexMatrix m = matrix_of(j, where);
  if (m.rows() != dim || m.cols() != dim)
    throw ParseError(where + ": expected a " + std::to_string(dim) + "x" +
                     std::to_string(dim) + " matrix");
  return m;
}

int int_field(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError("missing or non-integer field \"" + key + "\"");
  return j[key].get<int>();
}

}  // namespace

TensorDilation parse_dilation(const std::string& text) {
  json j = parse_json(text, "dilation spec");
  if (!j.is_object()) throw ParseError("dilation spec: expected an object");

  const int d = int_field(j, "d");
  const int c = int_field(j, "c");
  if (d < 1 || c < 1) throw ParseError("d and c must be positive");

  if (!j.contains("ordering") || !j["ordering"].is_string())
    throw ParseError("missing field \"ordering\"");
  const std::string ordering = j["ordering"].get<std::string>();
  if (ordering != "system_environment" && ordering != "environment_system")
    throw ParseError("ordering must be \"system_environment\" or "
                     "\"environment_system\"");

  if (!j.contains("u")) throw ParseError("missing field \"u\"");
  ComplexMatrix u = matrix_of(j["u"], "u");
  if (u.rows() != d * c || u.cols() != d * c)
    throw ParseError("u must be (d*c) x (d*c)");
  if (ordering == "environment_system")
    u = permute_factors(u, FactorShape{c, d}, {1, 0});

  // Density construction failures (non-Hermitian, wrong trace, not PSD) are
  // validation problems, not parse problems; let them propagate as qmc::Error.
  if (!j.contains("psi")) throw ParseError("missing field \"psi\"");
  State psi(density_of(j["psi"], c, "psi"));

  std::optional<State> phi;
  if (j.contains("phi") && !j["phi"].is_null())
    phi = State(density_of(j["phi"], d, "phi"));

  return TensorDilation(d, c, std::move(u), std::move(psi), std::move(phi));
}

TensorDilation load_dilation(const std::string& path) {
  return parse_dilation(slurp(path));
}

RoadColoring parse_road_coloring(const std::string& text) {
  json j = parse_json(text, "road coloring");
  if (!j.is_object()) throw ParseError("road coloring: expected an object");
  for (const char* key : {"states", "colors", "gamma", "nu"})
    if (!j.contains(key))
      throw ParseError(std::string("missing field \"") + key + "\"");

  auto labels_of = [&](const char* key) {
    if (!j[key].is_array())
      throw ParseError(std::string(key) + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j[key]) {
      if (!item.is_string())
        throw ParseError(std::string(key) + ": expected strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  };
  std::vector<std::string> states = labels_of("states");
  std::vector<std::string> colors = labels_of("colors");

  auto state_index = [&](const json& t) -> int {
    if (t.is_number_integer()) return t.get<int>();
    if (t.is_string()) {
      auto it = std::find(states.begin(), states.end(), t.get<std::string>());
      if (it == states.end())
        throw ParseError("gamma: unknown state \"" + t.get<std::string>() +
                         "\"");
      return static_cast<int>(it - states.begin());
    }
    throw ParseError("gamma: targets must be state labels or indices");
  };

  std::vector<std::vector<int>> gamma;
  std::vector<double> nu;
  for (const auto& color : colors) {
    if (!j["gamma"].contains(color))
      throw ParseError("gamma: missing color \"" + color + "\"");
    const json& row = j["gamma"][color];
    if (!row.is_array() || row.size() != states.size())
      throw ParseError("gamma[\"" + color + "\"]: expected one target per state");
    std::vector<int> targets;
    for (const auto& t : row) targets.push_back(state_index(t));
    gamma.push_back(std::move(targets));

    if (!j["nu"].contains(color) || !j["nu"][color].is_number())
      throw ParseError("nu: missing probability for color \"" + color + "\"");
    nu.push_back(j["nu"][color].get<double>());
  }

  try {
    return RoadColoring(std::move(states), std::move(colors), std::move(gamma),
                        std::move(nu));
  } catch (const Error& e) {
    throw ParseError(std::string("road coloring: ") + e.what());
  }
}

RoadColoring load_road_coloring(const std::string& path) {
  return parse_road_coloring(slurp(path));
}

}  // namespace qmc
