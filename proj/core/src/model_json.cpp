#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finsler/model.hpp"

namespace finsler {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw std::invalid_argument("model descriptor: " + what);
}

Vec json_to_vec(const json& arr, const char* field) {
  if (!arr.is_array() || arr.empty()) schema_error(std::string(field) + " must be a non-empty array");
  Vec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) schema_error(std::string(field) + " entries must be numbers");
    v[static_cast<int>(i)] = arr[i].get<double>();
  }
  return v;
}

Mat json_to_mat(const json& rows, const char* field) {
  if (!rows.is_array() || rows.empty()) schema_error(std::string(field) + " must be an array of rows");
  const auto n = rows.size();
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      schema_error(std::string(field) + " must be a square matrix");
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number()) schema_error(std::string(field) + " entries must be numbers");
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

}  // namespace

FinslerModel model_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  if (!doc.contains("family") || !doc["family"].is_string())
    schema_error("missing string field \"family\"");
  const std::string family = doc["family"].get<std::string>();
  const json params = doc.value("params", json::object());

  FinslerModel model;
  if (family == "euclidean" || family == "minkowski-quartic") {
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
      schema_error("family \"" + family + "\" requires integer \"dim\"");
    const int n = doc["dim"].get<int>();
    if (n < 2 || n > kMaxDim) schema_error("\"dim\" must be in [2, 8]");
    model = family == "euclidean" ? make_euclidean(n) : make_minkowski_quartic(n);
  } else if (family == "riemannian") {
    if (!params.contains("instance") || !params["instance"].is_string())
      schema_error("family \"riemannian\" requires params.instance");
    const std::string inst = params["instance"].get<std::string>();
    if (inst == "s2-stereographic")
      model = make_s2_stereographic();
    else if (inst == "s2-polar")
      model = make_s2_polar();
    else if (inst == "hyperbolic-disk")
      model = make_hyperbolic_disk();
    else if (inst == "flat-torus")
      model = make_flat_torus();
    else
      schema_error("unknown riemannian instance \"" + inst + "\"");
  } else if (family == "randers") {
    if (params.contains("instance")) {
      const std::string inst = params["instance"].get<std::string>();
      if (inst == "flat")
        model = make_randers_flat();
      else if (inst == "curved-disk")
        model = make_randers_curved();
      else
        schema_error("unknown randers instance \"" + inst + "\"");
    } else {
      if (!params.contains("a") || !params.contains("b"))
        schema_error("family \"randers\" requires params.a and params.b (or params.instance)");
      Mat a = json_to_mat(params["a"], "params.a");
      Vec b = json_to_vec(params["b"], "params.b");
      if (a.rows() != b.size()) schema_error("params.a and params.b sizes disagree");
      model = make_randers_flat(std::move(a), std::move(b));
    }
  } else {
    schema_error("unknown family \"" + family + "\"");
  }

  if (doc.contains("chart")) {
    const json& chart = doc["chart"];
    if (!chart.is_object() || !chart.contains("lo") || !chart.contains("hi"))
      schema_error("\"chart\" must be an object with \"lo\" and \"hi\" arrays");
    Vec lo = json_to_vec(chart["lo"], "chart.lo");
    Vec hi = json_to_vec(chart["hi"], "chart.hi");
    if (lo.size() != model.n || hi.size() != model.n)
      schema_error("chart bounds must match the model dimension");
    for (int i = 0; i < model.n; ++i)
      if (!(lo[i] < hi[i])) schema_error("chart.lo must be strictly below chart.hi");
    model.chart.lo = std::move(lo);
    model.chart.hi = std::move(hi);
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema_error("\"name\" must be a string");
    model.name = doc["name"].get<std::string>();
  }
  return model;
}

FinslerModel model_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("model descriptor: cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace finsler
