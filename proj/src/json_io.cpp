// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#include "arcforge/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace arcforge {

nlohmann::json measure_to_json(const DiscreteMeasure& mu) {
  nlohmann::json j;
  j["points"] = mu.points();
  j["weights"] = mu.weights();
  return j;
}

DiscreteMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.contains("points") || !j.contains("weights"))
    throw std::invalid_argument("measure JSON needs 'points' and 'weights'");
  return DiscreteMeasure(j.at("points").get<std::vector<Vec>>(),
                         j.at("weights").get<std::vector<double>>());
}

nlohmann::json network_to_json(const ReluNetwork& net) {
  nlohmann::json j;
  j["d"] = net.dim();
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    nlohmann::json jl;
    std::vector<Vec> rows(layer.dim(), Vec(layer.dim()));
    for (std::size_t i = 0; i < layer.dim(); ++i)
      for (std::size_t k = 0; k < layer.dim(); ++k) rows[i][k] = layer.W(i, k);
    jl["W"] = rows;
    jl["b"] = layer.b;
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  return j;
}

ReluNetwork network_from_json(const nlohmann::json& j) {
  if (!j.contains("d") || !j.contains("layers"))
    throw std::invalid_argument("network JSON needs 'd' and 'layers'");
  const std::size_t d = j.at("d").get<std::size_t>();
  std::vector<ReluLayer> layers;
  for (const auto& jl : j.at("layers")) {
    const auto rows = jl.at("W").get<std::vector<Vec>>();
    if (rows.size() != d) throw std::invalid_argument("network JSON: weight matrix row count != d");
    Mat W(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (rows[i].size() != d)
        throw std::invalid_argument("network JSON: weight matrix column count != d");
      for (std::size_t k = 0; k < d; ++k) W(i, k) = rows[i][k];
    }
    layers.emplace_back(std::move(W), jl.at("b").get<Vec>());
  }
  return ReluNetwork(std::move(layers));
}

nlohmann::json arc_to_json(const StandardArc& arc) {
  nlohmann::json j;
  j["m"] = arc.segments();
  j["scales"] = arc.scales();
  return j;
}

StandardArc arc_from_json(const nlohmann::json& j) {
  if (!j.contains("m") || !j.contains("scales"))
    throw std::invalid_argument("arc JSON needs 'm' and 'scales'");
  return StandardArc(j.at("m").get<std::size_t>(), j.at("scales").get<std::vector<double>>());
}

std::string vertices_csv(const StandardArc& arc) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "i,x,y\n";
  const auto v = arc.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) out << i << ',' << v[i][0] << ',' << v[i][1] << '\n';
  return out.str();
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace arcforge
