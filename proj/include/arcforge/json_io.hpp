// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "json.hpp"

#include "arcforge/arcs.hpp"
#include "arcforge/measure.hpp"
#include "arcforge/relu_net.hpp"

namespace arcforge {

// Measures: {"points": [[x1,...,xd], ...], "weights": [w1, ...]}
// The canonical atom order makes serialisation deterministic.
nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

// Networks: {"d": d, "layers": [{"W": [[...], ...], "b": [...]}, ...]}
nlohmann::json network_to_json(const ReluNetwork& net);
ReluNetwork network_from_json(const nlohmann::json& j);

// Arcs: {"m": m, "scales": [r_1, ..., r_m]}
nlohmann::json arc_to_json(const StandardArc& arc);
StandardArc arc_from_json(const nlohmann::json& j);

/// Vertex dump for plotting: header "i,x,y" then one row per vertex.
std::string vertices_csv(const StandardArc& arc);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace arcforge
