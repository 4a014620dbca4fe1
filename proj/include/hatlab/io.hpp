#pragma once

#include <string>

#include <json.hpp>

#include "hatlab/cover.hpp"
#include "hatlab/cube.hpp"
#include "hatlab/game.hpp"
#include "hatlab/graph.hpp"
#include "hatlab/windmill.hpp"

namespace hatlab::io {

using nlohmann::json;

// All readers throw ParameterError on malformed documents.

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// { "graph": {"family", "params"}, "q", "tables" }
json strategy_to_json(const Graph& g, const Strategy& s);
struct StrategyFile {
  Graph graph;
  Strategy strategy;
};
StrategyFile strategy_from_json(const json& j);

json assignment_to_json(const ColorAssignment& a);

/// { "q", "n", "members" }
json assignment_set_to_json(const SolvableSet& s);
SolvableSet assignment_set_from_json(const json& j);

/// { "d", "points" }
json point_set_to_json(const cover::PointSet& s);
cover::PointSet point_set_from_json(const json& j);
json partition_to_json(const cover::AxisPartition& p);

/// { "parts": ["hex", ...] }
json partition_file_to_json(const cube::Partition& p);
cube::Partition partition_file_from_json(const json& j);

/// { "k", "n", "q", "products": [[{"set", "strategy"}, ...], ...] }
json certificate_to_json(const windmill::ProductCertificate& c);
windmill::ProductCertificate certificate_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace hatlab::io
