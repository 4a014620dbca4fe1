#include "hatlab/io.hpp"

#include <fstream>

#include "hatlab/error.hpp"

namespace hatlab::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParameterError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParameterError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::vector<Color> colors_from(const json& row, int q) {
  if (!row.is_array()) throw ParameterError("expected an array of colors");
  std::vector<Color> out;
  out.reserve(row.size());
  for (const auto& c : row) {
    const auto v = as_int(c, "color");
    if (v < 0 || v >= q) throw ParameterError("color out of range");
    out.push_back(static_cast<Color>(v));
  }
  return out;
}

json colors_to(const std::vector<Color>& row) {
  json out = json::array();
  for (Color c : row) out.push_back(static_cast<int>(c));
  return out;
}

int checked_q(const json& j) {
  const auto q = as_int(field(j, "q"), "q");
  if (q < 1 || q > kMaxColors) throw ParameterError("q out of range");
  return static_cast<int>(q);
}

}  // namespace

json graph_to_json(const Graph& g) {
  json j{{"family", to_string(g.family())}, {"params", g.params()}};
  if (g.family() == Family::custom) {
    json edges = json::array();
    for (int v = 0; v < g.n_vertices(); ++v)
      for (int u : g.neighbors(v))
        if (v < u) edges.push_back({v, u});
    j["n"] = g.n_vertices();
    j["edges"] = edges;
  }
  return j;
}

Graph graph_from_json(const json& j) {
  const auto& fam = field(j, "family");
  if (!fam.is_string()) throw ParameterError("family must be a string");
  const Family family = family_from_string(fam.get<std::string>());
  if (family == Family::custom) {
    const auto n = as_int(field(j, "n"), "n");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) throw ParameterError("edge must be a pair");
      edges.emplace_back(static_cast<int>(as_int(e[0], "edge")), static_cast<int>(as_int(e[1], "edge")));
    }
    return Graph::from_edges(static_cast<int>(n), edges);
  }
  std::vector<std::int64_t> params;
  const auto& p = field(j, "params");
  if (!p.is_array()) throw ParameterError("params must be an array");
  for (const auto& v : p) params.push_back(as_int(v, "param"));
  return build_graph(family, params);
}

json strategy_to_json(const Graph& g, const Strategy& s) {
  json tables = json::array();
  for (const auto& t : s.tables) tables.push_back(colors_to(t));
  return json{{"graph", graph_to_json(g)}, {"q", s.q}, {"tables", tables}};
}

StrategyFile strategy_from_json(const json& j) {
  StrategyFile f;
  f.graph = graph_from_json(field(j, "graph"));
  f.strategy.q = checked_q(j);
  const auto& tables = field(j, "tables");
  if (!tables.is_array()) throw ParameterError("tables must be an array");
  for (const auto& row : tables) f.strategy.tables.push_back(colors_from(row, f.strategy.q));
  check_strategy_shape(f.graph, f.strategy.q, f.strategy);
  return f;
}

json assignment_to_json(const ColorAssignment& a) { return colors_to(a.colors); }

json assignment_set_to_json(const SolvableSet& s) {
  json members = json::array();
  for (const auto& m : s.members) members.push_back(colors_to(m));
  return json{{"q", s.q}, {"n", s.m}, {"members", members}};
}

SolvableSet assignment_set_from_json(const json& j) {
  const int q = checked_q(j);
  const auto n = as_int(field(j, "n"), "n");
  std::vector<std::vector<Color>> members;
  const auto& rows = field(j, "members");
  if (!rows.is_array()) throw ParameterError("members must be an array");
  for (const auto& row : rows) members.push_back(colors_from(row, q));
  return make_solvable_set(static_cast<int>(n), q, std::move(members));
}

json point_set_to_json(const cover::PointSet& s) {
  return json{{"d", s.d}, {"points", s.points}};
}

cover::PointSet point_set_from_json(const json& j) {
  const auto d = as_int(field(j, "d"), "d");
  std::vector<cover::Point> points;
  const auto& rows = field(j, "points");
  if (!rows.is_array()) throw ParameterError("points must be an array");
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParameterError("point must be an array");
    cover::Point p;
    for (const auto& c : row) p.push_back(as_int(c, "coordinate"));
    points.push_back(std::move(p));
  }
  return cover::make_point_set(static_cast<int>(d), std::move(points));
}

json partition_to_json(const cover::AxisPartition& p) { return json{{"axis_of", p.axis_of}}; }

json partition_file_to_json(const cube::Partition& p) {
  json parts = json::array();
  for (auto s : p) parts.push_back(cube::to_hex(s));
  return json{{"parts", parts}};
}

cube::Partition partition_file_from_json(const json& j) {
  cube::Partition out;
  const auto& parts = field(j, "parts");
  if (!parts.is_array()) throw ParameterError("parts must be an array");
  for (const auto& s : parts) {
    if (!s.is_string()) throw ParameterError("part must be a hex string");
    out.push_back(cube::cellset_from_hex(s.get<std::string>()));
  }
  return out;
}

json certificate_to_json(const windmill::ProductCertificate& c) {
  json products = json::array();
  for (const auto& product : c.products) {
    json blades = json::array();
    for (const auto& b : product) {
      json set = json::array(), strategy = json::array();
      for (const auto& m : b.set.members) set.push_back(colors_to(m));
      for (const auto& t : b.strategy.tables) strategy.push_back(colors_to(t));
      blades.push_back(json{{"set", set}, {"strategy", strategy}});
    }
    products.push_back(blades);
  }
  return json{{"k", c.k}, {"n", c.n}, {"q", c.q}, {"products", products}};
}

windmill::ProductCertificate certificate_from_json(const json& j) {
  windmill::ProductCertificate c;
  c.k = static_cast<int>(as_int(field(j, "k"), "k"));
  c.n = static_cast<int>(as_int(field(j, "n"), "n"));
  c.q = checked_q(j);
  if (c.k < 2 || c.n < 1) throw ParameterError("certificate needs k >= 2 and n >= 1");
  for (const auto& product : field(j, "products")) {
    std::vector<windmill::BladeSet> blades;
    for (const auto& b : product) {
      std::vector<std::vector<Color>> members;
      for (const auto& row : field(b, "set")) members.push_back(colors_from(row, c.q));
      Strategy s{c.q, {}};
      for (const auto& row : field(b, "strategy")) s.tables.push_back(colors_from(row, c.q));
      blades.push_back({make_solvable_set(c.k - 1, c.q, std::move(members)), std::move(s)});
    }
    c.products.push_back(std::move(blades));
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << j.dump() << '\n';
}

}  // namespace hatlab::io
