#include "hatlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "hatlab/error.hpp"

namespace hatlab {

std::string to_string(Family f) {
  switch (f) {
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::book: return "book";
    case Family::windmill: return "windmill";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  if (name == "complete" || name == "K") return Family::complete;
  if (name == "complete_bipartite" || name == "bipartite" || name == "Kmn")
    return Family::complete_bipartite;
  if (name == "book") return Family::book;
  if (name == "windmill") return Family::windmill;
  if (name == "custom") return Family::custom;
  throw ParameterError("unknown graph family '" + name + "'");
}

Graph Graph::from_edges(int n_vertices, const std::vector<std::pair<int, int>>& edges,
                        Family family, std::vector<std::int64_t> params) {
  if (n_vertices < 0) throw ParameterError("negative vertex count");
  Graph g;
  g.adjacency_.assign(n_vertices, {});
  g.family_ = family;
  g.params_ = std::move(params);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices)
      throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loop at vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& nb : g.adjacency_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return g;
}

bool Graph::adjacent(int u, int v) const { return neighbor_slot(u, v) >= 0; }

int Graph::neighbor_slot(int v, int u) const {
  const auto& nb = adjacency_.at(v);
  auto it = std::lower_bound(nb.begin(), nb.end(), u);
  if (it == nb.end() || *it != u) return -1;
  return static_cast<int>(it - nb.begin());
}

std::size_t Graph::n_edges() const {
  std::size_t total = 0;
  for (const auto& nb : adjacency_) total += nb.size();
  return total / 2;
}

namespace {

void require_arity(const std::vector<std::int64_t>& params, std::size_t arity,
                   const std::string& family) {
  if (params.size() != arity)
    throw ParameterError(family + " expects " + std::to_string(arity) + " parameter(s)");
  for (auto p : params)
    if (p < 1) throw ParameterError(family + " parameters must be positive");
}

constexpr std::int64_t kMaxVertices = 1 << 20;

}  // namespace

Graph build_graph(Family family, const std::vector<std::int64_t>& params) {
  std::vector<std::pair<int, int>> edges;
  auto clique = [&](int first, int count) {
    for (int a = 0; a < count; ++a)
      for (int b = a + 1; b < count; ++b) edges.emplace_back(first + a, first + b);
  };
  switch (family) {
    case Family::complete: {
      require_arity(params, 1, "complete");
      if (params[0] > kMaxVertices) throw ParameterError("graph too large");
      const int n = static_cast<int>(params[0]);
      clique(0, n);
      return Graph::from_edges(n, edges, family, params);
    }
    case Family::complete_bipartite: {
      require_arity(params, 2, "complete_bipartite");
      if (params[0] + params[1] > kMaxVertices) throw ParameterError("graph too large");
      const int m = static_cast<int>(params[0]);
      const int n = static_cast<int>(params[1]);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b) edges.emplace_back(a, m + b);
      return Graph::from_edges(m + n, edges, family, params);
    }
    case Family::book: {
      require_arity(params, 2, "book");
      if (params[0] + params[1] > kMaxVertices) throw ParameterError("graph too large");
      const int d = static_cast<int>(params[0]);
      const int n = static_cast<int>(params[1]);
      clique(0, d);
      for (int page = 0; page < n; ++page)
        for (int s = 0; s < d; ++s) edges.emplace_back(s, d + page);
      return Graph::from_edges(d + n, edges, family, params);
    }
    case Family::windmill: {
      require_arity(params, 2, "windmill");
      if (params[0] < 2) throw ParameterError("windmill requires k >= 2");
      if ((params[0] - 1) * params[1] + 1 > kMaxVertices) throw ParameterError("graph too large");
      const int k = static_cast<int>(params[0]);
      const int n = static_cast<int>(params[1]);
      for (int j = 0; j < n; ++j) {
        const int first = 1 + j * (k - 1);
        for (int a = 0; a < k - 1; ++a) edges.emplace_back(0, first + a);
        clique(first, k - 1);
      }
      return Graph::from_edges((k - 1) * n + 1, edges, family, params);
    }
    case Family::custom:
      throw ParameterError("custom graphs are built with Graph::from_edges");
  }
  throw ParameterError("unknown family");
}

Graph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParameterError("graph spec must look like family:p1,p2 (got '" + spec + "')");
  const Family family = family_from_string(spec.substr(0, colon));
  std::vector<std::int64_t> params;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      params.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("bad graph parameter '" + item + "'");
    }
  }
  return build_graph(family, params);
}

int min_vertex_cover(const Graph& g) {
  const int n = g.n_vertices();
  if (n > 20) throw ParameterError("min_vertex_cover supports at most 20 vertices");
  std::vector<std::uint32_t> nbr_mask(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) nbr_mask[v] |= 1u << u;
  int best = n;
  const std::uint32_t full = n == 0 ? 0 : (n == 32 ? ~0u : (1u << n) - 1);
  for (std::uint32_t s = 0; s <= full; ++s) {
    const int size = std::popcount(s);
    if (size >= best) {
      if (s == full) break;
      continue;
    }
    bool cover = true;
    for (int v = 0; v < n && cover; ++v)
      if (!(s >> v & 1u) && (nbr_mask[v] & ~s)) cover = false;
    if (cover) best = size;
    if (s == full) break;
  }
  return best;
}

}  // namespace hatlab
