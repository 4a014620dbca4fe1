#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hatlab {

enum class Family { complete, complete_bipartite, book, windmill, custom };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Simple undirected graph with sorted adjacency lists.
///
/// Canonical labelings produced by build_graph():
///   complete(n)            vertices 0..n-1
///   complete_bipartite(m,n) left side 0..m-1, right side m..m+n-1
///   book(d,n)              spine 0..d-1, pages d..d+n-1
///   windmill(k,n)          axle 0, blade j (1-based) at 1+(j-1)(k-1) .. j(k-1)
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list; duplicate edges are merged.
  /// Throws ParameterError on loops or out-of-range endpoints.
  static Graph from_edges(int n_vertices, const std::vector<std::pair<int, int>>& edges,
                          Family family = Family::custom, std::vector<std::int64_t> params = {});

  int n_vertices() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  bool adjacent(int u, int v) const;
  std::size_t n_edges() const;

  Family family() const { return family_; }
  const std::vector<std::int64_t>& params() const { return params_; }

  /// Position of `u` within the sorted neighbor list of `v`, or -1.
  int neighbor_slot(int v, int u) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<int>> adjacency_;
  Family family_ = Family::custom;
  std::vector<std::int64_t> params_;
};

Graph build_graph(Family family, const std::vector<std::int64_t>& params);

/// Parses "family:p1,p2,..." (e.g. "windmill:3,2").
Graph parse_graph_spec(const std::string& spec);

/// Exact minimum vertex cover size by subset search; n_vertices <= 20.
int min_vertex_cover(const Graph& g);

}  // namespace hatlab
