// Naive reference implementations used as test oracles. Nothing here calls into
// the library except for plain data types.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hatlab/cover.hpp"
#include "hatlab/cube.hpp"
#include "hatlab/game.hpp"

namespace oracle {

using hatlab::Color;
using hatlab::Graph;

// Guess of vertex v read straight from its table: neighbors in ascending order,
// the first one least significant.
inline Color table_guess(const Graph& g, int q, const hatlab::Strategy& s, int v,
                         const std::vector<Color>& colors) {
  std::vector<int> nb = g.neighbors(v);
  std::sort(nb.begin(), nb.end());
  std::uint64_t idx = 0, place = 1;
  for (int u : nb) {
    idx += colors[u] * place;
    place *= q;
  }
  return s.tables[v][idx];
}

// Calls fn on every assignment of [q]^n in lexicographic order, vertex 0 most
// significant. Stops early when fn returns false.
inline void for_each_assignment(int n, int q, const std::function<bool(const std::vector<Color>&)>& fn) {
  std::vector<Color> c(n, 0);
  while (true) {
    if (!fn(c)) return;
    int i = n - 1;
    while (i >= 0 && c[i] == q - 1) c[i--] = 0;
    if (i < 0) return;
    ++c[i];
  }
}

struct Outcome {
  bool wins = true;
  std::uint64_t checked = 0;
  std::vector<Color> first_loss;
  std::uint64_t min_correct = ~0ull, max_correct = 0;
};

inline Outcome play_all(const Graph& g, int q, const hatlab::Strategy& s) {
  Outcome out;
  for_each_assignment(g.n_vertices(), q, [&](const std::vector<Color>& c) {
    ++out.checked;
    std::uint64_t correct = 0;
    for (int v = 0; v < g.n_vertices(); ++v) correct += table_guess(g, q, s, v, c) == c[v];
    out.min_correct = std::min(out.min_correct, correct);
    out.max_correct = std::max(out.max_correct, correct);
    if (correct == 0) {
      out.wins = false;
      out.first_loss = c;
      return false;
    }
    return true;
  });
  return out;
}

inline bool wins_on(const Graph& g, int q, const hatlab::Strategy& s,
                    const std::vector<std::vector<Color>>& members) {
  for (const auto& c : members) {
    bool hit = false;
    for (int v = 0; v < g.n_vertices(); ++v) hit = hit || table_guess(g, q, s, v, c) == c[v];
    if (!hit) return false;
  }
  return true;
}

// ---------------------------------------------------------------- cover

inline std::set<hatlab::cover::Point> project(const hatlab::cover::PointSet& s, int axis) {
  std::set<hatlab::cover::Point> out;
  for (auto p : s.points) {
    p.erase(p.begin() + (axis - 1));
    out.insert(p);
  }
  return out;
}

inline bool partition_ok(const hatlab::cover::PointSet& s, const std::vector<int>& axis_of) {
  if (axis_of.size() != s.size()) return false;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (axis_of[a] < 1 || axis_of[a] > s.d) return false;
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (axis_of[a] != axis_of[b]) continue;
      const int i = axis_of[a] - 1;
      bool same_line = true;
      for (int t = 0; t < s.d; ++t)
        if (t != i && s.points[a][t] != s.points[b][t]) same_line = false;
      if (same_line) return false;
    }
  }
  return true;
}

// Hall violator: the subset has more points than lines through it.
inline bool violator_ok(const hatlab::cover::PointSet& s, const hatlab::cover::PointSet& t) {
  std::set<hatlab::cover::Point> all(s.points.begin(), s.points.end());
  for (const auto& p : t.points)
    if (!all.count(p)) return false;
  std::size_t lines = 0;
  for (int i = 1; i <= t.d; ++i) lines += project(t, i).size();
  return t.size() > lines;
}

// Tries every axis labelling, pruning only on direct conflicts.
inline bool coverable_by_labelling(const hatlab::cover::PointSet& s) {
  const std::size_t n = s.size();
  std::vector<int> label(n, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t a) {
    if (a == n) return true;
    for (int i = 1; i <= s.d; ++i) {
      bool clash = false;
      for (std::size_t b = 0; b < a && !clash; ++b) {
        if (label[b] != i) continue;
        bool same_line = true;
        for (int t = 0; t < s.d; ++t)
          if (t != i - 1 && s.points[a][t] != s.points[b][t]) same_line = false;
        clash = same_line;
      }
      if (clash) continue;
      label[a] = i;
      if (go(a + 1)) return true;
    }
    return false;
  };
  return go(0);
}

inline hatlab::cover::PointSet grid(std::vector<int> sides) {
  hatlab::cover::PointSet s;
  s.d = static_cast<int>(sides.size());
  hatlab::cover::Point p(s.d, 0);
  while (true) {
    s.points.push_back(p);
    int i = s.d - 1;
    while (i >= 0 && p[i] == sides[i] - 1) p[i--] = 0;
    if (i < 0) break;
    ++p[i];
  }
  return s;
}

// ---------------------------------------------------------------- cube

struct C3 {
  int x, y, z;
};

inline bool in_cube_avoiding(C3 p, int cell) {
  const int x = cell % 4, y = cell / 4 % 4, z = cell / 16;
  return x != p.x && y != p.y && z != p.z;
}

inline int two_intersection_size(const std::vector<C3>& centers) {
  int n = 0;
  for (int cell = 0; cell < 64; ++cell) {
    int hits = 0;
    for (auto p : centers) hits += in_cube_avoiding(p, cell);
    n += hits >= 2;
  }
  return n;
}

inline std::uint64_t cube_mask(C3 p) {
  std::uint64_t m = 0;
  for (int cell = 0; cell < 64; ++cell)
    if (in_cube_avoiding(p, cell)) m |= std::uint64_t{1} << cell;
  return m;
}

inline int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace oracle
