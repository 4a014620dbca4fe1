#include "hatlab/game.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "hatlab/error.hpp"
#include "hatlab/parallel.hpp"

namespace hatlab {

namespace {

void check_q(int q) {
  if (q < 1 || q > kMaxColors)
    throw ParameterError("color count must be in [1, " + std::to_string(kMaxColors) + "]");
}

std::uint64_t space_size(int q, int n, std::uint64_t budget, const char* what) {
  const std::uint64_t total = sat_pow(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(n));
  if (total > budget) throw InfeasibleError(what, total, budget);
  return total;
}

// Colors of the assignment with lexicographic rank r (vertex 0 most significant).
void decode_rank(std::uint64_t r, int q, std::span<Color> out) {
  for (std::size_t v = out.size(); v-- > 0;) {
    out[v] = static_cast<Color>(r % q);
    r /= q;
  }
}

// Per-vertex powers q^slot and, for each vertex u, the (v, q^slot(u in N(v))) pairs
// needed to update view indices when u's color changes.
struct ViewWeights {
  std::vector<std::vector<std::pair<int, std::uint64_t>>> watchers;

  ViewWeights(const Graph& g, int q) : watchers(g.n_vertices()) {
    for (int v = 0; v < g.n_vertices(); ++v) {
      std::uint64_t w = 1;
      for (int u : g.neighbors(v)) {
        watchers[u].emplace_back(v, w);
        w *= static_cast<std::uint64_t>(q);
      }
    }
  }
};

}  // namespace

void check_strategy_shape(const Graph& g, int q, const Strategy& s) {
  check_q(q);
  if (s.q != q)
    throw ParameterError("strategy declares q=" + std::to_string(s.q) + " but q=" +
                         std::to_string(q) + " was requested");
  if (static_cast<int>(s.tables.size()) != g.n_vertices())
    throw ParameterError("strategy has " + std::to_string(s.tables.size()) +
                         " tables for a graph with " + std::to_string(g.n_vertices()) +
                         " vertices");
  for (int v = 0; v < g.n_vertices(); ++v) {
    const std::uint64_t want = sat_pow(q, g.degree(v));
    if (s.tables[v].size() != want)
      throw ParameterError("table of vertex " + std::to_string(v) + " has length " +
                           std::to_string(s.tables[v].size()) + ", expected " +
                           std::to_string(want));
    for (Color c : s.tables[v])
      if (c >= q) throw ParameterError("table entry out of range at vertex " + std::to_string(v));
  }
}

std::uint64_t view_index(const Graph& g, int q, int v, std::span<const Color> colors) {
  std::uint64_t idx = 0;
  std::uint64_t w = 1;
  for (int u : g.neighbors(v)) {
    idx += colors[u] * w;
    w *= static_cast<std::uint64_t>(q);
  }
  return idx;
}

Color guess_of(const Graph& g, const Strategy& s, int v, std::span<const Color> colors) {
  return s.tables[v][view_index(g, s.q, v, colors)];
}

int correct_guessers(const Graph& g, const Strategy& s, std::span<const Color> colors) {
  int hits = 0;
  for (int v = 0; v < g.n_vertices(); ++v)
    if (guess_of(g, s, v, colors) == colors[v]) ++hits;
  return hits;
}

bool SolvableSet::contains(std::span<const Color> x) const {
  auto it = std::lower_bound(members.begin(), members.end(), x,
                             [](const std::vector<Color>& a, std::span<const Color> b) {
                               return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                                   b.end());
                             });
  return it != members.end() && std::equal(it->begin(), it->end(), x.begin(), x.end());
}

SolvableSet make_solvable_set(int m, int q, std::vector<std::vector<Color>> members) {
  check_q(q);
  if (m < 0) throw ParameterError("negative vertex count");
  for (const auto& x : members) {
    if (static_cast<int>(x.size()) != m) throw ParameterError("member has wrong length");
    for (Color c : x)
      if (c >= q) throw ParameterError("member color out of range");
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw ParameterError("duplicate member in assignment set");
  return SolvableSet{m, q, std::move(members)};
}

VerificationReport verify_strategy(const Graph& g, int q, const Strategy& s,
                                   std::uint64_t budget) {
  check_strategy_shape(g, q, s);
  const int n = g.n_vertices();
  const std::uint64_t total = space_size(q, n, budget, "assignment space exceeds budget");
  const ViewWeights weights(g, q);

  constexpr std::uint64_t kNone = kSaturated;
  const std::uint64_t first_loss = chunked_reduce<std::uint64_t>(
      total, 256, kNone,
      [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        std::vector<Color> colors(n);
        decode_rank(lo, q, colors);
        std::vector<std::uint64_t> idx(n);
        for (int v = 0; v < n; ++v) idx[v] = view_index(g, q, v, colors);
        for (std::uint64_t r = lo;;) {
          bool won = false;
          for (int v = 0; v < n; ++v)
            if (s.tables[v][idx[v]] == colors[v]) {
              won = true;
              break;
            }
          if (!won) return r;
          if (++r == hi) return kNone;
          // Odometer step with the last vertex varying fastest.
          for (int u = n - 1; u >= 0; --u) {
            if (colors[u] + 1 < q) {
              ++colors[u];
              for (auto [v, w] : weights.watchers[u]) idx[v] += w;
              break;
            }
            const std::uint64_t drop = static_cast<std::uint64_t>(q - 1);
            colors[u] = 0;
            for (auto [v, w] : weights.watchers[u]) idx[v] -= drop * w;
          }
        }
      },
      [](std::uint64_t a, std::uint64_t b) { return std::min(a, b); });

  VerificationReport report;
  if (first_loss == kNone) {
    report.wins = true;
    report.assignments_checked = total;
  } else {
    ColorAssignment ce{q, std::vector<Color>(n)};
    decode_rank(first_loss, q, ce.colors);
    report.counterexample = std::move(ce);
    report.assignments_checked = first_loss + 1;
  }
  return report;
}

VerificationReport verify_strategy(const Graph& g, int q, const Strategy& s,
                                   const SolvableSet& restriction) {
  check_strategy_shape(g, q, s);
  if (restriction.q != q || restriction.m != g.n_vertices())
    throw ParameterError("restriction does not match the graph and color count");
  const auto& members = restriction.members;
  constexpr std::uint64_t kNone = kSaturated;
  const std::uint64_t first_loss = chunked_reduce<std::uint64_t>(
      members.size(), 64, kNone,
      [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        for (std::uint64_t i = lo; i < hi; ++i) {
          const auto& x = members[i];
          for (Color c : x)
            if (c >= q) throw ParameterError("restriction member out of range");
          if (correct_guessers(g, s, x) == 0) return i;
        }
        return kNone;
      },
      [](std::uint64_t a, std::uint64_t b) { return std::min(a, b); });
  VerificationReport report;
  if (first_loss == kNone) {
    report.wins = true;
    report.assignments_checked = members.size();
  } else {
    report.counterexample = ColorAssignment{q, members[first_loss]};
    report.assignments_checked = first_loss + 1;
  }
  return report;
}

SampleReport sample_strategy(const Graph& g, int q, const GuessFn& guess,
                             std::uint64_t samples, std::uint64_t seed) {
  check_q(q);
  const int n = g.n_vertices();
  struct Partial {
    std::uint64_t losses = 0;
    std::optional<std::vector<Color>> first;
  };
  constexpr std::uint64_t kChunks = 64;
  const Partial merged = chunked_reduce<Partial>(
      samples, kChunks, Partial{},
      [&](std::uint64_t lo, std::uint64_t hi) {
        Partial p;
        // Seeded by the first sample index so the stream is independent of thread count.
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<int> dist(0, q - 1);
        std::vector<Color> colors(n);
        for (std::uint64_t i = lo; i < hi; ++i) {
          for (auto& c : colors) c = static_cast<Color>(dist(rng));
          bool won = false;
          for (int v = 0; v < n && !won; ++v) won = guess(v, colors) == colors[v];
          if (!won) {
            ++p.losses;
            if (!p.first) p.first = colors;
          }
        }
        return p;
      },
      [](Partial a, Partial b) {
        a.losses += b.losses;
        if (!a.first) a.first = std::move(b.first);
        return a;
      });
  SampleReport report;
  report.samples = samples;
  report.losses = merged.losses;
  if (merged.first) report.first_loss = ColorAssignment{q, *merged.first};
  return report;
}

Strategy complete_sum_strategy(int n, int q) {
  if (n < 1) throw ParameterError("complete_sum_strategy requires n >= 1");
  if (q != n) throw ParameterError("complete_sum_strategy requires q == n");
  check_q(q);
  // Neighbors of player i are all other players; the table is indexed by their
  // colors, so only the sum of digits matters.
  const std::uint64_t size = sat_pow(q, n - 1);
  if (size > kDefaultAssignmentBudget) throw InfeasibleError("sum strategy table too large", size, kDefaultAssignmentBudget);
  Strategy s{q, std::vector<std::vector<Color>>(n, std::vector<Color>(size))};
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      std::uint64_t rest = idx;
      int sum = 0;
      for (int j = 0; j < n - 1; ++j) {
        sum += static_cast<int>(rest % q);
        rest /= q;
      }
      s.tables[i][idx] = static_cast<Color>(((i - sum) % q + q) % q);
    }
  }
  return s;
}

SolvableConstruction solvable_interval_set(int n, int q) {
  if (n < 1) throw ParameterError("solvable_interval_set requires n >= 1");
  if (q < n) throw ParameterError("solvable_interval_set requires q >= n");
  check_q(q);
  const std::uint64_t total = space_size(q, n, kDefaultAssignmentBudget / 16, "[q]^n too large");
  const std::uint64_t table = total / q;

  SolvableConstruction out;
  out.strategy = Strategy{q, std::vector<std::vector<Color>>(n, std::vector<Color>(table))};
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t idx = 0; idx < table; ++idx) {
      std::uint64_t rest = idx;
      int sum = 0;
      for (int j = 0; j < n - 1; ++j) {
        sum += static_cast<int>(rest % q);
        rest /= q;
      }
      out.strategy.tables[i][idx] = static_cast<Color>(((i - sum) % q + q) % q);
    }
  }

  std::vector<std::vector<Color>> members;
  members.reserve(static_cast<std::size_t>(n) * table);
  std::vector<Color> x(n);
  for (std::uint64_t r = 0; r < total; ++r) {
    decode_rank(r, q, x);
    int sum = 0;
    for (Color c : x) sum += c;
    if (sum % q < n) members.push_back(x);
  }
  out.set = SolvableSet{n, q, std::move(members)};  // already lexicographic
  return out;
}

std::uint64_t max_solvable_set_search(int n, int q, std::uint64_t budget) {
  if (n < 1) throw ParameterError("max_solvable_set_search requires n >= 1");
  check_q(q);
  const std::uint64_t table = sat_pow(q, n - 1);
  const std::uint64_t per_vertex = table >= 64 ? kSaturated : sat_pow(q, table);
  const std::uint64_t required = sat_pow(per_vertex, n);
  if (required > budget) throw InfeasibleError("strategy space exceeds budget", required, budget);

  const std::uint64_t total = sat_pow(q, n);
  const std::size_t words = (total + 63) / 64;
  using Bits = std::vector<std::uint64_t>;

  // hits[i][t]: assignments on which player i is correct under its t-th table.
  std::vector<std::vector<Bits>> hits(n, std::vector<Bits>(per_vertex, Bits(words, 0)));
  std::vector<Color> x(n);
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t t = 0; t < per_vertex; ++t) {
      for (std::uint64_t r = 0; r < total; ++r) {
        decode_rank(r, q, x);
        // View of player i: the other colors in ascending order.
        std::uint64_t idx = 0, w = 1;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          idx += x[j] * w;
          w *= q;
        }
        std::uint64_t entry = t;
        for (std::uint64_t e = 0; e < idx; ++e) entry /= q;
        if (entry % q == x[i]) hits[i][t][r / 64] |= 1ull << (r % 64);
      }
    }
  }

  std::uint64_t best = 0;
  std::vector<std::uint64_t> choice(n, 0);
  Bits acc(words);
  for (;;) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int i = 0; i < n; ++i)
      for (std::size_t w = 0; w < words; ++w) acc[w] |= hits[i][choice[i]][w];
    std::uint64_t covered = 0;
    for (auto w : acc) covered += std::popcount(w);
    best = std::max(best, covered);
    int i = n - 1;
    while (i >= 0 && ++choice[i] == per_vertex) choice[i--] = 0;
    if (i < 0) break;
  }
  return best;
}

namespace {

class StrategySearch {
 public:
  StrategySearch(const Graph& g, int q, std::uint64_t budget)
      : g_(g), q_(q), n_(g.n_vertices()), budget_(budget), total_(sat_pow(q, g.n_vertices())) {
    tables_.resize(n_);
    for (int v = 0; v < n_; ++v) tables_[v].assign(sat_pow(q, g.degree(v)), -1);
  }

  SearchStatus run() {
    const Outcome o = extend();
    if (o == Outcome::found) return SearchStatus::found;
    if (o == Outcome::exhausted) return SearchStatus::budget_exhausted;
    return SearchStatus::unwinnable;
  }

  Strategy strategy() const {
    Strategy s{q_, {}};
    for (const auto& t : tables_) {
      std::vector<Color> row(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) row[i] = static_cast<Color>(t[i] < 0 ? 0 : t[i]);
      s.tables.push_back(std::move(row));
    }
    return s;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  enum class Outcome { found, dead, exhausted };

  // Branches on the uncovered assignment with the fewest free table entries;
  // an uncovered assignment with none left is a dead end.
  Outcome extend() {
    std::vector<Color> x(n_);
    std::vector<std::uint64_t> idx(n_);
    std::uint64_t best_rank = total_;
    int best_free = n_ + 1;
    for (std::uint64_t r = 0; r < total_; ++r) {
      decode_rank(r, q_, x);
      bool covered = false;
      int free = 0;
      for (int v = 0; v < n_ && !covered; ++v) {
        const int entry = tables_[v][view_index(g_, q_, v, x)];
        covered = entry == x[v];
        free += entry < 0;
      }
      if (covered) continue;
      if (free == 0) return Outcome::dead;
      if (free < best_free) {
        best_free = free;
        best_rank = r;
      }
    }
    if (best_rank == total_) return Outcome::found;

    decode_rank(best_rank, q_, x);
    for (int v = 0; v < n_; ++v) idx[v] = view_index(g_, q_, v, x);
    for (int v = 0; v < n_; ++v) {
      if (tables_[v][idx[v]] >= 0) continue;
      if (nodes_ >= budget_) return Outcome::exhausted;
      ++nodes_;
      tables_[v][idx[v]] = x[v];
      const Outcome o = extend();
      if (o != Outcome::dead) return o;
      tables_[v][idx[v]] = -1;
    }
    return Outcome::dead;
  }

  const Graph& g_;
  int q_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t total_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<int>> tables_;
};

}  // namespace

SearchResult search_strategy(const Graph& g, int q, std::uint64_t node_budget) {
  check_q(q);
  space_size(q, g.n_vertices(), 10'000'000, "assignment space too large for search");
  std::uint64_t entries = 0;
  for (int v = 0; v < g.n_vertices(); ++v) entries += sat_pow(q, g.degree(v));
  // Recursion depth is bounded by the number of table entries.
  if (entries > 20'000) throw InfeasibleError("guess tables too large for search", entries, 20'000);

  StrategySearch search(g, q, node_budget);
  SearchResult result;
  result.status = search.run();
  result.nodes = search.nodes();
  if (result.status == SearchStatus::found) {
    Strategy s = search.strategy();
    if (!verify_strategy(g, q, s).wins)
      throw Error("search_strategy produced a strategy that fails verification");
    result.strategy = std::move(s);
  }
  return result;
}

Strategy subgraph_lift(const Graph& h, const Strategy& s, std::span<const int> embedding,
                       const Graph& g) {
  const int q = s.q;
  check_strategy_shape(h, q, s);
  if (static_cast<int>(embedding.size()) != h.n_vertices())
    throw ParameterError("embedding must map every vertex of H");
  std::vector<int> preimage(g.n_vertices(), -1);
  for (int a = 0; a < h.n_vertices(); ++a) {
    const int u = embedding[a];
    if (u < 0 || u >= g.n_vertices()) throw ParameterError("embedding target out of range");
    if (preimage[u] >= 0) throw ParameterError("embedding is not injective");
    preimage[u] = a;
  }
  for (int a = 0; a < h.n_vertices(); ++a)
    for (int b : h.neighbors(a))
      if (!g.adjacent(embedding[a], embedding[b]))
        throw ParameterError("embedding does not preserve adjacency");

  Strategy out{q, std::vector<std::vector<Color>>(g.n_vertices())};
  for (int u = 0; u < g.n_vertices(); ++u) {
    const std::uint64_t size = sat_pow(q, g.degree(u));
    if (size > kDefaultAssignmentBudget) throw InfeasibleError("lifted table too large", size, kDefaultAssignmentBudget);
    auto& table = out.tables[u];
    table.assign(size, 0);
    const int a = preimage[u];
    if (a < 0) continue;
    // For each H-neighbor (ascending), its slot among u's G-neighbors.
    std::vector<int> slots;
    for (int b : h.neighbors(a)) slots.push_back(g.neighbor_slot(u, embedding[b]));
    const int deg = g.degree(u);
    std::vector<Color> seen(deg);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      std::uint64_t rest = idx;
      for (int j = 0; j < deg; ++j) {
        seen[j] = static_cast<Color>(rest % q);
        rest /= q;
      }
      std::uint64_t hidx = 0, w = 1;
      for (int slot : slots) {
        hidx += seen[slot] * w;
        w *= q;
      }
      table[idx] = s.tables[a][hidx];
    }
  }
  return out;
}

BigInt eq1_bound(const Graph& g) {
  if (g.n_vertices() > 20)
    throw InfeasibleError("eq1_bound needs an exact vertex cover (at most 20 vertices)",
                          static_cast<std::uint64_t>(g.n_vertices()), 20);
  return one_plus_sum_i_pow_i(static_cast<unsigned>(min_vertex_cover(g)));
}

}  // namespace hatlab
