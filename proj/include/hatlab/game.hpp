#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hatlab/graph.hpp"
#include "hatlab/numeric.hpp"

namespace hatlab {

/// Hat colors are [q] = {0, ..., q-1}.
using Color = std::uint8_t;
inline constexpr int kMaxColors = 256;

inline constexpr std::uint64_t kDefaultAssignmentBudget = 1'000'000'000;
inline constexpr std::uint64_t kDefaultStrategyBudget = 100'000'000;

struct ColorAssignment {
  int q = 0;
  std::vector<Color> colors;

  friend bool operator==(const ColorAssignment&, const ColorAssignment&) = default;
};

/// Dense guessing tables, one per vertex.
///
/// The table of vertex v has q^deg(v) entries. The colors (c_0, ..., c_{deg-1})
/// seen on v's neighbors, taken in ascending vertex order, select entry
/// sum_j c_j * q^j (least significant first).
struct Strategy {
  int q = 0;
  std::vector<std::vector<Color>> tables;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Throws ParameterError unless `s` has the right table lengths and entries for (g, q).
void check_strategy_shape(const Graph& g, int q, const Strategy& s);

std::uint64_t view_index(const Graph& g, int q, int v, std::span<const Color> colors);
Color guess_of(const Graph& g, const Strategy& s, int v, std::span<const Color> colors);
/// Number of vertices that guess their own color correctly.
int correct_guessers(const Graph& g, const Strategy& s, std::span<const Color> colors);

/// A set of allowed hat assignments for an m-vertex game. Members are kept
/// sorted lexicographically.
struct SolvableSet {
  int m = 0;
  int q = 0;
  std::vector<std::vector<Color>> members;

  bool contains(std::span<const Color> x) const;
  std::size_t size() const { return members.size(); }

  friend bool operator==(const SolvableSet&, const SolvableSet&) = default;
};

/// Validates and sorts; duplicates or out-of-range colors raise ParameterError.
SolvableSet make_solvable_set(int m, int q, std::vector<std::vector<Color>> members);

struct VerificationReport {
  bool wins = false;
  std::optional<ColorAssignment> counterexample;  // lexicographically least loss
  std::uint64_t assignments_checked = 0;
};

/// Plays `s` against every assignment in [q]^n. On a loss, the report carries
/// the lexicographically least losing assignment, and `assignments_checked`
/// counts the assignments up to and including it in lexicographic order.
VerificationReport verify_strategy(const Graph& g, int q, const Strategy& s,
                                   std::uint64_t budget = kDefaultAssignmentBudget);

/// Same, restricted to the members of `restriction`.
VerificationReport verify_strategy(const Graph& g, int q, const Strategy& s,
                                   const SolvableSet& restriction);

using GuessFn = std::function<Color(int v, std::span<const Color> colors)>;

struct SampleReport {
  std::uint64_t samples = 0;
  std::uint64_t losses = 0;
  std::optional<ColorAssignment> first_loss;
};

/// Plays an implicit strategy against `samples` uniformly random assignments.
/// Deterministic in `seed`, independent of the thread count.
SampleReport sample_strategy(const Graph& g, int q, const GuessFn& guess,
                             std::uint64_t samples, std::uint64_t seed);

/// Player i guesses the color making the total sum congruent to i (mod n).
Strategy complete_sum_strategy(int n, int q);

struct SolvableConstruction {
  SolvableSet set;
  Strategy strategy;
};

/// {x in [q]^n : sum(x) mod q < n} with the matching sum strategy; q >= n >= 1.
SolvableConstruction solvable_interval_set(int n, int q);

/// Exact size of the largest solvable set of K_n with q colors, by sweeping
/// every strategy tuple. Throws InfeasibleError when (q^(q^(n-1)))^n > budget.
std::uint64_t max_solvable_set_search(int n, int q,
                                      std::uint64_t budget = kDefaultStrategyBudget);

enum class SearchStatus { found, unwinnable, budget_exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::budget_exhausted;
  std::optional<Strategy> strategy;
  std::uint64_t nodes = 0;
};

/// Backtracking over guess-table entries: take the first uncovered assignment
/// and branch on which vertex is made to guess it. `unwinnable` is only
/// reported once the search tree is exhausted.
SearchResult search_strategy(const Graph& g, int q, std::uint64_t node_budget);

/// Transports a strategy on H into G along the injective, adjacency-preserving
/// map `embedding` (H vertex -> G vertex). Image vertices read only their
/// image neighbors; every other vertex guesses 0.
Strategy subgraph_lift(const Graph& h, const Strategy& s, std::span<const int> embedding,
                       const Graph& g);

/// 1 + sum_{i=1}^{tau} i^i for tau the minimum vertex cover size.
BigInt eq1_bound(const Graph& g);

}  // namespace hatlab
