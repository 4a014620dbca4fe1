#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hatlab/numeric.hpp"

namespace hatlab::cover {

using Point = std::vector<std::int64_t>;

/// Finite, duplicate-free subset of N^d. Sets produced by make_point_set()
/// have 1 <= d <= 8; projections of one-dimensional sets have d = 0.
struct PointSet {
  int d = 0;
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

inline constexpr int kMaxDimension = 8;

/// Validates dimension, tuple lengths, non-negativity and distinctness.
PointSet make_point_set(int d, std::vector<Point> points);

/// Per point, the axis (1-based) whose class it belongs to. Every class i has
/// at most one point on each line parallel to axis i.
struct AxisPartition {
  std::vector<int> axis_of;
};

/// A subset T with sum_i |pi_i(T)| < |T|.
struct HallViolator {
  PointSet subset;
};

using Coverability = std::variant<AxisPartition, HallViolator>;

/// Deletes coordinate `axis` (1-based) and deduplicates.
PointSet projection(const PointSet& s, int axis);
std::size_t projection_sum(const PointSet& s);

bool numerically_coverable(const PointSet& s);

/// Hall matching between points and the axis-parallel lines meeting them.
/// Returns a partition certificate on success, otherwise the points reachable
/// by alternating paths from the first unmatched point.
Coverability coverable(const PointSet& s);

inline bool is_coverable(const PointSet& s) {
  return std::holds_alternative<AxisPartition>(coverable(s));
}

/// Certificate checks, independent of the matching code.
bool is_valid_partition(const PointSet& s, const AxisPartition& p);
bool is_valid_violator(const PointSet& s, const HallViolator& h);

inline constexpr std::uint64_t kDefaultBruteforceBudget = 100'000'000;

/// Backtracking over all d^|s| axis-class assignments. Throws InfeasibleError
/// when d^|s| exceeds `budget`.
bool coverable_bruteforce(const PointSet& s, std::uint64_t budget = kDefaultBruteforceBudget);

/// Replaces each coordinate by its rank among the values on that axis.
PointSet canonicalize(const PointSet& s);

/// Non-coverable set of size 1 + sum_{i<=d} i^i, for 1 <= d <= 5.
PointSet noncoverable_construction(int d);

enum class SweepMode { exhaustive, random };

struct HLowerReport {
  int d = 0;
  std::uint64_t set_size = 0;
  std::uint64_t sets_checked = 0;
  std::uint64_t failures = 0;
  std::optional<PointSet> first_failure;
};

/// Checks that sets of size sum_{i<=d} i^i are coverable. Exhaustive mode
/// enumerates every such subset of the canonical grid (d <= 2); random mode
/// samples `trials` sets, deterministically in `seed`.
HLowerReport h_lower_check(int d, SweepMode mode, std::uint64_t trials, std::uint64_t seed);

/// |s|^(d-1) <= prod_i |pi_i(s)|, in exact arithmetic.
bool loomis_whitney_check(const PointSet& s);

/// Uniformly random distinct points in [side]^d.
PointSet random_point_set(int d, std::size_t size, std::int64_t side, std::uint64_t seed);

}  // namespace hatlab::cover
