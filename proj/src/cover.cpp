#include "hatlab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>

#include "hatlab/error.hpp"
#include "hatlab/parallel.hpp"

namespace hatlab::cover {

namespace {

Point drop_axis(const Point& p, int axis) {
  Point out;
  out.reserve(p.size() - 1);
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (i != axis - 1) out.push_back(p[i]);
  return out;
}

void check_axis(const PointSet& s, int axis) {
  if (axis < 1 || axis > s.d)
    throw ParameterError("axis " + std::to_string(axis) + " out of range for d=" +
                         std::to_string(s.d));
}

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

PointSet make_point_set(int d, std::vector<Point> points) {
  if (d < 1 || d > kMaxDimension)
    throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d)
      throw ParameterError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                           std::to_string(d));
    for (auto c : p)
      if (c < 0) throw ParameterError("coordinates must be non-negative");
  }
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("duplicate point");
  return PointSet{d, std::move(points)};
}

PointSet projection(const PointSet& s, int axis) {
  check_axis(s, axis);
  std::vector<Point> out;
  out.reserve(s.size());
  for (const auto& p : s.points) out.push_back(drop_axis(p, axis));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return PointSet{s.d - 1, std::move(out)};
}

std::size_t projection_sum(const PointSet& s) {
  std::size_t total = 0;
  for (int i = 1; i <= s.d; ++i) total += projection(s, i).size();
  return total;
}

bool numerically_coverable(const PointSet& s) { return projection_sum(s) >= s.size(); }

Coverability coverable(const PointSet& s) {
  const int d = s.d;
  const int n = static_cast<int>(s.size());
  if (n > 100'000) throw InfeasibleError("point set too large for matching", n, 100'000);
  if (n == 0) return AxisPartition{};

  // Lines meeting S, keyed by (axis, remaining coordinates).
  std::map<std::pair<int, Point>, int> line_id;
  std::vector<int> line_axis;
  std::vector<std::vector<int>> lines_of(n);
  for (int p = 0; p < n; ++p) {
    for (int axis = 1; axis <= d; ++axis) {
      auto [it, inserted] =
          line_id.try_emplace({axis, drop_axis(s.points[p], axis)}, static_cast<int>(line_axis.size()));
      if (inserted) line_axis.push_back(axis);
      lines_of[p].push_back(it->second);
    }
  }
  const int n_lines = static_cast<int>(line_axis.size());
  std::vector<int> match_point(n, -1), match_line(n_lines, -1);

  // Greedy start.
  for (int p = 0; p < n; ++p)
    for (int l : lines_of[p])
      if (match_line[l] < 0) {
        match_line[l] = p;
        match_point[p] = l;
        break;
      }

  std::vector<int> seen_point(n, -1), found_by(n_lines, -1), seen_line(n_lines, -1);
  for (int root = 0; root < n; ++root) {
    if (match_point[root] >= 0) continue;
    std::deque<int> queue{root};
    seen_point[root] = root;
    int free_line = -1;
    while (!queue.empty() && free_line < 0) {
      const int x = queue.front();
      queue.pop_front();
      for (int l : lines_of[x]) {
        if (seen_line[l] == root) continue;
        seen_line[l] = root;
        found_by[l] = x;
        if (match_line[l] < 0) {
          free_line = l;
          break;
        }
        const int y = match_line[l];
        if (seen_point[y] != root) {
          seen_point[y] = root;
          queue.push_back(y);
        }
      }
    }
    if (free_line < 0) {
      // Every line met by the alternating tree is matched into it, so the tree
      // has one more point than lines.
      HallViolator h{PointSet{d, {}}};
      for (int p = 0; p < n; ++p)
        if (seen_point[p] == root) h.subset.points.push_back(s.points[p]);
      return h;
    }
    for (int l = free_line;;) {
      const int x = found_by[l];
      const int previous = match_point[x];
      match_point[x] = l;
      match_line[l] = x;
      if (x == root) break;
      l = previous;
    }
  }

  AxisPartition part;
  part.axis_of.resize(n);
  for (int p = 0; p < n; ++p) part.axis_of[p] = line_axis[match_point[p]];
  return part;
}

bool is_valid_partition(const PointSet& s, const AxisPartition& p) {
  if (p.axis_of.size() != s.size()) return false;
  std::set<std::pair<int, Point>> used;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int axis = p.axis_of[i];
    if (axis < 1 || axis > s.d) return false;
    if (!used.emplace(axis, drop_axis(s.points[i], axis)).second) return false;
  }
  return true;
}

bool is_valid_violator(const PointSet& s, const HallViolator& h) {
  if (h.subset.d != s.d || h.subset.points.empty()) return false;
  std::set<Point> all(s.points.begin(), s.points.end());
  std::set<Point> sub;
  for (const auto& p : h.subset.points)
    if (!all.count(p) || !sub.insert(p).second) return false;
  return projection_sum(h.subset) < h.subset.size();
}

bool coverable_bruteforce(const PointSet& s, std::uint64_t budget) {
  const int n = static_cast<int>(s.size());
  const std::uint64_t space = sat_pow(static_cast<std::uint64_t>(s.d), static_cast<std::uint64_t>(n));
  if (space > budget) throw InfeasibleError("d^|s| exceeds brute-force budget", space, budget);
  if (n == 0) return true;

  // line_axis[i][j] = a > 0 when points i and j differ in exactly coordinate a.
  std::vector<std::vector<int>> shared(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int differing = 0, where = 0;
      for (int c = 0; c < s.d; ++c)
        if (s.points[i][c] != s.points[j][c]) {
          ++differing;
          where = c + 1;
        }
      if (differing == 1) shared[i][j] = where;
    }

  std::vector<int> cls(n, 0);
  // Iterative depth-first enumeration of class assignments, rejecting a prefix
  // as soon as two points on one line parallel to axis a both get class a.
  int i = 0;
  while (i >= 0) {
    if (i == n) return true;
    if (++cls[i] > s.d) {
      cls[i] = 0;
      --i;
      continue;
    }
    bool ok = true;
    for (int j = 0; j < i && ok; ++j)
      if (shared[i][j] == cls[i] && cls[j] == cls[i]) ok = false;
    if (ok) ++i;
  }
  return false;
}

PointSet canonicalize(const PointSet& s) {
  PointSet out{s.d, s.points};
  for (int axis = 0; axis < s.d; ++axis) {
    std::vector<std::int64_t> values;
    for (const auto& p : s.points) values.push_back(p[axis]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (auto& p : out.points)
      p[axis] = std::lower_bound(values.begin(), values.end(), p[axis]) - values.begin();
  }
  return out;
}

PointSet noncoverable_construction(int d) {
  if (d < 1 || d > 5) throw ParameterError("noncoverable_construction supports 1 <= d <= 5");
  if (d == 1) return PointSet{1, {{0}, {1}}};
  const PointSet lower = canonicalize(noncoverable_construction(d - 1));
  PointSet out{d, {}};
  // Hypercube [d]^d.
  Point p(d, 0);
  for (;;) {
    out.points.push_back(p);
    int c = d - 1;
    while (c >= 0 && ++p[c] == d) p[c--] = 0;
    if (c < 0) break;
  }
  // Lower-dimensional construction on the face x_d = d.
  for (const auto& q : lower.points) {
    Point lifted = q;
    lifted.push_back(d);
    out.points.push_back(std::move(lifted));
  }
  return out;
}

PointSet random_point_set(int d, std::size_t size, std::int64_t side, std::uint64_t seed) {
  if (d < 1 || d > kMaxDimension) throw ParameterError("dimension out of range");
  const double cells = std::pow(static_cast<double>(side), d);
  if (side < 1 || cells < static_cast<double>(size))
    throw ParameterError("grid too small for the requested number of points");
  auto rng = seeded_rng(seed, 0x5eed);
  std::uniform_int_distribution<std::int64_t> coord(0, side - 1);
  std::set<Point> chosen;
  PointSet out{d, {}};
  while (out.points.size() < size) {
    Point p(d);
    for (auto& c : p) c = coord(rng);
    if (chosen.insert(p).second) out.points.push_back(std::move(p));
  }
  return out;
}

HLowerReport h_lower_check(int d, SweepMode mode, std::uint64_t trials, std::uint64_t seed) {
  if (d < 1 || d > kMaxDimension) throw ParameterError("dimension out of range");
  std::uint64_t t = 0;
  for (int i = 1; i <= d; ++i) t += sat_pow(i, i);
  HLowerReport report;
  report.d = d;
  report.set_size = t;

  struct Partial {
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::optional<PointSet> first;
  };
  auto combine = [](Partial a, Partial b) {
    a.checked += b.checked;
    a.failures += b.failures;
    if (!a.first) a.first = std::move(b.first);
    return a;
  };
  auto check = [](Partial& p, const PointSet& s) {
    ++p.checked;
    if (!is_coverable(s)) {
      ++p.failures;
      if (!p.first) p.first = s;
    }
  };

  if (mode == SweepMode::exhaustive) {
    if (d >= 3)
      throw InfeasibleError("exhaustive h-check is limited to d <= 2",
                            static_cast<std::uint64_t>(d), 2);
    const std::uint64_t cells = sat_pow(t, d);
    std::vector<Point> grid;
    for (std::uint64_t c = 0; c < cells; ++c) {
      Point p(d);
      std::uint64_t rest = c;
      for (int a = d - 1; a >= 0; --a) {
        p[a] = static_cast<std::int64_t>(rest % t);
        rest /= t;
      }
      grid.push_back(std::move(p));
    }
    // All t-subsets of the grid, in lexicographic order of index tuples.
    std::vector<std::vector<int>> subsets;
    std::vector<int> pick(t);
    for (std::uint64_t i = 0; i < t; ++i) pick[i] = static_cast<int>(i);
    for (;;) {
      subsets.push_back(pick);
      int i = static_cast<int>(t) - 1;
      while (i >= 0 && pick[i] == static_cast<int>(cells - t) + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (std::uint64_t j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
    const Partial merged = chunked_reduce<Partial>(
        subsets.size(), 64, Partial{},
        [&](std::uint64_t lo, std::uint64_t hi) {
          Partial p;
          for (std::uint64_t i = lo; i < hi; ++i) {
            PointSet s{d, {}};
            for (int c : subsets[i]) s.points.push_back(grid[c]);
            check(p, s);
          }
          return p;
        },
        combine);
    report.sets_checked = merged.checked;
    report.failures = merged.failures;
    report.first_failure = merged.first;
    return report;
  }

  // Random mode: each trial draws a box side between the smallest that fits
  // t points and t itself, samples t distinct points, and canonicalizes.
  std::int64_t min_side = 1;
  while (static_cast<std::uint64_t>(sat_pow(min_side, d)) < t) ++min_side;
  const Partial merged = chunked_reduce<Partial>(
      trials, 64, Partial{},
      [&](std::uint64_t lo, std::uint64_t hi) {
        Partial p;
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
          auto rng = seeded_rng(seed, trial);
          std::uniform_int_distribution<std::int64_t> side_dist(
              min_side, std::max<std::int64_t>(min_side, static_cast<std::int64_t>(t)));
          const std::int64_t side = side_dist(rng);
          check(p, canonicalize(random_point_set(d, t, side, rng())));
        }
        return p;
      },
      combine);
  report.sets_checked = merged.checked;
  report.failures = merged.failures;
  report.first_failure = merged.first;
  return report;
}

bool loomis_whitney_check(const PointSet& s) {
  if (s.d < 1) return true;
  BigInt product = 1;
  for (int i = 1; i <= s.d; ++i) product *= projection(s, i).size();
  return big_pow(s.size(), static_cast<std::uint64_t>(s.d - 1)) <= product;
}

}  // namespace hatlab::cover
