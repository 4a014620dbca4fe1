#include "hatlab/cube.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "hatlab/error.hpp"
#include "hatlab/parallel.hpp"

namespace hatlab::cube {

std::string to_hex(CellSet s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(s.bits));
  return buf;
}

CellSet cellset_from_hex(const std::string& hex) {
  if (hex.size() != 16) throw ParameterError("cell set must be 16 hex digits: '" + hex + "'");
  std::uint64_t bits = 0;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw ParameterError("bad hex digit in '" + hex + "'");
    bits = bits << 4 | static_cast<std::uint64_t>(v);
  }
  return {bits};
}

CellSet hamming_ball(Cell p) {
  CellSet s;
  for (int i = 0; i < 64; ++i) {
    const Cell c = Cell::from_index(i);
    if (c.x == p.x || c.y == p.y || c.z == p.z) s.bits |= std::uint64_t{1} << i;
  }
  return s;
}

CellSet cube_avoiding(Cell p) { return complement(hamming_ball(p)); }

const std::array<CellSet, 64>& all_cubes() {
  static const std::array<CellSet, 64> cubes = [] {
    std::array<CellSet, 64> out{};
    for (int i = 0; i < 64; ++i) out[i] = cube_avoiding(Cell::from_index(i));
    return out;
  }();
  return cubes;
}

CellSet prism(std::span<const int> xs, std::span<const int> ys, std::span<const int> zs) {
  CellSet s;
  for (int x : xs)
    for (int y : ys)
      for (int z : zs) {
        if (x < 0 || x > 3 || y < 0 || y > 3 || z < 0 || z > 3)
          throw ParameterError("prism coordinate out of [4]");
        s.bits |= std::uint64_t{1} << Cell{x, y, z}.index();
      }
  return s;
}

const std::vector<CellSet>& all_prisms_233() {
  static const std::vector<CellSet> prisms = [] {
    std::vector<std::vector<int>> pairs, triples;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) pairs.push_back({a, b});
    for (int skip = 0; skip < 4; ++skip) {
      std::vector<int> t;
      for (int a = 0; a < 4; ++a)
        if (a != skip) t.push_back(a);
      triples.push_back(t);
    }
    std::vector<CellSet> out;
    for (int orientation = 0; orientation < 3; ++orientation)
      for (const auto& two : pairs)
        for (const auto& t1 : triples)
          for (const auto& t2 : triples) {
            if (orientation == 0) out.push_back(prism(two, t1, t2));
            if (orientation == 1) out.push_back(prism(t1, two, t2));
            if (orientation == 2) out.push_back(prism(t1, t2, two));
          }
    return out;
  }();
  return prisms;
}

int hamming_distance(Cell a, Cell b) {
  return (a.x != b.x) + (a.y != b.y) + (a.z != b.z);
}

CellSet two_intersection(std::span<const CellSet> sets) {
  if (sets.size() < 2) throw ParameterError("two_intersection needs at least two sets");
  std::uint64_t once = 0, twice = 0;
  for (CellSet s : sets) {
    twice |= once & s.bits;
    once |= s.bits;
  }
  return {twice};
}

bool is_cube_or_cube_minus_point(CellSet s) {
  const int n = s.count();
  if (n != 26 && n != 27) return false;
  for (CellSet c : all_cubes())
    if (c.includes(s)) return true;  // sizes 26/27 inside a 27-cell cube
  return false;
}

ThreeCubesReport lemma_three_cubes_verify() {
  const auto& cubes = all_cubes();
  struct Best {
    int minimum = std::numeric_limits<int>::max();
    int code = 0;
  };
  const Best best = chunked_reduce<Best>(
      64, 64, Best{},
      [&](std::uint64_t lo, std::uint64_t hi) {
        Best b;
        for (int a = static_cast<int>(lo); a < static_cast<int>(hi); ++a)
          for (int c = 0; c < 64; ++c)
            for (int e = 0; e < 64; ++e) {
              const CellSet t[3] = {cubes[a], cubes[c], cubes[e]};
              const int size = two_intersection(t).count();
              if (size < b.minimum) b = {size, a * 4096 + c * 64 + e};
            }
        return b;
      },
      [](Best x, Best y) { return y.minimum < x.minimum ? y : x; });
  return ThreeCubesReport{best.minimum,
                          {Cell::from_index(best.code / 4096), Cell::from_index(best.code / 64 % 64),
                           Cell::from_index(best.code % 64)},
                          64ull * 64 * 64};
}

FourCubesReport lemma_four_cubes_verify() {
  const auto& cubes = all_cubes();
  auto merge = [](FourCubesReport a, const FourCubesReport& b) {
    a.quadruples += b.quadruples;
    a.small += b.small;
    a.full_cube += b.full_cube;
    a.cube_minus_point += b.cube_minus_point;
    a.violations += b.violations;
    a.minimum = std::min(a.minimum, b.minimum);
    return a;
  };
  FourCubesReport init;
  init.minimum = std::numeric_limits<int>::max();
  return chunked_reduce<FourCubesReport>(
      64, 64, init,
      [&](std::uint64_t lo, std::uint64_t hi) {
        FourCubesReport r;
        r.minimum = std::numeric_limits<int>::max();
        for (int a = static_cast<int>(lo); a < static_cast<int>(hi); ++a)
          for (int b = 0; b < 64; ++b) {
            const std::uint64_t once2 = cubes[a].bits | cubes[b].bits;
            const std::uint64_t twice2 = cubes[a].bits & cubes[b].bits;
            for (int c = 0; c < 64; ++c) {
              const std::uint64_t twice3 = twice2 | (once2 & cubes[c].bits);
              const std::uint64_t once3 = once2 | cubes[c].bits;
              for (int d = 0; d < 64; ++d) {
                const CellSet inter{twice3 | (once3 & cubes[d].bits)};
                const int size = inter.count();
                ++r.quadruples;
                r.minimum = std::min(r.minimum, size);
                if (size > 29) continue;
                ++r.small;
                if (!is_cube_or_cube_minus_point(inter)) ++r.violations;
                else if (size == 27) ++r.full_cube;
                else ++r.cube_minus_point;
              }
            }
          }
        return r;
      },
      merge);
}

std::uint16_t square_avoiding(int a, int b) {
  std::uint16_t mask = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (x != a && y != b) mask |= static_cast<std::uint16_t>(1u << (x + 4 * y));
  return mask;
}

SquareMinima square_two_intersection_minima() {
  std::array<std::uint16_t, 16> sq{};
  for (int i = 0; i < 16; ++i) sq[i] = square_avoiding(i % 4, i / 4);
  auto two = [](std::initializer_list<std::uint16_t> sets) {
    unsigned once = 0, twice = 0;
    for (auto s : sets) {
      twice |= once & s;
      once |= s;
    }
    return std::popcount(twice);
  };
  SquareMinima m;
  m.pairs = m.triples = m.distinct_quadruples = std::numeric_limits<int>::max();
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      m.pairs = std::min(m.pairs, two({sq[a], sq[b]}));
      for (int c = 0; c < 16; ++c) {
        m.triples = std::min(m.triples, two({sq[a], sq[b], sq[c]}));
        for (int d = 0; d < 16; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          const int v = two({sq[a], sq[b], sq[c], sq[d]});
          if (v < m.distinct_quadruples) {
            m.distinct_quadruples = v;
            m.quadruple_witness = {a, b, c, d};
          }
        }
      }
    }
  return m;
}

PrismCoverReport prism_cover_impossible() {
  const auto& cubes = all_cubes();
  const auto& prisms = all_prisms_233();
  const std::uint64_t covers = chunked_reduce<std::uint64_t>(
      64, 64, 0,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t found = 0;
        for (auto a = lo; a < hi; ++a)
          for (int b = 0; b < 64; ++b)
            for (int c = 0; c < 64; ++c) {
              const std::uint64_t missing = ~(cubes[a].bits | cubes[b].bits | cubes[c].bits);
              for (CellSet p : prisms)
                if ((missing & ~p.bits) == 0) ++found;
            }
        return found;
      },
      [](std::uint64_t x, std::uint64_t y) { return x + y; });
  return PrismCoverReport{covers == 0, 64ull * 64 * 64 * prisms.size(), covers};
}

void check_partition(std::span<const CellSet> parts, CellSet universe) {
  std::uint64_t seen = 0;
  for (CellSet p : parts) {
    if (p.bits & seen) throw ParameterError("partition parts overlap");
    if (p.bits & ~universe.bits) throw ParameterError("partition part outside the grid");
    seen |= p.bits;
  }
  if (seen != universe.bits) throw ParameterError("partition parts do not cover the grid");
}

bool check_partition_condition(std::span<const CellSet> p, std::span<const CellSet> q,
                               std::span<const CellSet> r) {
  for (auto parts : {p, q, r}) {
    if (parts.size() != 4) throw ParameterError("each partition must have 4 parts");
    check_partition(parts, kAllCells);
    for (CellSet part : parts)
      if (part.empty()) throw ParameterError("partition parts must be non-empty");
  }
  const auto& cubes = all_cubes();
  for (CellSet a : p)
    for (CellSet b : q)
      for (CellSet c : r) {
        const CellSet u = a | b | c;
        if (std::none_of(cubes.begin(), cubes.end(), [&](CellSet k) { return u.includes(k); }))
          return false;
      }
  return true;
}

Grid make_grid(int m, int q) {
  if (m < 1 || q < 1) throw ParameterError("grid needs m >= 1 and q >= 1");
  if (sat_pow(q, m) > 64) throw ParameterError("grid [q]^m must have at most 64 cells");
  return Grid{m, q};
}

int Grid::cells() const { return static_cast<int>(sat_pow(q, m)); }

CellSet Grid::universe() const {
  const int n = cells();
  return {n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
}

std::vector<int> Grid::coords(int cell) const {
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) {
    c[i] = cell % q;
    cell /= q;
  }
  return c;
}

CellSet Grid::ball(int center) const {
  const auto c = coords(center);
  CellSet s;
  for (int cell = 0; cell < cells(); ++cell) {
    const auto x = coords(cell);
    for (int i = 0; i < m; ++i)
      if (x[i] == c[i]) {
        s.bits |= std::uint64_t{1} << cell;
        break;
      }
  }
  return s;
}

Strategy strategy_from_bipartite_partitions(int m, int q, const std::vector<Partition>& partitions) {
  const Grid grid = make_grid(m, q);
  if (static_cast<int>(partitions.size()) != m)
    throw ParameterError("need one partition per right vertex");
  for (const auto& part : partitions) {
    if (static_cast<int>(part.size()) != q) throw ParameterError("each partition needs q parts");
    check_partition(part, grid.universe());
  }
  const int cells = grid.cells();
  std::vector<CellSet> balls(cells);
  for (int c = 0; c < cells; ++c) balls[c] = grid.ball(c);

  Strategy s{q, std::vector<std::vector<Color>>(2 * m, std::vector<Color>(cells))};
  // Right vertex t sees the left colors, whose view index is the cell index.
  for (int t = 0; t < m; ++t)
    for (int cell = 0; cell < cells; ++cell)
      for (int i = 0; i < q; ++i)
        if (partitions[t][i].contains(cell)) s.tables[m + t][cell] = static_cast<Color>(i);

  // Left vertices see the right guesses-to-be (i_0, ..., i_{m-1}), also a cell index.
  for (int view = 0; view < cells; ++view) {
    const auto picks = grid.coords(view);
    std::uint64_t uni = 0;
    for (int t = 0; t < m; ++t) uni |= partitions[t][picks[t]].bits;
    const std::uint64_t rest = grid.universe().bits & ~uni;
    int center = -1;
    for (int c = 0; c < cells && center < 0; ++c)
      if ((rest & ~balls[c].bits) == 0) center = c;
    if (center < 0) {
      std::string tuple;
      for (int t = 0; t < m; ++t) tuple += (t ? "," : "") + std::to_string(picks[t]);
      throw ConditionViolated("union of parts (" + tuple +
                              ") leaves cells outside every Hamming ball");
    }
    const auto cc = grid.coords(center);
    for (int l = 0; l < m; ++l) s.tables[l][view] = static_cast<Color>(cc[l]);
  }
  return s;
}

namespace {

// Per-labeling part masks of [3]^2, labelings enumerated so that cell 0 is the
// most significant label (lexicographic order of label vectors).
struct K22Tables {
  std::vector<std::array<std::uint16_t, 3>> parts;
  std::array<bool, 512> has_square{};

  K22Tables() {
    const Grid grid{2, 3};
    std::vector<std::uint16_t> squares;
    for (int c = 0; c < 9; ++c) squares.push_back(static_cast<std::uint16_t>(0x1ff & ~grid.ball(c).bits));
    for (int mask = 0; mask < 512; ++mask)
      has_square[mask] = std::any_of(squares.begin(), squares.end(),
                                     [&](std::uint16_t s) { return (mask & s) == s; });
    parts.resize(19683);
    for (int r = 0; r < 19683; ++r) {
      std::array<std::uint16_t, 3> p{};
      int rest = r;
      for (int cell = 8; cell >= 0; --cell) {
        p[rest % 3] |= static_cast<std::uint16_t>(1u << cell);
        rest /= 3;
      }
      parts[r] = p;
    }
  }

  bool valid(int a, int b) const {
    for (auto pi : parts[a])
      for (auto qj : parts[b])
        if (!has_square[pi | qj]) return false;
    return true;
  }
};

const K22Tables& k22_tables() {
  static const K22Tables t;
  return t;
}

}  // namespace

std::vector<Partition> k22_certificate_search() {
  const auto& t = k22_tables();
  for (int a = 0; a < 19683; ++a)
    for (int b = 0; b < 19683; ++b)
      if (t.valid(a, b)) {
        std::vector<Partition> out(2);
        for (int i = 0; i < 3; ++i) {
          out[0].push_back(CellSet{t.parts[a][i]});
          out[1].push_back(CellSet{t.parts[b][i]});
        }
        return out;
      }
  throw Error("no K_{2,2} certificate found");
}

std::uint64_t k22_certificate_count() {
  const auto& t = k22_tables();
  return chunked_reduce<std::uint64_t>(
      19683, 64, 0,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t n = 0;
        for (auto a = lo; a < hi; ++a)
          for (int b = 0; b < 19683; ++b) n += t.valid(static_cast<int>(a), b);
        return n;
      },
      [](std::uint64_t x, std::uint64_t y) { return x + y; });
}

}  // namespace hatlab::cube
