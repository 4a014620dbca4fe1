#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hatlab/game.hpp"

namespace hatlab::cube {

/// Cell of [4]^3 with linear index x + 4y + 16z.
struct Cell {
  int x = 0, y = 0, z = 0;

  constexpr int index() const { return x + 4 * y + 16 * z; }
  static constexpr Cell from_index(int i) { return Cell{i % 4, i / 4 % 4, i / 16}; }
  friend constexpr bool operator==(Cell, Cell) = default;
};

/// Indicator over at most 64 cells: bit i set iff cell i is a member.
struct CellSet {
  std::uint64_t bits = 0;

  constexpr int count() const { return std::popcount(bits); }
  constexpr bool contains(int i) const { return bits >> i & 1u; }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool includes(CellSet other) const { return (other.bits & ~bits) == 0; }

  friend constexpr CellSet operator|(CellSet a, CellSet b) { return {a.bits | b.bits}; }
  friend constexpr CellSet operator&(CellSet a, CellSet b) { return {a.bits & b.bits}; }
  friend constexpr bool operator==(CellSet, CellSet) = default;
};

inline constexpr CellSet kAllCells{~std::uint64_t{0}};

/// Complement within [4]^3.
constexpr CellSet complement(CellSet s) { return {~s.bits}; }

/// 16 hex digits of the 64-bit indicator (bit i = cell i), most significant first.
std::string to_hex(CellSet s);
CellSet cellset_from_hex(const std::string& hex);

/// Cells sharing at least one coordinate with p (Hamming distance < 3).
CellSet hamming_ball(Cell p);
/// The 3x3x3 cube avoiding every coordinate of p; the complement of hamming_ball(p).
CellSet cube_avoiding(Cell p);
const std::array<CellSet, 64>& all_cubes();
CellSet prism(std::span<const int> xs, std::span<const int> ys, std::span<const int> zs);
/// The 288 prisms of shape 2x3x3 in any orientation.
const std::vector<CellSet>& all_prisms_233();

int hamming_distance(Cell a, Cell b);

/// Cells lying in at least two of the listed sets (counted by position).
CellSet two_intersection(std::span<const CellSet> sets);

bool is_cube_or_cube_minus_point(CellSet s);

struct ThreeCubesReport {
  int minimum = 0;
  std::array<Cell, 3> witness{};  // first ordered triple attaining the minimum
  std::uint64_t triples = 0;
};
ThreeCubesReport lemma_three_cubes_verify();

struct FourCubesReport {
  std::uint64_t quadruples = 0;
  std::uint64_t small = 0;  // two-intersection of at most 29 cells
  std::uint64_t full_cube = 0;
  std::uint64_t cube_minus_point = 0;
  std::uint64_t violations = 0;
  int minimum = 0;
};
FourCubesReport lemma_four_cubes_verify();

/// The 3x3 square of [4]^2 avoiding (a, b), as a 16-bit mask over a + 4b.
std::uint16_t square_avoiding(int a, int b);

struct SquareMinima {
  int pairs = 0;
  int triples = 0;
  int distinct_quadruples = 0;
  std::array<int, 4> quadruple_witness{};  // square indices a + 4b
};
SquareMinima square_two_intersection_minima();

struct PrismCoverReport {
  bool impossible = false;
  std::uint64_t combinations = 0;
  std::uint64_t covers = 0;
};
PrismCoverReport prism_cover_impossible();

/// Throws ParameterError unless the parts are pairwise disjoint and cover `universe`.
void check_partition(std::span<const CellSet> parts, CellSet universe);

/// True iff every P_i | Q_j | R_k contains one of the 64 cubes.
bool check_partition_condition(std::span<const CellSet> p, std::span<const CellSet> q,
                               std::span<const CellSet> r);

/// [q]^m as at most 64 cells, cell index sum_i c_i q^i.
struct Grid {
  int m = 0;
  int q = 0;

  int cells() const;
  CellSet universe() const;
  std::vector<int> coords(int cell) const;
  /// Cells sharing at least one coordinate with `center`.
  CellSet ball(int center) const;
};

Grid make_grid(int m, int q);

using Partition = std::vector<CellSet>;

/// Strategy on K_{m,m} (left side 0..m-1, right side m..2m-1) from one
/// q-part partition of [q]^m per right vertex. Right vertex t guesses the index
/// of the part of partitions[t] holding the left colors; the left side assumes
/// every right guess is wrong and guesses a ball center covering what remains.
/// Throws ConditionViolated when some union's complement lies in no ball.
Strategy strategy_from_bipartite_partitions(int m, int q, const std::vector<Partition>& partitions);

/// First (lexicographic in the per-cell part labels) pair of 3-part partitions
/// of [3]^2 such that every P_i | Q_j contains a 2x2 square.
std::vector<Partition> k22_certificate_search();
std::uint64_t k22_certificate_count();

}  // namespace hatlab::cube
