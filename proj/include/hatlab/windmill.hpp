#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hatlab/game.hpp"
#include "hatlab/graph.hpp"

namespace hatlab::windmill {

/// C inside [2k-2]^(k-1): the union of the side-(k-1) subcubes C_v whose
/// binary label v has odd weight. Membership of x depends only on the parity
/// of |{i : x_i >= k-1}|.
struct ParitySet {
  int k = 0;
  int q = 0;
  SolvableSet members;
};

enum class Side { c, complement };

ParitySet parity_set(int k);
/// C or its complement as an assignment set of K_{k-1}.
SolvableSet parity_side(int k, Side side);
/// Each vertex infers the subcube from the side's parity, then plays the
/// (k-1)-color sum strategy inside it.
Strategy parity_set_strategy(int k, Side side);

struct ResidueSet {
  int m = 0;
  std::vector<int> members;  // sorted, each in [m]

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;
};

ResidueSet make_residue_set(int m, std::vector<int> members);
ResidueSet translate(const ResidueSet& a, int shift);

struct DifferenceDisjointFamily {
  int m = 0;
  std::vector<ResidueSet> sets;
};

/// A_i = {x in Z/d^n : base-d digit i-1 of x is 0}, i = 1..n.
DifferenceDisjointFamily difference_disjoint_family(int d, int n);
/// True iff the difference sets A_i - A_i share no nonzero residue.
bool is_difference_disjoint(const DifferenceDisjointFamily& f);
/// |(A_1 + c_1) & ... & (A_n + c_n)|.
std::size_t translate_intersection_size(const DifferenceDisjointFamily& f,
                                        std::span<const int> shifts);

/// S(A) = {x in [q]^(k-1) : sum(x) mod q not in A}; vertex i targets the i-th
/// smallest residue outside A. Requires a.m == q and q - |A| == k - 1.
SolvableConstruction sum_avoid_set(const ResidueSet& a, int k, int q);

/// One solvable blade set S_{i,j} together with its restricted strategy g_{i,j}.
struct BladeSet {
  SolvableSet set;
  Strategy strategy;
};

/// q products P_i = complement(S_{i,1}) x ... x complement(S_{i,n}).
struct ProductCertificate {
  int k = 0;
  int n = 0;
  int q = 0;
  std::vector<std::vector<BladeSet>> products;  // products[i][j]
};

ProductCertificate product_certificate_theorem13(int k, int n);
ProductCertificate product_certificate_theorem14(int d, int n);

inline constexpr std::uint64_t kDefaultBladeBudget = 10'000'000;

/// Every pair of products is separated by some blade whose two complements
/// are disjoint.
bool certificate_disjointness_check(const ProductCertificate& c,
                                    std::uint64_t budget = kDefaultBladeBudget);
/// Restricted verification of every (product, blade) strategy on its set.
bool certificate_blades_solvable(const ProductCertificate& c);

/// Strategy on W_{k,n} assembled from a certificate. Non-axle colorings are
/// classified into the products they lie in, uncovered ones into class 0;
/// the axle guesses the class. A blade vertex reads the axle color a and
/// plays g_{a,j} on its blade.
class WindmillStrategy {
 public:
  const Graph& graph() const { return graph_; }
  int q() const { return q_; }

  Color guess(int v, std::span<const Color> colors) const;
  int axle_class(std::span<const Color> colors) const;
  GuessFn guess_fn() const;

  /// Dense tables in the game-core format. Blade tables are indexed over
  /// (axle color, blade-mate colors). Throws InfeasibleError when the axle
  /// table q^((k-1)n) exceeds `budget` entries.
  Strategy dense(std::uint64_t budget = kDefaultAssignmentBudget / 4) const;

 private:
  friend WindmillStrategy assemble_windmill_strategy(const ProductCertificate& c);

  Graph graph_;
  int k_ = 0, n_ = 0, q_ = 0;
  std::uint64_t blade_space_ = 0;                         // q^(k-1)
  std::vector<std::vector<Color>> blade_tables_;          // per non-axle vertex
  std::vector<std::vector<std::uint64_t>> outside_;       // [blade][coloring] -> class mask
};

WindmillStrategy assemble_windmill_strategy(const ProductCertificate& c);

/// 2(k-1) q^(k-2) < q^(k-1) for every q in [2k-1, 4k].
bool upper_bound_counting_check_thm13(int k);
/// (d^(n-1)+1)^n > (d^n+1)^(n-1) and the full counting chain
/// (q+1) ((q+2-k)(q+1)^(k-2))^n > (q+1)^((k-1)n) for q = d^n, k = d^n - d^(n-1) + 1.
bool upper_bound_counting_check_thm14(int d, int n);

}  // namespace hatlab::windmill
