#include "hatlab/windmill.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hatlab/error.hpp"

namespace hatlab::windmill {

namespace {

std::uint64_t blade_space(int q, int dims, std::uint64_t budget) {
  const std::uint64_t size = sat_pow(q, dims);
  if (size > budget) throw InfeasibleError("blade color space exceeds budget", size, budget);
  return size;
}

void decode(std::uint64_t idx, int q, std::span<Color> out) {
  for (auto& c : out) {
    c = static_cast<Color>(idx % q);
    idx /= q;
  }
}

// Lexicographic enumeration of [q]^m (first coordinate most significant).
template <typename Fn>
void for_each_vector(int m, int q, Fn&& fn) {
  std::vector<Color> x(m, 0);
  for (;;) {
    fn(std::as_const(x));
    int i = m - 1;
    while (i >= 0 && ++x[i] == q) x[i--] = 0;
    if (i < 0) return;
  }
}

// Table of vertex i in K_m: fn(others) -> guess, others in ascending vertex order.
template <typename Fn>
std::vector<Color> clique_table(int m, int q, Fn&& fn) {
  const std::uint64_t size = sat_pow(q, m - 1);
  std::vector<Color> table(size);
  std::vector<Color> others(m - 1);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    decode(idx, q, others);
    table[idx] = fn(std::as_const(others));
  }
  return table;
}

std::uint64_t local_index(std::span<const Color> x, int q) {
  std::uint64_t idx = 0, w = 1;
  for (Color c : x) {
    idx += c * w;
    w *= q;
  }
  return idx;
}

// Complement of each blade set as a bitset over local colorings.
std::vector<std::uint64_t> complement_bits(const SolvableSet& s, std::uint64_t space) {
  std::vector<std::uint64_t> bits((space + 63) / 64, ~std::uint64_t{0});
  if (space % 64) bits.back() = (std::uint64_t{1} << (space % 64)) - 1;
  for (const auto& x : s.members) {
    const auto idx = local_index(x, s.q);
    bits[idx / 64] &= ~(std::uint64_t{1} << (idx % 64));
  }
  return bits;
}

}  // namespace

SolvableSet parity_side(int k, Side side) {
  if (k < 2) throw ParameterError("parity sets require k >= 2");
  const int q = 2 * k - 2;
  const int m = k - 1;
  blade_space(q, m, kDefaultBladeBudget);
  std::vector<std::vector<Color>> members;
  for_each_vector(m, q, [&](const std::vector<Color>& x) {
    int high = 0;
    for (Color c : x) high += c >= k - 1;
    if ((high % 2 == 1) == (side == Side::c)) members.push_back(x);
  });
  return SolvableSet{m, q, std::move(members)};
}

ParitySet parity_set(int k) {
  SolvableSet c = parity_side(k, Side::c);
  return ParitySet{k, 2 * k - 2, std::move(c)};
}

Strategy parity_set_strategy(int k, Side side) {
  if (k < 2) throw ParameterError("parity sets require k >= 2");
  const int q = 2 * k - 2;
  const int m = k - 1;
  const int want_parity = side == Side::c ? 1 : 0;
  Strategy s{q, {}};
  for (int i = 0; i < m; ++i) {
    s.tables.push_back(clique_table(m, q, [&](const std::vector<Color>& others) {
      int high = 0, residue_sum = 0;
      for (Color c : others) {
        const int bit = c >= m;
        high += bit;
        residue_sum += c - bit * m;
      }
      const int own_bit = ((want_parity - high) % 2 + 2) % 2;
      const int own_residue = ((i - residue_sum) % m + m) % m;
      return static_cast<Color>(own_bit * m + own_residue);
    }));
  }
  return s;
}

ResidueSet make_residue_set(int m, std::vector<int> members) {
  if (m < 1) throw ParameterError("modulus must be positive");
  for (int x : members)
    if (x < 0 || x >= m) throw ParameterError("residue out of range");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return ResidueSet{m, std::move(members)};
}

ResidueSet translate(const ResidueSet& a, int shift) {
  std::vector<int> out;
  out.reserve(a.members.size());
  for (int x : a.members) out.push_back(((x + shift) % a.m + a.m) % a.m);
  return make_residue_set(a.m, std::move(out));
}

DifferenceDisjointFamily difference_disjoint_family(int d, int n) {
  if (d < 2 || n < 1) throw ParameterError("difference_disjoint_family requires d >= 2, n >= 1");
  const std::uint64_t m = sat_pow(d, n);
  if (m > (1u << 20)) throw InfeasibleError("modulus d^n too large", m, 1u << 20);
  DifferenceDisjointFamily f{static_cast<int>(m), {}};
  for (int i = 1; i <= n; ++i) {
    const std::uint64_t place = sat_pow(d, i - 1);
    std::vector<int> members;
    for (std::uint64_t x = 0; x < m; ++x)
      if (x / place % d == 0) members.push_back(static_cast<int>(x));
    f.sets.push_back(ResidueSet{f.m, std::move(members)});
  }
  return f;
}

bool is_difference_disjoint(const DifferenceDisjointFamily& f) {
  const int m = f.m;
  if (f.sets.empty()) return m == 1;
  std::vector<char> common(m, 1);
  for (const auto& a : f.sets) {
    if (a.m != m) throw ParameterError("family sets use different moduli");
    std::vector<char> diff(m, 0);
    for (int x : a.members)
      for (int y : a.members) diff[((x - y) % m + m) % m] = 1;
    for (int r = 0; r < m; ++r) common[r] &= diff[r];
  }
  for (int r = 1; r < m; ++r)
    if (common[r]) return false;
  return true;
}

std::size_t translate_intersection_size(const DifferenceDisjointFamily& f,
                                        std::span<const int> shifts) {
  if (shifts.size() != f.sets.size()) throw ParameterError("one shift per set required");
  std::vector<int> hits(f.m, 0);
  for (std::size_t i = 0; i < f.sets.size(); ++i)
    for (int x : translate(f.sets[i], shifts[i]).members) ++hits[x];
  return static_cast<std::size_t>(
      std::count(hits.begin(), hits.end(), static_cast<int>(f.sets.size())));
}

SolvableConstruction sum_avoid_set(const ResidueSet& a, int k, int q) {
  if (a.m != q) throw ParameterError("residue set modulus must equal q");
  if (q - static_cast<int>(a.members.size()) != k - 1)
    throw ParameterError("sum_avoid_set requires q - |A| == k - 1");
  if (k < 1) throw ParameterError("sum_avoid_set requires k >= 1");
  const int m = k - 1;
  std::vector<int> targets;
  for (int r = 0; r < q; ++r)
    if (!std::binary_search(a.members.begin(), a.members.end(), r)) targets.push_back(r);

  SolvableConstruction out;
  out.strategy.q = q;
  for (int i = 0; i < m; ++i) {
    out.strategy.tables.push_back(clique_table(m, q, [&](const std::vector<Color>& others) {
      int sum = 0;
      for (Color c : others) sum += c;
      return static_cast<Color>(((targets[i] - sum) % q + q) % q);
    }));
  }
  blade_space(q, m, kDefaultBladeBudget);
  std::vector<std::vector<Color>> members;
  if (m > 0) {
    for_each_vector(m, q, [&](const std::vector<Color>& x) {
      int sum = 0;
      for (Color c : x) sum += c;
      if (!std::binary_search(a.members.begin(), a.members.end(), sum % q)) members.push_back(x);
    });
  } else if (!std::binary_search(a.members.begin(), a.members.end(), 0)) {
    members.emplace_back();
  }
  out.set = SolvableSet{m, q, std::move(members)};
  return out;
}

ProductCertificate product_certificate_theorem13(int k, int n) {
  if (k < 2) throw ParameterError("2k-2 certificate requires k >= 2");
  const int q = 2 * k - 2;
  int bits_needed = 0;
  while ((1 << bits_needed) < q) ++bits_needed;
  if (n < bits_needed)
    throw ParameterError("2k-2 certificate requires n >= ceil(log2(2k-2)) = " +
                         std::to_string(bits_needed));
  // Products use C_{x_i} with C_0 = C, C_1 = complement(C); the blade set is
  // the complement of that side.
  const BladeSet on_c{parity_side(k, Side::c), parity_set_strategy(k, Side::c)};
  const BladeSet on_comp{parity_side(k, Side::complement), parity_set_strategy(k, Side::complement)};
  ProductCertificate cert{k, n, q, {}};
  for (int x = 0; x < q; ++x) {
    std::vector<BladeSet> blades;
    for (int i = 0; i < n; ++i) {
      const bool digit = x >> i & 1;
      blades.push_back(digit ? on_c : on_comp);
    }
    cert.products.push_back(std::move(blades));
  }
  return cert;
}

ProductCertificate product_certificate_theorem14(int d, int n) {
  if (d < 2 || n < 1) throw ParameterError("d^n certificate requires d >= 2, n >= 1");
  const std::uint64_t q64 = sat_pow(d, n);
  const std::uint64_t small = sat_pow(d, n - 1);
  if (q64 > static_cast<std::uint64_t>(kMaxColors))
    throw InfeasibleError("q = d^n exceeds the color limit", q64, kMaxColors);
  const int q = static_cast<int>(q64);
  const int k = q - static_cast<int>(small) + 1;
  blade_space(q, k - 1, kDefaultBladeBudget);
  const auto family = difference_disjoint_family(d, n);
  ProductCertificate cert{k, n, q, {}};
  for (int j = 0; j < q; ++j) {
    std::vector<BladeSet> blades;
    for (int i = 0; i < n; ++i) {
      auto built = sum_avoid_set(translate(family.sets[i], j), k, q);
      blades.push_back(BladeSet{std::move(built.set), std::move(built.strategy)});
    }
    cert.products.push_back(std::move(blades));
  }
  return cert;
}

bool certificate_disjointness_check(const ProductCertificate& c, std::uint64_t budget) {
  const std::uint64_t space = blade_space(c.q, c.k - 1, budget);
  const std::size_t count = c.products.size();
  std::vector<std::vector<std::vector<std::uint64_t>>> comp(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (static_cast<int>(c.products[i].size()) != c.n)
      throw ParameterError("product has the wrong number of blades");
    for (const auto& b : c.products[i]) comp[i].push_back(complement_bits(b.set, space));
  }
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      bool separated = false;
      for (int j = 0; j < c.n && !separated; ++j) {
        bool meet = false;
        for (std::size_t w = 0; w < comp[a][j].size() && !meet; ++w)
          meet = (comp[a][j][w] & comp[b][j][w]) != 0;
        separated = !meet;
      }
      if (!separated) return false;
    }
  return true;
}

bool certificate_blades_solvable(const ProductCertificate& c) {
  if (c.k < 2) return true;
  const Graph blade = build_graph(Family::complete, {c.k - 1});
  for (const auto& product : c.products)
    for (const auto& b : product)
      if (!verify_strategy(blade, c.q, b.strategy, b.set).wins) return false;
  return true;
}

WindmillStrategy assemble_windmill_strategy(const ProductCertificate& c) {
  if (static_cast<int>(c.products.size()) != c.q)
    throw CertificateInvalid("certificate must contain exactly q products");
  if (c.q > 64) throw ParameterError("windmill assembly supports q <= 64");
  if (!certificate_disjointness_check(c)) throw CertificateInvalid("certificate products overlap");

  WindmillStrategy ws;
  ws.k_ = c.k;
  ws.n_ = c.n;
  ws.q_ = c.q;
  ws.graph_ = build_graph(Family::windmill, {c.k, c.n});
  ws.blade_space_ = sat_pow(c.q, c.k - 1);
  const int q = c.q;
  const int m = c.k - 1;

  ws.outside_.assign(c.n, std::vector<std::uint64_t>(ws.blade_space_, 0));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < c.n; ++j) {
      const auto bits = complement_bits(c.products[i][j].set, ws.blade_space_);
      for (std::uint64_t r = 0; r < ws.blade_space_; ++r)
        if (bits[r / 64] >> (r % 64) & 1) ws.outside_[j][r] |= std::uint64_t{1} << i;
    }

  // Blade vertex tables over (axle color, blade mates).
  const std::uint64_t mates = sat_pow(q, m - 1);
  ws.blade_tables_.assign(ws.graph_.n_vertices(), {});
  for (int j = 0; j < c.n; ++j)
    for (int t = 0; t < m; ++t) {
      auto& table = ws.blade_tables_[1 + j * m + t];
      table.resize(q * mates);
      for (int a = 0; a < q; ++a) {
        const Strategy& g = c.products[a][j].strategy;
        if (g.q != q || static_cast<int>(g.tables.size()) != m || g.tables[t].size() != mates)
          throw CertificateInvalid("blade strategy has the wrong shape");
        for (std::uint64_t idx = 0; idx < mates; ++idx) table[a + q * idx] = g.tables[t][idx];
      }
    }
  return ws;
}

int WindmillStrategy::axle_class(std::span<const Color> colors) const {
  const int m = k_ - 1;
  std::uint64_t mask = ~std::uint64_t{0};
  for (int j = 0; j < n_; ++j) mask &= outside_[j][local_index(colors.subspan(1 + j * m, m), q_)];
  return mask ? std::countr_zero(mask) : 0;
}

Color WindmillStrategy::guess(int v, std::span<const Color> colors) const {
  if (v == 0) return static_cast<Color>(axle_class(colors));
  const int m = k_ - 1;
  const int first = 1 + (v - 1) / m * m;
  std::uint64_t idx = 0, w = 1;
  for (int u = first; u < first + m; ++u) {
    if (u == v) continue;
    idx += colors[u] * w;
    w *= q_;
  }
  return blade_tables_[v][colors[0] + q_ * idx];
}

GuessFn WindmillStrategy::guess_fn() const {
  return [this](int v, std::span<const Color> colors) { return guess(v, colors); };
}

Strategy WindmillStrategy::dense(std::uint64_t budget) const {
  const std::uint64_t axle_size = sat_pow(q_, (k_ - 1) * n_);
  if (axle_size > budget) throw InfeasibleError("axle table exceeds budget", axle_size, budget);
  Strategy s{q_, blade_tables_};
  auto& axle = s.tables[0];
  axle.resize(axle_size);
  // Axle index = sum_j r_j * blade_space^j; fill blade by blade from the last.
  auto fill = [&](auto&& self, int j, std::uint64_t base, std::uint64_t mask) -> void {
    if (j < 0) {
      axle[base] = static_cast<Color>(mask ? std::countr_zero(mask) : 0);
      return;
    }
    for (std::uint64_t r = 0; r < blade_space_; ++r)
      self(self, j - 1, base * blade_space_ + r, mask & outside_[j][r]);
  };
  fill(fill, n_ - 1, 0, ~std::uint64_t{0});
  return s;
}

bool upper_bound_counting_check_thm13(int k) {
  if (k < 2) throw ParameterError("thm13 check requires k >= 2");
  for (int q = 2 * k - 1; q <= 4 * k; ++q) {
    const BigInt lhs = BigInt(2 * (k - 1)) * big_pow(q, k - 2);
    if (!(lhs < big_pow(q, k - 1))) return false;
  }
  return true;
}

bool upper_bound_counting_check_thm14(int d, int n) {
  if (d < 2 || n < 1) throw ParameterError("thm14 check requires d >= 2, n >= 1");
  const BigInt q = big_pow(d, n);
  const BigInt small = big_pow(d, n - 1);
  if (!(big_pow(small + 1, n) > big_pow(q + 1, n - 1))) return false;
  const BigInt k = q - small + 1;
  if (k > 1'000'000) throw InfeasibleError("thm14 exponents too large", kSaturated, 1'000'000);
  const auto k64 = k.convert_to<std::uint64_t>();
  // Each complement of a solvable set with q+1 colors keeps at least
  // (q+1)^(k-1) - (k-1)(q+1)^(k-2) = (q+2-k)(q+1)^(k-2) colorings.
  const BigInt spare = q + 2 - k;
  if (spare != small + 1) return false;
  const BigInt per_blade = spare * big_pow(q + 1, k64 - 2);
  return (q + 1) * big_pow(per_blade, n) > big_pow(q + 1, (k64 - 1) * n);
}

}  // namespace hatlab::windmill
