// Acceptance suite: one line per criterion, each with a wall-clock bound.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hatlab/cli.hpp"
#include "hatlab/cover.hpp"
#include "hatlab/cube.hpp"
#include "hatlab/game.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/windmill.hpp"
#include "oracles.hpp"

using namespace hatlab;

namespace {

// Collects failures for one criterion; an empty list means pass.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

// Runs body and fails the check when it takes longer than bound_ms.
template <typename Fn>
void timed(Check& c, const std::string& what, double bound_ms, Fn&& body) {
  const auto start = Clock::now();
  body();
  const double ms = ms_since(start);
  if (ms > bound_ms)
    c.expect(false, what + " took " + std::to_string(static_cast<long>(ms)) + " ms");
}

Graph complete(int n) { return build_graph(Family::complete, {n}); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out, err;
  hatlab::cli::run(args, out, err);
  return out.str();
}

// ---------------------------------------------------------------- criteria

void complete_graph_baseline(Check& c) {
  for (int n = 1; n <= 5; ++n) {
    const Strategy s = complete_sum_strategy(n, n);
    const auto r = verify_strategy(complete(n), n, s);
    const auto o = oracle::play_all(complete(n), n, s);
    c.expect(r.wins && r.assignments_checked == static_cast<std::uint64_t>(oracle::ipow(n, n)),
             "K_" + std::to_string(n) + " sum strategy");
    c.expect(o.min_correct == 1 && o.max_correct == 1,
             "K_" + std::to_string(n) + " exactly one correct guesser");
  }
}

void coverability_examples(Check& c) {
  const auto sq = oracle::grid({2, 2});
  const auto r = cover::coverable(sq);
  const auto* p = std::get_if<cover::AxisPartition>(&r);
  c.expect(p && oracle::partition_ok(sq, p->axis_of), "[2]^2 partition");
  const auto bad = oracle::grid({2, 3});
  const auto v = cover::coverable(bad);
  const auto* h = std::get_if<cover::HallViolator>(&v);
  c.expect(h && oracle::violator_ok(bad, h->subset), "[2]x[3] violator");
}

void h_n2(Check& c) {
  const auto r = cover::h_lower_check(2, cover::SweepMode::exhaustive, 0, 0);
  c.expect(r.sets_checked == binomial(25, 5), "53130 five-point sets checked");
  c.expect(r.failures == 0, "every five-point set coverable");
  const auto six = cover::noncoverable_construction(2);
  c.expect(six.size() == 6, "six-point construction");
  c.expect(!cover::is_coverable(six) && !oracle::coverable_by_labelling(six), "six-point set not coverable");
}

void noncoverable_33(Check& c) {
  const auto s = cover::noncoverable_construction(3);
  c.expect(s.size() == 33, "33 points");
  const auto r = cover::coverable(s);
  const auto* h = std::get_if<cover::HallViolator>(&r);
  c.expect(h && oracle::violator_ok(s, h->subset), "matching test fails with a valid violator");
}

void oracle_equivalence(Check& c) {
  std::mt19937_64 rng(20240601);
  std::uint64_t disagreements = 0, noncoverable = 0;
  for (int trial = 0; trial < 10'000; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int side = 2 + static_cast<int>(rng() % 3);
    std::size_t cap = 1;
    for (int i = 0; i < d; ++i) cap *= side;
    const std::size_t size = 1 + rng() % std::min<std::size_t>(9, cap);
    std::set<cover::Point> pts;
    while (pts.size() < size) {
      cover::Point pt(d);
      for (auto& x : pt) x = static_cast<std::int64_t>(rng() % side);
      pts.insert(pt);
    }
    const auto s = cover::make_point_set(d, {pts.begin(), pts.end()});
    const bool matching = cover::is_coverable(s);
    const bool brute = cover::coverable_bruteforce(s);
    disagreements += matching != brute || brute != oracle::coverable_by_labelling(s);
    noncoverable += !brute;
  }
  c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
  c.expect(noncoverable > 0, "sample contains non-coverable sets");
}

void cube_sweeps(Check& c) {
  timed(c, "three cubes", 5'000, [&] {
    c.expect(cube::lemma_three_cubes_verify().minimum == 20, "three-cube minimum 20");
  });
  timed(c, "square minima", 1'000, [&] {
    const auto m = cube::square_two_intersection_minima();
    c.expect(m.pairs == 4 && m.triples == 8 && m.distinct_quadruples == 12, "square minima (4,8,12)");
  });
  timed(c, "four cubes", 120'000, [&] {
    const auto r = cube::lemma_four_cubes_verify();
    c.expect(r.quadruples == 16'777'216ull && r.violations == 0, "four cubes: zero violations");
  });
  timed(c, "prism cover", 120'000, [&] {
    const auto r = cube::prism_cover_impossible();
    c.expect(r.impossible && r.combinations == 64ull * 64 * 64 * 288, "prism cover impossible");
  });
}

void cube_closed_forms(Check& c) {
  std::mt19937_64 rng(7);
  std::uint64_t bad_pair = 0, bad_triple = 0, bad_total = 0;
  for (int t = 0; t < 10'000; ++t) {
    oracle::C3 p[3];
    for (auto& x : p) x = {static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
    auto direct = [&](std::vector<int> which) {
      int n = 0;
      for (int cell = 0; cell < 64; ++cell) {
        bool all = true;
        for (int w : which) all = all && oracle::in_cube_avoiding(p[w], cell);
        n += all;
      }
      return n;
    };
    int pair_sum = 0;
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      const int dist = (p[i].x != p[j].x) + (p[i].y != p[j].y) + (p[i].z != p[j].z);
      const int size = direct({i, j});
      bad_pair += size != oracle::ipow(3, 3 - dist) * oracle::ipow(2, dist);
      pair_sum += size;
    }
    auto distinct = [](int a, int b, int e) { return 1 + (b != a) + (e != a && e != b); };
    const int triple = (4 - distinct(p[0].x, p[1].x, p[2].x)) * (4 - distinct(p[0].y, p[1].y, p[2].y)) *
                       (4 - distinct(p[0].z, p[1].z, p[2].z));
    bad_triple += triple != direct({0, 1, 2});
    const std::vector<cube::CellSet> sets{cube::cube_avoiding({p[0].x, p[0].y, p[0].z}),
                                          cube::cube_avoiding({p[1].x, p[1].y, p[1].z}),
                                          cube::cube_avoiding({p[2].x, p[2].y, p[2].z})};
    const int i_size = cube::two_intersection(sets).count();
    bad_total += i_size != pair_sum - 2 * triple ||
                 i_size != oracle::two_intersection_size({p[0], p[1], p[2]});
  }
  c.expect(bad_pair == 0, "pairwise closed form");
  c.expect(bad_triple == 0, "triple closed form");
  c.expect(bad_total == 0, "inclusion-exclusion");
}

void k22_k33(Check& c) {
  const auto parts = cube::k22_certificate_search();
  c.expect(parts.size() == 2, "certificate found");
  const Strategy s = cube::strategy_from_bipartite_partitions(2, 3, parts);
  const Graph k22 = build_graph(Family::complete_bipartite, {2, 2});
  const auto small = oracle::play_all(k22, 3, s);
  c.expect(small.wins && small.checked == 81, "K_{2,2} wins all 81");
  const Graph k33 = build_graph(Family::complete_bipartite, {3, 3});
  const std::vector<int> embedding{0, 1, 3, 4};
  const Strategy lifted = subgraph_lift(k22, s, embedding, k33);
  const auto big = oracle::play_all(k33, 3, lifted);
  const auto r = verify_strategy(k33, 3, lifted);
  c.expect(big.wins && big.checked == 729 && r.wins, "K_{3,3} wins all 729");
}

void windmill_13(Check& c) {
  const auto w32 = windmill::assemble_windmill_strategy(windmill::product_certificate_theorem13(3, 2));
  const Strategy d32 = w32.dense();
  const auto small = oracle::play_all(w32.graph(), 4, d32);
  c.expect(small.wins && small.checked == 1024, "W_{3,2} q=4 wins all 1024");
  const auto w43 = windmill::assemble_windmill_strategy(windmill::product_certificate_theorem13(4, 3));
  const auto r = verify_strategy(w43.graph(), 6, w43.dense());
  c.expect(r.wins && r.assignments_checked == 60'466'176ull, "W_{4,3} q=6 wins all 6^10");
}

void windmill_14(Check& c) {
  for (auto [d, n] : {std::pair{2, 2}, std::pair{3, 1}}) {
    const auto cert = windmill::product_certificate_theorem14(d, n);
    const auto ws = windmill::assemble_windmill_strategy(cert);
    const auto o = oracle::play_all(ws.graph(), cert.q, ws.dense());
    c.expect(o.wins, "d^n windmill (" + std::to_string(d) + "," + std::to_string(n) + ") exhaustive");
  }
  const auto cert = windmill::product_certificate_theorem14(2, 3);
  c.expect(cert.k == 5 && cert.q == 8, "W_{5,3} parameters");
  c.expect(windmill::certificate_disjointness_check(cert), "W_{5,3} disjointness");
  c.expect(windmill::certificate_blades_solvable(cert), "W_{5,3} blade verifications");
  const auto ws = windmill::assemble_windmill_strategy(cert);
  const auto s = sample_strategy(ws.graph(), 8, ws.guess_fn(), 1'000'000, 0);
  c.expect(s.samples == 1'000'000 && s.losses == 0, "W_{5,3} 10^6 samples without loss");
}

void lemma_43(Check& c) {
  for (auto [n, q] : {std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 4}}) {
    const auto built = solvable_interval_set(n, q);
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(q) + ")";
    c.expect(built.set.size() == static_cast<std::size_t>(n * oracle::ipow(q, n - 1)), "size " + tag);
    c.expect(oracle::wins_on(complete(n), q, built.strategy, built.set.members) &&
                 verify_strategy(complete(n), q, built.strategy, built.set).wins,
             "restricted win " + tag);
  }
  c.expect(max_solvable_set_search(2, 2) == 4, "max solvable (2,2) = 4");
  c.expect(max_solvable_set_search(2, 3) == 6, "max solvable (2,3) = 6");
}

void lemma_45_47(Check& c) {
  for (int k = 2; k <= 4; ++k)
    for (auto side : {windmill::Side::c, windmill::Side::complement}) {
      const auto set = windmill::parity_side(k, side);
      c.expect(oracle::wins_on(complete(k - 1), 2 * k - 2, windmill::parity_set_strategy(k, side), set.members),
               "parity side k=" + std::to_string(k));
    }
  std::uint64_t families = 0;
  for (int d = 2; d <= 4096; ++d)
    for (int n = 1; sat_pow(d, n) <= 4096; ++n) {
      const auto f = windmill::difference_disjoint_family(d, n);
      ++families;
      bool ok = static_cast<int>(f.sets.size()) == n && f.m == static_cast<int>(sat_pow(d, n));
      std::vector<std::vector<char>> diff;
      for (const auto& a : f.sets) {
        ok = ok && a.members.size() == sat_pow(d, n - 1);
        std::vector<char> seen(f.m, 0);
        for (int x : a.members)
          for (int y : a.members) seen[((x - y) % f.m + f.m) % f.m] = 1;
        diff.push_back(std::move(seen));
      }
      // The difference sets may only share 0 across the whole family.
      for (int r = 1; r < f.m; ++r) {
        bool everywhere = true;
        for (const auto& seen : diff) everywhere = everywhere && seen[r];
        ok = ok && !everywhere;
      }
      ok = ok && windmill::is_difference_disjoint(f);
      if (!ok) c.expect(false, "family d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
  c.expect(families > 4096, "all families with d^n <= 4096 swept");
}

void counting(Check& c) {
  for (int k = 2; k <= 6; ++k)
    c.expect(windmill::upper_bound_counting_check_thm13(k), "thm13 k=" + std::to_string(k));
  for (int d = 2; d <= 5; ++d)
    for (int n = 1; n <= 5; ++n)
      c.expect(windmill::upper_bound_counting_check_thm14(d, n),
               "thm14 d=" + std::to_string(d) + " n=" + std::to_string(n));
}

int brute_cover(const Graph& g) {
  const int n = g.n_vertices();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      for (int u : g.neighbors(v)) ok = ok && ((mask >> v & 1) || (mask >> u & 1));
    if (ok) best = std::min(best, std::popcount(mask));
  }
  return best;
}

void cover_bound(Check& c) {
  for (int d = 1; d <= 3; ++d) {
    BigInt expected = 1;
    for (int i = 1; i <= d; ++i) expected += oracle::ipow(i, i);
    for (int n = 1; n <= 6; ++n) {
      const Graph b = build_graph(Family::book, {d, n});
      const std::string tag = "book(" + std::to_string(d) + "," + std::to_string(n) + ")";
      c.expect(brute_cover(b) == d, tag + " cover number");
      c.expect(eq1_bound(b) == expected, tag + " bound");
    }
  }
}

void determinism(Check& c) {
  const std::vector<std::vector<std::string>> commands{
      {"--seed", "3", "lemma", "h-lower", "--d", "3", "--mode", "random", "--trials", "2000"},
      {"--seed", "5", "lemma", "windmill-dn"},
      {"lemma", "four-cubes"},
      {"lemma", "k22"},
      {"lemma", "difference-disjoint"},
  };
  for (const auto& cmd : commands) {
    std::string reference;
    for (const char* threads : {"1", "2", "4"}) {
      auto args = cmd;
      args.insert(args.begin(), {"--threads", threads});
      const std::string out = cli_out(args);
      if (reference.empty()) reference = out;
      c.expect(!out.empty() && out == reference, "report differs at " + std::string(threads) + " threads");
    }
  }
  // Library-level sampling, compared across thread caps.
  const auto ws = windmill::assemble_windmill_strategy(windmill::product_certificate_theorem14(2, 2));
  set_thread_count(1);
  const auto a = sample_strategy(ws.graph(), 4, ws.guess_fn(), 100'000, 11);
  set_thread_count(4);
  const auto b = sample_strategy(ws.graph(), 4, ws.guess_fn(), 100'000, 11);
  set_thread_count(0);
  c.expect(a.losses == b.losses && a.samples == b.samples, "sampling differs across thread caps");
}

struct Criterion {
  std::string id;
  std::string title;
  double bound_ms;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1", "complete-graph baseline", 1'000, complete_graph_baseline},
      {"2", "coverability examples", 1'000, coverability_examples},
      {"3", "h(N^2) = 5 both sides", 10'000, h_n2},
      {"4", "non-coverable 33-set", 1'000, noncoverable_33},
      {"5", "matching vs brute-force oracle", 60'000, oracle_equivalence},
      {"6", "cube sweeps", 246'000, cube_sweeps},
      {"7", "cube closed forms", 5'000, cube_closed_forms},
      {"8", "K_{2,2} / K_{3,3} lower bounds", 60'000, k22_k33},
      {"9", "windmills 2k-2", 120'000, windmill_13},
      {"10", "windmills d^n", 120'000, windmill_14},
      {"11", "solvable interval sets", 60'000, lemma_43},
      {"12", "parity sets and difference-disjoint families", 30'000, lemma_45_47},
      {"13", "counting inequalities", 1'000, counting},
      {"14", "vertex-cover bound on books", 5'000, cover_bound},
      {"D", "determinism across thread counts", 120'000, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = ms_since(start);
    if (ms > cr.bound_ms) check.expect(false, "time bound exceeded");
    const bool ok = check.failures.empty();
    failed += !ok;
    std::printf("%s criterion %-2s %-46s %8.0f ms (bound %.0f ms)\n", ok ? "PASS" : "FAIL",
                cr.id.c_str(), cr.title.c_str(), ms, cr.bound_ms);
    for (const auto& f : check.failures) std::printf("     - %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
