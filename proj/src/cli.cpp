#include "hatlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "hatlab/cover.hpp"
#include "hatlab/cube.hpp"
#include "hatlab/error.hpp"
#include "hatlab/game.hpp"
#include "hatlab/io.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/windmill.hpp"

namespace hatlab::cli {

namespace {

using io::json;

enum class Status { verified, falsified, infeasible, error };

const char* status_name(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::falsified: return "falsified";
    case Status::infeasible: return "infeasible";
    case Status::error: return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::verified: return kVerified;
    case Status::falsified: return kFalsified;
    case Status::infeasible: return kInfeasible;
    case Status::error: return kUsage;
  }
  return kUsage;
}

struct Report {
  Status status = Status::error;
  json payload = json::object();
};

Report verdict(bool ok, json payload) {
  return Report{ok ? Status::verified : Status::falsified, std::move(payload)};
}

struct Options {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  unsigned threads = 0;
  bool timing = false;

  std::uint64_t budget_or(std::uint64_t fallback) const { return budget.value_or(fallback); }
};

// Reports are written by hand so that "status" leads and key order is fixed.
void emit(std::ostream& out, const Report& r, const Options& opt, double elapsed_ms) {
  out << "{\"status\":\"" << status_name(r.status) << "\",\"payload\":" << r.payload.dump();
  if (opt.timing) out << ",\"elapsed\":" << static_cast<std::uint64_t>(elapsed_ms);
  out << "}\n";
}

Report guarded(const std::function<Report()>& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    return Report{Status::infeasible,
                  json{{"message", e.what()}, {"required", e.required()}, {"budget", e.budget()}}};
  } catch (const std::exception& e) {
    return Report{Status::error, json{{"message", e.what()}}};
  }
}

// ---------------------------------------------------------------- lemmas

Report lemma_three_cubes() {
  const auto r = cube::lemma_three_cubes_verify();
  return verdict(r.minimum == 20, json{{"minimum", r.minimum}});
}

Report lemma_four_cubes() {
  const auto r = cube::lemma_four_cubes_verify();
  return verdict(r.violations == 0 && r.quadruples == 64ull * 64 * 64 * 64,
                 json{{"quadruples", r.quadruples},
                      {"at_most_29", r.small},
                      {"full_cube", r.full_cube},
                      {"cube_minus_point", r.cube_minus_point},
                      {"violations", r.violations},
                      {"minimum", r.minimum}});
}

Report lemma_square_minima() {
  const auto m = cube::square_two_intersection_minima();
  return verdict(m.pairs == 4 && m.triples == 8 && m.distinct_quadruples == 12,
                 json{{"pairs", m.pairs},
                      {"triples", m.triples},
                      {"distinct_quadruples", m.distinct_quadruples}});
}

Report lemma_prism_cover() {
  const auto r = cube::prism_cover_impossible();
  return verdict(r.impossible, json{{"combinations", r.combinations}, {"covers", r.covers}});
}

Report lemma_h_lower(int d, const std::string& mode, std::uint64_t trials, std::uint64_t seed) {
  cover::SweepMode m;
  if (mode == "exhaustive") m = cover::SweepMode::exhaustive;
  else if (mode == "random") m = cover::SweepMode::random;
  else throw ParameterError("mode must be exhaustive or random");
  const auto r = cover::h_lower_check(d, m, trials, seed);
  json payload{{"d", d},
               {"mode", mode},
               {"set_size", r.set_size},
               {"sets_checked", r.sets_checked},
               {"failures", r.failures}};
  if (r.first_failure) payload["first_failure"] = io::point_set_to_json(*r.first_failure);
  return verdict(r.failures == 0, payload);
}

Report lemma_noncoverable(int max_d) {
  bool ok = true;
  json sizes = json::array();
  for (int d = 1; d <= max_d; ++d) {
    const auto s = cover::noncoverable_construction(d);
    ok = ok && BigInt(s.size()) == one_plus_sum_i_pow_i(d) && !cover::is_coverable(s);
    sizes.push_back(s.size());
  }
  return verdict(ok, json{{"max_d", max_d}, {"sizes", sizes}});
}

Report lemma_difference_disjoint() {
  std::uint64_t families = 0;
  bool ok = true;
  for (int d = 2; d <= 4096; ++d)
    for (int n = 1; sat_pow(d, n) <= 4096; ++n) {
      const auto f = windmill::difference_disjoint_family(d, n);
      ++families;
      for (const auto& a : f.sets) ok = ok && a.members.size() == sat_pow(d, n - 1);
      ok = ok && windmill::is_difference_disjoint(f);
    }
  return verdict(ok, json{{"max_modulus", 4096}, {"families", families}});
}

Report lemma_parity_sets() {
  bool ok = true;
  json sizes = json::array();
  for (int k = 2; k <= 4; ++k) {
    const auto c = windmill::parity_side(k, windmill::Side::c);
    const auto comp = windmill::parity_side(k, windmill::Side::complement);
    const Graph blade = build_graph(Family::complete, {k - 1});
    const std::uint64_t total = sat_pow(2 * k - 2, k - 1);
    ok = ok && c.size() * 2 == total && comp.size() * 2 == total;
    ok = ok && verify_strategy(blade, 2 * k - 2, windmill::parity_set_strategy(k, windmill::Side::c), c).wins;
    ok = ok && verify_strategy(blade, 2 * k - 2,
                               windmill::parity_set_strategy(k, windmill::Side::complement), comp)
                   .wins;
    sizes.push_back(c.size());
  }
  return verdict(ok, json{{"k", {2, 3, 4}}, {"sizes", sizes}});
}

json windmill_run(const windmill::ProductCertificate& c, std::uint64_t budget) {
  const auto ws = windmill::assemble_windmill_strategy(c);
  const auto report = verify_strategy(ws.graph(), c.q, ws.dense(), budget);
  return json{{"k", c.k}, {"n", c.n}, {"q", c.q}, {"wins", report.wins},
              {"checked", report.assignments_checked}};
}

Report lemma_windmill(const Options& opt) {
  json runs = json::array();
  bool ok = true;
  for (auto [k, n] : {std::pair{3, 2}, std::pair{4, 3}}) {
    const auto c = windmill::product_certificate_theorem13(k, n);
    ok = ok && windmill::certificate_disjointness_check(c) && windmill::certificate_blades_solvable(c);
    auto run = windmill_run(c, opt.budget_or(kDefaultAssignmentBudget));
    ok = ok && run["wins"].get<bool>();
    runs.push_back(run);
  }
  return verdict(ok, json{{"windmills", runs}});
}

Report lemma_windmill_dn(const Options& opt) {
  json runs = json::array();
  bool ok = true;
  for (auto [d, n] : {std::pair{2, 2}, std::pair{3, 1}}) {
    const auto c = windmill::product_certificate_theorem14(d, n);
    ok = ok && windmill::certificate_disjointness_check(c) && windmill::certificate_blades_solvable(c);
    auto run = windmill_run(c, opt.budget_or(kDefaultAssignmentBudget));
    ok = ok && run["wins"].get<bool>();
    runs.push_back(run);
  }
  const auto c = windmill::product_certificate_theorem14(2, 3);
  const bool cert_ok =
      windmill::certificate_disjointness_check(c) && windmill::certificate_blades_solvable(c);
  const auto ws = windmill::assemble_windmill_strategy(c);
  const auto sample = sample_strategy(ws.graph(), c.q, ws.guess_fn(), 1'000'000, opt.seed);
  ok = ok && cert_ok && sample.losses == 0;
  runs.push_back(json{{"k", c.k}, {"n", c.n}, {"q", c.q}, {"certificate", cert_ok},
                      {"samples", sample.samples}, {"losses", sample.losses}});
  return verdict(ok, json{{"windmills", runs}});
}

Report lemma_counting() {
  bool ok = true;
  for (int k = 2; k <= 6; ++k) ok = ok && windmill::upper_bound_counting_check_thm13(k);
  for (int d = 2; d <= 5; ++d)
    for (int n = 1; n <= 5; ++n) ok = ok && windmill::upper_bound_counting_check_thm14(d, n);
  return verdict(ok, json{{"thm13_k", {2, 6}}, {"thm14_d", {2, 5}}, {"thm14_n", {1, 5}}});
}

Report lemma_k22() {
  const auto partitions = cube::k22_certificate_search();
  const auto s = cube::strategy_from_bipartite_partitions(2, 3, partitions);
  const Graph k22 = build_graph(Family::complete_bipartite, {2, 2});
  const Graph k33 = build_graph(Family::complete_bipartite, {3, 3});
  const auto small = verify_strategy(k22, 3, s);
  const std::vector<int> embedding{0, 1, 3, 4};
  const auto big = verify_strategy(k33, 3, subgraph_lift(k22, s, embedding, k33));
  return verdict(small.wins && big.wins,
                 json{{"partitions", {io::partition_file_to_json(partitions[0]),
                                      io::partition_file_to_json(partitions[1])}},
                      {"k22_checked", small.assignments_checked},
                      {"k33_checked", big.assignments_checked}});
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string kind;
  int k = 0, n = 0, d = 0, q = 0;
  std::string side = "c";
  std::string out_file;
  std::string certificate_file;
  std::string set_file;
};

Report construct(const ConstructArgs& a) {
  json payload{{"kind", a.kind}};
  auto write_strategy = [&](const Graph& g, const Strategy& s) {
    payload["graph"] = io::graph_to_json(g);
    payload["q"] = s.q;
    if (!a.out_file.empty()) {
      io::write_json_file(a.out_file, io::strategy_to_json(g, s));
      payload["file"] = a.out_file;
    }
  };
  if (a.kind == "windmill-2k2" || a.kind == "windmill-dn") {
    const auto cert = a.kind == "windmill-2k2" ? windmill::product_certificate_theorem13(a.k, a.n)
                                               : windmill::product_certificate_theorem14(a.d, a.n);
    const bool ok = windmill::certificate_disjointness_check(cert) &&
                    windmill::certificate_blades_solvable(cert);
    if (!a.certificate_file.empty()) {
      io::write_json_file(a.certificate_file, io::certificate_to_json(cert));
      payload["certificate_file"] = a.certificate_file;
    }
    payload["k"] = cert.k;
    payload["n"] = cert.n;
    payload["q"] = cert.q;
    payload["certificate"] = ok;
    if (!ok) return verdict(false, payload);
    const auto ws = windmill::assemble_windmill_strategy(cert);
    payload["graph"] = io::graph_to_json(ws.graph());
    if (!a.out_file.empty()) write_strategy(ws.graph(), ws.dense());
    return verdict(true, payload);
  }
  if (a.kind == "complete-sum") {
    write_strategy(build_graph(Family::complete, {a.n}), complete_sum_strategy(a.n, a.n));
    return verdict(true, payload);
  }
  if (a.kind == "solvable-interval") {
    const auto built = solvable_interval_set(a.n, a.q);
    write_strategy(build_graph(Family::complete, {a.n}), built.strategy);
    payload["size"] = built.set.size();
    if (!a.set_file.empty()) {
      io::write_json_file(a.set_file, io::assignment_set_to_json(built.set));
      payload["set_file"] = a.set_file;
    }
    return verdict(true, payload);
  }
  if (a.kind == "parity") {
    if (a.side != "c" && a.side != "complement") throw ParameterError("side must be c or complement");
    const auto side = a.side == "c" ? windmill::Side::c : windmill::Side::complement;
    const auto set = windmill::parity_side(a.k, side);
    write_strategy(build_graph(Family::complete, {a.k - 1}), windmill::parity_set_strategy(a.k, side));
    payload["size"] = set.size();
    if (!a.set_file.empty()) {
      io::write_json_file(a.set_file, io::assignment_set_to_json(set));
      payload["set_file"] = a.set_file;
    }
    return verdict(true, payload);
  }
  if (a.kind == "k22") {
    const auto partitions = cube::k22_certificate_search();
    write_strategy(build_graph(Family::complete_bipartite, {2, 2}),
                   cube::strategy_from_bipartite_partitions(2, 3, partitions));
    payload["partitions"] = {io::partition_file_to_json(partitions[0]),
                             io::partition_file_to_json(partitions[1])};
    return verdict(true, payload);
  }
  if (a.kind == "noncoverable") {
    const auto s = cover::noncoverable_construction(a.d);
    payload["d"] = a.d;
    payload["size"] = s.size();
    if (!a.out_file.empty()) {
      io::write_json_file(a.out_file, io::point_set_to_json(s));
      payload["file"] = a.out_file;
    } else {
      payload["set"] = io::point_set_to_json(s);
    }
    return verdict(!cover::is_coverable(s), payload);
  }
  throw ParameterError("unknown construction '" + a.kind + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hat-guessing strategy constructions and exhaustive lemma checks", "hatlab"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--seed", opt.seed, "Seed for randomized sweeps");
  std::uint64_t budget = 0;
  auto* budget_opt = app.add_option("--budget", budget, "Override operation budgets");
  app.add_option("--threads", opt.threads, "Worker thread cap (0 = all)");
  app.add_flag("--timing", opt.timing, "Append elapsed milliseconds to reports");

  auto* lemma = app.add_subcommand("lemma", "Run a machine-checkable lemma");
  std::string lemma_name;
  int h_d = 2;
  std::string h_mode = "exhaustive";
  std::uint64_t trials = 10'000;
  lemma->add_option("name", lemma_name,
                    "three-cubes | four-cubes | square-minima | prism-cover | h-lower | "
                    "noncoverable | difference-disjoint | parity-sets | windmill | windmill-dn | "
                    "counting | k22 | all")
      ->required();
  lemma->add_option("--d", h_d, "Dimension for h-lower, maximum d for noncoverable");
  lemma->add_option("--mode", h_mode, "exhaustive | random (h-lower)");
  lemma->add_option("--trials", trials, "Random trials (h-lower)");

  auto* cons = app.add_subcommand("construct", "Build a strategy, certificate or point set");
  ConstructArgs ca;
  cons->add_option("kind", ca.kind,
                   "windmill-2k2 | windmill-dn | complete-sum | solvable-interval | parity | k22 | "
                   "noncoverable")
      ->required();
  cons->add_option("--k", ca.k);
  cons->add_option("--n", ca.n);
  cons->add_option("--d", ca.d);
  cons->add_option("--q", ca.q);
  cons->add_option("--side", ca.side, "c | complement");
  cons->add_option("-o,--output", ca.out_file, "Strategy or point-set file to write");
  cons->add_option("--certificate-out", ca.certificate_file, "Windmill certificate file to write");
  cons->add_option("--set-out", ca.set_file, "Assignment-set file to write");

  auto* ver = app.add_subcommand("verify", "Exhaustively verify a strategy file");
  std::string graph_spec, strategy_file, restrict_file;
  int q = 0;
  ver->add_option("-g,--graph", graph_spec, "Graph, e.g. windmill:3,2")->required();
  ver->add_option("-q", q, "Number of colors")->required();
  ver->add_option("-s,--strategy", strategy_file, "Strategy file")->required();
  ver->add_option("--restrict", restrict_file, "Assignment-set file restricting the adversary");

  auto* cov = app.add_subcommand("cover", "Decide coverability of a point-set file");
  std::string set_file;
  bool bruteforce = false;
  cov->add_option("--file", set_file, "Point-set file")->required();
  cov->add_flag("--bruteforce", bruteforce, "Cross-check with the exhaustive oracle");

  auto* srch = app.add_subcommand("search", "Backtracking search for a winning strategy");
  std::string search_graph, search_out;
  int search_q = 0;
  srch->add_option("-g,--graph", search_graph)->required();
  srch->add_option("-q", search_q)->required();
  srch->add_option("-o,--output", search_out, "Strategy file to write when found");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::Success&) {
    err << app.help();
    return kVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  if (*budget_opt) {
    opt.budget = budget;
  } else if (const char* env = std::getenv("HATLAB_BUDGET")) {
    try {
      opt.budget = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: HATLAB_BUDGET must be a non-negative integer\n";
      return kUsage;
    }
  }
  set_thread_count(opt.threads);

  using Clock = std::chrono::steady_clock;
  int worst = kVerified;
  auto report = [&](const std::function<Report()>& body) {
    const auto start = Clock::now();
    const Report r = guarded(body);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    emit(out, r, opt, ms);
    const int code = exit_code(r.status);
    // Precedence when several reports are emitted: usage/error > infeasible > falsified.
    auto rank = [](int c) { return c == kUsage ? 3 : c == kInfeasible ? 2 : c; };
    if (rank(code) > rank(worst)) worst = code;
  };

  if (*lemma) {
    const std::map<std::string, std::function<Report()>> lemmas{
        {"three-cubes", lemma_three_cubes},
        {"four-cubes", lemma_four_cubes},
        {"square-minima", lemma_square_minima},
        {"prism-cover", lemma_prism_cover},
        {"h-lower", [&] { return lemma_h_lower(h_d, h_mode, trials, opt.seed); }},
        {"noncoverable", [&] { return lemma_noncoverable(lemma->count("--d") ? h_d : 4); }},
        {"difference-disjoint", lemma_difference_disjoint},
        {"parity-sets", lemma_parity_sets},
        {"windmill", [&] { return lemma_windmill(opt); }},
        {"windmill-dn", [&] { return lemma_windmill_dn(opt); }},
        {"counting", lemma_counting},
        {"k22", lemma_k22},
    };
    if (lemma_name == "all") {
      const std::vector<std::pair<std::string, std::function<Report()>>> suite{
          {"three-cubes", lemma_three_cubes},
          {"four-cubes", lemma_four_cubes},
          {"square-minima", lemma_square_minima},
          {"prism-cover", lemma_prism_cover},
          {"h-lower", [&] { return lemma_h_lower(2, "exhaustive", 0, opt.seed); }},
          {"noncoverable", [] { return lemma_noncoverable(4); }},
          {"difference-disjoint", lemma_difference_disjoint},
          {"parity-sets", lemma_parity_sets},
          {"windmill", [&] { return lemma_windmill(opt); }},
      };
      for (const auto& [name, fn] : suite)
        report([&, name = name, fn = fn] {
          Report r = fn();
          r.payload["lemma"] = name;
          return r;
        });
      return worst;
    }
    const auto it = lemmas.find(lemma_name);
    if (it == lemmas.end()) {
      err << "error: unknown lemma '" << lemma_name << "'\n" << lemma->help();
      return kUsage;
    }
    report(it->second);
    return worst;
  }

  if (*cons) {
    report([&] { return construct(ca); });
    return worst;
  }

  if (*ver) {
    report([&] {
      const Graph g = parse_graph_spec(graph_spec);
      const auto file = io::strategy_from_json(io::read_json_file(strategy_file));
      if (!(file.graph == g))
        throw ParameterError("strategy file was built for a different graph");
      check_strategy_shape(g, q, file.strategy);
      VerificationReport r;
      if (restrict_file.empty()) {
        r = verify_strategy(g, q, file.strategy, opt.budget_or(kDefaultAssignmentBudget));
      } else {
        r = verify_strategy(g, q, file.strategy,
                            io::assignment_set_from_json(io::read_json_file(restrict_file)));
      }
      json payload{{"graph", graph_spec}, {"q", q}, {"wins", r.wins},
                   {"checked", r.assignments_checked}};
      payload["counterexample"] =
          r.counterexample ? io::assignment_to_json(*r.counterexample) : json(nullptr);
      return verdict(r.wins, payload);
    });
    return worst;
  }

  if (*cov) {
    report([&] {
      const auto s = io::point_set_from_json(io::read_json_file(set_file));
      const auto result = cover::coverable(s);
      json payload{{"set", io::point_set_to_json(s)}};
      const bool ok = std::holds_alternative<cover::AxisPartition>(result);
      payload["coverable"] = ok;
      if (ok) {
        payload["certificate"] = io::partition_to_json(std::get<cover::AxisPartition>(result));
      } else {
        const auto violator = io::point_set_to_json(std::get<cover::HallViolator>(result).subset);
        payload["certificate"] = json{{"violator", violator}};
        payload["violator"] = violator;
      }
      if (bruteforce) {
        const bool oracle =
            cover::coverable_bruteforce(s, opt.budget_or(cover::kDefaultBruteforceBudget));
        payload["bruteforce"] = oracle;
        if (oracle != ok) throw Error("matching and brute-force oracle disagree");
      }
      return verdict(ok, payload);
    });
    return worst;
  }

  if (*srch) {
    report([&] {
      const Graph g = parse_graph_spec(search_graph);
      const auto r = search_strategy(g, search_q, opt.budget_or(10'000'000));
      json payload{{"graph", search_graph}, {"q", search_q}, {"nodes", r.nodes}};
      if (r.status == SearchStatus::budget_exhausted) {
        payload["message"] = "node budget exhausted";
        return Report{Status::infeasible, payload};
      }
      payload["found"] = r.status == SearchStatus::found;
      if (r.strategy && !search_out.empty()) {
        io::write_json_file(search_out, io::strategy_to_json(g, *r.strategy));
        payload["file"] = search_out;
      }
      return verdict(r.status == SearchStatus::found, payload);
    });
    return worst;
  }
  return kUsage;
}

}  // namespace hatlab::cli
