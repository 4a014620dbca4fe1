#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "hatlab/cli.hpp"
#include "hatlab/io.hpp"

using hatlab::io::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  std::vector<json> reports() const {
    std::vector<json> r;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) r.push_back(json::parse(line));
    return r;
  }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = hatlab::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hatlab_cli_" + name)).string();
}

}  // namespace

TEST_CASE("lemma three-cubes") {
  const Run r = run({"lemma", "three-cubes"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"status\":\"verified\",\"payload\":{\"minimum\":20}}\n");
  CHECK(r.err.empty());
}

TEST_CASE("construct then verify a windmill") {
  const std::string s = tmp("w32.json");
  const Run c = run({"construct", "windmill-2k2", "--k", "3", "--n", "2", "-o", s});
  CHECK(c.code == 0);
  const Run v = run({"verify", "-g", "windmill:3,2", "-q", "4", "-s", s});
  CHECK(v.code == 0);
  const auto rep = v.reports();
  REQUIRE(rep.size() == 1);
  CHECK(rep[0]["status"] == "verified");
  CHECK(rep[0]["payload"]["checked"] == 1024);

  // Mismatched graph or color count is a usage error, not a falsification.
  CHECK(run({"verify", "-g", "windmill:3,3", "-q", "4", "-s", s}).code == 2);
  CHECK(run({"verify", "-g", "windmill:3,2", "-q", "5", "-s", s}).code == 2);
  std::filesystem::remove(s);
}

TEST_CASE("verify reports a counterexample") {
  const std::string s = tmp("k2.json");
  hatlab::io::write_json_file(
      s, json{{"graph", {{"family", "complete"}, {"params", {2}}}}, {"q", 3},
              {"tables", {{0, 0, 0}, {0, 0, 0}}}});
  const Run v = run({"verify", "-g", "complete:2", "-q", "3", "-s", s});
  CHECK(v.code == 1);
  const auto rep = v.reports();
  CHECK(rep[0]["status"] == "falsified");
  CHECK(rep[0]["payload"]["counterexample"] == json{1, 1});

  const std::string restrict_file = tmp("k2_restrict.json");
  hatlab::io::write_json_file(restrict_file, json{{"q", 3}, {"n", 2}, {"members", {{0, 1}}}});
  CHECK(run({"verify", "-g", "complete:2", "-q", "3", "-s", s, "--restrict", restrict_file}).code == 0);
  std::filesystem::remove(s);
  std::filesystem::remove(restrict_file);
}

TEST_CASE("cover") {
  const std::string f = tmp("set23.json");
  hatlab::io::write_json_file(
      f, json{{"d", 2}, {"points", {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}}});
  const Run r = run({"cover", "--file", f, "--bruteforce"});
  CHECK(r.code == 1);
  const auto rep = r.reports();
  CHECK(rep[0]["status"] == "falsified");
  CHECK(rep[0]["payload"]["coverable"] == false);
  CHECK(rep[0]["payload"]["violator"]["points"].size() == 6);

  hatlab::io::write_json_file(f, json{{"d", 2}, {"points", {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}});
  const Run ok = run({"cover", "--file", f});
  CHECK(ok.code == 0);
  CHECK(ok.reports()[0]["payload"]["certificate"]["axis_of"].size() == 4);
  std::filesystem::remove(f);
  CHECK(run({"cover", "--file", f}).code == 2);
}

TEST_CASE("search") {
  CHECK(run({"search", "-g", "complete:2", "-q", "2"}).code == 0);
  CHECK(run({"search", "-g", "complete:1", "-q", "2"}).code == 1);
  const Run starved = run({"--budget", "3", "search", "-g", "complete:3", "-q", "4"});
  CHECK(starved.code == 3);
  CHECK(starved.reports()[0]["status"] == "infeasible");
}

TEST_CASE("infeasible budgets") {
  const std::string s = tmp("k5.json");
  CHECK(run({"construct", "complete-sum", "--n", "5", "-o", s}).code == 0);
  const Run r = run({"--budget", "10", "verify", "-g", "complete:5", "-q", "5", "-s", s});
  CHECK(r.code == 3);
  CHECK(r.reports()[0]["payload"]["required"] == 3125);
  std::filesystem::remove(s);
}

TEST_CASE("usage errors") {
  Run r = run({});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  r = run({"lemma", "no-such-lemma"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  r = run({"lemma", "three-cubes", "--bogus"});
  CHECK(r.code == 2);
  r = run({"construct", "windmill-2k2", "--k", "5", "--n", "1"});
  CHECK(r.code == 2);
  CHECK(r.reports()[0]["status"] == "error");
}

TEST_CASE("reports are deterministic across thread counts") {
  const std::vector<std::string> args{"--seed", "17", "lemma", "h-lower", "--d", "3",
                                      "--mode", "random", "--trials", "300"};
  auto one = args, four = args;
  one.insert(one.begin(), {"--threads", "1"});
  four.insert(four.begin(), {"--threads", "4"});
  const Run a = run(one), b = run(four);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("timing flag") {
  const Run r = run({"--timing", "lemma", "square-minima"});
  CHECK(r.reports()[0].contains("elapsed"));
  CHECK_FALSE(run({"lemma", "square-minima"}).reports()[0].contains("elapsed"));
}

TEST_CASE("constructions") {
  CHECK(run({"construct", "k22"}).code == 0);
  CHECK(run({"construct", "parity", "--k", "3", "--side", "complement"}).code == 0);
  CHECK(run({"construct", "solvable-interval", "--n", "2", "--q", "3"}).reports()[0]["payload"]["size"] == 6);
  CHECK(run({"construct", "noncoverable", "--d", "3"}).reports()[0]["payload"]["size"] == 33);
  const std::string cert = tmp("cert.json");
  CHECK(run({"construct", "windmill-dn", "--d", "2", "--n", "2", "--certificate-out", cert}).code == 0);
  CHECK(hatlab::io::certificate_from_json(hatlab::io::read_json_file(cert)).q == 4);
  std::filesystem::remove(cert);
}
