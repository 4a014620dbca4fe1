#include <doctest.h>

#include <filesystem>

#include "hatlab/error.hpp"
#include "hatlab/io.hpp"

using namespace hatlab;
using io::json;

TEST_CASE("graph round trip") {
  for (const auto& g : {build_graph(Family::windmill, {3, 2}), build_graph(Family::book, {2, 4}),
                        build_graph(Family::complete_bipartite, {2, 3}),
                        Graph::from_edges(4, {{0, 1}, {2, 3}})}) {
    CHECK(io::graph_from_json(io::graph_to_json(g)) == g);
  }
  CHECK_THROWS_AS(io::graph_from_json(json{{"family", "windmill"}}), ParameterError);
  CHECK_THROWS_AS(io::graph_from_json(json::array()), ParameterError);
}

TEST_CASE("strategy round trip and validation") {
  const Graph g = build_graph(Family::complete, {3});
  const Strategy s = complete_sum_strategy(3, 3);
  const json j = io::strategy_to_json(g, s);
  CHECK(j["q"] == 3);
  const auto back = io::strategy_from_json(j);
  CHECK(back.graph == g);
  CHECK(back.strategy == s);

  json bad = j;
  bad["tables"][0][0] = 7;
  CHECK_THROWS_AS(io::strategy_from_json(bad), ParameterError);
  bad = j;
  bad["tables"].erase(0);
  CHECK_THROWS_AS(io::strategy_from_json(bad), ParameterError);
  bad = j;
  bad["q"] = "three";
  CHECK_THROWS_AS(io::strategy_from_json(bad), ParameterError);
}

TEST_CASE("assignment sets and point sets") {
  const auto set = make_solvable_set(2, 3, {{0, 1}, {2, 2}});
  CHECK(io::assignment_set_from_json(io::assignment_set_to_json(set)) == set);
  CHECK_THROWS_AS(io::assignment_set_from_json(json{{"q", 3}, {"n", 2}, {"members", {{0, 5}}}}),
                  ParameterError);

  const auto pts = cover::make_point_set(2, {{0, 0}, {3, 1}});
  const json pj = io::point_set_to_json(pts);
  CHECK(pj.dump() == R"({"d":2,"points":[[0,0],[3,1]]})");
  CHECK(io::point_set_from_json(pj) == pts);
  CHECK_THROWS_AS(io::point_set_from_json(json{{"d", 2}, {"points", {{0, 0}, {0, 0}}}}),
                  ParameterError);
}

TEST_CASE("partitions and certificates") {
  const cube::Partition p{cube::CellSet{0x3}, cube::CellSet{0xc}};
  const json pj = io::partition_file_to_json(p);
  CHECK(pj["parts"][0] == "0000000000000003");
  CHECK(io::partition_file_from_json(pj) == p);

  const auto c = windmill::product_certificate_theorem13(3, 2);
  const auto back = io::certificate_from_json(io::certificate_to_json(c));
  CHECK(back.k == c.k);
  CHECK(back.n == c.n);
  CHECK(back.q == c.q);
  REQUIRE(back.products.size() == c.products.size());
  for (std::size_t i = 0; i < c.products.size(); ++i)
    for (std::size_t j = 0; j < c.products[i].size(); ++j) {
      CHECK(back.products[i][j].set == c.products[i][j].set);
      CHECK(back.products[i][j].strategy == c.products[i][j].strategy);
    }
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "hatlab_io_test.json";
  io::write_json_file(path.string(), json{{"a", 1}});
  CHECK(io::read_json_file(path.string())["a"] == 1);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_json_file(path.string()), ParameterError);
}
