#include "json.hpp"

#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/io.hpp"
#include "dmw/rules.hpp"
#include "dmw/validity.hpp"

using namespace dmw;

TEST_CASE("lattice JSON round trip") {
  for (const auto& name : catalog_names()) {
    const auto& l = catalog(name).lattice;
    const std::string text = lattice_to_json(l);
    const auto back = lattice_from_json(text);
    CHECK(back == l);
    CHECK(lattice_to_json(back) == text);
    CHECK(lattice_to_json(back, -1) == lattice_to_json(l, -1));
  }
}

TEST_CASE("matrix JSON round trip") {
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    const std::string text = matrix_to_json(m);
    const auto back = matrix_from_json(text);
    CHECK(same_matrix(back, m));
    CHECK(matrix_to_json(back) == text);
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(lattice_from_json("{"), FormatError);
  CHECK_THROWS_AS(lattice_from_json(R"({"size": 2})"), FormatError);
  CHECK_THROWS(lattice_from_json(R"({"size": 2, "meet": [[0,0],[0,5]], "join": [[0,1],[1,1]], "neg": [1,0]})"));
  // designated sets must be upsets
  CHECK_THROWS(matrix_from_json(R"({"size": 2, "meet": [[0,0],[0,1]], "join": [[0,1],[1,1]], "neg": [1,0], "designated": [0]})"));
}

TEST_CASE("logic files") {
  const auto l = logic_from_json(R"({"name": "LP and K", "matrices": ["Pm1", "Km1"]})");
  CHECK(l.name == "LP and K");
  CHECK(l.matrices.size() == 2);
  const std::string inline_m = matrix_to_json(catalog("M4"));
  const auto l2 = logic_from_json(R"({"matrices": [)" + inline_m + "]}");
  CHECK(same_matrix(l2.matrices.front(), catalog("M4")));
  CHECK_THROWS(logic_from_json(R"({"matrices": []})"));
  CHECK_THROWS(logic_from_json(R"({"matrices": ["Nope"]})"));
}

TEST_CASE("DOT output") {
  const std::string dot = matrix_to_dot(catalog("Q4"));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("filled") != std::string::npos);
}

TEST_CASE("verdict JSON") {
  const Rule r = parse_rule("x, ~x |- y");
  const auto m = catalog("Pm1");
  const auto v = rule_valid(r, m);
  const auto j = nlohmann::json::parse(validity_to_json(r, m, v));
  CHECK(j["valid"] == false);
  CHECK(j.contains("counterexample"));
}

TEST_CASE("golden snapshots") {
  CHECK(matrix_to_json(catalog("Q4")) == read_text_file(std::string(DMW_GOLDEN_DIR) + "/Q4.json"));
  CHECK(matrix_to_json(catalog("M8")) == read_text_file(std::string(DMW_GOLDEN_DIR) + "/M8.json"));
}
