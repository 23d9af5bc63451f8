#include <algorithm>
#include <limits>

#include <catch2/catch_amalgamated.hpp>

#include "bnskein/io.hpp"

using namespace bnskein;

namespace {

Matching m(int n, std::vector<Arc> arcs) { return Matching(n, std::move(arcs)); }

DottedConfig cfg(int n, std::vector<Arc> arcs, unsigned dots) {
  return DottedConfig(m(n, std::move(arcs)), dots);
}

}  // namespace

TEST_CASE("matching and configuration json round trips") {
  auto un = m(2, {{1, 2}, {3, 4}});
  CHECK(io::to_json(un).dump() == R"({"n":2,"arcs":[[1,2],[3,4]]})");
  CHECK(io::matching_from_json(io::to_json(un)) == un);

  auto c = cfg(2, {{1, 4}, {2, 3}}, 0b01);
  CHECK(io::to_json(c).dump() ==
        R"({"n":2,"arcs":[[1,4],[2,3]],"dots":[[1,4]]})");

  for (int n = 2; n <= 3; ++n)
    for (const auto& g : generators(n))
      CHECK(io::config_from_json(io::to_json(g)) == g);

  // dots must name arcs of the matching
  auto bad = io::to_json(c);
  bad["dots"] = {{1, 2}};
  CHECK_THROWS_AS(io::config_from_json(bad), std::invalid_argument);
}

TEST_CASE("skein vector json round trip and coefficient guard") {
  for (const auto& r : relations(3).all())
    CHECK(io::vector_from_json(io::to_json(r.vec)) == r.vec);

  SkeinVector v(2);
  v.add_term(cfg(2, {{1, 2}, {3, 4}}, 0b11), Int("9223372036854775807"));
  CHECK(io::vector_from_json(io::to_json(v)) == v);  // int64 max passes
  v.add_term(cfg(2, {{1, 2}, {3, 4}}, 0b11), 1);
  CHECK_THROWS_AS(io::to_json(v), std::overflow_error);

  CHECK(io::to_int64(Int("-9223372036854775808")) ==
        std::numeric_limits<std::int64_t>::min());
  CHECK_THROWS_AS(io::to_int64(Int("-9223372036854775809")),
                  std::overflow_error);
}

TEST_CASE("tensor vector json round trip") {
  for (const auto& g : generators(2)) {
    auto t = comult(SkeinVector::unit(g));
    CHECK(io::tensor_from_json(io::to_json(t)) == t);
  }
}

TEST_CASE("homology class json round trip") {
  auto nested = m(2, {{1, 4}, {2, 3}});
  HomologyClass h(nested, {CellLabel::point, CellLabel::cell});
  CHECK(io::to_json(h).dump() ==
        R"({"carrier":{"n":2,"arcs":[[1,4],[2,3]]},"labels":["p","c"]})");
  CHECK(io::homology_from_json(io::to_json(h)) == h);

  SetPartition part{2, {{1, 2, 3, 4}}};
  HomologyClass hp(part, {CellLabel::cell});
  CHECK(io::homology_from_json(io::to_json(hp)) == hp);

  auto bad = io::to_json(h);
  bad["labels"][0] = "x";
  CHECK_THROWS_AS(io::homology_from_json(bad), std::invalid_argument);
}

TEST_CASE("ring element json round trip") {
  SpringerRing ring(2);
  auto nf = ring.normal_form(ring_variable(2, 4));  // -x1 - x2 - x3
  CHECK(io::ring_from_json(io::to_json(nf)) == nf);
  CHECK(io::to_json(nf).dump() ==
        R"({"n":2,"terms":[{"support":[1],"coeff":-1},)"
        R"({"support":[2],"coeff":-1},{"support":[3],"coeff":-1}]})");

  auto j = io::to_json(nf);
  j["terms"][0]["support"] = {5};
  CHECK_THROWS_AS(io::ring_from_json(j), std::invalid_argument);
  j["terms"][0]["support"] = {1, 1};
  CHECK_THROWS_AS(io::ring_from_json(j), std::invalid_argument);
}

TEST_CASE("report serializations carry the computed fields") {
  auto img = io::to_json(image_equals_relations_check(2));
  CHECK(img["equal"] == true);
  CHECK(img["image_rank"] == 2);

  auto ker = io::to_json(kernel_equality_check(2));
  CHECK(ker["equal"] == true);
  CHECK(ker["all_pairs_kernel_rank"] == 6);

  auto com = io::to_json(comult_well_defined_check(2));
  CHECK(com["well_defined"] == true);
  CHECK(com["certificates"].size() == 2);

  auto frob = io::to_json(frobenius_obstruction(2));
  CHECK(frob["top_rank"] == 2);
  CHECK(frob["not_frobenius"] == true);

  auto ranks = io::to_json(graded_ranks(3));
  CHECK(ranks["ranks"] == std::vector<std::size_t>{5, 9, 5, 1});
  CHECK(ranks["invariant_factors_all_one"] == true);

  SkeinQuotient q(2);
  auto sum = io::to_json(check_sum_identity(q, m(2, {{1, 4}, {2, 3}})));
  CHECK(sum["holds"] == true);

  auto moves = rewrite_all_dotted(m(3, {{1, 6}, {2, 3}, {4, 5}}));
  REQUIRE_FALSE(moves.empty());
  auto mv = io::to_json(moves.front());
  CHECK(io::config_from_json(mv["before"]) == moves.front().before);
  CHECK(io::vector_from_json(mv["relation"]) == moves.front().relation);
}

TEST_CASE("text renderings") {
  CHECK(io::matching_label(m(2, {{1, 2}, {3, 4}})) == "1-2 3-4");
  CHECK(io::to_text(cfg(2, {{1, 2}, {3, 4}}, 0)) == "[1-2 3-4]");
  CHECK(io::to_text(cfg(2, {{1, 4}, {2, 3}}, 0b11)) ==
        "[1-4 2-3 dots:1-4,2-3]");
  CHECK(io::to_text(SkeinVector(2)) == "0");
  CHECK(io::to_text(relations(2).type_i[0].vec) ==
        "[1-2 3-4 dots:1-2] + [1-2 3-4 dots:3-4] - [1-4 2-3 dots:1-4]"
        " - [1-4 2-3 dots:2-3]");

  SkeinVector scaled = Int(3) * SkeinVector::unit(cfg(2, {{1, 2}, {3, 4}}, 0));
  CHECK(io::to_text(scaled) == "3*[1-2 3-4]");
}

TEST_CASE("arrow digraph export") {
  CHECK(io::arrow_graph_dot(2) ==
        "digraph arrows {\n"
        "  rankdir=LR;\n"
        "  \"1-2 3-4\";\n"
        "  \"1-4 2-3\";\n"
        "  \"1-2 3-4\" -> \"1-4 2-3\";\n"
        "}\n");
  auto dot = io::arrow_graph_dot(3);
  CHECK(dot.find("\"1-2 3-6 4-5\" -> \"1-6 2-3 4-5\"") != std::string::npos);
  // deterministic: node lines in enumeration order, 5 nodes + 6 edges
  CHECK(std::count(dot.begin(), dot.end(), ';') == 1 + 5 + 6);
}

TEST_CASE("rank table export") {
  CHECK(io::ranks_csv(1, 2) ==
        "n,degree,skein_rank,ring_rank_reversed,match\n"
        "1,0,1,1,true\n"
        "1,2,1,1,true\n"
        "2,0,2,2,true\n"
        "2,2,3,3,true\n"
        "2,4,1,1,true\n");
  CHECK_THROWS_AS(io::ranks_csv(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(io::ranks_csv(3, 2), std::invalid_argument);
}
