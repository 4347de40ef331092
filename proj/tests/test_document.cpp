#include <catch_amalgamated.hpp>

#include <random>

#include "upsilon/document.hpp"
#include "upsilon/families.hpp"

using namespace upsilon;

namespace {

const char* k2_text = R"({
  "format": 1,
  "ring": "Z",
  "vertices": [{"id": 0, "boundary": true, "name": "a"}, {"id": 1, "d": "-2"}],
  "edges": [{"id": 0, "tail": 0, "head": 1, "w": 3}]
})";

std::string with(const std::string& vertices, const std::string& edges, const std::string& extra = "",
                 const std::string& ring = "Q") {
  return R"({"format": 1, "ring": ")" + ring + R"(", "vertices": )" + vertices + R"(, "edges": )" + edges + extra + "}";
}

}  // namespace

TEST_CASE("rational scalars") {
  CHECK(parse_rational("1/2") == Rat(1, 2));
  CHECK(parse_rational("-6/4") == Rat(-3, 2));
  CHECK(parse_rational("12345678901234567890") == Rat(Int("12345678901234567890")));
  CHECK(parse_rational("0") == 0);
  for (const char* bad : {"", "1/0", "1/", "/2", "+1", "1.5", "a", "1/-2", " 1"})
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  CHECK(rational_to_string(Rat(-3, 2)) == "-3/2");
  CHECK(rational_to_string(Rat(4)) == "4");
}

TEST_CASE("parsing a network document") {
  NetworkDocument doc = parse_document(k2_text);
  const Network& n = doc.network;
  CHECK(n.ring == Ring::Z());
  CHECK(n.graph.num_vertices() == 2);
  CHECK(n.graph.is_boundary(0));
  CHECK_FALSE(n.graph.is_boundary(1));
  CHECK(n.graph.name(0) == "a");
  CHECK(n.offset(0) == 0);
  CHECK(n.offset(1) == -2);
  CHECK(n.weight(0) == 3);
  CHECK(n.graph.endpoints(0) == std::pair<VertexId, VertexId>{0, 1});
  CHECK_FALSE(doc.embedding.has_value());
  CHECK(doc.metadata.is_null());

  NetworkDocument half = parse_document(with(R"([{"id": 0}, {"id": 1}])", R"([{"id": 5, "tail": 1, "head": 0, "w": "1/2"}])"));
  CHECK(half.network.weight(5) == Rat(1, 2));
  CHECK(half.network.ring == Ring::Q());

  NetworkDocument mod = parse_document(with(R"([{"id": 0}, {"id": 1}])", R"([{"id": 0, "tail": 0, "head": 1, "w": "-1"}])", "", "Z/5"));
  CHECK(mod.network.weight(0) == 4);
}

TEST_CASE("malformed documents") {
  const std::string v2 = R"([{"id": 0}, {"id": 1}])";
  const std::string e1 = R"([{"id": 0, "tail": 0, "head": 1}])";
  std::vector<std::string> bad = {
      "not json",
      "[]",
      R"({"format": 2, "ring": "Z", "vertices": [], "edges": []})",
      R"({"ring": "Z", "vertices": [], "edges": []})",
      R"({"format": 1, "ring": "R", "vertices": [], "edges": []})",
      R"({"format": 1, "ring": "Z", "vertices": [], "edges": [], "colour": 1})",
      with(R"([{"id": 0}, {"id": 0}])", "[]"),
      with(R"([{"id": -1}])", "[]"),
      with(R"([{"id": 0, "boundary": "yes"}])", "[]"),
      with(R"([{"id": 0, "weight": 1}])", "[]"),
      with(v2, R"([{"id": 0, "tail": 0, "head": 1}, {"id": 0, "tail": 1, "head": 0}])"),
      with(v2, R"([{"id": 0, "tail": 0, "head": 7}])"),
      with(v2, R"([{"id": 0, "tail": 0, "head": 1, "w": "1/0"}])"),
      with(v2, R"([{"id": 0, "tail": 0, "head": 1, "w": 0.5}])"),
      with(v2, R"([{"id": 0, "tail": 0, "head": 1, "w": "1/2"}])", "", "Z"),
      with(v2, e1, R"(, "embedding": {"rotation": [], "boundary_order": [], "extra": 0})"),
      with(v2, e1, R"(, "embedding": {"rotation": [{"vertex": 0, "edges": [4]}], "boundary_order": []})"),
      with(v2, e1, R"(, "embedding": {"rotation": [{"vertex": 0, "edges": [0]}, {"vertex": 0, "edges": [0]}], "boundary_order": []})"),
  };
  for (const auto& text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_document(text), ParseError);
  }
  try {
    parse_document(with(R"([{"id": 0}, {"id": 0}])", "[]"));
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/vertices/1/id") != std::string::npos);
  }
}

TEST_CASE("document round trips") {
  Network n = parse_document(k2_text).network;
  NetworkDocument again = parse_document(serialize_document(make_document(n)));
  CHECK(again.network.graph == n.graph);
  CHECK(again.network.w == n.w);
  CHECK(again.network.d == n.d);
  CHECK(again.network.ring == n.ring);

  EmbeddedPartialGraph w5 = wheel(5, true);
  NetworkDocument doc = make_document(std_network(w5.graph), w5);
  doc.metadata = {{"family", "wheel"}};
  NetworkDocument back = parse_document(serialize_document(doc));
  REQUIRE(back.embedding.has_value());
  CHECK(back.embedding->rotation == w5.rotation);
  CHECK(back.embedding->boundary_order == w5.boundary_order);
  CHECK(back.network.graph == w5.graph);
  CHECK(back.metadata["family"] == "wheel");
  CHECK_NOTHROW(validate_embedding(*back.embedding));

  std::mt19937_64 rng(81);
  for (int t = 0; t < 15; ++t) {
    EmbeddedPartialGraph eg = random_circular_planar(rng, 8);
    Network m = std_network(eg.graph);
    m.ring = Ring::Q();
    std::uniform_int_distribution<int> val(-9, 9), den(1, 5);
    for (auto& [k, x] : m.w) {
      x = Rat(val(rng), den(rng));
      x.canonicalize();
    }
    NetworkDocument r = parse_document(serialize_document(make_document(m, eg)));
    CHECK(r.network.w == m.w);
    CHECK(r.embedding->rotation == eg.rotation);
  }
}

TEST_CASE("value documents") {
  VertexFunction u = parse_values(R"({"values": {"0": "3", "4": "-1/2"}})", Ring::Q());
  CHECK(u.ring == Ring::Q());
  CHECK(u(0) == 3);
  CHECK(u(4) == Rat(-1, 2));

  VertexFunction m = parse_values(R"({"format": 1, "ring": "Z/11", "values": {"2": 13}})", Ring::Q());
  CHECK(m.ring == Ring::mod(11));
  CHECK(m(2) == 2);
  CHECK(parse_values(values_to_json(u).dump(), Ring::Z()).values == u.values);

  CHECK_THROWS_AS(parse_values(R"({"values": {"x": "1"}})", Ring::Q()), ParseError);
  CHECK_THROWS_AS(parse_values(R"({"values": [1, 2]})", Ring::Q()), ParseError);
  CHECK_THROWS_AS(parse_values(R"({"values": {"0": "1/2"}})", Ring::Z()), ParseError);
  CHECK_THROWS_AS(parse_values(R"({"format": 3, "values": {}})", Ring::Z()), ParseError);
  CHECK_THROWS_AS(parse_values(R"({"vals": {}})", Ring::Z()), ParseError);
}

TEST_CASE("dot export") {
  std::string dot = to_dot(std_network(complete_bipartite(2, 1)));
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("filled") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = dot.find("--"); p != std::string::npos; p = dot.find("--", p + 2)) ++edges;
  CHECK(edges == 2);
  CHECK(dot.back() == '\n');
}
