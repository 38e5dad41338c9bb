#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sparsejt/commands.hpp"
#include "sparsejt/errors.hpp"
#include "sparsejt/io.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace sparsejt;
using namespace testsupport;

namespace {

const char* kSingle = R"({
  "variables": [{"name": "coin", "states": ["heads", "tails"]}],
  "cpts": [{"child": "coin", "parents": [], "values": [0.3, 0.7]}]
})";

}  // namespace

TEST_CASE("single variable network") {
  const NetworkSpec spec = parse_network(kSingle);
  CHECK(spec.cpts.size() == 1);
  CHECK(spec.factorization() == std::vector<std::string>{"P( coin )"});
  CHECK(get_val(spec.cpts[0], {{"coin", "tails"}}) == 0.7);
}

TEST_CASE("asia round trip") {
  const NetworkSpec a = load_network(data_path("asia.json"));
  CHECK(a.cpts.size() == 8);
  const NetworkSpec b = parse_network(serialize_network(a));
  REQUIRE(b.cpts.size() == a.cpts.size());
  for (std::size_t i = 0; i < a.cpts.size(); ++i) {
    CHECK(equiv(a.cpts[i], b.cpts[i]));
  }
  CHECK(serialize_network(a) == serialize_network(b));
  CHECK(get_val(a.cpt_of("dysp"),
                {{"dysp", "yes"}, {"bronc", "no"}, {"either", "yes"}}) == 0.7);
}

TEST_CASE("child varies fastest, then parents in listed order") {
  Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    const Domain pool = make_pool(rng, 4, 3);
    const Domain d = random_subdomain(rng, pool, 1, 4);
    DenseTable t(d);
    const std::size_t k = d.cardinality(0);
    for (std::size_t r = 0; r < t.size(); r += k) {
      double total = 0;
      for (std::size_t s = 0; s < k; ++s) total += (t.values()[r + s] = 1.0 + unit(rng));
      for (std::size_t s = 0; s < k; ++s) t.values()[r + s] /= total;
    }
    nlohmann::json doc;
    doc["variables"] = nlohmann::json::array();
    for (std::size_t r = 0; r < d.rank(); ++r) {
      doc["variables"].push_back({{"name", d.label(r)}, {"states", d.states(r)}});
    }
    doc["cpts"] = nlohmann::json::array();
    std::vector<std::string> parents(d.labels().begin() + 1, d.labels().end());
    doc["cpts"].push_back({{"child", d.label(0)}, {"parents", parents},
                           {"values", std::vector<double>(t.values().begin(), t.values().end())}});
    for (std::size_t r = 1; r < d.rank(); ++r) {
      const std::vector<double> flat(d.cardinality(r), 1.0 / d.cardinality(r));
      doc["cpts"].push_back({{"child", d.label(r)}, {"parents", nlohmann::json::array()},
                             {"values", flat}});
    }
    const NetworkSpec spec = parse_network(doc.dump());
    const SparseTable& cpt = spec.cpt_of(d.label(0));
    // Walk the dense cells independently of the library's position map.
    std::vector<std::size_t> cell(d.rank(), 0);
    for (std::size_t pos = 0; pos < t.size(); ++pos) {
      Assignment a;
      for (std::size_t r = 0; r < d.rank(); ++r) a[d.label(r)] = d.states(r)[cell[r]];
      CHECK(get_val(cpt, a) == t.values()[pos]);
      for (std::size_t r = 0; r < d.rank(); ++r) {
        if (++cell[r] < d.cardinality(r)) break;
        cell[r] = 0;
      }
    }
  }
}

TEST_CASE("malformed networks") {
  CHECK_THROWS_AS(parse_network("{\"variables\": ["), ParseError);
  CHECK_THROWS_AS(parse_network("[]"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"variables": [{"name": "a", "states": ["x", "y"]}],
      "cpts": [{"child": "b", "parents": [], "values": [0.5, 0.5]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"variables": [{"name": "a", "states": ["x", "y"]}],
      "cpts": [{"child": "a", "parents": [], "values": [1.0]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"variables": [{"name": "a", "states": ["x", "y"]},
      {"name": "b", "states": ["x", "y"]}],
      "cpts": [{"child": "a", "parents": [], "values": [0.5, 0.5]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"variables": [{"name": "a", "states": ["x", "y"]},
      {"name": "a", "states": ["x", "y"]}], "cpts": []})"),
                  ParseError);
}

TEST_CASE("a CPT slice summing to 0.9 names its child") {
  try {
    parse_network(R"({"variables": [{"name": "a", "states": ["x", "y"]},
        {"name": "b", "states": ["x", "y"]}],
        "cpts": [{"child": "a", "parents": [], "values": [0.5, 0.5]},
                 {"child": "b", "parents": ["a"], "values": [0.5, 0.5, 0.4, 0.5]}]})");
    FAIL("expected a normalization error");
  } catch (const NormalizationError& e) {
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }
}

TEST_CASE("cyclic networks are rejected") {
  CHECK_THROWS_AS(parse_network(R"({"variables": [{"name": "a", "states": ["x", "y"]},
      {"name": "b", "states": ["x", "y"]}],
      "cpts": [{"child": "a", "parents": ["b"], "values": [0.5, 0.5, 0.5, 0.5]},
               {"child": "b", "parents": ["a"], "values": [0.5, 0.5, 0.5, 0.5]}]})"),
                  GraphError);
}

TEST_CASE("evidence tokens") {
  CHECK(parse_evidence({"tub=yes"}) == Evidence{{"tub", "yes"}});
  CHECK(parse_evidence({}).empty());
  CHECK(parse_evidence({""}).empty());
  CHECK(parse_evidence({"tub=yes smoke=no"}).size() == 2);
  CHECK_THROWS_AS(parse_evidence({"tub=yes tub=no"}), ParseError);
  CHECK_THROWS_AS(parse_evidence({"tub"}), ParseError);
  CHECK_THROWS_AS(parse_evidence({"tub=yes=no"}), ParseError);
  CHECK_THROWS_AS(parse_evidence({"=yes"}), ParseError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ParseError("x")) == 2);
  CHECK(exit_code_for(NormalizationError("x")) == 2);
  CHECK(exit_code_for(DomainError("x")) == 2);
  CHECK(exit_code_for(ImpossibleEvidenceError("x")) == 3);
  CHECK(exit_code_for(CapacityError("x")) == 4);
}
