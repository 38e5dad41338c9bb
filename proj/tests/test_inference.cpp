#include <cmath>

#include "doctest.h"
#include "sparsejt/errors.hpp"
#include "sparsejt/io.hpp"
#include "sparsejt/junction_tree.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace sparsejt;
using namespace testsupport;

namespace {

double marginal_of(const JunctionTree& jt, const std::string& node,
                   const std::string& state) {
  const auto m = jt.query_marginal({node}).front();
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    if (m.states[i] == state) return m.probabilities[i];
  }
  throw Error("no such state");
}

/// Compares every clique potential against the brute-force conditional
/// marginal and returns the worst absolute error.
double clique_error(const JunctionTree& jt, const DenseTable& joint,
                    const Evidence& e) {
  const DenseTable sliced = dense_slice(joint, e);
  const double pe = dense_sum(sliced);
  double worst = 0.0;
  for (std::size_t i = 0; i < jt.skeleton().cliques.size(); ++i) {
    const auto& clique = jt.skeleton().cliques[i];
    DenseTable expected = dense_marg(sliced, outside(joint.domain(), clique));
    for (auto& v : expected.values()) v /= pe;
    const auto& pot = std::get<SparseTable>(jt.charge().cliques[i]);
    worst = std::max(worst, max_abs_diff(expected, to_dense(pot)));
  }
  return worst;
}

}  // namespace

TEST_CASE("five-node example against brute force") {
  Rng rng(5);
  const Dag dag = figure1_dag();
  const Domain pool({"a", "b", "c", "d", "e"},
                    {{"0", "1"}, {"0", "1"}, {"0", "1"}, {"0", "1"}, {"0", "1"}});
  std::vector<SparseTable> cpts;
  for (const auto& n : dag.nodes) {
    std::vector<std::string> labels{n};
    for (const auto& p : dag.parents_of(n)) labels.push_back(p);
    DenseTable t(pool.restrict_to(labels));
    auto v = t.values();
    for (std::size_t r = 0; r < v.size(); r += 2) {
      v[r] = 0.1 + 0.8 * unit(rng);
      v[r + 1] = 1.0 - v[r];
    }
    cpts.push_back(from_dense(t));
  }
  NetworkSpec spec = validate_cpt_list(cpts, dag);
  const DenseTable joint = brute_joint(spec);
  JunctionTree jt = compile(spec);
  CHECK(jt.skeleton().cliques.size() == 3);
  jt.propagate();
  CHECK(clique_error(jt, joint, {}) < 1e-12);
  CHECK(jt.prob_of_evidence() == doctest::Approx(1.0).epsilon(1e-12));

  jt.set_evidence({{"e", "1"}, {"b", "0"}});
  jt.propagate();
  const Evidence e{{"e", "1"}, {"b", "0"}};
  CHECK(clique_error(jt, joint, e) < 1e-12);
  CHECK(std::abs(jt.prob_of_evidence() - dense_sum(dense_slice(joint, e))) < 1e-12);
}

TEST_SUITE("asia") {
  TEST_CASE("structure") {
    const NetworkSpec spec = load_network(data_path("asia.json"));
    CHECK(spec.factorization() ==
          std::vector<std::string>{"P( asia )", "P( tub | asia )", "P( smoke )",
                                   "P( lung | smoke )", "P( bronc | smoke )",
                                   "P( either | lung, tub )", "P( xray | either )",
                                   "P( dysp | bronc, either )"});
    const JunctionTree jt = compile(spec, {{"tub", "yes"}});
    const std::string s = jt.summary();
    CHECK(s.find("Cliques: 6") != std::string::npos);
    CHECK(s.find("- max: 3") != std::string::npos);
    CHECK(s.find("- min: 2") != std::string::npos);
    CHECK(s.find("- avg: 2.67") != std::string::npos);
    CHECK(s.find("- tub: yes") != std::string::npos);
  }

  TEST_CASE("x-ray given tuberculosis") {
    const NetworkSpec spec = load_network(data_path("asia.json"));
    JunctionTree yes = compile(spec, {{"tub", "yes"}});
    yes.propagate();
    CHECK(marginal_of(yes, "xray", "yes") == doctest::Approx(0.98).epsilon(1e-12));
    JunctionTree no = compile(spec, {{"tub", "no"}});
    no.propagate();
    CHECK(std::abs(marginal_of(no, "xray", "yes") - 0.10115) < 1e-12);
    CHECK(std::abs(no.prob_of_evidence() - 0.9896) < 1e-12);
  }

  TEST_CASE("collect-only queries the root clique") {
    const NetworkSpec spec = load_network(data_path("asia.json"));
    JunctionTree jt = compile(spec, {{"tub", "no"}}, Heuristic::min_fill,
                              std::string("xray"));
    jt.collect();
    CHECK(std::abs(marginal_of(jt, "xray", "yes") - 0.10115) < 1e-12);
    const auto& root = jt.skeleton().cliques[jt.skeleton().root];
    for (const auto& node : spec.domain.labels()) {
      if (std::find(root.begin(), root.end(), node) == root.end()) {
        CHECK_THROWS_AS(jt.query_marginal({node}), PhaseError);
      }
    }
  }
}

TEST_SUITE("phases and errors") {
  TEST_CASE("phase machine") {
    const NetworkSpec spec = load_network(data_path("asia.json"));
    JunctionTree jt = compile(spec);
    CHECK(jt.phase() == Phase::initialized);
    CHECK_THROWS_AS(jt.distribute(), PhaseError);
    CHECK_THROWS_AS(jt.prob_of_evidence(), PhaseError);
    CHECK_THROWS_AS(jt.query_marginal({"xray"}), PhaseError);
    jt.collect();
    CHECK(jt.phase() == Phase::collected);
    CHECK_THROWS_AS(jt.collect(), PhaseError);
    CHECK_THROWS_AS(jt.query_joint({"xray", "either"}), PhaseError);
    jt.distribute();
    CHECK(jt.phase() == Phase::distributed);
    CHECK_THROWS_AS(jt.distribute(), PhaseError);
    const SparseTable joint = jt.query_joint({"xray", "either"});
    CHECK(sum(joint) == doctest::Approx(1.0));
    CHECK_THROWS_AS(jt.query_joint({"asia", "dysp"}), DomainError);
  }

  TEST_CASE("impossible evidence") {
    const NetworkSpec spec = load_network(data_path("asia.json"));
    JunctionTree jt = compile(spec, {{"tub", "yes"}, {"either", "no"}});
    CHECK_THROWS_AS(jt.collect(), ImpossibleEvidenceError);
    CHECK(jt.phase() == Phase::initialized);
  }

  TEST_CASE("evidence validation") {
    const NetworkSpec spec = load_network(data_path("asia.json"));
    CHECK_THROWS_AS(compile(spec, {{"nope", "yes"}}), DomainError);
    CHECK_THROWS_AS(compile(spec, {{"tub", "maybe"}}), DomainError);
    JunctionTree jt = compile(spec, {{"tub", "yes"}});
    CHECK_THROWS_AS(jt.set_evidence({{"tub", "no"}}), DomainError);
    jt.set_evidence({{"smoke", "yes"}});
    CHECK(jt.evidence().size() == 2);
  }
}

TEST_SUITE("random networks") {
  TEST_CASE("brute force, joint preservation and monotone support") {
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
      const NetworkSpec spec = random_network(rng, uniform(rng, 1, 7), 3);
      const DenseTable joint = brute_joint(spec);
      const Evidence e = random_feasible_evidence(rng, spec, joint, 3);
      const DenseTable sliced = dense_slice(joint, e);
      const double pe = dense_sum(sliced);

      JunctionTree before = compile(spec);
      JunctionTree jt = compile(spec, e);
      std::size_t pre = 0, post = 0;
      for (const auto& p : before.charge().cliques) {
        if (!is_unity(p)) pre += std::get<SparseTable>(p).ncols();
      }
      for (const auto& p : jt.charge().cliques) {
        if (!is_unity(p)) post += std::get<SparseTable>(p).ncols();
      }
      CHECK(post <= pre);

      double worst = 0.0;
      jt.collect([&](const MessageEvent&) {
        worst = std::max(worst, max_abs_diff(sliced, charge_product(jt.charge(), spec.domain)));
      });
      DenseTable conditional = sliced;
      for (auto& v : conditional.values()) v /= pe;
      jt.distribute([&](const MessageEvent&) {
        worst = std::max(worst, max_abs_diff(conditional,
                                             charge_product(jt.charge(), spec.domain)));
      });
      CHECK(worst < 1e-12);
      CHECK(clique_error(jt, joint, e) < 1e-12);
      CHECK(std::abs(jt.prob_of_evidence() - pe) < 1e-12);

      // Marginals agree across cliques holding the same node.
      for (const auto& node : spec.domain.labels()) {
        const auto m = jt.query_marginal({node}).front();
        DenseTable bf = dense_marg(sliced, outside(spec.domain, {node}));
        for (std::size_t s = 0; s < m.states.size(); ++s) {
          CHECK(std::abs(m.probabilities[s] - bf.values()[s] / pe) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("setting evidence after compile matches compile-time evidence") {
    Rng rng(23);
    for (int i = 0; i < 30; ++i) {
      const NetworkSpec spec = random_network(rng, uniform(rng, 2, 7), 3);
      const Evidence e = random_feasible_evidence(rng, spec, brute_joint(spec), 3);
      JunctionTree a = compile(spec, e);
      JunctionTree b = compile(spec);
      b.set_evidence(e);
      a.propagate();
      b.propagate();
      CHECK(std::abs(a.prob_of_evidence() - b.prob_of_evidence()) < 1e-12);
      for (std::size_t c = 0; c < a.skeleton().cliques.size(); ++c) {
        CHECK(equiv(std::get<SparseTable>(a.charge().cliques[c]),
                    std::get<SparseTable>(b.charge().cliques[c]), 1e-12));
      }
    }
  }
}
