#include "sparsejt/junction_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>

#include "sparsejt/errors.hpp"

namespace sparsejt {

namespace {

std::vector<std::string> labels_outside(const Domain& d,
                                        const std::vector<std::string>& keep) {
  std::vector<std::string> out;
  for (const auto& l : d.labels()) {
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) out.push_back(l);
  }
  return out;
}

Evidence evidence_within(const Domain& d, const Evidence& evidence) {
  Evidence out;
  for (const auto& [var, state] : evidence) {
    if (d.contains(var)) out.emplace(var, state);
  }
  return out;
}

Potential slice_potential(const Potential& p, const Evidence& evidence) {
  if (is_unity(p)) return p;
  const auto& t = std::get<SparseTable>(p);
  return slice(t, evidence_within(t.domain(), evidence));
}

}  // namespace

void validate_evidence(const Domain& domain, const Evidence& evidence) {
  for (const auto& [var, state] : evidence) {
    domain.level_of(domain.row_of(var), state);
  }
}

JunctionTree compile(const NetworkSpec& spec, const Evidence& evidence,
                     Heuristic heuristic,
                     const std::optional<std::string>& root_node) {
  validate_evidence(spec.domain, evidence);

  JunctionTree jt;
  jt.domain_ = spec.domain;
  jt.evidence_ = evidence;
  jt.compile_evidence_ = evidence;

  std::map<std::string, std::size_t> statespaces;
  for (std::size_t r = 0; r < spec.domain.rank(); ++r) {
    statespaces.emplace(spec.domain.label(r), spec.domain.cardinality(r));
  }
  jt.triangulation_ = triangulate(moralize(spec.dag), statespaces, heuristic);
  jt.skeleton_ = build_junction_tree(jt.triangulation_, root_node);

  const auto& cliques = jt.skeleton_.cliques;
  std::vector<std::set<std::string>> members;
  for (const auto& c : cliques) members.emplace_back(c.begin(), c.end());

  std::vector<std::optional<SparseTable>> products(cliques.size());
  for (const auto& cpt : spec.cpts) {
    const auto& labels = cpt.domain().labels();
    std::optional<std::size_t> home;
    for (std::size_t i = 0; i < cliques.size() && !home; ++i) {
      if (std::all_of(labels.begin(), labels.end(),
                      [&](const auto& l) { return members[i].count(l); })) {
        home = i;
      }
    }
    // Moralization puts every family in some clique.
    if (!home) {
      throw GraphError("no clique holds the family of '" + labels.front() +
                       "'");
    }
    jt.assignment_.push_back(*home);
    SparseTable sliced = slice(cpt, evidence_within(cpt.domain(), evidence));
    products[*home] = products[*home] ? mult(*products[*home], sliced)
                                      : std::move(sliced);
  }

  for (std::size_t i = 0; i < cliques.size(); ++i) {
    if (products[i]) {
      jt.initial_.cliques.emplace_back(std::move(*products[i]));
    } else {
      jt.initial_.cliques.emplace_back(
          UnityTable(spec.domain.restrict_to(cliques[i])));
    }
  }
  for (const auto& sep : jt.skeleton_.separators) {
    jt.initial_.separators.emplace_back(
        UnityTable(spec.domain.restrict_to(sep)));
  }
  jt.charge_ = jt.initial_;
  return jt;
}

void JunctionTree::collect(const MessageObserver& observer) {
  if (phase_ != Phase::initialized) {
    throw PhaseError("collect requires an initialized junction tree");
  }
  const Charge backup = charge_;

  for (auto it = skeleton_.order.rbegin(); it != skeleton_.order.rend(); ++it) {
    const std::size_t child = *it;
    if (!skeleton_.parent[child]) continue;
    const std::size_t parent = *skeleton_.parent[child];
    const std::size_t edge = *skeleton_.parent_edge[child];

    // A unity child contributes a factor of one.
    if (!is_unity(charge_.cliques[child])) {
      const auto& c = std::get<SparseTable>(charge_.cliques[child]);
      SparseTable message =
          marg(c, labels_outside(c.domain(), skeleton_.separators[edge]));
      auto& p = charge_.cliques[parent];
      if (is_unity(p)) {
        p = message;
      } else {
        p = mult(std::get<SparseTable>(p), message);
      }
      charge_.cliques[child] = div(c, message);
    }
    if (observer) observer({child, parent, edge});
  }

  auto& root = charge_.cliques[skeleton_.root];
  if (is_unity(root)) {
    root = mult_unity(SparseTable::adopt(Domain(), {}, {1.0}),
                      std::get<UnityTable>(root));
  }
  const double mass = sum(std::get<SparseTable>(root));
  if (!(mass > 0.0)) {
    charge_ = backup;
    throw ImpossibleEvidenceError(
        "evidence has probability zero: p(evidence) = 0");
  }
  root = normalize(std::get<SparseTable>(root));
  log_p_evidence_ = std::log(mass);
  phase_ = Phase::collected;
}

void JunctionTree::distribute(const MessageObserver& observer) {
  if (phase_ != Phase::collected) {
    throw PhaseError("distribute requires a collected junction tree");
  }
  for (const std::size_t parent : skeleton_.order) {
    for (const std::size_t child : skeleton_.children[parent]) {
      const std::size_t edge = *skeleton_.parent_edge[child];
      const auto& p = std::get<SparseTable>(charge_.cliques[parent]);
      SparseTable message =
          marg(p, labels_outside(p.domain(), skeleton_.separators[edge]));
      auto& c = charge_.cliques[child];
      if (is_unity(c)) {
        c = message;
      } else {
        c = mult(std::get<SparseTable>(c), message);
      }
      charge_.separators[edge] = std::move(message);
      if (observer) observer({parent, child, edge});
    }
  }
  phase_ = Phase::distributed;
}

void JunctionTree::set_evidence(const Evidence& evidence) {
  validate_evidence(domain_, evidence);
  Evidence merged = compile_evidence_;
  for (const auto& [var, state] : evidence) {
    auto [it, inserted] = merged.emplace(var, state);
    if (!inserted && it->second != state) {
      throw DomainError("evidence " + var + "=" + state +
                        " conflicts with compile-time evidence " + var + "=" +
                        it->second);
    }
  }
  charge_.cliques.clear();
  for (const auto& p : initial_.cliques) {
    charge_.cliques.push_back(slice_potential(p, evidence));
  }
  charge_.separators = initial_.separators;
  evidence_ = std::move(merged);
  phase_ = Phase::initialized;
  log_p_evidence_ = 0.0;
}

double JunctionTree::prob_of_evidence() const {
  if (phase_ == Phase::initialized) {
    throw PhaseError("the probability of evidence is known after collect");
  }
  return std::exp(log_p_evidence_);
}

const SparseTable& JunctionTree::clique_table(std::size_t clique) const {
  const auto& p = charge_.cliques[clique];
  if (is_unity(p)) {
    throw PhaseError("clique " + std::to_string(clique) +
                     " has not received any message");
  }
  return std::get<SparseTable>(p);
}

std::size_t JunctionTree::clique_for(const std::vector<std::string>& nodes,
                                     bool root_only) const {
  auto holds = [&](std::size_t i) {
    const auto& c = skeleton_.cliques[i];
    return std::all_of(nodes.begin(), nodes.end(), [&](const auto& n) {
      return std::find(c.begin(), c.end(), n) != c.end();
    });
  };
  if (root_only) {
    if (!holds(skeleton_.root)) {
      throw PhaseError(
          "only nodes of the root clique can be queried after collect");
    }
    return skeleton_.root;
  }
  for (std::size_t i = 0; i < skeleton_.cliques.size(); ++i) {
    if (holds(i)) return i;
  }
  throw DomainError("queried nodes are not contained in a single clique");
}

std::vector<Marginal> JunctionTree::query_marginal(
    const std::vector<std::string>& nodes) const {
  if (phase_ == Phase::initialized) {
    throw PhaseError("queries require propagation");
  }
  std::vector<Marginal> out;
  for (const auto& node : nodes) {
    const std::size_t row = domain_.row_of(node);
    const auto& table =
        clique_table(clique_for({node}, phase_ == Phase::collected));
    if (!table.domain().contains(node)) {
      throw Error("clique potential lacks variable '" + node + "'");
    }
    const std::vector<std::string> keep{node};
    const SparseTable m = marg(table, labels_outside(table.domain(), keep));
    const double total = sum(m);
    Marginal result{node, domain_.states(row),
                    std::vector<double>(domain_.cardinality(row), 0.0)};
    for (std::size_t j = 0; j < m.ncols(); ++j) {
      result.probabilities[m.offsets(j)[0]] = m.value(j) / total;
    }
    out.push_back(std::move(result));
  }
  return out;
}

SparseTable JunctionTree::query_joint(
    const std::vector<std::string>& nodes) const {
  if (phase_ != Phase::distributed) {
    throw PhaseError("joint queries require a distributed junction tree");
  }
  std::set<std::string> distinct(nodes.begin(), nodes.end());
  if (distinct.size() != nodes.size()) {
    throw DomainError("joint query names a node twice");
  }
  for (const auto& n : nodes) domain_.row_of(n);
  const auto& table = clique_table(clique_for(nodes, false));
  SparseTable m = marg(table, labels_outside(table.domain(), nodes));
  return normalize(reorder(m, nodes));
}

std::string JunctionTree::summary() const {
  std::size_t max_size = 0;
  std::size_t min_size = skeleton_.cliques.empty() ? 0 : SIZE_MAX;
  std::size_t total = 0;
  for (const auto& c : skeleton_.cliques) {
    max_size = std::max(max_size, c.size());
    min_size = std::min(min_size, c.size());
    total += c.size();
  }
  char avg[32];
  std::snprintf(avg, sizeof avg, "%.2f",
                skeleton_.cliques.empty()
                    ? 0.0
                    : static_cast<double>(total) / skeleton_.cliques.size());
  std::string s = "Compiled network\n";
  s += "  Nodes: " + std::to_string(domain_.rank()) + "\n";
  s += "  Cliques: " + std::to_string(skeleton_.cliques.size()) + "\n";
  s += "   - max: " + std::to_string(max_size) + "\n";
  s += "   - min: " + std::to_string(min_size) + "\n";
  s += "   - avg: " + std::string(avg) + "\n";
  if (!evidence_.empty()) {
    s += "  Evidence:\n";
    for (const auto& [var, state] : evidence_) {
      s += "   - " + var + ": " + state + "\n";
    }
  }
  return s;
}

}  // namespace sparsejt
