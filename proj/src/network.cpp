#include "sparsejt/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "sparsejt/errors.hpp"

namespace sparsejt {

std::vector<std::string> NetworkSpec::factorization() const {
  std::vector<std::string> lines;
  for (const auto& cpt : cpts) {
    const auto& labels = cpt.domain().labels();
    std::string line = "P( " + labels.front();
    for (std::size_t i = 1; i < labels.size(); ++i) {
      line += (i == 1 ? " | " : ", ") + labels[i];
    }
    lines.push_back(line + " )");
  }
  return lines;
}

const SparseTable& NetworkSpec::cpt_of(const std::string& child) const {
  for (const auto& cpt : cpts) {
    if (cpt.rank() > 0 && cpt.domain().label(0) == child) return cpt;
  }
  throw DomainError("no CPT for variable '" + child + "'");
}

NetworkSpec validate_cpt_list(std::vector<SparseTable> tables,
                              const std::optional<Dag>& dag) {
  NetworkSpec spec;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> states;
  std::unordered_map<std::string, std::size_t> seen_child;

  for (const auto& t : tables) {
    if (t.rank() == 0) throw DomainError("CPT without variables");
    const std::string& child = t.domain().label(0);
    if (!seen_child.emplace(child, labels.size()).second) {
      throw DomainError("more than one CPT for variable '" + child + "'");
    }
    labels.push_back(child);
    states.push_back(t.domain().states(0));
  }
  spec.domain = Domain(labels, states);

  for (const auto& t : tables) {
    const std::string& child = t.domain().label(0);
    std::vector<std::string> parents;
    for (std::size_t r = 1; r < t.rank(); ++r) {
      const auto& p = t.domain().label(r);
      if (!spec.domain.contains(p)) {
        throw DomainError("parent '" + p + "' of '" + child + "' has no CPT");
      }
      if (spec.domain.states(p) != t.domain().states(r)) {
        throw DomainError("state lists for variable '" + p +
                          "' differ between CPTs");
      }
      parents.push_back(p);
    }
    spec.dag.nodes.push_back(child);
    if (!parents.empty()) spec.dag.parents[child] = std::move(parents);
  }

  if (dag) {
    std::set<std::string> given(dag->nodes.begin(), dag->nodes.end());
    std::set<std::string> inferred(labels.begin(), labels.end());
    if (given != inferred) {
      throw GraphError("DAG nodes do not match the CPT variables");
    }
    for (const auto& node : labels) {
      const auto& a = dag->parents_of(node);
      const auto& b = spec.dag.parents_of(node);
      if (std::set(a.begin(), a.end()) != std::set(b.begin(), b.end())) {
        throw GraphError("parents of '" + node +
                         "' in the CPT do not match the DAG");
      }
    }
  }
  spec.dag.validate();

  for (const auto& t : tables) {
    const std::vector<std::string> child{t.domain().label(0)};
    const SparseTable mass = marg(t, child);
    for (double v : mass.values()) {
      if (std::abs(v - 1.0) > kCptTolerance) {
        throw NormalizationError("CPT for '" + child.front() +
                                 "' does not sum to one over the child "
                                 "(found " + std::to_string(v) + ")");
      }
    }
    for (double v : t.values()) {
      if (v < 0.0 || !std::isfinite(v)) {
        throw NormalizationError("CPT for '" + child.front() +
                                 "' has a negative or non-finite entry");
      }
    }
  }
  spec.cpts = std::move(tables);
  return spec;
}

}  // namespace sparsejt
