#ifndef SPARSEJT_JUNCTION_TREE_HPP
#define SPARSEJT_JUNCTION_TREE_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparsejt/graph.hpp"
#include "sparsejt/network.hpp"
#include "sparsejt/sparse_table.hpp"

namespace sparsejt {

using Evidence = Assignment;

/// A clique or separator potential: either a stored table or the implicit
/// all-ones table over the clique.
using Potential = std::variant<UnityTable, SparseTable>;

inline bool is_unity(const Potential& p) {
  return std::holds_alternative<UnityTable>(p);
}

struct Charge {
  std::vector<Potential> cliques;
  /// One per skeleton edge.
  std::vector<Potential> separators;
};

enum class Phase { initialized, collected, distributed };

struct Marginal {
  std::string variable;
  std::vector<std::string> states;
  std::vector<double> probabilities;
};

/// Which message was just passed, reported to a MessageObserver.
struct MessageEvent {
  std::size_t from;
  std::size_t to;
  std::size_t edge;
};

/// Called after every message during propagation.
using MessageObserver = std::function<void(const MessageEvent&)>;

/// Compiled junction tree with Lauritzen-Spiegelhalter propagation.
///
/// Collect sends marginals from the leaves to the root, multiplying them into
/// the parent and dividing them out of the child, then normalizes the root;
/// the normalizing constant is the probability of the evidence. Distribute
/// multiplies each child by the marginal of its parent on their separator.
/// Afterwards every clique potential is the clique marginal given the
/// evidence.
///
/// Not thread-safe; independent trees may be propagated concurrently.
class JunctionTree {
 public:
  const Domain& domain() const { return domain_; }
  const JunctionTreeSkeleton& skeleton() const { return skeleton_; }
  const Triangulation& triangulation() const { return triangulation_; }
  const Charge& charge() const { return charge_; }
  Phase phase() const { return phase_; }
  const Evidence& evidence() const { return evidence_; }
  /// Clique holding each CPT after initialization, in CPT order.
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  /// Leaves-to-root pass. Throws ImpossibleEvidenceError when the evidence
  /// has probability zero (the tree is left initialized).
  void collect(const MessageObserver& observer = {});
  /// Root-to-leaves pass; requires a completed collect.
  void distribute(const MessageObserver& observer = {});
  void propagate() {
    collect();
    distribute();
  }

  /// Replaces the charge with the initial one sliced by `evidence` (merged
  /// with the compile-time evidence) and resets the phase.
  void set_evidence(const Evidence& evidence);

  /// log p(evidence); zero until collect has finished.
  double log_p_evidence() const { return log_p_evidence_; }
  double prob_of_evidence() const;

  /// Marginal of each node given the evidence. After collect alone, only
  /// nodes of the root clique may be queried.
  std::vector<Marginal> query_marginal(
      const std::vector<std::string>& nodes) const;
  /// Joint over nodes that share a clique; requires distribute.
  SparseTable query_joint(const std::vector<std::string>& nodes) const;

  /// Summary in the style "Nodes / Cliques / max / min / avg / Evidence".
  std::string summary() const;

 private:
  friend JunctionTree compile(const NetworkSpec&, const Evidence&, Heuristic,
                              const std::optional<std::string>&);

  const SparseTable& clique_table(std::size_t clique) const;
  std::size_t clique_for(const std::vector<std::string>& nodes,
                         bool root_only) const;

  Domain domain_;
  Triangulation triangulation_;
  JunctionTreeSkeleton skeleton_;
  Charge initial_;
  Charge charge_;
  std::vector<std::size_t> assignment_;
  Evidence evidence_;
  Evidence compile_evidence_;
  Phase phase_ = Phase::initialized;
  double log_p_evidence_ = 0.0;
};

/// Moralizes, triangulates and builds the junction tree of `spec`, slices
/// the CPTs by `evidence`, and initializes each clique with the product of
/// the CPTs assigned to it (cliques without a CPT hold a unity).
JunctionTree compile(const NetworkSpec& spec, const Evidence& evidence = {},
                     Heuristic heuristic = Heuristic::min_fill,
                     const std::optional<std::string>& root_node = {});

/// Checks that every evidence variable and state exists in `domain`.
void validate_evidence(const Domain& domain, const Evidence& evidence);

}  // namespace sparsejt

#endif  // SPARSEJT_JUNCTION_TREE_HPP
