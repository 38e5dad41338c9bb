#ifndef SPARSEJT_NETWORK_HPP
#define SPARSEJT_NETWORK_HPP

#include <optional>
#include <string>
#include <vector>

#include "sparsejt/domain.hpp"
#include "sparsejt/graph.hpp"
#include "sparsejt/sparse_table.hpp"

namespace sparsejt {

/// A validated Bayesian network: one CPT per variable, acyclic structure.
/// The first label of each CPT is its child, the remaining labels are the
/// parents in order.
struct NetworkSpec {
  /// All variables.
  Domain domain;
  std::vector<SparseTable> cpts;
  Dag dag;

  /// Lines of the form "P( either | lung, tub )", one per CPT.
  std::vector<std::string> factorization() const;
  const SparseTable& cpt_of(const std::string& child) const;
};

/// Tolerance for conditional slices of a CPT summing to one.
inline constexpr double kCptTolerance = 1e-9;

/// Infers (or checks against `dag`) the structure of a list of CPTs and
/// validates it: consistent state lists, one CPT per variable, no cycles,
/// every parent configuration with mass summing to one over the child.
NetworkSpec validate_cpt_list(std::vector<SparseTable> tables,
                              const std::optional<Dag>& dag = std::nullopt);

}  // namespace sparsejt

#endif  // SPARSEJT_NETWORK_HPP
