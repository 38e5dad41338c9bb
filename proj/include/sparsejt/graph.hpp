#ifndef SPARSEJT_GRAPH_HPP
#define SPARSEJT_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sparsejt {

/// Directed acyclic graph of named variables.
struct Dag {
  std::vector<std::string> nodes;
  /// Ordered parent list per node; nodes without an entry have no parents.
  std::map<std::string, std::vector<std::string>> parents;

  const std::vector<std::string>& parents_of(const std::string& node) const;
  /// Throws GraphError on unknown parents, duplicate nodes or a cycle.
  void validate() const;
  /// Parents before children; ties resolved by node order.
  std::vector<std::string> topological_order() const;
};

/// Simple undirected graph over named nodes, with index-based adjacency.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::vector<std::string> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& node(std::size_t i) const { return nodes_[i]; }
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  /// Adds u-v; self loops are rejected, repeated edges ignored.
  void add_edge(std::size_t u, std::size_t v);
  void add_edge(std::string_view u, std::string_view v) {
    add_edge(index_of(u), index_of(v));
  }
  bool has_edge(std::size_t u, std::size_t v) const {
    return adjacency_[u].count(v) > 0;
  }
  bool has_edge(std::string_view u, std::string_view v) const {
    return has_edge(index_of(u), index_of(v));
  }
  const std::set<std::size_t>& neighbors(std::size_t u) const {
    return adjacency_[u];
  }
  std::size_t edge_count() const;
  /// Edges as name pairs, each once, lower index first.
  std::vector<std::pair<std::string, std::string>> edges() const;

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::set<std::size_t>> adjacency_;
};

enum class Heuristic { min_fill, min_nei };

/// Parses "min_fill" or "min_nei"; throws GraphError otherwise.
Heuristic parse_heuristic(std::string_view name);
std::string_view to_string(Heuristic h);

struct Triangulation {
  UndirectedGraph graph;
  std::vector<std::pair<std::string, std::string>> fill_edges;
  /// Maximal cliques in the order the elimination discovered them. Members
  /// follow the graph's node order.
  std::vector<std::vector<std::string>> cliques;
  /// Dense cell count of each clique.
  std::vector<std::uint64_t> statespace;
  std::vector<std::string> elimination_order;
};

/// Drops arc directions and marries co-parents.
UndirectedGraph moralize(const Dag& dag);

/// Elimination game: repeatedly removes the best-scoring node, connecting its
/// remaining neighbors. min_fill scores by fill edges added; min_nei by
/// neighbor count, then fill edges. Ties go to the smallest name.
/// `statespaces` gives |states| per node and feeds the clique cell counts.
Triangulation triangulate(const UndirectedGraph& g,
                          const std::map<std::string, std::size_t>& statespaces,
                          Heuristic heuristic);

/// Maximum cardinality search order (first visited first).
std::vector<std::size_t> mcs_order(const UndirectedGraph& g);
/// Fill edges produced by eliminating nodes in `order`.
std::size_t elimination_fill(const UndirectedGraph& g,
                             const std::vector<std::size_t>& order);
/// True when eliminating in reverse MCS order adds no edges.
bool is_chordal(const UndirectedGraph& g);

/// Rooted tree over the cliques of a triangulation.
struct JunctionTreeSkeleton {
  std::vector<std::vector<std::string>> cliques;
  /// Tree edges as (i, j) clique indices with i < j.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// separators[e] = cliques[i] ∩ cliques[j] for edges[e].
  std::vector<std::vector<std::string>> separators;
  std::size_t root = 0;

  /// Parent clique and connecting edge; empty for the root.
  std::vector<std::optional<std::size_t>> parent;
  std::vector<std::optional<std::size_t>> parent_edge;
  std::vector<std::vector<std::size_t>> children;
  /// Breadth-first order from the root; reversed it is a valid collect
  /// schedule.
  std::vector<std::size_t> order;

  /// Clique indices on the tree path from `from` to `to`, both included.
  std::vector<std::size_t> path(std::size_t from, std::size_t to) const;
};

/// Maximum-weight spanning tree on clique intersections (ties: smaller index
/// pair); components are joined with empty separators. The root is the
/// first clique containing `root_node` when given, otherwise clique 0.
JunctionTreeSkeleton build_junction_tree(
    const Triangulation& t, const std::optional<std::string>& root_node = {});

/// True when every pairwise clique intersection lies in all cliques on the
/// connecting path. Exhaustive; intended for checks on small trees.
bool has_running_intersection(const JunctionTreeSkeleton& tree);

struct StatespaceEntry {
  std::size_t clique_index;
  std::vector<std::string> clique;
  std::uint64_t cells;
  std::uint64_t bytes;
};

/// The `top` cliques with the largest dense state space (ties: lower index
/// first), with 8 bytes per dense cell.
std::vector<StatespaceEntry> statespace_report(const Triangulation& t,
                                               std::size_t top);

}  // namespace sparsejt

#endif  // SPARSEJT_GRAPH_HPP
