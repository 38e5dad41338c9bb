#include "sparsejt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "sparsejt/domain.hpp"
#include "sparsejt/errors.hpp"

namespace sparsejt {

// --- Dag -------------------------------------------------------------------

const std::vector<std::string>& Dag::parents_of(const std::string& node) const {
  static const std::vector<std::string> none;
  auto it = parents.find(node);
  return it == parents.end() ? none : it->second;
}

std::vector<std::string> Dag::topological_order() const {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!index.emplace(nodes[i], i).second) {
      throw GraphError("duplicate node '" + nodes[i] + "'");
    }
  }
  std::vector<std::size_t> indegree(nodes.size(), 0);
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (const auto& [child, pas] : parents) {
    auto c = index.find(child);
    if (c == index.end()) throw GraphError("unknown node '" + child + "'");
    for (const auto& p : pas) {
      auto pi = index.find(p);
      if (pi == index.end()) {
        throw GraphError("node '" + child + "' has unknown parent '" + p + "'");
      }
      children[pi->second].push_back(c->second);
      ++indegree[c->second];
    }
  }
  // Min-heap on node position keeps the order deterministic.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::string> out;
  out.reserve(nodes.size());
  while (!ready.empty()) {
    const auto u = ready.top();
    ready.pop();
    out.push_back(nodes[u]);
    for (auto c : children[u]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (out.size() != nodes.size()) {
    std::string cyclic;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (indegree[i] > 0) cyclic += (cyclic.empty() ? "" : ", ") + nodes[i];
    }
    throw GraphError("directed cycle through: " + cyclic);
  }
  return out;
}

void Dag::validate() const { topological_order(); }

// --- UndirectedGraph -------------------------------------------------------

UndirectedGraph::UndirectedGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)), adjacency_(nodes_.size()) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i], i).second) {
      throw GraphError("duplicate node '" + nodes_[i] + "'");
    }
  }
}

std::optional<std::size_t> UndirectedGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t UndirectedGraph::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw GraphError("unknown node '" + std::string(name) + "'");
  return *i;
}

void UndirectedGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) throw GraphError("self loop on '" + nodes_[u] + "'");
  adjacency_[u].insert(v);
  adjacency_[v].insert(u);
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

std::vector<std::pair<std::string, std::string>> UndirectedGraph::edges()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t u = 0; u < size(); ++u) {
    for (auto v : adjacency_[u]) {
      if (u < v) out.emplace_back(nodes_[u], nodes_[v]);
    }
  }
  return out;
}

// --- moralization and triangulation ----------------------------------------

Heuristic parse_heuristic(std::string_view name) {
  if (name == "min_fill") return Heuristic::min_fill;
  if (name == "min_nei") return Heuristic::min_nei;
  throw GraphError("unknown triangulation heuristic '" + std::string(name) +
                   "' (expected min_fill or min_nei)");
}

std::string_view to_string(Heuristic h) {
  return h == Heuristic::min_fill ? "min_fill" : "min_nei";
}

UndirectedGraph moralize(const Dag& dag) {
  dag.validate();
  UndirectedGraph g(dag.nodes);
  for (const auto& [child, pas] : dag.parents) {
    for (std::size_t i = 0; i < pas.size(); ++i) {
      g.add_edge(pas[i], child);
      for (std::size_t j = i + 1; j < pas.size(); ++j) {
        if (pas[i] != pas[j]) g.add_edge(pas[i], pas[j]);
      }
    }
  }
  return g;
}

namespace {

std::size_t fill_in(const std::vector<std::set<std::size_t>>& adj,
                    std::size_t v) {
  std::size_t missing = 0;
  const auto& nb = adj[v];
  for (auto it = nb.begin(); it != nb.end(); ++it) {
    for (auto jt = std::next(it); jt != nb.end(); ++jt) {
      if (!adj[*it].count(*jt)) ++missing;
    }
  }
  return missing;
}

}  // namespace

Triangulation triangulate(const UndirectedGraph& g,
                          const std::map<std::string, std::size_t>& statespaces,
                          Heuristic heuristic) {
  const std::size_t n = g.size();
  std::vector<std::set<std::size_t>> adj(n);
  for (std::size_t u = 0; u < n; ++u) adj[u] = g.neighbors(u);

  // Nodes visited in name order so the first best score wins ties.
  std::vector<std::size_t> by_name(n);
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(),
            [&](auto a, auto b) { return g.node(a) < g.node(b); });

  Triangulation t;
  t.graph = g;
  std::vector<bool> alive(n, true);
  std::vector<std::vector<std::size_t>> cliques;

  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> best;
    std::pair<std::size_t, std::size_t> best_score;
    for (auto v : by_name) {
      if (!alive[v]) continue;
      const std::size_t fill = fill_in(adj, v);
      const std::pair<std::size_t, std::size_t> score =
          heuristic == Heuristic::min_fill
              ? std::pair{fill, std::size_t{0}}
              : std::pair{adj[v].size(), fill};
      if (!best || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    const std::size_t v = *best;
    const std::vector<std::size_t> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]].insert(nb[j]).second) {
          adj[nb[j]].insert(nb[i]);
          t.graph.add_edge(nb[i], nb[j]);
          const auto lo = std::min(nb[i], nb[j]);
          const auto hi = std::max(nb[i], nb[j]);
          t.fill_edges.emplace_back(g.node(lo), g.node(hi));
        }
      }
    }

    std::vector<std::size_t> candidate = nb;
    candidate.push_back(v);
    std::sort(candidate.begin(), candidate.end());
    // Earlier cliques hold an already eliminated node, so only the new
    // candidate can be non-maximal.
    const bool contained = std::any_of(
        cliques.begin(), cliques.end(), [&](const auto& c) {
          return std::includes(c.begin(), c.end(), candidate.begin(),
                               candidate.end());
        });
    if (!contained) cliques.push_back(std::move(candidate));

    for (auto u : adj[v]) adj[u].erase(v);
    adj[v].clear();
    alive[v] = false;
    t.elimination_order.push_back(g.node(v));
  }

  for (const auto& c : cliques) {
    std::vector<std::string> names;
    std::uint64_t cells = 1;
    for (auto u : c) {
      names.push_back(g.node(u));
      auto it = statespaces.find(g.node(u));
      if (it == statespaces.end()) {
        throw GraphError("no state space size for node '" + g.node(u) + "'");
      }
      cells = checked_mul(cells, it->second);
    }
    t.cliques.push_back(std::move(names));
    t.statespace.push_back(cells);
  }
  return t;
}

std::vector<std::size_t> mcs_order(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < n; ++v) {
      if (!visited[v] && (!pick || weight[v] > weight[*pick])) pick = v;
    }
    visited[*pick] = true;
    order.push_back(*pick);
    for (auto u : g.neighbors(*pick)) {
      if (!visited[u]) ++weight[u];
    }
  }
  return order;
}

std::size_t elimination_fill(const UndirectedGraph& g,
                             const std::vector<std::size_t>& order) {
  std::vector<std::set<std::size_t>> adj(g.size());
  for (std::size_t u = 0; u < g.size(); ++u) adj[u] = g.neighbors(u);
  std::size_t fill = 0;
  for (auto v : order) {
    const std::vector<std::size_t> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]].insert(nb[j]).second) {
          adj[nb[j]].insert(nb[i]);
          ++fill;
        }
      }
    }
    for (auto u : nb) adj[u].erase(v);
    adj[v].clear();
  }
  return fill;
}

bool is_chordal(const UndirectedGraph& g) {
  auto order = mcs_order(g);
  std::reverse(order.begin(), order.end());
  return elimination_fill(g, order) == 0;
}

// --- junction tree ---------------------------------------------------------

namespace {

std::size_t find_root(std::vector<std::size_t>& uf, std::size_t x) {
  while (uf[x] != x) {
    uf[x] = uf[uf[x]];
    x = uf[x];
  }
  return x;
}

std::vector<std::string> intersect(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  }
  return out;
}

}  // namespace

JunctionTreeSkeleton build_junction_tree(
    const Triangulation& t, const std::optional<std::string>& root_node) {
  JunctionTreeSkeleton tree;
  tree.cliques = t.cliques;
  const std::size_t m = tree.cliques.size();
  if (m == 0) throw GraphError("cannot build a junction tree without cliques");

  struct Candidate {
    std::size_t weight;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      candidates.push_back(
          {intersect(tree.cliques[i], tree.cliques[j]).size(), i, j});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.weight > b.weight;
                   });

  std::vector<std::size_t> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(m);
  for (const auto& c : candidates) {
    const auto ri = find_root(uf, c.i);
    const auto rj = find_root(uf, c.j);
    if (ri == rj) continue;
    uf[ri] = rj;
    const std::size_t e = tree.edges.size();
    tree.edges.emplace_back(c.i, c.j);
    tree.separators.push_back(intersect(tree.cliques[c.i], tree.cliques[c.j]));
    adj[c.i].emplace_back(c.j, e);
    adj[c.j].emplace_back(c.i, e);
    if (tree.edges.size() + 1 == m) break;
  }

  if (root_node) {
    std::optional<std::size_t> root;
    for (std::size_t i = 0; i < m && !root; ++i) {
      const auto& c = tree.cliques[i];
      if (std::find(c.begin(), c.end(), *root_node) != c.end()) root = i;
    }
    if (!root) {
      throw GraphError("root node '" + *root_node + "' is in no clique");
    }
    tree.root = *root;
  }

  tree.parent.assign(m, std::nullopt);
  tree.parent_edge.assign(m, std::nullopt);
  tree.children.assign(m, {});
  std::vector<bool> seen(m, false);
  std::queue<std::size_t> frontier;
  frontier.push(tree.root);
  seen[tree.root] = true;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    tree.order.push_back(u);
    auto nbrs = adj[u];
    std::sort(nbrs.begin(), nbrs.end());
    for (const auto& [v, e] : nbrs) {
      if (seen[v]) continue;
      seen[v] = true;
      tree.parent[v] = u;
      tree.parent_edge[v] = e;
      tree.children[u].push_back(v);
      frontier.push(v);
    }
  }
  return tree;
}

std::vector<std::size_t> JunctionTreeSkeleton::path(std::size_t from,
                                                    std::size_t to) const {
  auto chain = [this](std::size_t x) {
    std::vector<std::size_t> up{x};
    while (parent[up.back()]) up.push_back(*parent[up.back()]);
    return up;
  };
  const auto up_from = chain(from);
  const auto up_to = chain(to);
  // Strip the common ancestry above the lowest common ancestor.
  std::size_t a = up_from.size();
  std::size_t b = up_to.size();
  while (a > 1 && b > 1 && up_from[a - 2] == up_to[b - 2]) {
    --a;
    --b;
  }
  std::vector<std::size_t> out(up_from.begin(), up_from.begin() + a);
  for (std::size_t i = b - 1; i-- > 0;) out.push_back(up_to[i]);
  return out;
}

bool has_running_intersection(const JunctionTreeSkeleton& tree) {
  std::vector<std::set<std::string>> sets;
  for (const auto& c : tree.cliques) sets.emplace_back(c.begin(), c.end());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<std::string> common;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                            sets[j].end(), std::back_inserter(common));
      for (auto k : tree.path(i, j)) {
        if (!std::includes(sets[k].begin(), sets[k].end(), common.begin(),
                           common.end())) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<StatespaceEntry> statespace_report(const Triangulation& t,
                                               std::size_t top) {
  std::vector<std::size_t> idx(t.cliques.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    return t.statespace[a] > t.statespace[b];
  });
  std::vector<StatespaceEntry> out;
  for (std::size_t i = 0; i < std::min(top, idx.size()); ++i) {
    const auto c = idx[i];
    out.push_back({c, t.cliques[c], t.statespace[c],
                   checked_mul(8, t.statespace[c])});
  }
  return out;
}

}  // namespace sparsejt
