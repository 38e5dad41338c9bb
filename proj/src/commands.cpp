#include "sparsejt/commands.hpp"

#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>

#include "sparsejt/errors.hpp"
#include "sparsejt/io.hpp"
#include "sparsejt/junction_tree.hpp"

namespace sparsejt {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += items[i];
  }
  return s;
}

}  // namespace

void run_triangulate(const TriangulateOptions& opts, std::ostream& out) {
  const NetworkSpec spec = load_network(opts.network);
  std::map<std::string, std::size_t> cards;
  for (std::size_t r = 0; r < spec.domain.rank(); ++r) {
    cards[spec.domain.label(r)] = spec.domain.cardinality(r);
  }
  const Triangulation tri =
      triangulate(moralize(spec.dag), cards, opts.heuristic);
  const auto top = statespace_report(tri, opts.top);

  std::uint64_t total_cells = 0;
  std::uint64_t total_bytes = 0;
  for (const auto& e : top) {
    total_cells += e.cells;
    total_bytes += e.bytes;
  }

  if (opts.format == OutputFormat::csv) {
    out << "rank,clique,size,cells,bytes\n";
    for (std::size_t i = 0; i < top.size(); ++i) {
      out << i + 1 << ',' << join(top[i].clique, " ") << ','
          << top[i].clique.size() << ',' << top[i].cells << ','
          << top[i].bytes << '\n';
    }
    out << "total,,," << total_cells << ',' << total_bytes << '\n';
    out << "fill_edges,,," << tri.fill_edges.size() << ",\n";
    return;
  }

  std::size_t max_size = 0, min_size = tri.cliques.empty() ? 0 : SIZE_MAX;
  std::size_t members = 0;
  for (const auto& c : tri.cliques) {
    max_size = std::max(max_size, c.size());
    min_size = std::min(min_size, c.size());
    members += c.size();
  }
  out << "Heuristic: " << to_string(opts.heuristic) << '\n';
  out << "Nodes: " << spec.domain.rank() << '\n';
  out << "Fill edges: " << tri.fill_edges.size() << '\n';
  out << "Cliques: " << tri.cliques.size() << '\n';
  out << " - max: " << max_size << '\n';
  out << " - min: " << min_size << '\n';
  out << " - avg: "
      << fmt("%.2f", tri.cliques.empty() ? 0.0
                                         : static_cast<double>(members) / tri.cliques.size())
      << '\n';
  out << "Largest state spaces:\n";
  for (std::size_t i = 0; i < top.size(); ++i) {
    out << "  " << i + 1 << ". {" << join(top[i].clique, ", ") << "}  cells "
        << top[i].cells << "  bytes " << top[i].bytes << '\n';
  }
  out << "Total over listed cliques: " << total_cells << " cells, "
      << total_bytes << " bytes (" << fmt("%.2f", total_bytes / 1e9)
      << " GB)\n";
}

void run_query(const QueryOptions& opts, std::ostream& out) {
  const NetworkSpec spec = load_network(opts.network);
  const Evidence evidence = parse_evidence(opts.evidence);
  if (opts.nodes.empty()) throw DomainError("no query nodes given");
  for (const auto& n : opts.nodes) {
    if (!spec.domain.contains(n)) {
      throw DomainError("unknown node '" + n + "'");
    }
  }

  JunctionTree jt = compile(spec, evidence, opts.heuristic, opts.root_node);
  jt.collect();
  if (!opts.collect_only) jt.distribute();
  const double pe = jt.prob_of_evidence();
  const bool csv = opts.format == OutputFormat::csv;

  if (opts.type == QueryType::marginal) {
    const auto marginals = jt.query_marginal(opts.nodes);
    if (csv) out << "variable,state,probability\n";
    for (const auto& m : marginals) {
      if (csv) {
        for (std::size_t i = 0; i < m.states.size(); ++i) {
          out << m.variable << ',' << m.states[i] << ','
              << fmt("%.17g", m.probabilities[i]) << '\n';
        }
        continue;
      }
      out << m.variable << ':';
      for (std::size_t i = 0; i < m.states.size(); ++i) {
        out << (i ? ", " : " ") << m.states[i] << ' '
            << fmt("%.4g", m.probabilities[i]);
      }
      out << '\n';
    }
  } else {
    const SparseTable joint = jt.query_joint(opts.nodes);
    const Domain& d = joint.domain();
    if (csv) out << join(d.labels(), ",") << ",probability\n";
    else out << "joint(" << join(d.labels(), ", ") << "):\n";
    // Dense enumeration, first variable fastest, so zero cells are listed.
    std::vector<std::size_t> cell(d.rank(), 0);
    const std::uint64_t n = d.statespace_size();
    for (std::uint64_t i = 0; i < n; ++i) {
      Assignment a;
      std::vector<std::string> parts;
      for (std::size_t r = 0; r < d.rank(); ++r) {
        a[d.label(r)] = d.states(r)[cell[r]];
        parts.push_back(csv ? d.states(r)[cell[r]]
                            : d.label(r) + "=" + d.states(r)[cell[r]]);
      }
      const double p = get_val(joint, a);
      if (csv) out << join(parts, ",") << ',' << fmt("%.17g", p) << '\n';
      else out << "  " << join(parts, ", ") << ": " << fmt("%.4g", p) << '\n';
      for (std::size_t r = 0; r < d.rank(); ++r) {
        if (++cell[r] < d.cardinality(r)) break;
        cell[r] = 0;
      }
    }
  }
  if (csv) out << "p_evidence,," << fmt("%.17g", pe) << '\n';
  else out << "p(evidence): " << fmt("%.4g", pe) << '\n';
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ImpossibleEvidenceError*>(&e)) return kExitImpossible;
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
  return kExitInvalid;
}

}  // namespace sparsejt
