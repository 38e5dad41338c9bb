// Command-line front end: triangulate, query and bench.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sparsejt/bench.hpp"
#include "sparsejt/commands.hpp"
#include "sparsejt/errors.hpp"

namespace {

using namespace sparsejt;

std::vector<std::string> split_nodes(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse junction tree inference for discrete Bayesian networks"};
  app.require_subcommand(1);

  TriangulateOptions tri;
  std::string tri_network, tri_heuristic = "min_fill", tri_format = "text";
  auto* tri_cmd = app.add_subcommand("triangulate", "Report clique state spaces");
  tri_cmd->add_option("--network", tri_network, "Network JSON file")->required();
  tri_cmd->add_option("--tri", tri_heuristic, "min_fill or min_nei");
  tri_cmd->add_option("--top", tri.top, "Number of cliques to list");
  tri_cmd->add_option("--format", tri_format, "text or csv");

  QueryOptions query;
  std::string q_network, q_heuristic = "min_fill", q_type = "marginal",
                         q_format = "text", q_root;
  std::vector<std::string> q_nodes;
  auto* q_cmd = app.add_subcommand("query", "Propagate evidence and query");
  q_cmd->add_option("--network", q_network, "Network JSON file")->required();
  q_cmd->add_option("--tri", q_heuristic, "min_fill or min_nei");
  q_cmd->add_option("--evidence", query.evidence, "var=state assignments");
  q_cmd->add_option("--nodes", q_nodes, "Comma-separated query nodes")->required();
  q_cmd->add_option("--type", q_type, "marginal or joint");
  q_cmd->add_option("--root-node", q_root, "Root the tree at a clique holding this node");
  q_cmd->add_flag("--collect-only", query.collect_only, "Skip the distribute pass");
  q_cmd->add_option("--format", q_format, "text or csv");

  bench::BenchConfig bench_cfg;
  std::vector<std::string> bands;
  std::string bench_out, model_out;
  auto* b_cmd = app.add_subcommand("bench", "Time sparse against dense tables");
  b_cmd->add_option("--max-cells", bench_cfg.max_product_cells, "Cap on dense product cells");
  b_cmd->add_option("--band", bands, "Sparsity band lo:hi (repeatable)");
  b_cmd->add_option("--reps", bench_cfg.reps, "Repetitions per band");
  b_cmd->add_option("--seed", bench_cfg.seed, "Generator seed");
  b_cmd->add_option("--out", bench_out, "Result CSV (stdout when omitted)");
  b_cmd->add_option("--memory-model-out", model_out, "Memory model CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  auto parse_format = [](const std::string& f) {
    if (f == "text") return OutputFormat::text;
    if (f == "csv") return OutputFormat::csv;
    throw ParseError("unknown format '" + f + "'");
  };

  try {
    if (*tri_cmd) {
      tri.network = tri_network;
      tri.heuristic = parse_heuristic(tri_heuristic);
      tri.format = parse_format(tri_format);
      run_triangulate(tri, std::cout);
    } else if (*q_cmd) {
      query.network = q_network;
      query.heuristic = parse_heuristic(q_heuristic);
      query.nodes = split_nodes(q_nodes);
      if (q_type == "marginal") query.type = QueryType::marginal;
      else if (q_type == "joint") query.type = QueryType::joint;
      else throw ParseError("unknown query type '" + q_type + "'");
      if (!q_root.empty()) query.root_node = q_root;
      query.format = parse_format(q_format);
      run_query(query, std::cout);
    } else if (*b_cmd) {
      if (!bands.empty()) {
        bench_cfg.sparsity_bands.clear();
        for (const auto& b : bands) {
          bench_cfg.sparsity_bands.push_back(bench::SparsityBand::parse(b));
        }
      }
      if (!model_out.empty()) {
        std::ostringstream model;
        bench::write_memory_model_csv(model, bench::memory_model_rows());
        write_file(model_out, model.str());
      }
      std::ostringstream csv;
      bench::write_bench_csv(csv, bench::run_bench(bench_cfg));
      if (bench_out.empty()) std::cout << csv.str();
      else write_file(bench_out, csv.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}
