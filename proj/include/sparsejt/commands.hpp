#ifndef SPARSEJT_COMMANDS_HPP
#define SPARSEJT_COMMANDS_HPP

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsejt/graph.hpp"

namespace sparsejt {

enum class OutputFormat { text, csv };

struct TriangulateOptions {
  std::filesystem::path network;
  Heuristic heuristic = Heuristic::min_fill;
  std::size_t top = 5;
  OutputFormat format = OutputFormat::text;
};

enum class QueryType { marginal, joint };

struct QueryOptions {
  std::filesystem::path network;
  Heuristic heuristic = Heuristic::min_fill;
  /// Raw "var=state" tokens.
  std::vector<std::string> evidence;
  std::vector<std::string> nodes;
  QueryType type = QueryType::marginal;
  std::optional<std::string> root_node;
  bool collect_only = false;
  OutputFormat format = OutputFormat::text;
};

/// Prints the largest cliques by dense state space with their cell and byte
/// counts, the byte total over the listed cliques and the fill-edge count.
/// The CSV form has the columns rank,clique,size,cells,bytes followed by a
/// `total` row and a `fill_edges` row.
void run_triangulate(const TriangulateOptions& opts, std::ostream& out);

/// Compiles the network with the evidence, propagates and prints the
/// requested distributions and p(evidence). Text output rounds to four
/// significant digits; CSV keeps full precision.
void run_query(const QueryOptions& opts, std::ostream& out);

/// 2 for parse and validation errors, 3 for impossible evidence, 4 for
/// capacity errors.
int exit_code_for(const std::exception& e);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitImpossible = 3;
inline constexpr int kExitCapacity = 4;

}  // namespace sparsejt

#endif  // SPARSEJT_COMMANDS_HPP
