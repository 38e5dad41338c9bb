#ifndef SPARSEJT_IO_HPP
#define SPARSEJT_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sparsejt/junction_tree.hpp"
#include "sparsejt/network.hpp"

namespace sparsejt {

/// Reads a network from its JSON form:
///
///   {"variables": [{"name": "asia", "states": ["yes", "no"]}, ...],
///    "cpts": [{"child": "tub", "parents": ["asia"],
///              "values": [0.05, 0.95, 0.01, 0.99]}, ...]}
///
/// `values` lists the CPT cells with the child varying fastest, then the
/// parents in listed order. Throws ParseError for malformed documents and
/// NormalizationError (naming the child) for CPTs that do not sum to one.
NetworkSpec parse_network(std::string_view text);
NetworkSpec load_network(const std::filesystem::path& path);

/// Inverse of parse_network; variables follow the spec's domain order.
std::string serialize_network(const NetworkSpec& spec);

/// Parses "var=state" tokens. Tokens may also hold several assignments
/// separated by whitespace. Throws ParseError on malformed or duplicate
/// entries; names are checked later against the network.
Evidence parse_evidence(const std::vector<std::string>& tokens);

}  // namespace sparsejt

#endif  // SPARSEJT_IO_HPP
