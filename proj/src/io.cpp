#include "sparsejt/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sparsejt/dense_table.hpp"
#include "sparsejt/errors.hpp"

namespace sparsejt {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

std::vector<std::string> string_list(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw ParseError(where + ": expected strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

NetworkSpec parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("network is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("network must be a JSON object");

  std::vector<std::pair<std::string, std::vector<std::string>>> vars;
  const auto& variables = member(doc, "variables", "network");
  if (!variables.is_array()) throw ParseError("'variables' must be an array");
  for (const auto& v : variables) {
    const auto& name = member(v, "name", "variable");
    if (!name.is_string()) throw ParseError("variable name must be a string");
    const std::string n = name.get<std::string>();
    vars.emplace_back(n, string_list(member(v, "states", "variable '" + n + "'"),
                                     "states of '" + n + "'"));
  }
  Domain all;
  try {
    all = Domain::from_pairs(vars);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }

  const auto& cpts = member(doc, "cpts", "network");
  if (!cpts.is_array()) throw ParseError("'cpts' must be an array");
  std::vector<SparseTable> tables;
  for (const auto& c : cpts) {
    const auto& child_json = member(c, "child", "cpt");
    if (!child_json.is_string()) throw ParseError("cpt child must be a string");
    const std::string child = child_json.get<std::string>();
    const std::string where = "cpt for '" + child + "'";
    std::vector<std::string> labels{child};
    if (c.contains("parents")) {
      auto parents = string_list(c.at("parents"), where + " parents");
      labels.insert(labels.end(), parents.begin(), parents.end());
    }
    for (const auto& l : labels) {
      if (!all.contains(l)) {
        throw ParseError(where + ": unknown variable '" + l + "'");
      }
    }
    if (std::set(labels.begin(), labels.end()).size() != labels.size()) {
      throw ParseError(where + ": repeated variable");
    }
    const auto& values = member(c, "values", where);
    if (!values.is_array()) throw ParseError(where + ": values must be an array");
    std::vector<double> flat;
    for (const auto& v : values) {
      if (!v.is_number()) throw ParseError(where + ": values must be numbers");
      flat.push_back(v.get<double>());
    }
    const Domain domain = all.restrict_to(labels);
    if (flat.size() != domain.statespace_size()) {
      throw ParseError(where + ": expected " +
                       std::to_string(domain.statespace_size()) +
                       " values, found " + std::to_string(flat.size()));
    }
    tables.push_back(from_dense(DenseTable(domain, std::move(flat))));
  }

  // Every declared variable must carry a CPT.
  std::set<std::string> with_cpt;
  for (const auto& t : tables) with_cpt.insert(t.domain().label(0));
  for (const auto& l : all.labels()) {
    if (!with_cpt.count(l)) {
      throw ParseError("variable '" + l + "' has no CPT");
    }
  }

  NetworkSpec spec = validate_cpt_list(std::move(tables));
  // Keep the declared variable order for the domain.
  std::vector<std::string> declared = all.labels();
  spec.domain = all.restrict_to(declared);
  spec.dag.nodes = declared;
  return spec;
}

NetworkSpec load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str());
}

std::string serialize_network(const NetworkSpec& spec) {
  json doc;
  doc["variables"] = json::array();
  for (std::size_t r = 0; r < spec.domain.rank(); ++r) {
    doc["variables"].push_back(
        {{"name", spec.domain.label(r)}, {"states", spec.domain.states(r)}});
  }
  doc["cpts"] = json::array();
  for (const auto& cpt : spec.cpts) {
    const auto& labels = cpt.domain().labels();
    json entry;
    entry["child"] = labels.front();
    entry["parents"] =
        std::vector<std::string>(labels.begin() + 1, labels.end());
    const DenseTable dense = to_dense(cpt);
    entry["values"] =
        std::vector<double>(dense.values().begin(), dense.values().end());
    doc["cpts"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

Evidence parse_evidence(const std::vector<std::string>& tokens) {
  Evidence out;
  for (const auto& token : tokens) {
    std::istringstream words(token);
    std::string word;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == word.size() ||
          word.find('=', eq + 1) != std::string::npos) {
        throw ParseError("malformed evidence '" + word +
                         "' (expected variable=state)");
      }
      const std::string var = word.substr(0, eq);
      if (!out.emplace(var, word.substr(eq + 1)).second) {
        throw ParseError("evidence names variable '" + var + "' twice");
      }
    }
  }
  return out;
}

}  // namespace sparsejt
