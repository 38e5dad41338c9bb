#include "sparsejt/domain.hpp"

#include <limits>
#include <unordered_set>

#include "sparsejt/errors.hpp"

namespace sparsejt {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw CapacityError("state space size overflows 64 bits");
  }
  return a * b;
}

Domain::Domain(std::vector<std::string> labels,
               std::vector<std::vector<std::string>> states)
    : labels_(std::move(labels)), states_(std::move(states)) {
  if (labels_.size() != states_.size()) {
    throw DomainError("domain needs one state list per label");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw DomainError("empty variable label");
    if (!rows_.emplace(labels_[i], i).second) {
      throw DomainError("duplicate variable label '" + labels_[i] + "'");
    }
    if (states_[i].empty()) {
      throw DomainError("variable '" + labels_[i] + "' has no states");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& s : states_[i]) {
      if (!seen.insert(s).second) {
        throw DomainError("duplicate state '" + s + "' for variable '" +
                          labels_[i] + "'");
      }
    }
  }
}

Domain Domain::from_pairs(
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        pairs) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> states;
  labels.reserve(pairs.size());
  states.reserve(pairs.size());
  for (const auto& [label, st] : pairs) {
    labels.push_back(label);
    states.push_back(st);
  }
  return Domain(std::move(labels), std::move(states));
}

const std::vector<std::string>& Domain::states(std::string_view label) const {
  return states_[row_of(label)];
}

std::optional<std::size_t> Domain::find(std::string_view label) const {
  auto it = rows_.find(std::string(label));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

std::size_t Domain::row_of(std::string_view label) const {
  auto row = find(label);
  if (!row) throw DomainError("unknown variable '" + std::string(label) + "'");
  return *row;
}

Level Domain::level_of(std::size_t row, std::string_view state) const {
  const auto& st = states_[row];
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (st[i] == state) return static_cast<Level>(i + 1);
  }
  throw DomainError("unknown state '" + std::string(state) +
                    "' for variable '" + labels_[row] + "'");
}

std::uint64_t Domain::statespace_size() const {
  std::uint64_t n = 1;
  for (const auto& st : states_) n = checked_mul(n, st.size());
  return n;
}

Domain Domain::restrict_to(std::span<const std::string> labels) const {
  std::vector<std::string> out_labels;
  std::vector<std::vector<std::string>> out_states;
  out_labels.reserve(labels.size());
  out_states.reserve(labels.size());
  for (const auto& l : labels) {
    out_labels.push_back(l);
    out_states.push_back(states_[row_of(l)]);
  }
  return Domain(std::move(out_labels), std::move(out_states));
}

void require_same_states(const Domain& a, std::size_t row_a, const Domain& b,
                         std::size_t row_b) {
  if (a.states(row_a) != b.states(row_b)) {
    throw DomainError("state lists for variable '" + a.label(row_a) +
                      "' differ between tables");
  }
}

}  // namespace sparsejt
