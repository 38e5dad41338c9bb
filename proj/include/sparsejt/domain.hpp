#ifndef SPARSEJT_DOMAIN_HPP
#define SPARSEJT_DOMAIN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sparsejt {

/// 1-based index of a state within its variable's ordered state list.
using Level = std::uint32_t;

/// Variable-to-state assignment, used both for slicing and for evidence.
using Assignment = std::map<std::string, std::string>;

/// Multiplies two sizes, throwing CapacityError on 64-bit overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// Ordered variable labels, each with an ordered list of state names.
///
/// The position of a state in its list (counting from 1) is its level; this
/// fixes the map between named cells and level tuples used everywhere else.
/// A domain with no labels is valid and describes a scalar (one cell).
class Domain {
 public:
  Domain() = default;
  Domain(std::vector<std::string> labels,
         std::vector<std::vector<std::string>> states);

  static Domain from_pairs(
      const std::vector<std::pair<std::string, std::vector<std::string>>>&
          pairs);

  std::size_t rank() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t row) const { return labels_[row]; }
  const std::vector<std::string>& states(std::size_t row) const {
    return states_[row];
  }
  const std::vector<std::string>& states(std::string_view label) const;
  std::size_t cardinality(std::size_t row) const {
    return states_[row].size();
  }

  std::optional<std::size_t> find(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }
  /// Row of `label`; throws DomainError when absent.
  std::size_t row_of(std::string_view label) const;
  /// 1-based level of `state` for the variable in `row`.
  Level level_of(std::size_t row, std::string_view state) const;

  /// Product of all cardinalities (1 for the scalar domain).
  std::uint64_t statespace_size() const;

  /// Domain restricted to `labels`, in the order given.
  Domain restrict_to(std::span<const std::string> labels) const;

  bool operator==(const Domain& other) const {
    return labels_ == other.labels_ && states_ == other.states_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::string>> states_;
  std::unordered_map<std::string, std::size_t> rows_;
};

/// Throws DomainError unless `label` has the same state list in both domains.
void require_same_states(const Domain& a, std::size_t row_a, const Domain& b,
                         std::size_t row_b);

}  // namespace sparsejt

#endif  // SPARSEJT_DOMAIN_HPP
