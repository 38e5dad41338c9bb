#ifndef SPARSEJT_DENSE_TABLE_HPP
#define SPARSEJT_DENSE_TABLE_HPP

#include <span>
#include <string>
#include <vector>

#include "sparsejt/domain.hpp"
#include "sparsejt/sparse_table.hpp"

namespace sparsejt {

/// Full array over a domain's cell space. The first listed variable varies
/// fastest in `values`.
///
/// This is the brute-force reference for the sparse algebra and the dense
/// baseline of the benchmark; its operations enumerate every cell.
class DenseTable {
 public:
  DenseTable() : values_(1, 0.0) {}
  /// All-zero table over `domain`.
  explicit DenseTable(Domain domain);
  DenseTable(Domain domain, std::vector<double> values);

  const Domain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Linear position of the cell with 0-based `offsets` (label order).
  std::size_t position(std::span<const Level> offsets) const;
  double at(std::span<const Level> offsets) const {
    return values_[position(offsets)];
  }

 private:
  Domain domain_;
  std::vector<double> values_;
};

SparseTable from_dense(const DenseTable& t);
DenseTable to_dense(const SparseTable& s);

// Dense reference algebra, same conventions as the sparse one: results of
// products list a's labels first, and any division by zero yields zero.
DenseTable dense_mult(const DenseTable& a, const DenseTable& b);
DenseTable dense_div(const DenseTable& a, const DenseTable& b);
DenseTable dense_marg(const DenseTable& t, std::span<const std::string> drop);
/// Zeroes cells inconsistent with `assignment`; `drop_sliced` removes the
/// assigned variables.
DenseTable dense_slice(const DenseTable& t, const Assignment& assignment,
                       bool drop_sliced = false);
DenseTable dense_ones(const Domain& domain);
double dense_sum(const DenseTable& t);

}  // namespace sparsejt

#endif  // SPARSEJT_DENSE_TABLE_HPP
