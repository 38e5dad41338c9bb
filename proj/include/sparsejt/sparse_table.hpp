#ifndef SPARSEJT_SPARSE_TABLE_HPP
#define SPARSEJT_SPARSE_TABLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sparsejt/domain.hpp"

namespace sparsejt {

/// A table of nonzero cells: an index matrix with one row per variable and
/// one column per stored cell, plus the vector of cell values.
///
/// Invariants: no duplicate columns, no stored zeros, every level in range.
/// Column order carries no meaning; compare tables with `equiv`.
///
/// Levels are 1-based at the interface (`level`). Internally a column is a
/// contiguous run of 0-based offsets, exposed through `offsets` for the
/// algorithms in this library.
class SparseTable {
 public:
  SparseTable() = default;
  /// Empty support over `domain`.
  explicit SparseTable(Domain domain) : domain_(std::move(domain)) {}
  /// Validating constructor; `columns[j]` holds the 1-based levels of cell j
  /// in label order.
  SparseTable(Domain domain, const std::vector<std::vector<Level>>& columns,
              std::vector<double> values);

  /// Takes ownership of 0-based column-major offsets without validation.
  /// Callers guarantee the invariants.
  static SparseTable adopt(Domain domain, std::vector<Level> offsets,
                           std::vector<double> values);

  const Domain& domain() const { return domain_; }
  std::size_t rank() const { return domain_.rank(); }
  std::size_t ncols() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// 1-based level of the variable in `row` for column `col`.
  Level level(std::size_t col, std::size_t row) const {
    return offsets_[col * rank() + row] + 1;
  }
  std::span<const Level> offsets(std::size_t col) const {
    return {offsets_.data() + col * rank(), rank()};
  }
  std::span<const double> values() const { return values_; }
  double value(std::size_t col) const { return values_[col]; }

 private:
  Domain domain_;
  std::vector<Level> offsets_;
  std::vector<double> values_;
};

/// The all-ones table over a domain. Nothing but the domain is stored.
class UnityTable {
 public:
  UnityTable() = default;
  explicit UnityTable(Domain domain) : domain_(std::move(domain)) {}
  const Domain& domain() const { return domain_; }

 private:
  Domain domain_;
};

/// Hashable encoding of a level tuple over a fixed list of variables.
struct TupleKey {
  std::uint64_t packed = 0;
  std::string wide;

  bool operator==(const TupleKey&) const = default;
};

struct TupleKeyHash {
  std::size_t operator()(const TupleKey& k) const noexcept;
};

/// Encodes the restriction of a column to selected rows.
///
/// Tuples are packed as a mixed-radix integer when the product of the
/// selected cardinalities fits in 64 bits, otherwise the raw levels are
/// copied into a byte string. Either way the encoding is injective.
class KeyCodec {
 public:
  KeyCodec() = default;
  /// `rows` are rows of `domain`; the key order follows `rows`.
  KeyCodec(const Domain& domain, std::vector<std::size_t> rows);

  /// Same key layout applied to other row positions (for a second table
  /// that shares the variables with identical cardinalities).
  KeyCodec rebind(std::vector<std::size_t> rows) const;

  TupleKey encode(std::span<const Level> column_offsets) const;
  bool packed() const { return packed_; }
  std::span<const std::size_t> rows() const { return rows_; }

 private:
  std::vector<std::size_t> rows_;
  std::vector<std::uint64_t> radix_;
  bool packed_ = true;
};

/// Maps each distinct separator tuple to the columns carrying it. Keys are
/// kept in first-seen order; the column lists use compressed storage.
class SeparatorIndex {
 public:
  static SeparatorIndex build(const SparseTable& table,
                              std::span<const std::string> labels);
  static SeparatorIndex build(const SparseTable& table, KeyCodec codec);

  std::size_t key_count() const { return keys_.size(); }
  const TupleKey& key(std::size_t slot) const { return keys_[slot]; }
  std::span<const std::size_t> columns(std::size_t slot) const {
    return {columns_.data() + starts_[slot],
            starts_[slot + 1] - starts_[slot]};
  }
  std::optional<std::size_t> find(const TupleKey& key) const;
  const KeyCodec& codec() const { return codec_; }

 private:
  KeyCodec codec_;
  std::vector<TupleKey> keys_;
  std::unordered_map<TupleKey, std::size_t, TupleKeyHash> slots_;
  std::vector<std::size_t> starts_;
  std::vector<std::size_t> columns_;
};

/// Streaming marginal lookup: each kept tuple maps to a witness column and
/// the running sum of the values sharing that tuple.
class MarginalIndex {
 public:
  struct Entry {
    std::size_t witness;
    double value;
  };

  static MarginalIndex build(const SparseTable& table,
                             std::span<const std::string> kept);

  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t slot) const { return entries_[slot]; }
  const TupleKey& key(std::size_t slot) const { return keys_[slot]; }
  std::optional<std::size_t> find(const TupleKey& key) const;

 private:
  std::vector<TupleKey> keys_;
  std::vector<Entry> entries_;
  std::unordered_map<TupleKey, std::size_t, TupleKeyHash> slots_;
};

// Table algebra. Every result satisfies the SparseTable invariants.

/// Cell-wise product over the union of labels (a's labels first).
SparseTable mult(const SparseTable& a, const SparseTable& b);
/// Cell-wise quotient with 0/0 := 0; b's labels must be a subset of a's.
SparseTable div(const SparseTable& a, const SparseTable& b);
/// Sums out `drop`. Dropping every label yields a scalar table.
SparseTable marg(const SparseTable& s, std::span<const std::string> drop);
/// Keeps only the columns consistent with `assignment`; with `drop_sliced`
/// the assigned variables are removed from the domain as well.
SparseTable slice(const SparseTable& s, const Assignment& assignment,
                  bool drop_sliced = false);
SparseTable mult_unity(const SparseTable& s, const UnityTable& u);
/// Unity divided by `s`: the reciprocal values replicated over u's new
/// variables.
SparseTable div_unity(const UnityTable& u, const SparseTable& s);
/// Conditional table of the remaining variables given `given`.
SparseTable as_cpt(const SparseTable& s, std::span<const std::string> given);
SparseTable normalize(const SparseTable& s);

double sum(const SparseTable& s);
double max_value(const SparseTable& s);
double min_value(const SparseTable& s);
/// Column of the maximum (minimum) value; the lowest column wins ties.
std::size_t which_max_cell(const SparseTable& s);
std::size_t which_min_cell(const SparseTable& s);
/// Value at the named cell, zero when the cell is not stored.
double get_val(const SparseTable& s, const Assignment& cell);
/// Named cell of column `col` (0-based), as (label, state) in label order.
std::vector<std::pair<std::string, std::string>> get_cell_name(
    const SparseTable& s, std::size_t col);
/// Equality up to column permutation and label order, values compared with
/// absolute tolerance `tol`.
bool equiv(const SparseTable& a, const SparseTable& b, double tol = 0.0);
/// 1 - stored cells / dense cells.
double sparsity(const SparseTable& s);

/// Copy of `s` with its labels reordered to `labels` (a permutation).
SparseTable reorder(const SparseTable& s, std::span<const std::string> labels);

enum class StorageKind { dense, sparse };

/// Bytes taken by a table: 8 per cell when dense, 4k + 8 per stored cell
/// when sparse (k labels). Domain metadata is not counted.
std::uint64_t mem_estimate(const Domain& domain, std::uint64_t n_nonzero,
                           StorageKind kind);
std::uint64_t dense_bytes(std::uint64_t cells);
std::uint64_t sparse_bytes(std::uint64_t n_nonzero, std::size_t n_labels);

}  // namespace sparsejt

#endif  // SPARSEJT_SPARSE_TABLE_HPP
