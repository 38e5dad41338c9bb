#include "sparsejt/sparse_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_set>

#include "sparsejt/errors.hpp"

namespace sparsejt {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Rows of `b` holding the labels of `a` that `b` also has, and the matching
/// rows of `a`. State lists of shared labels must agree.
struct SharedRows {
  std::vector<std::size_t> in_a;
  std::vector<std::size_t> in_b;
};

SharedRows shared_rows(const Domain& a, const Domain& b) {
  SharedRows out;
  for (std::size_t r = 0; r < a.rank(); ++r) {
    if (auto rb = b.find(a.label(r))) {
      require_same_states(a, r, b, *rb);
      out.in_a.push_back(r);
      out.in_b.push_back(*rb);
    }
  }
  return out;
}

/// Rows of `b` whose labels are absent from `a`, in b's order.
std::vector<std::size_t> new_rows(const Domain& a, const Domain& b) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < b.rank(); ++r) {
    if (!a.contains(b.label(r))) out.push_back(r);
  }
  return out;
}

Domain union_domain(const Domain& a, const Domain& b,
                    std::span<const std::size_t> b_new) {
  std::vector<std::string> labels = a.labels();
  std::vector<std::vector<std::string>> states;
  states.reserve(a.rank() + b_new.size());
  for (std::size_t r = 0; r < a.rank(); ++r) states.push_back(a.states(r));
  for (auto r : b_new) {
    labels.push_back(b.label(r));
    states.push_back(b.states(r));
  }
  return Domain(std::move(labels), std::move(states));
}

/// Removes exact zeros (products can underflow).
SparseTable compact(Domain domain, std::vector<Level> offsets,
                    std::vector<double> values) {
  const std::size_t k = domain.rank();
  if (std::find(values.begin(), values.end(), 0.0) != values.end()) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] == 0.0) continue;
      if (out != j) {
        std::copy_n(offsets.begin() + j * k, k, offsets.begin() + out * k);
        values[out] = values[j];
      }
      ++out;
    }
    values.resize(out);
    offsets.resize(out * k);
  }
  return SparseTable::adopt(std::move(domain), std::move(offsets),
                            std::move(values));
}

/// Algorithm-1 style hash join on the shared labels. `combine` produces the
/// result value from the two operand values.
template <class Combine>
SparseTable join(const SparseTable& a, const SparseTable& b,
                 Combine combine) {
  const SharedRows shared = shared_rows(a.domain(), b.domain());
  const std::vector<std::size_t> b_new = new_rows(a.domain(), b.domain());

  const KeyCodec codec_a(a.domain(), shared.in_a);
  const SeparatorIndex index_a = SeparatorIndex::build(a, codec_a);
  const SeparatorIndex index_b =
      SeparatorIndex::build(b, codec_a.rebind(shared.in_b));

  // Result size is known before any value is computed.
  std::uint64_t n = 0;
  std::vector<std::optional<std::size_t>> partner(index_a.key_count());
  for (std::size_t slot = 0; slot < index_a.key_count(); ++slot) {
    partner[slot] = index_b.find(index_a.key(slot));
    if (partner[slot]) {
      n += static_cast<std::uint64_t>(index_a.columns(slot).size()) *
           index_b.columns(*partner[slot]).size();
    }
  }

  Domain domain = union_domain(a.domain(), b.domain(), b_new);
  const std::size_t k = domain.rank();
  std::vector<Level> offsets;
  offsets.reserve(checked_mul(n, k));
  std::vector<double> values;
  values.reserve(n);

  for (std::size_t slot = 0; slot < index_a.key_count(); ++slot) {
    if (!partner[slot]) continue;
    for (std::size_t ja : index_a.columns(slot)) {
      for (std::size_t jb : index_b.columns(*partner[slot])) {
        auto col_a = a.offsets(ja);
        offsets.insert(offsets.end(), col_a.begin(), col_a.end());
        auto col_b = b.offsets(jb);
        for (auto r : b_new) offsets.push_back(col_b[r]);
        values.push_back(combine(a.value(ja), b.value(jb)));
      }
    }
  }
  return compact(std::move(domain), std::move(offsets), std::move(values));
}

/// Algorithm-3 style expansion of `s` over the variables of `u` it lacks.
template <class Transform>
SparseTable expand_unity(const SparseTable& s, const UnityTable& u,
                         Transform transform) {
  const Domain& ud = u.domain();
  shared_rows(s.domain(), ud);  // state-list check only
  const std::vector<std::size_t> r_rows = new_rows(s.domain(), ud);

  std::uint64_t lr = 1;
  for (auto r : r_rows) lr = checked_mul(lr, ud.cardinality(r));
  const std::uint64_t n = checked_mul(s.ncols(), lr);

  Domain domain = union_domain(s.domain(), ud, r_rows);
  const std::size_t k = domain.rank();
  std::vector<Level> offsets;
  offsets.reserve(checked_mul(n, k));
  std::vector<double> values;
  values.reserve(n);

  std::vector<Level> counter(r_rows.size(), 0);
  for (std::size_t j = 0; j < s.ncols(); ++j) {
    const double v = transform(s.value(j));
    std::fill(counter.begin(), counter.end(), 0);
    for (std::uint64_t c = 0; c < lr; ++c) {
      auto col = s.offsets(j);
      offsets.insert(offsets.end(), col.begin(), col.end());
      offsets.insert(offsets.end(), counter.begin(), counter.end());
      values.push_back(v);
      for (std::size_t i = 0; i < counter.size(); ++i) {
        if (++counter[i] < ud.cardinality(r_rows[i])) break;
        counter[i] = 0;
      }
    }
  }
  return SparseTable::adopt(std::move(domain), std::move(offsets),
                            std::move(values));
}

std::vector<std::size_t> identity_rows(std::size_t k) {
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  return rows;
}

}  // namespace

// --- SparseTable -----------------------------------------------------------

SparseTable::SparseTable(Domain domain,
                         const std::vector<std::vector<Level>>& columns,
                         std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (columns.size() != values_.size()) {
    throw DomainError("column count does not match value count");
  }
  const std::size_t k = domain_.rank();
  offsets_.reserve(columns.size() * k);
  for (const auto& col : columns) {
    if (col.size() != k) {
      throw DomainError("column length does not match the number of labels");
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (col[r] < 1 || col[r] > domain_.cardinality(r)) {
        throw DomainError("level out of range for variable '" +
                          domain_.label(r) + "'");
      }
      offsets_.push_back(col[r] - 1);
    }
  }
  for (double v : values_) {
    if (v == 0.0) throw DomainError("sparse tables cannot store zeros");
  }
  const KeyCodec codec(domain_, identity_rows(k));
  std::unordered_set<TupleKey, TupleKeyHash> seen;
  for (std::size_t j = 0; j < ncols(); ++j) {
    if (!seen.insert(codec.encode(offsets(j))).second) {
      throw DomainError("duplicate cell in sparse table");
    }
  }
}

SparseTable SparseTable::adopt(Domain domain, std::vector<Level> offsets,
                               std::vector<double> values) {
  SparseTable t(std::move(domain));
  t.offsets_ = std::move(offsets);
  t.values_ = std::move(values);
  return t;
}

// --- keys and indexes ------------------------------------------------------

std::size_t TupleKeyHash::operator()(const TupleKey& k) const noexcept {
  if (k.wide.empty()) return static_cast<std::size_t>(mix64(k.packed));
  return std::hash<std::string>{}(k.wide);
}

KeyCodec::KeyCodec(const Domain& domain, std::vector<std::size_t> rows)
    : rows_(std::move(rows)) {
  radix_.reserve(rows_.size());
  std::uint64_t stride = 1;
  for (auto r : rows_) {
    radix_.push_back(stride);
    const std::uint64_t card = domain.cardinality(r);
    if (stride > std::numeric_limits<std::uint64_t>::max() / card) {
      packed_ = false;
      break;
    }
    stride *= card;
  }
  if (!packed_) radix_.clear();
}

KeyCodec KeyCodec::rebind(std::vector<std::size_t> rows) const {
  KeyCodec out = *this;
  out.rows_ = std::move(rows);
  return out;
}

TupleKey KeyCodec::encode(std::span<const Level> column_offsets) const {
  TupleKey key;
  if (packed_) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      key.packed += radix_[i] * column_offsets[rows_[i]];
    }
  } else {
    key.wide.resize(rows_.size() * sizeof(Level));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Level l = column_offsets[rows_[i]];
      std::memcpy(key.wide.data() + i * sizeof(Level), &l, sizeof(Level));
    }
  }
  return key;
}

SeparatorIndex SeparatorIndex::build(const SparseTable& table,
                                     std::span<const std::string> labels) {
  std::vector<std::size_t> rows;
  rows.reserve(labels.size());
  for (const auto& l : labels) rows.push_back(table.domain().row_of(l));
  return build(table, KeyCodec(table.domain(), std::move(rows)));
}

SeparatorIndex SeparatorIndex::build(const SparseTable& table, KeyCodec codec) {
  SeparatorIndex index;
  index.codec_ = std::move(codec);
  std::vector<std::size_t> slot_of(table.ncols());
  std::vector<std::size_t> counts;
  for (std::size_t j = 0; j < table.ncols(); ++j) {
    TupleKey key = index.codec_.encode(table.offsets(j));
    auto [it, inserted] = index.slots_.try_emplace(key, index.keys_.size());
    if (inserted) {
      index.keys_.push_back(std::move(key));
      counts.push_back(0);
    }
    slot_of[j] = it->second;
    ++counts[it->second];
  }
  index.starts_.assign(counts.size() + 1, 0);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    index.starts_[s + 1] = index.starts_[s] + counts[s];
  }
  index.columns_.resize(table.ncols());
  std::vector<std::size_t> fill(index.starts_.begin(), index.starts_.end() - 1);
  for (std::size_t j = 0; j < table.ncols(); ++j) {
    index.columns_[fill[slot_of[j]]++] = j;
  }
  return index;
}

std::optional<std::size_t> SeparatorIndex::find(const TupleKey& key) const {
  auto it = slots_.find(key);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

MarginalIndex MarginalIndex::build(const SparseTable& table,
                                   std::span<const std::string> kept) {
  std::vector<std::size_t> rows;
  rows.reserve(kept.size());
  for (const auto& l : kept) rows.push_back(table.domain().row_of(l));
  const KeyCodec codec(table.domain(), std::move(rows));

  MarginalIndex index;
  for (std::size_t j = 0; j < table.ncols(); ++j) {
    TupleKey key = codec.encode(table.offsets(j));
    auto [it, inserted] = index.slots_.try_emplace(key, index.keys_.size());
    if (inserted) {
      index.keys_.push_back(std::move(key));
      index.entries_.push_back({j, table.value(j)});
    } else {
      auto& e = index.entries_[it->second];
      e.witness = j;
      e.value += table.value(j);
    }
  }
  return index;
}

std::optional<std::size_t> MarginalIndex::find(const TupleKey& key) const {
  auto it = slots_.find(key);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

// --- algebra ---------------------------------------------------------------

SparseTable mult(const SparseTable& a, const SparseTable& b) {
  return join(a, b, [](double x, double y) { return x * y; });
}

SparseTable div(const SparseTable& a, const SparseTable& b) {
  for (const auto& l : b.domain().labels()) {
    if (!a.domain().contains(l)) {
      throw DomainError("division requires the divisor's variables to be a "
                        "subset of the dividend's; '" + l + "' is not");
    }
  }
  return join(a, b, [](double x, double y) { return x / y; });
}

SparseTable marg(const SparseTable& s, std::span<const std::string> drop) {
  std::vector<bool> dropped(s.rank(), false);
  for (const auto& l : drop) dropped[s.domain().row_of(l)] = true;
  std::vector<std::string> kept;
  std::vector<std::size_t> kept_rows;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    if (!dropped[r]) {
      kept.push_back(s.domain().label(r));
      kept_rows.push_back(r);
    }
  }
  if (kept.size() == s.rank()) return s;

  const MarginalIndex index = MarginalIndex::build(s, kept);
  std::vector<Level> offsets;
  offsets.reserve(index.size() * kept.size());
  std::vector<double> values;
  values.reserve(index.size());
  for (std::size_t slot = 0; slot < index.size(); ++slot) {
    const auto& e = index.entry(slot);
    auto col = s.offsets(e.witness);
    for (auto r : kept_rows) offsets.push_back(col[r]);
    values.push_back(e.value);
  }
  return compact(s.domain().restrict_to(kept), std::move(offsets),
                 std::move(values));
}

SparseTable slice(const SparseTable& s, const Assignment& assignment,
                  bool drop_sliced) {
  if (assignment.empty()) return s;
  std::vector<std::pair<std::size_t, Level>> fixed;
  std::vector<bool> removed(s.rank(), false);
  for (const auto& [label, state] : assignment) {
    const std::size_t row = s.domain().row_of(label);
    fixed.emplace_back(row, s.domain().level_of(row, state) - 1);
    removed[row] = drop_sliced;
  }
  std::vector<std::string> labels;
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    if (!removed[r]) {
      labels.push_back(s.domain().label(r));
      rows.push_back(r);
    }
  }

  std::vector<Level> offsets;
  std::vector<double> values;
  for (std::size_t j = 0; j < s.ncols(); ++j) {
    auto col = s.offsets(j);
    bool keep = true;
    for (const auto& [row, level] : fixed) {
      if (col[row] != level) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    for (auto r : rows) offsets.push_back(col[r]);
    values.push_back(s.value(j));
  }
  return SparseTable::adopt(s.domain().restrict_to(labels), std::move(offsets),
                            std::move(values));
}

SparseTable mult_unity(const SparseTable& s, const UnityTable& u) {
  return expand_unity(s, u, [](double v) { return v; });
}

SparseTable div_unity(const UnityTable& u, const SparseTable& s) {
  return expand_unity(s, u, [](double v) { return 1.0 / v; });
}

SparseTable as_cpt(const SparseTable& s, std::span<const std::string> given) {
  std::vector<bool> conditioned(s.rank(), false);
  for (const auto& l : given) conditioned[s.domain().row_of(l)] = true;
  std::vector<std::string> drop;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    if (!conditioned[r]) drop.push_back(s.domain().label(r));
  }
  return div(s, marg(s, drop));
}

SparseTable normalize(const SparseTable& s) {
  const double total = sum(s);
  if (total == 0.0) throw NormalizationError("cannot normalize a zero table");
  std::vector<Level> offsets;
  offsets.reserve(s.ncols() * s.rank());
  for (std::size_t j = 0; j < s.ncols(); ++j) {
    auto col = s.offsets(j);
    offsets.insert(offsets.end(), col.begin(), col.end());
  }
  std::vector<double> values(s.values().begin(), s.values().end());
  for (auto& v : values) v /= total;
  return compact(s.domain(), std::move(offsets), std::move(values));
}

double sum(const SparseTable& s) {
  double total = 0.0;
  for (double v : s.values()) total += v;
  return total;
}

std::size_t which_max_cell(const SparseTable& s) {
  if (s.empty()) throw DomainError("maximum of an empty table");
  auto vals = s.values();
  return static_cast<std::size_t>(
      std::max_element(vals.begin(), vals.end()) - vals.begin());
}

std::size_t which_min_cell(const SparseTable& s) {
  if (s.empty()) throw DomainError("minimum of an empty table");
  auto vals = s.values();
  return static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
}

double max_value(const SparseTable& s) { return s.value(which_max_cell(s)); }
double min_value(const SparseTable& s) { return s.value(which_min_cell(s)); }

double get_val(const SparseTable& s, const Assignment& cell) {
  std::vector<Level> target(s.rank());
  for (std::size_t r = 0; r < s.rank(); ++r) {
    auto it = cell.find(s.domain().label(r));
    if (it == cell.end()) {
      throw DomainError("cell does not name variable '" + s.domain().label(r) +
                        "'");
    }
    target[r] = s.domain().level_of(r, it->second) - 1;
  }
  for (std::size_t j = 0; j < s.ncols(); ++j) {
    auto col = s.offsets(j);
    if (std::equal(col.begin(), col.end(), target.begin())) return s.value(j);
  }
  return 0.0;
}

std::vector<std::pair<std::string, std::string>> get_cell_name(
    const SparseTable& s, std::size_t col) {
  if (col >= s.ncols()) {
    throw DomainError("column " + std::to_string(col) + " out of range (" +
                      std::to_string(s.ncols()) + " columns)");
  }
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(s.rank());
  for (std::size_t r = 0; r < s.rank(); ++r) {
    out.emplace_back(s.domain().label(r),
                     s.domain().states(r)[s.offsets(col)[r]]);
  }
  return out;
}

bool equiv(const SparseTable& a, const SparseTable& b, double tol) {
  if (a.rank() != b.rank() || a.ncols() != b.ncols()) return false;
  std::vector<std::size_t> rows_b;
  rows_b.reserve(a.rank());
  for (std::size_t r = 0; r < a.rank(); ++r) {
    auto rb = b.domain().find(a.domain().label(r));
    if (!rb || a.domain().states(r) != b.domain().states(*rb)) return false;
    rows_b.push_back(*rb);
  }
  const KeyCodec codec_a(a.domain(), identity_rows(a.rank()));
  const KeyCodec codec_b = codec_a.rebind(rows_b);
  std::unordered_map<TupleKey, double, TupleKeyHash> cells;
  cells.reserve(b.ncols());
  for (std::size_t j = 0; j < b.ncols(); ++j) {
    cells.emplace(codec_b.encode(b.offsets(j)), b.value(j));
  }
  for (std::size_t j = 0; j < a.ncols(); ++j) {
    auto it = cells.find(codec_a.encode(a.offsets(j)));
    if (it == cells.end()) return false;
    const double diff = a.value(j) - it->second;
    if (!(std::abs(diff) <= tol)) return false;
  }
  return true;
}

double sparsity(const SparseTable& s) {
  double dense = 1.0;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    dense *= static_cast<double>(s.domain().cardinality(r));
  }
  return 1.0 - static_cast<double>(s.ncols()) / dense;
}

SparseTable reorder(const SparseTable& s, std::span<const std::string> labels) {
  if (labels.size() != s.rank()) {
    throw DomainError("reorder needs a permutation of the table's labels");
  }
  std::vector<std::size_t> rows;
  rows.reserve(labels.size());
  for (const auto& l : labels) rows.push_back(s.domain().row_of(l));
  std::vector<bool> seen(s.rank(), false);
  for (auto r : rows) {
    if (seen[r]) throw DomainError("reorder needs distinct labels");
    seen[r] = true;
  }
  std::vector<Level> offsets;
  offsets.reserve(s.ncols() * s.rank());
  for (std::size_t j = 0; j < s.ncols(); ++j) {
    auto col = s.offsets(j);
    for (auto r : rows) offsets.push_back(col[r]);
  }
  return SparseTable::adopt(s.domain().restrict_to(labels), std::move(offsets),
                            std::vector<double>(s.values().begin(),
                                                s.values().end()));
}

std::uint64_t mem_estimate(const Domain& domain, std::uint64_t n_nonzero,
                           StorageKind kind) {
  if (kind == StorageKind::dense) return dense_bytes(domain.statespace_size());
  return sparse_bytes(n_nonzero, domain.rank());
}

std::uint64_t dense_bytes(std::uint64_t cells) { return checked_mul(8, cells); }

std::uint64_t sparse_bytes(std::uint64_t n_nonzero, std::size_t n_labels) {
  const std::uint64_t per_cell =
      checked_mul(4, static_cast<std::uint64_t>(n_labels)) + 8;
  return checked_mul(n_nonzero, per_cell);
}

}  // namespace sparsejt
