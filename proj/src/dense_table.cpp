#include "sparsejt/dense_table.hpp"

#include <algorithm>

#include "sparsejt/errors.hpp"

namespace sparsejt {

namespace {

std::vector<std::size_t> strides_of(const Domain& d) {
  std::vector<std::size_t> strides(d.rank());
  std::size_t s = 1;
  for (std::size_t r = 0; r < d.rank(); ++r) {
    strides[r] = s;
    s *= d.cardinality(r);
  }
  return strides;
}

/// Advances a first-fastest odometer; false once it wraps around.
bool next_cell(std::vector<Level>& cell, const Domain& d) {
  for (std::size_t r = 0; r < cell.size(); ++r) {
    if (++cell[r] < d.cardinality(r)) return true;
    cell[r] = 0;
  }
  return false;
}

/// Stride of each row of `out` inside `operand` (0 when absent).
std::vector<std::size_t> projected_strides(const Domain& out,
                                           const Domain& operand) {
  const auto strides = strides_of(operand);
  std::vector<std::size_t> proj(out.rank(), 0);
  for (std::size_t r = 0; r < out.rank(); ++r) {
    if (auto ro = operand.find(out.label(r))) {
      require_same_states(out, r, operand, *ro);
      proj[r] = strides[*ro];
    }
  }
  return proj;
}

Domain product_domain(const Domain& a, const Domain& b) {
  std::vector<std::string> labels = a.labels();
  std::vector<std::vector<std::string>> states;
  for (std::size_t r = 0; r < a.rank(); ++r) states.push_back(a.states(r));
  for (std::size_t r = 0; r < b.rank(); ++r) {
    if (auto ra = a.find(b.label(r))) {
      require_same_states(a, *ra, b, r);
    } else {
      labels.push_back(b.label(r));
      states.push_back(b.states(r));
    }
  }
  return Domain(std::move(labels), std::move(states));
}

template <class Combine>
DenseTable dense_combine(const DenseTable& a, const DenseTable& b,
                         Combine combine) {
  Domain domain = product_domain(a.domain(), b.domain());
  const auto sa = projected_strides(domain, a.domain());
  const auto sb = projected_strides(domain, b.domain());
  DenseTable out(domain);
  std::vector<Level> cell(domain.rank(), 0);
  std::size_t pos = 0;
  do {
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (std::size_t r = 0; r < cell.size(); ++r) {
      ia += sa[r] * cell[r];
      ib += sb[r] * cell[r];
    }
    out.values()[pos++] = combine(a.values()[ia], b.values()[ib]);
  } while (next_cell(cell, domain));
  return out;
}

}  // namespace

DenseTable::DenseTable(Domain domain) : domain_(std::move(domain)) {
  values_.assign(domain_.statespace_size(), 0.0);
}

DenseTable::DenseTable(Domain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.statespace_size()) {
    throw DomainError("dense table needs " +
                      std::to_string(domain_.statespace_size()) +
                      " values, got " + std::to_string(values_.size()));
  }
}

std::size_t DenseTable::position(std::span<const Level> offsets) const {
  std::size_t pos = 0;
  std::size_t stride = 1;
  for (std::size_t r = 0; r < domain_.rank(); ++r) {
    pos += stride * offsets[r];
    stride *= domain_.cardinality(r);
  }
  return pos;
}

SparseTable from_dense(const DenseTable& t) {
  const Domain& d = t.domain();
  std::vector<Level> offsets;
  std::vector<double> values;
  std::vector<Level> cell(d.rank(), 0);
  std::size_t pos = 0;
  do {
    const double v = t.values()[pos++];
    if (v != 0.0) {
      offsets.insert(offsets.end(), cell.begin(), cell.end());
      values.push_back(v);
    }
  } while (next_cell(cell, d));
  return SparseTable::adopt(d, std::move(offsets), std::move(values));
}

DenseTable to_dense(const SparseTable& s) {
  DenseTable out(s.domain());
  for (std::size_t j = 0; j < s.ncols(); ++j) {
    out.values()[out.position(s.offsets(j))] = s.value(j);
  }
  return out;
}

DenseTable dense_mult(const DenseTable& a, const DenseTable& b) {
  return dense_combine(a, b, [](double x, double y) { return x * y; });
}

DenseTable dense_div(const DenseTable& a, const DenseTable& b) {
  return dense_combine(a, b,
                       [](double x, double y) { return y == 0.0 ? 0.0 : x / y; });
}

DenseTable dense_marg(const DenseTable& t, std::span<const std::string> drop) {
  const Domain& d = t.domain();
  std::vector<bool> dropped(d.rank(), false);
  for (const auto& l : drop) dropped[d.row_of(l)] = true;
  std::vector<std::string> kept;
  for (std::size_t r = 0; r < d.rank(); ++r) {
    if (!dropped[r]) kept.push_back(d.label(r));
  }
  DenseTable out(d.restrict_to(kept));
  const auto proj = projected_strides(d, out.domain());
  std::vector<Level> cell(d.rank(), 0);
  std::size_t pos = 0;
  do {
    std::size_t target = 0;
    for (std::size_t r = 0; r < cell.size(); ++r) target += proj[r] * cell[r];
    out.values()[target] += t.values()[pos++];
  } while (next_cell(cell, d));
  return out;
}

DenseTable dense_slice(const DenseTable& t, const Assignment& assignment,
                       bool drop_sliced) {
  const Domain& d = t.domain();
  std::vector<std::optional<Level>> fixed(d.rank());
  for (const auto& [label, state] : assignment) {
    const auto row = d.row_of(label);
    fixed[row] = d.level_of(row, state) - 1;
  }
  DenseTable zeroed(d);
  std::vector<Level> cell(d.rank(), 0);
  std::size_t pos = 0;
  do {
    bool consistent = true;
    for (std::size_t r = 0; r < cell.size(); ++r) {
      if (fixed[r] && *fixed[r] != cell[r]) consistent = false;
    }
    if (consistent) zeroed.values()[pos] = t.values()[pos];
    ++pos;
  } while (next_cell(cell, d));
  if (!drop_sliced || assignment.empty()) return zeroed;

  // Every dropped variable is fixed, so summing it out picks the one
  // consistent slice.
  std::vector<std::string> drop;
  for (const auto& [label, state] : assignment) drop.push_back(label);
  return dense_marg(zeroed, drop);
}

DenseTable dense_ones(const Domain& domain) {
  DenseTable out(domain);
  std::fill(out.values().begin(), out.values().end(), 1.0);
  return out;
}

double dense_sum(const DenseTable& t) {
  double total = 0.0;
  for (double v : t.values()) total += v;
  return total;
}

}  // namespace sparsejt
