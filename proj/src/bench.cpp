#include "sparsejt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "sparsejt/dense_table.hpp"
#include "sparsejt/errors.hpp"

namespace sparsejt::bench {

namespace {

constexpr int kMaxAttempts = 2000;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

SparseTable random_table(const Domain& domain, double keep, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint64_t cells = domain.statespace_size();
  std::vector<Level> offsets;
  std::vector<double> values;
  std::vector<Level> cell(domain.rank(), 0);
  for (std::uint64_t i = 0; i < cells; ++i) {
    if (unit(rng) < keep) {
      offsets.insert(offsets.end(), cell.begin(), cell.end());
      values.push_back(1.0 - unit(rng));
    }
    for (std::size_t r = 0; r < cell.size(); ++r) {
      if (++cell[r] < domain.cardinality(r)) break;
      cell[r] = 0;
    }
  }
  return SparseTable::adopt(domain, std::move(offsets), std::move(values));
}

template <typename F>
double time_it(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

bool SparsityBand::contains(double s) const {
  if (lo == hi) return s == lo;
  return s > lo && s <= hi;
}

SparsityBand SparsityBand::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("band '" + std::string(text) + "' is not of the form lo:hi");
  }
  SparsityBand band;
  try {
    std::size_t used = 0;
    const std::string lo(text.substr(0, colon));
    const std::string hi(text.substr(colon + 1));
    band.lo = std::stod(lo, &used);
    if (used != lo.size()) throw ParseError("");
    band.hi = std::stod(hi, &used);
    if (used != hi.size()) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("band '" + std::string(text) + "' is not of the form lo:hi");
  }
  if (!(band.lo >= 0.0 && band.lo <= band.hi && band.hi < 1.0)) {
    throw ParseError("band '" + std::string(text) +
                     "' must satisfy 0 <= lo <= hi < 1");
  }
  return band;
}

std::string SparsityBand::to_string() const {
  return fmt("%g", lo) + ":" + fmt("%g", hi);
}

void BenchConfig::validate() const {
  if (max_product_cells < 1) throw DomainError("max_product_cells must be >= 1");
  if (reps < 1) throw DomainError("reps must be >= 1");
  if (sparsity_bands.empty()) throw DomainError("no sparsity bands given");
  for (const auto& b : sparsity_bands) {
    if (!(b.lo >= 0.0 && b.lo <= b.hi && b.hi < 1.0)) {
      throw DomainError("sparsity band " + b.to_string() + " is invalid");
    }
  }
  if (min_vars < 1 || min_vars > max_vars) {
    throw DomainError("invalid variable count range");
  }
  if (min_states < 1 || min_states > max_states) {
    throw DomainError("invalid state count range");
  }
}

TablePair gen_table_pair(std::uint64_t seed, const SparsityBand& band,
                         std::uint64_t max_product_cells,
                         const BenchConfig& shape) {
  std::mt19937_64 rng(mix(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> nvars(shape.min_vars, shape.max_vars);
  std::uniform_int_distribution<std::size_t> nstates(shape.min_states,
                                                     shape.max_states);
  std::uniform_int_distribution<int> role(0, 2);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::size_t n = nvars(rng);
    std::vector<std::size_t> card(n);
    for (auto& c : card) c = nstates(rng);

    std::uint64_t product = 1;
    for (auto c : card) product *= c;
    while (product > max_product_cells && n > shape.min_vars) {
      product /= card.back();
      card.pop_back();
      --n;
    }
    if (product > max_product_cells) continue;

    // Variable 0 is shared; the rest go to a, b or both.
    std::vector<std::pair<std::string, std::vector<std::string>>> a_vars, b_vars;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::string> states;
      for (std::size_t s = 1; s <= card[v]; ++s) states.push_back("s" + std::to_string(s));
      const std::string name = "v" + std::to_string(v);
      const int r = v == 0 ? 2 : role(rng);
      if (r != 1) a_vars.emplace_back(name, states);
      if (r != 0) b_vars.emplace_back(name, states);
    }

    const double target = band.lo == band.hi
                              ? band.lo
                              : band.hi - (band.hi - band.lo) * unit(rng);
    const double keep = std::sqrt(1.0 - target);

    TablePair pair{random_table(Domain::from_pairs(a_vars), keep, rng),
                   random_table(Domain::from_pairs(b_vars), keep, rng)};
    pair.product_cells = product;
    const SparseTable prod = mult(pair.a, pair.b);
    pair.product_sparsity = sparsity(prod);
    if (band.contains(pair.product_sparsity)) return pair;
  }
  throw Error("no table pair in sparsity band " + band.to_string() +
              " with at most " + std::to_string(max_product_cells) +
              " product cells after " + std::to_string(kMaxAttempts) +
              " attempts");
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  config.validate();
  std::vector<BenchRecord> out;
  for (std::size_t b = 0; b < config.sparsity_bands.size(); ++b) {
    const auto& band = config.sparsity_bands[b];
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const std::uint64_t seed = mix(config.seed ^ mix(b * 1000003ULL + rep));
      const TablePair pair =
          gen_table_pair(seed, band, config.max_product_cells, config);
      const DenseTable da = to_dense(pair.a);
      const DenseTable db = to_dense(pair.b);

      SparseTable sp;
      DenseTable dp;
      const double t_sparse = time_it([&] { sp = mult(pair.a, pair.b); });
      const double t_dense = time_it([&] { dp = dense_mult(da, db); });
      if (!equiv(sp, from_dense(dp), 1e-12)) {
        throw Error("sparse and dense products disagree (band " +
                    band.to_string() + ", rep " + std::to_string(rep) + ")");
      }
      const double s = pair.product_sparsity;
      out.push_back({Op::mult, Impl::sparse, pair.product_cells, s, t_sparse,
                     mem_estimate(sp.domain(), sp.ncols(), StorageKind::sparse)});
      out.push_back({Op::mult, Impl::dense, pair.product_cells, s, t_dense,
                     mem_estimate(dp.domain(), 0, StorageKind::dense)});

      // Marginalize the product onto a random nonempty proper subset.
      std::mt19937_64 rng(seed);
      std::vector<std::string> labels = sp.domain().labels();
      std::shuffle(labels.begin(), labels.end(), rng);
      std::uniform_int_distribution<std::size_t> ndrop(1, labels.size() - 1);
      const std::vector<std::string> drop(labels.begin(),
                                          labels.begin() + ndrop(rng));
      SparseTable sm;
      DenseTable dm;
      const double m_sparse = time_it([&] { sm = marg(sp, drop); });
      const double m_dense = time_it([&] { dm = dense_marg(dp, drop); });
      if (!equiv(sm, from_dense(dm), 1e-9)) {
        throw Error("sparse and dense marginals disagree (band " +
                    band.to_string() + ", rep " + std::to_string(rep) + ")");
      }
      out.push_back({Op::marg, Impl::sparse, pair.product_cells, s, m_sparse,
                     mem_estimate(sm.domain(), sm.ncols(), StorageKind::sparse)});
      out.push_back({Op::marg, Impl::dense, pair.product_cells, s, m_dense,
                     mem_estimate(dm.domain(), 0, StorageKind::dense)});
    }
  }
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << "op,impl,dense_product_cells,achieved_sparsity,elapsed_seconds,result_bytes\n";
  for (const auto& r : rows) {
    out << to_string(r.op) << ',' << to_string(r.impl) << ','
        << r.dense_product_cells << ',' << fmt("%.9g", r.achieved_sparsity)
        << ',' << fmt("%.9g", r.elapsed_seconds) << ',' << r.result_bytes
        << '\n';
  }
}

std::vector<MemoryModelRow> memory_model_rows() {
  std::vector<MemoryModelRow> rows;
  for (std::size_t k : {4, 6, 8}) {
    for (unsigned pct : {50u, 75u, 90u, 99u}) {
      std::uint64_t x = 100;
      for (int e = 2; e <= 9; ++e, x *= 10) {
        const std::uint64_t y = x / 100 * (100 - pct);
        rows.push_back({k, pct, x, dense_bytes(x), y, sparse_bytes(y, k)});
      }
    }
  }
  return rows;
}

void write_memory_model_csv(std::ostream& out,
                            const std::vector<MemoryModelRow>& rows) {
  out << "k,sparsity,dense_cells,dense_bytes,sparse_cells,sparse_bytes\n";
  for (const auto& r : rows) {
    out << r.k << ',' << fmt("%.2f", r.sparsity_percent / 100.0) << ','
        << r.dense_cells << ',' << r.dense_bytes << ',' << r.sparse_cells << ','
        << r.sparse_bytes << '\n';
  }
}

std::string_view to_string(Op op) { return op == Op::mult ? "mult" : "marg"; }
std::string_view to_string(Impl impl) {
  return impl == Impl::sparse ? "sparse" : "dense";
}

}  // namespace sparsejt::bench
