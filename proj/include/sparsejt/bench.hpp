#ifndef SPARSEJT_BENCH_HPP
#define SPARSEJT_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sparsejt/sparse_table.hpp"

namespace sparsejt::bench {

/// Target sparsity interval. A band with lo == hi matches exactly that
/// sparsity; otherwise it is the half-open interval (lo, hi].
struct SparsityBand {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double sparsity) const;
  /// Parses "lo:hi"; throws ParseError.
  static SparsityBand parse(std::string_view text);
  std::string to_string() const;
};

struct BenchConfig {
  std::uint64_t max_product_cells = 1'000'000;
  std::vector<SparsityBand> sparsity_bands = {
      {0.0, 0.0}, {0.01, 0.75}, {0.75, 0.99}};
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  /// Variables in a generated pair (union of both tables).
  std::size_t min_vars = 2;
  std::size_t max_vars = 8;
  std::size_t min_states = 2;
  std::size_t max_states = 5;

  void validate() const;
};

struct TablePair {
  SparseTable a;
  SparseTable b;
  std::uint64_t product_cells = 0;
  double product_sparsity = 0.0;
};

/// Random pair sharing at least one variable, whose dense product has at
/// most `max_product_cells` cells and whose product sparsity lies in
/// `band`. Values are uniform in (0, 1]. Deterministic in `seed`; throws
/// Error when no pair is found within the retry budget.
TablePair gen_table_pair(std::uint64_t seed, const SparsityBand& band,
                         std::uint64_t max_product_cells,
                         const BenchConfig& shape = {});

enum class Op { mult, marg };
enum class Impl { sparse, dense };

struct BenchRecord {
  Op op;
  Impl impl;
  std::uint64_t dense_product_cells;
  double achieved_sparsity;
  double elapsed_seconds;
  std::uint64_t result_bytes;
};

/// Times sparse and dense multiplication and marginalization on the same
/// generated inputs. Each sparse result is checked against the dense one
/// before it is recorded; a mismatch throws Error.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows);

/// Byte model curves: bytes of a dense table with x cells against a sparse
/// table of the same domain at a given sparsity, for k variables.
struct MemoryModelRow {
  std::size_t k;
  unsigned sparsity_percent;
  std::uint64_t dense_cells;
  std::uint64_t dense_bytes;
  std::uint64_t sparse_cells;
  std::uint64_t sparse_bytes;
};

/// k in {4, 6, 8}, sparsity in {50, 75, 90, 99} percent, x = 10^2 .. 10^9.
std::vector<MemoryModelRow> memory_model_rows();
void write_memory_model_csv(std::ostream& out,
                            const std::vector<MemoryModelRow>& rows);

std::string_view to_string(Op op);
std::string_view to_string(Impl impl);

}  // namespace sparsejt::bench

#endif  // SPARSEJT_BENCH_HPP
