// Tables and networks taken from the worked examples.

#ifndef SPARSEJT_TESTS_FIXTURES_HPP
#define SPARSEJT_TESTS_FIXTURES_HPP

#include <string>

#include "sparsejt/dense_table.hpp"
#include "sparsejt/graph.hpp"
#include "sparsejt/sparse_table.hpp"

namespace testsupport {

using namespace sparsejt;

/// f over (X, Y, Z): x1y1z1 = 5, x2y1z1 = 4, x2y2z1 = 7, x2y1z2 = 9.
inline SparseTable paper_f() {
  Domain d({"X", "Y", "Z"}, {{"x1", "x2"}, {"y1", "y2"}, {"z1", "z2"}});
  return from_dense(DenseTable(d, {5, 4, 0, 7, 0, 9, 0, 0}));
}

/// g over (Y, Z, W): y1z1w1 = 7, y2z1w1 = 6, y2z2w1 = 6, y1z2w2 = 9.
inline SparseTable paper_g() {
  Domain d({"Y", "Z", "W"}, {{"y1", "y2"}, {"z1", "z2"}, {"w1", "w2"}});
  return from_dense(DenseTable(d, {7, 6, 0, 6, 0, 0, 9, 0}));
}

/// Five-node DAG with arcs c->a, c->d, c->e, a->b, d->b, d->e.
inline Dag figure1_dag() {
  Dag dag;
  dag.nodes = {"a", "b", "c", "d", "e"};
  dag.parents = {{"a", {"c"}}, {"b", {"a", "d"}}, {"d", {"c"}}, {"e", {"c", "d"}}};
  return dag;
}

#ifndef SPARSEJT_DATA_DIR
#define SPARSEJT_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) {
  return std::string(SPARSEJT_DATA_DIR) + "/" + name;
}

}  // namespace testsupport

#endif  // SPARSEJT_TESTS_FIXTURES_HPP
