#include "hopfkit/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace hopfkit {

namespace {

std::atomic<bool> parallel_on{true};

bool env_serial() {
  static const bool v = [] {
    const char* s = std::getenv("HOPFKIT_SERIAL");
    return s != nullptr && s[0] == '1';
  }();
  return v;
}

void eliminate_one(SVec& r, const SVec& pivot, uint32_t piv_col) {
  auto it = std::lower_bound(r.begin(), r.end(), piv_col,
                             [](const Entry& e, uint32_t c) { return e.idx < c; });
  if (it == r.end() || it->idx != piv_col) return;
  Cyc c = -it->val;
  sv_axpy(r, c, pivot);
}

}  // namespace

bool kernels_parallel_enabled() { return parallel_on.load() && !env_serial(); }

void set_kernels_parallel(bool on) { parallel_on.store(on); }

void eliminate_column_serial(std::vector<SVec>& rows, const SVec& pivot,
                             uint32_t piv_col, size_t skip_row) {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i == skip_row) continue;
    eliminate_one(rows[i], pivot, piv_col);
  }
}

void eliminate_column_parallel(std::vector<SVec>& rows, const SVec& pivot,
                               uint32_t piv_col, size_t skip_row) {
  const long n = (long)rows.size();
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    if ((size_t)i == skip_row) continue;
    eliminate_one(rows[(size_t)i], pivot, piv_col);
  }
}

void eliminate_column(std::vector<SVec>& rows, const SVec& pivot,
                      uint32_t piv_col, size_t skip_row) {
  if (kernels_parallel_enabled() && rows.size() >= 32)
    eliminate_column_parallel(rows, pivot, piv_col, skip_row);
  else
    eliminate_column_serial(rows, pivot, piv_col, skip_row);
}

namespace {

void mul_row(const SparseMat& a, const SparseMat& b, size_t i, DenseAccum& acc,
             SVec& out) {
  for (const Entry& e : a.row[i]) acc.add_scaled(e.val, b.row[e.idx]);
  out = acc.take();
}

}  // namespace

SparseMat mat_mul_serial(const SparseMat& a, const SparseMat& b) {
  if (a.cols != b.rows) throw LinalgError("matrix product shape mismatch");
  SparseMat c;
  c.rows = a.rows;
  c.cols = b.cols;
  c.row.resize(a.rows);
  DenseAccum acc;
  acc.init(b.cols);
  for (size_t i = 0; i < a.rows; ++i) mul_row(a, b, i, acc, c.row[i]);
  return c;
}

SparseMat mat_mul_parallel(const SparseMat& a, const SparseMat& b) {
  if (a.cols != b.rows) throw LinalgError("matrix product shape mismatch");
  SparseMat c;
  c.rows = a.rows;
  c.cols = b.cols;
  c.row.resize(a.rows);
#pragma omp parallel
  {
    DenseAccum acc;
    acc.init(b.cols);
#pragma omp for schedule(dynamic, 16)
    for (long i = 0; i < (long)a.rows; ++i) mul_row(a, b, (size_t)i, acc, c.row[(size_t)i]);
  }
  return c;
}

}  // namespace hopfkit
