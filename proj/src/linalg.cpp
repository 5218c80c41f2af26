#include "hopfkit/linalg.hpp"

#include <algorithm>
#include <map>

#include "hopfkit/kernels.hpp"

namespace hopfkit {

SVec sv_unit(uint32_t idx, uint32_t N) { return {{idx, Cyc::one(N)}}; }

SVec sv_from_dense(const std::vector<Cyc>& d) {
  SVec v;
  for (uint32_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) v.push_back({i, d[i]});
  return v;
}

std::vector<Cyc> sv_to_dense(const SVec& v, uint32_t n, uint32_t N) {
  std::vector<Cyc> d(n, Cyc::zero(N));
  for (const Entry& e : v) d[e.idx] = e.val;
  return d;
}

Cyc sv_get(const SVec& v, uint32_t idx, uint32_t N) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const Entry& e, uint32_t c) { return e.idx < c; });
  if (it != v.end() && it->idx == idx) return it->val;
  return Cyc::zero(N);
}

void sv_scale(SVec& v, const Cyc& c) {
  if (c.is_zero()) {
    v.clear();
    return;
  }
  for (Entry& e : v) e.val *= c;
}

SVec sv_neg(SVec v) {
  for (Entry& e : v) e.val = -e.val;
  return v;
}

void sv_axpy(SVec& y, const Cyc& c, const SVec& x) {
  if (c.is_zero() || x.empty()) return;
  SVec out;
  out.reserve(y.size() + x.size());
  size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].idx < x[j].idx)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].idx < y[i].idx) {
      out.push_back({x[j].idx, c * x[j].val});
      if (out.back().val.is_zero()) out.pop_back();
      ++j;
    } else {
      Cyc v = std::move(y[i].val);
      v += c * x[j].val;
      if (!v.is_zero()) out.push_back({y[i].idx, std::move(v)});
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SVec sv_add(const SVec& a, const SVec& b) {
  SVec out = a;
  if (!b.empty()) sv_axpy(out, Cyc::one(b[0].val.field_order()), b);
  return out;
}

SVec sv_sub(const SVec& a, const SVec& b) {
  SVec out = a;
  if (!b.empty()) sv_axpy(out, -Cyc::one(b[0].val.field_order()), b);
  return out;
}

SVec sv_gather(std::vector<Entry> items) {
  std::sort(items.begin(), items.end(),
            [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
  SVec out;
  for (auto& e : items) {
    if (!out.empty() && out.back().idx == e.idx)
      out.back().val += e.val;
    else
      out.push_back(std::move(e));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Entry& e) { return e.val.is_zero(); }),
            out.end());
  return out;
}

SVec sv_kron(const SVec& a, const SVec& b, uint32_t dim_b) {
  SVec out;
  out.reserve(a.size() * b.size());
  for (const Entry& ea : a)
    for (const Entry& eb : b) {
      Cyc v = ea.val * eb.val;
      if (!v.is_zero()) out.push_back({ea.idx * dim_b + eb.idx, std::move(v)});
    }
  return out;
}

void DenseAccum::init(size_t n) {
  val_.resize(n);
  used_.assign(n, 0);
  touched_.clear();
}

void DenseAccum::add(uint32_t i, const Cyc& c) {
  if (!used_[i]) {
    used_[i] = 1;
    touched_.push_back(i);
    val_[i] = c;
  } else {
    val_[i] += c;
  }
}

void DenseAccum::add_scaled(const Cyc& c, const SVec& v) {
  if (c.is_zero()) return;
  for (const Entry& e : v) add(e.idx, c * e.val);
}

SVec DenseAccum::take() {
  std::sort(touched_.begin(), touched_.end());
  SVec out;
  out.reserve(touched_.size());
  for (uint32_t i : touched_) {
    if (!val_[i].is_zero()) out.push_back({i, std::move(val_[i])});
    used_[i] = 0;
  }
  touched_.clear();
  return out;
}

SparseMat SparseMat::zero(uint32_t r, uint32_t c) {
  SparseMat m;
  m.rows = r;
  m.cols = c;
  m.row.resize(r);
  return m;
}

SparseMat SparseMat::identity(uint32_t n, uint32_t N) {
  SparseMat m = zero(n, n);
  for (uint32_t i = 0; i < n; ++i) m.row[i] = sv_unit(i, N);
  return m;
}

void SparseMat::set(uint32_t i, uint32_t j, const Cyc& v) {
  SVec& r = row[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, uint32_t c) { return e.idx < c; });
  if (it != r.end() && it->idx == j) {
    if (v.is_zero())
      r.erase(it);
    else
      it->val = v;
  } else if (!v.is_zero()) {
    r.insert(it, {j, v});
  }
}

Cyc SparseMat::get(uint32_t i, uint32_t j, uint32_t N) const { return sv_get(row[i], j, N); }

size_t SparseMat::nnz() const {
  size_t n = 0;
  for (const SVec& r : row) n += r.size();
  return n;
}

bool SparseMat::is_zero() const {
  for (const SVec& r : row)
    if (!r.empty()) return false;
  return true;
}

bool SparseMat::operator==(const SparseMat& o) const {
  return rows == o.rows && cols == o.cols && row == o.row;
}

void Triplets::add(uint32_t i, uint32_t j, Cyc v) {
  if (!v.is_zero()) items.emplace_back(i, j, std::move(v));
}

SparseMat Triplets::build() const {
  SparseMat m = SparseMat::zero(rows, cols);
  std::vector<std::tuple<uint32_t, uint32_t, Cyc>> sorted = items;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     return std::get<0>(a) != std::get<0>(b)
                                ? std::get<0>(a) < std::get<0>(b)
                                : std::get<1>(a) < std::get<1>(b);
                   });
  for (size_t k = 0; k < sorted.size();) {
    size_t e = k;
    Cyc acc = std::get<2>(sorted[k]);
    while (++e < sorted.size() && std::get<0>(sorted[e]) == std::get<0>(sorted[k]) &&
           std::get<1>(sorted[e]) == std::get<1>(sorted[k]))
      acc += std::get<2>(sorted[e]);
    if (!acc.is_zero())
      m.row[std::get<0>(sorted[k])].push_back({std::get<1>(sorted[k]), std::move(acc)});
    k = e;
  }
  return m;
}

SparseMat mat_from_columns(uint32_t rows, const std::vector<SVec>& cols) {
  Triplets t;
  t.rows = rows;
  t.cols = (uint32_t)cols.size();
  for (uint32_t j = 0; j < cols.size(); ++j)
    for (const Entry& e : cols[j]) t.add(e.idx, j, e.val);
  return t.build();
}

SVec mat_col(const SparseMat& m, uint32_t j) {
  SVec out;
  for (uint32_t i = 0; i < m.rows; ++i) {
    auto it = std::lower_bound(m.row[i].begin(), m.row[i].end(), j,
                               [](const Entry& e, uint32_t c) { return e.idx < c; });
    if (it != m.row[i].end() && it->idx == j) out.push_back({i, it->val});
  }
  return out;
}

SparseMat mat_transpose(const SparseMat& m) {
  Triplets t;
  t.rows = m.cols;
  t.cols = m.rows;
  for (uint32_t i = 0; i < m.rows; ++i)
    for (const Entry& e : m.row[i]) t.add(e.idx, i, e.val);
  return t.build();
}

SVec mat_apply(const SparseMat& m, const SVec& x) {
  // y_i = sum_j m[i][j] x_j ; iterate x and gather columns would need column
  // access, so accumulate row-wise products against the sparse x instead
  SVec out;
  for (uint32_t i = 0; i < m.rows; ++i) {
    const SVec& r = m.row[i];
    if (r.empty()) continue;
    Cyc acc = Cyc::zero(r[0].val.field_order());
    size_t a = 0, b = 0;
    bool nz = false;
    while (a < r.size() && b < x.size()) {
      if (r[a].idx < x[b].idx) {
        ++a;
      } else if (x[b].idx < r[a].idx) {
        ++b;
      } else {
        acc += r[a].val * x[b].val;
        nz = true;
        ++a;
        ++b;
      }
    }
    if (nz && !acc.is_zero()) out.push_back({i, std::move(acc)});
  }
  return out;
}

SparseMat mat_mul(const SparseMat& a, const SparseMat& b) {
  if (kernels_parallel_enabled() && a.rows >= 64) return mat_mul_parallel(a, b);
  return mat_mul_serial(a, b);
}

SparseMat mat_add(const SparseMat& a, const SparseMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw LinalgError("matrix sum shape mismatch");
  SparseMat c = a;
  for (uint32_t i = 0; i < a.rows; ++i)
    if (!b.row[i].empty())
      sv_axpy(c.row[i], Cyc::one(b.row[i][0].val.field_order()), b.row[i]);
  return c;
}

SparseMat mat_sub(const SparseMat& a, const SparseMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw LinalgError("matrix sum shape mismatch");
  SparseMat c = a;
  for (uint32_t i = 0; i < a.rows; ++i)
    if (!b.row[i].empty())
      sv_axpy(c.row[i], -Cyc::one(b.row[i][0].val.field_order()), b.row[i]);
  return c;
}

SparseMat mat_scale(const Cyc& c, SparseMat m) {
  for (SVec& r : m.row) sv_scale(r, c);
  return m;
}

SparseMat mat_kron(const SparseMat& a, const SparseMat& b) {
  SparseMat c = SparseMat::zero(a.rows * b.rows, a.cols * b.cols);
  for (uint32_t i = 0; i < a.rows; ++i) {
    if (a.row[i].empty()) continue;
    for (uint32_t k = 0; k < b.rows; ++k) {
      if (b.row[k].empty()) continue;
      SVec& out = c.row[i * b.rows + k];
      out.reserve(a.row[i].size() * b.row[k].size());
      for (const Entry& ea : a.row[i])
        for (const Entry& eb : b.row[k]) {
          Cyc v = ea.val * eb.val;
          if (!v.is_zero()) out.push_back({ea.idx * b.cols + eb.idx, std::move(v)});
        }
    }
  }
  return c;
}

SparseMat mat_vstack(const SparseMat& a, const SparseMat& b) {
  if (a.cols != b.cols) throw LinalgError("vstack column mismatch");
  SparseMat c = a;
  c.rows += b.rows;
  c.row.insert(c.row.end(), b.row.begin(), b.row.end());
  return c;
}

bool mat_mul_is_zero(const SparseMat& a, const SparseMat& b) {
  if (a.cols != b.rows) throw LinalgError("matrix product shape mismatch");
  DenseAccum acc;
  acc.init(b.cols);
  for (uint32_t i = 0; i < a.rows; ++i) {
    for (const Entry& e : a.row[i]) acc.add_scaled(e.val, b.row[e.idx]);
    if (!acc.take().empty()) return false;
  }
  return true;
}

bool RowSpace::insert(SVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Cyc lead = v[0].val;
  if (!lead.is_one()) sv_scale(v, lead.inverse());
  uint32_t p = v[0].idx;
  eliminate_column(rows_, v, p, rows_.size());
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  size_t at = (size_t)(pos - pivots_.begin());
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + (long)at, std::move(v));
  return true;
}

SVec RowSpace::reduce(SVec v) const {
  for (size_t j = 0; j < rows_.size(); ++j) {
    if (v.empty()) break;
    auto it = std::lower_bound(v.begin(), v.end(), pivots_[j],
                               [](const Entry& e, uint32_t c) { return e.idx < c; });
    if (it == v.end() || it->idx != pivots_[j]) continue;
    Cyc c = -it->val;
    sv_axpy(v, c, rows_[j]);
  }
  return v;
}

SparseMat RowSpace::to_mat() const {
  SparseMat m = SparseMat::zero(rank(), cols_);
  for (size_t i = 0; i < rows_.size(); ++i) m.row[i] = rows_[i];
  return m;
}

Rref rref(const SparseMat& m, uint32_t field_order) {
  RowSpace rs(m.cols, field_order);
  for (const SVec& r : m.row) rs.insert(r);
  return {rs.to_mat(), rs.pivots()};
}

SparseMat kernel(const SparseMat& m, uint32_t field_order) {
  Rref r = rref(m, field_order);
  std::vector<char> is_pivot(m.cols, 0);
  for (uint32_t p : r.pivots) is_pivot[p] = 1;
  RowSpace rs(m.cols, field_order);
  for (uint32_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    SVec v;
    for (size_t j = 0; j < r.pivots.size(); ++j) {
      Cyc c = sv_get(r.mat.row[j], f, field_order);
      if (!c.is_zero()) v.push_back({r.pivots[j], -c});
    }
    v.push_back({f, Cyc::one(field_order)});
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    rs.insert(std::move(v));
  }
  return rs.to_mat();
}

std::optional<AffineSolution> solve(const SparseMat& m, const SVec& b, uint32_t field_order) {
  RowSpace rs(m.cols + 1, field_order);
  for (uint32_t i = 0; i < m.rows; ++i) {
    SVec r = m.row[i];
    Cyc bi = sv_get(b, i, field_order);
    if (!bi.is_zero()) r.push_back({m.cols, bi});
    rs.insert(std::move(r));
  }
  SVec x;
  for (size_t j = 0; j < rs.rank(); ++j) {
    if (rs.pivots()[j] == m.cols) return std::nullopt;  // inconsistent
    Cyc c = sv_get(rs.basis()[j], m.cols, field_order);
    if (!c.is_zero()) x.push_back({rs.pivots()[j], c});
  }
  std::sort(x.begin(), x.end(), [](const Entry& a, const Entry& b2) { return a.idx < b2.idx; });
  return AffineSolution{std::move(x), kernel(m, field_order)};
}

std::optional<SparseMat> mat_inverse(const SparseMat& m, uint32_t field_order) {
  if (m.rows != m.cols) return std::nullopt;
  const uint32_t n = m.rows;
  RowSpace rs(2 * n, field_order);
  for (uint32_t i = 0; i < n; ++i) {
    SVec r = m.row[i];
    r.push_back({n + i, Cyc::one(field_order)});
    rs.insert(std::move(r));
  }
  if (rs.rank() != n) return std::nullopt;
  SparseMat inv = SparseMat::zero(n, n);
  for (uint32_t i = 0; i < n; ++i) {
    if (rs.pivots()[i] != i) return std::nullopt;
    for (const Entry& e : rs.basis()[i])
      if (e.idx >= n) inv.row[i].push_back({e.idx - n, e.val});
  }
  return inv;
}

Subspace::Subspace(uint32_t ambient, uint32_t field_order)
    : ambient_(ambient), N_(field_order) {}

Subspace Subspace::from_vectors(uint32_t ambient, uint32_t field_order,
                                const std::vector<SVec>& gens) {
  RowSpace rs(ambient, field_order);
  for (const SVec& g : gens) rs.insert(g);
  return from_rowspace(rs);
}

Subspace Subspace::full(uint32_t ambient, uint32_t field_order) {
  Subspace s(ambient, field_order);
  for (uint32_t i = 0; i < ambient; ++i) {
    s.basis_.push_back(sv_unit(i, field_order));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::from_rowspace(const RowSpace& rs) {
  Subspace s(rs.cols(), rs.field_order());
  s.basis_ = rs.basis();
  s.pivots_ = rs.pivots();
  return s;
}

bool Subspace::contains(const SVec& v) const { return reduce(v).empty(); }

bool Subspace::contains(const Subspace& other) const {
  for (const SVec& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

SVec Subspace::reduce(SVec v) const {
  for (size_t j = 0; j < basis_.size(); ++j) {
    if (v.empty()) break;
    auto it = std::lower_bound(v.begin(), v.end(), pivots_[j],
                               [](const Entry& e, uint32_t c) { return e.idx < c; });
    if (it == v.end() || it->idx != pivots_[j]) continue;
    Cyc c = -it->val;
    sv_axpy(v, c, basis_[j]);
  }
  return v;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw LinalgError("subspace sum ambient mismatch");
  RowSpace rs(ambient_, N_);
  for (const SVec& v : basis_) rs.insert(v);
  for (const SVec& v : other.basis_) rs.insert(v);
  return from_rowspace(rs);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw LinalgError("subspace intersection ambient mismatch");
  // columns [U^T | W^T]; kernel rows (a|b) give common vectors U^T a
  uint32_t du = dim(), dw = other.dim();
  Triplets t;
  t.rows = ambient_;
  t.cols = du + dw;
  for (uint32_t j = 0; j < du; ++j)
    for (const Entry& e : basis_[j]) t.add(e.idx, j, e.val);
  for (uint32_t j = 0; j < dw; ++j)
    for (const Entry& e : other.basis_[j]) t.add(e.idx, du + j, e.val);
  SparseMat k = kernel(t.build(), N_);
  std::vector<SVec> gens;
  for (const SVec& kr : k.row) {
    SVec v;
    for (const Entry& e : kr)
      if (e.idx < du) sv_axpy(v, e.val, basis_[e.idx]);
    gens.push_back(std::move(v));
  }
  return from_vectors(ambient_, N_, gens);
}

SparseMat Subspace::quotient_projection() const {
  std::vector<char> is_pivot(ambient_, 0);
  for (uint32_t p : pivots_) is_pivot[p] = 1;
  std::vector<uint32_t> out_index(ambient_, 0);
  uint32_t r = 0;
  for (uint32_t j = 0; j < ambient_; ++j)
    if (!is_pivot[j]) out_index[j] = r++;
  Triplets t;
  t.rows = r;
  t.cols = ambient_;
  for (uint32_t j = 0; j < ambient_; ++j)
    if (!is_pivot[j]) t.add(out_index[j], j, Cyc::one(N_));
  for (size_t i = 0; i < basis_.size(); ++i)
    for (const Entry& e : basis_[i])
      if (!is_pivot[e.idx]) t.add(out_index[e.idx], pivots_[i], -e.val);
  return t.build();
}

SparseMat Subspace::inclusion() const { return mat_from_columns(ambient_, basis_); }

Subspace preimage(const SparseMat& t, const Subspace& target) {
  if (t.rows != target.ambient()) throw LinalgError("preimage ambient mismatch");
  SparseMat q = target.quotient_projection();
  SparseMat k = kernel(mat_mul(q, t), target.field_order());
  std::vector<SVec> gens(k.row.begin(), k.row.end());
  return Subspace::from_vectors(t.cols, target.field_order(), gens);
}

}  // namespace hopfkit
