#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hopfkit/field.hpp"

namespace hopfkit {

struct LinalgError : std::runtime_error {
  explicit LinalgError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Sparse vector: entries sorted by index, values nonzero. */
struct Entry {
  uint32_t idx;
  Cyc val;
  bool operator==(const Entry& o) const { return idx == o.idx && val == o.val; }
};
using SVec = std::vector<Entry>;

SVec sv_unit(uint32_t idx, uint32_t N);
SVec sv_from_dense(const std::vector<Cyc>& d);
std::vector<Cyc> sv_to_dense(const SVec& v, uint32_t n, uint32_t N);
Cyc sv_get(const SVec& v, uint32_t idx, uint32_t N);
void sv_scale(SVec& v, const Cyc& c);
SVec sv_neg(SVec v);
/* y += c * x */
void sv_axpy(SVec& y, const Cyc& c, const SVec& x);
SVec sv_add(const SVec& a, const SVec& b);
SVec sv_sub(const SVec& a, const SVec& b);
/* sort unsorted entries by index, combine duplicates, drop zeros */
SVec sv_gather(std::vector<Entry> items);
/* tensor of coordinate vectors: index = ia * dim_b + ib */
SVec sv_kron(const SVec& a, const SVec& b, uint32_t dim_b);

/* Reusable dense accumulator for sparse sums with many terms. */
class DenseAccum {
 public:
  void init(size_t n);
  void add(uint32_t i, const Cyc& c);
  void add_scaled(const Cyc& c, const SVec& v);
  SVec take();  // sorted nonzero entries; resets the accumulator

 private:
  std::vector<Cyc> val_;
  std::vector<char> used_;
  std::vector<uint32_t> touched_;
};

/* Row-major sparse matrix over Q(zeta_N); maps act as column vectors,
 * y = M x, so rows = dim(target), cols = dim(source). */
struct SparseMat {
  uint32_t rows = 0, cols = 0;
  std::vector<SVec> row;

  static SparseMat zero(uint32_t r, uint32_t c);
  static SparseMat identity(uint32_t n, uint32_t N);

  void set(uint32_t i, uint32_t j, const Cyc& v);  // overwrite entry
  Cyc get(uint32_t i, uint32_t j, uint32_t N) const;
  size_t nnz() const;
  bool is_zero() const;
  bool operator==(const SparseMat& o) const;
};

struct Triplets {
  uint32_t rows = 0, cols = 0;
  std::vector<std::tuple<uint32_t, uint32_t, Cyc>> items;
  void add(uint32_t i, uint32_t j, Cyc v);
  SparseMat build() const;  // sums duplicates, drops zeros
};

SparseMat mat_from_columns(uint32_t rows, const std::vector<SVec>& cols);
SVec mat_col(const SparseMat& m, uint32_t j);
SparseMat mat_transpose(const SparseMat& m);
SVec mat_apply(const SparseMat& m, const SVec& x);
SparseMat mat_mul(const SparseMat& a, const SparseMat& b);
SparseMat mat_add(const SparseMat& a, const SparseMat& b);
SparseMat mat_sub(const SparseMat& a, const SparseMat& b);
SparseMat mat_scale(const Cyc& c, SparseMat m);
SparseMat mat_kron(const SparseMat& a, const SparseMat& b);
/* stack a on top of b (same cols) */
SparseMat mat_vstack(const SparseMat& a, const SparseMat& b);
bool mat_mul_is_zero(const SparseMat& a, const SparseMat& b);

/* Incrementally maintained reduced row echelon basis of a row space.
 * The representation is canonical: it depends only on the span. */
class RowSpace {
 public:
  explicit RowSpace(uint32_t cols, uint32_t field_order)
      : cols_(cols), N_(field_order) {}

  /* Reduce v against the basis and absorb the remainder if nonzero.
   * Returns true when the rank grew. */
  bool insert(SVec v);
  /* Residue of v modulo the current row space. */
  SVec reduce(SVec v) const;

  uint32_t cols() const { return cols_; }
  uint32_t field_order() const { return N_; }
  uint32_t rank() const { return (uint32_t)rows_.size(); }
  const std::vector<SVec>& basis() const { return rows_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }
  SparseMat to_mat() const;

 private:
  uint32_t cols_;
  uint32_t N_;
  std::vector<SVec> rows_;       // sorted by pivot column
  std::vector<uint32_t> pivots_;
};

struct Rref {
  SparseMat mat;                  // canonical reduced row echelon form
  std::vector<uint32_t> pivots;   // pivot column per row
};

Rref rref(const SparseMat& m, uint32_t field_order);

/* Canonical basis of { x : m x = 0 }, one vector per free column,
 * returned in reduced row echelon form. */
SparseMat kernel(const SparseMat& m, uint32_t field_order);

/* One solution of m x = b together with the kernel; no solution -> nullopt. */
struct AffineSolution {
  SVec particular;
  SparseMat homogeneous;  // kernel basis rows
};
std::optional<AffineSolution> solve(const SparseMat& m, const SVec& b, uint32_t field_order);

/* nullopt when m is not square or singular */
std::optional<SparseMat> mat_inverse(const SparseMat& m, uint32_t field_order);

class Subspace {
 public:
  Subspace() = default;
  Subspace(uint32_t ambient, uint32_t field_order);
  static Subspace from_vectors(uint32_t ambient, uint32_t field_order,
                               const std::vector<SVec>& gens);
  static Subspace full(uint32_t ambient, uint32_t field_order);
  static Subspace from_rowspace(const RowSpace& rs);

  uint32_t ambient() const { return ambient_; }
  uint32_t field_order() const { return N_; }
  uint32_t dim() const { return (uint32_t)basis_.size(); }
  const std::vector<SVec>& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }

  bool contains(const SVec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  SVec reduce(SVec v) const;  // residue mod the subspace
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /* coordinates in the complement spanned by the non-pivot axes:
   * q(v) = 0 iff v lies in the subspace; (ambient - dim) rows */
  SparseMat quotient_projection() const;
  /* basis vectors as columns: ambient rows x dim cols */
  SparseMat inclusion() const;

 private:
  uint32_t ambient_ = 0;
  uint32_t N_ = 1;
  std::vector<SVec> basis_;
  std::vector<uint32_t> pivots_;
};

/* { v : T v in target }, computed as ker(q_target . T). */
Subspace preimage(const SparseMat& t, const Subspace& target);

}  // namespace hopfkit
