#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfkit/linalg.hpp"

using namespace hopfkit;

namespace {

SparseMat random_mat(std::mt19937_64& rng, uint32_t rows, uint32_t cols, uint32_t N,
                     int fill_percent) {
  Triplets t;
  t.rows = rows;
  t.cols = cols;
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<long> zp(0, (long)N - 1);
  for (uint32_t i = 0; i < rows; ++i)
    for (uint32_t j = 0; j < cols; ++j) {
      if (pct(rng) >= fill_percent) continue;
      Cyc v = Cyc::integer(coeff(rng), N) * Cyc::root(N, zp(rng));
      t.add(i, j, v);
    }
  return t.build();
}

SVec random_vec(std::mt19937_64& rng, uint32_t n, uint32_t N) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<Cyc> d(n, Cyc::zero(N));
  for (uint32_t i = 0; i < n; ++i) d[i] = Cyc::integer(coeff(rng), N);
  return sv_from_dense(d);
}

SparseMat from_ints(const std::vector<std::vector<int>>& a, uint32_t N) {
  SparseMat m = SparseMat::zero((uint32_t)a.size(), (uint32_t)a[0].size());
  for (uint32_t i = 0; i < a.size(); ++i) {
    std::vector<Cyc> d;
    for (int x : a[i]) d.push_back(Cyc::integer(x, N));
    m.row[i] = sv_from_dense(d);
  }
  return m;
}

}  // namespace

TEST_CASE("sparse vector merge arithmetic") {
  uint32_t N = 3;
  SVec a = sv_from_dense({Cyc::integer(1, N), Cyc::zero(N), Cyc::integer(2, N)});
  SVec b = sv_from_dense({Cyc::integer(-1, N), Cyc::integer(5, N), Cyc::integer(3, N)});
  SVec s = sv_add(a, b);
  CHECK(sv_get(s, 0, N).is_zero());
  CHECK(sv_get(s, 1, N) == Cyc::integer(5, N));
  CHECK(sv_get(s, 2, N) == Cyc::integer(5, N));
  CHECK(s.size() == 2);  // cancelled entries are dropped
  SVec d = sv_sub(a, a);
  CHECK(d.empty());
}

TEST_CASE("rref canonical form oracle") {
  SparseMat m = from_ints({{0, 2, 4}, {1, 1, 1}, {2, 2, 2}}, 1);
  Rref r = rref(m, 1);
  CHECK(r.pivots == std::vector<uint32_t>{0, 1});
  SparseMat expect = from_ints({{1, 0, -1}, {0, 1, 2}}, 1);
  CHECK(r.mat == expect);
}

TEST_CASE("kernel oracle") {
  SparseMat m = from_ints({{0, 2, 4}, {1, 1, 1}, {2, 2, 2}}, 1);
  SparseMat k = kernel(m, 1);
  CHECK(k.rows == 1);
  // canonical form of span{(1,-2,1)}
  SparseMat expect = from_ints({{1, -2, 1}}, 1);
  CHECK(k == expect);
}

TEST_CASE("rref is span-invariant and idempotent") {
  std::mt19937_64 rng(0x11a10001);
  for (int trial = 0; trial < 10; ++trial) {
    SparseMat m = random_mat(rng, 8, 10, 4, 40);
    Rref r1 = rref(m, 4);
    // shuffle rows: same span, same canonical form
    SparseMat shuffled = m;
    std::shuffle(shuffled.row.begin(), shuffled.row.end(), rng);
    Rref r2 = rref(shuffled, 4);
    CHECK(r1.mat == r2.mat);
    Rref r3 = rref(r1.mat, 4);
    CHECK(r3.mat == r1.mat);
  }
}

TEST_CASE("rank-nullity and kernel membership") {
  std::mt19937_64 rng(0x11a10002);
  for (int trial = 0; trial < 15; ++trial) {
    uint32_t rows = 5 + (uint32_t)(rng() % 8), cols = 5 + (uint32_t)(rng() % 10);
    SparseMat m = random_mat(rng, rows, cols, 3, 30);
    Rref r = rref(m, 3);
    SparseMat k = kernel(m, 3);
    CHECK(r.mat.rows + k.rows == cols);
    for (const SVec& kv : k.row) CHECK(mat_apply(m, kv).empty());
  }
}

TEST_CASE("solve consistent and inconsistent systems") {
  std::mt19937_64 rng(0x11a10003);
  for (int trial = 0; trial < 10; ++trial) {
    uint32_t rows = 6, cols = 5;
    SparseMat m = random_mat(rng, rows, cols, 4, 50);
    SVec x0 = random_vec(rng, cols, 4);
    SVec b = mat_apply(m, x0);
    auto sol = solve(m, b, 4);
    REQUIRE(sol.has_value());
    CHECK(mat_apply(m, sol->particular) == b);
    for (const SVec& h : sol->homogeneous.row) CHECK(mat_apply(m, h).empty());
  }
  // x + y = 1, x + y = 2 has no solution
  SparseMat m = from_ints({{1, 1}, {1, 1}}, 1);
  SVec b = sv_from_dense({Cyc::one(1), Cyc::integer(2, 1)});
  CHECK_FALSE(solve(m, b, 1).has_value());
}

TEST_CASE("matrix product against dense evaluation") {
  std::mt19937_64 rng(0x11a10004);
  for (int trial = 0; trial < 8; ++trial) {
    SparseMat a = random_mat(rng, 6, 7, 3, 40);
    SparseMat b = random_mat(rng, 7, 5, 3, 40);
    SparseMat c = mat_mul(a, b);
    for (uint32_t j = 0; j < b.cols; ++j)
      CHECK(mat_col(c, j) == mat_apply(a, mat_col(b, j)));
    // associativity with a third factor
    SparseMat d = random_mat(rng, 5, 4, 3, 40);
    CHECK(mat_mul(mat_mul(a, b), d) == mat_mul(a, mat_mul(b, d)));
  }
}

TEST_CASE("transpose and vstack") {
  std::mt19937_64 rng(0x11a10005);
  SparseMat a = random_mat(rng, 5, 7, 4, 40);
  SparseMat at = mat_transpose(a);
  CHECK(at.rows == 7);
  CHECK(mat_transpose(at) == a);
  SparseMat b = random_mat(rng, 3, 7, 4, 40);
  SparseMat s = mat_vstack(a, b);
  CHECK(s.rows == 8);
  CHECK(s.row[6] == b.row[1]);
  // (AB)^T = B^T A^T
  SparseMat c = random_mat(rng, 7, 6, 4, 40);
  CHECK(mat_transpose(mat_mul(a, c)) == mat_mul(mat_transpose(c), mat_transpose(a)));
}

TEST_CASE("kronecker product acts factor-wise") {
  std::mt19937_64 rng(0x11a10006);
  SparseMat a = random_mat(rng, 4, 3, 3, 60);
  SparseMat b = random_mat(rng, 2, 5, 3, 60);
  SparseMat k = mat_kron(a, b);
  CHECK(k.rows == 8);
  CHECK(k.cols == 15);
  for (int trial = 0; trial < 6; ++trial) {
    SVec x = random_vec(rng, 3, 3), y = random_vec(rng, 5, 3);
    CHECK(mat_apply(k, sv_kron(x, y, 5)) ==
          sv_kron(mat_apply(a, x), mat_apply(b, y), 2));
  }
  // mixed-product property
  SparseMat c = random_mat(rng, 3, 4, 3, 60);
  SparseMat d = random_mat(rng, 5, 2, 3, 60);
  CHECK(mat_mul(k, mat_kron(c, d)) == mat_kron(mat_mul(a, c), mat_mul(b, d)));
}

TEST_CASE("subspace sum and intersection dimensions") {
  std::mt19937_64 rng(0x11a10007);
  for (int trial = 0; trial < 10; ++trial) {
    uint32_t n = 8;
    std::vector<SVec> gu, gw;
    for (int i = 0; i < 4; ++i) gu.push_back(random_vec(rng, n, 3));
    for (int i = 0; i < 4; ++i) gw.push_back(random_vec(rng, n, 3));
    Subspace u = Subspace::from_vectors(n, 3, gu);
    Subspace w = Subspace::from_vectors(n, 3, gw);
    Subspace s = u.sum(w);
    Subspace x = u.intersect(w);
    CHECK(u.dim() + w.dim() == s.dim() + x.dim());
    CHECK(s.contains(u));
    CHECK(s.contains(w));
    CHECK(u.contains(x));
    CHECK(w.contains(x));
    for (const SVec& v : x.basis()) {
      CHECK(u.contains(v));
      CHECK(w.contains(v));
    }
  }
}

TEST_CASE("subspace equality is basis-canonical") {
  std::mt19937_64 rng(0x11a10008);
  std::vector<SVec> g;
  for (int i = 0; i < 3; ++i) g.push_back(random_vec(rng, 6, 4));
  Subspace u = Subspace::from_vectors(6, 4, g);
  // mix the generators: same span
  std::vector<SVec> g2;
  g2.push_back(sv_add(g[0], g[1]));
  g2.push_back(g[2]);
  g2.push_back(sv_sub(g[1], g[2]));
  g2.push_back(g[0]);
  Subspace w = Subspace::from_vectors(6, 4, g2);
  CHECK(u == w);
}

TEST_CASE("quotient projection kills exactly the subspace") {
  std::mt19937_64 rng(0x11a10009);
  std::vector<SVec> g;
  for (int i = 0; i < 3; ++i) g.push_back(random_vec(rng, 7, 3));
  Subspace u = Subspace::from_vectors(7, 3, g);
  SparseMat q = u.quotient_projection();
  CHECK(q.rows == 7 - u.dim());
  for (const SVec& v : u.basis()) CHECK(mat_apply(q, v).empty());
  for (int trial = 0; trial < 20; ++trial) {
    SVec v = random_vec(rng, 7, 3);
    bool killed = mat_apply(q, v).empty();
    CHECK(killed == u.contains(v));
  }
}

TEST_CASE("preimage property") {
  std::mt19937_64 rng(0x11a1000a);
  for (int trial = 0; trial < 8; ++trial) {
    SparseMat t = random_mat(rng, 6, 8, 3, 40);
    std::vector<SVec> g;
    for (int i = 0; i < 2; ++i) g.push_back(random_vec(rng, 6, 3));
    Subspace target = Subspace::from_vectors(6, 3, g);
    Subspace pre = preimage(t, target);
    for (const SVec& v : pre.basis()) CHECK(target.contains(mat_apply(t, v)));
    // vectors mapping into the target are caught
    for (int k = 0; k < 10; ++k) {
      SVec v = random_vec(rng, 8, 3);
      if (target.contains(mat_apply(t, v))) CHECK(pre.contains(v));
    }
  }
}

TEST_CASE("triplets sum duplicates and drop zeros") {
  Triplets t;
  t.rows = 2;
  t.cols = 2;
  t.add(0, 0, Cyc::one(3));
  t.add(0, 0, Cyc::integer(2, 3));
  t.add(1, 1, Cyc::one(3));
  t.add(1, 1, -Cyc::one(3));
  SparseMat m = t.build();
  CHECK(m.get(0, 0, 3) == Cyc::integer(3, 3));
  CHECK(m.row[1].empty());
  CHECK(m.nnz() == 1);
}

TEST_CASE("mat_mul_is_zero streaming check") {
  std::mt19937_64 rng(0x11a1000b);
  SparseMat m = random_mat(rng, 6, 8, 3, 40);
  SparseMat k = mat_transpose(kernel(m, 3));
  if (k.cols > 0) CHECK(mat_mul_is_zero(m, k));
  SparseMat i = SparseMat::identity(8, 3);
  if (!m.is_zero()) CHECK_FALSE(mat_mul_is_zero(m, i));
}
