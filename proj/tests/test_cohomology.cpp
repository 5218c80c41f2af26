#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/catalog.hpp"
#include "hopfkit/cohomology.hpp"

using namespace hopfkit;

namespace {

Hopf taft_hopf(uint32_t n) { return build_bosonization([&] {
  BosSpec s;
  s.field_order = n;
  s.group_order = n;
  s.gens.push_back({"x", 1, Cyc::root(n, 1)});
  s.name = "taft(" + std::to_string(n) + ")";
  return s;
}()); }

Hopf group_hopf(uint32_t n) { return build_bosonization([&] {
  BosSpec s;
  s.field_order = n;
  s.group_order = n;
  s.name = "kC_" + std::to_string(n);
  return s;
}()); }

/* A(1, xi) over taft(n): w^n = xi 1, lambda(w) = x (x) 1 + g (x) w */
Presentation a_pres(uint32_t n, const Cyc& xi) {
  Presentation p;
  p.field_order = n;
  p.name = "A(1)";
  p.gens.push_back({"w", n});
  p.init_rules();
  if (!xi.is_zero()) p.power[0] = SVec{{0, xi}};
  return p;
}

std::vector<SVec> a_coaction(const Hopf& h, uint32_t da) {
  const Presentation& hp = *h.pres();
  const uint32_t N = h.field_order();
  std::vector<uint32_t> e(hp.gens.size(), 0);
  e[0] = 1;
  uint32_t g1 = hp.mono_index(e);
  e[0] = 0;
  e[1] = 1;
  uint32_t x1 = hp.mono_index(e);
  return {sv_gather({{x1 * da + 0, Cyc::one(N)}, {g1 * da + 1, Cyc::one(N)}})};
}

ComoduleAlgebra sweedler_comodule(const Hopf& h, const Cyc& xi, bool graded) {
  Presentation ap = a_pres(2, xi);
  std::vector<SVec> gens = a_coaction(h, 2);
  if (graded) return ComoduleAlgebra::build(h, ap, gens, std::vector<uint32_t>{0, 1});
  return ComoduleAlgebra::build(h, ap, gens);
}

uint32_t tot_dim(const Bicomplex& b, uint32_t n) {
  uint32_t d = 0;
  for (uint32_t p = 0; p <= n; ++p)
    if (b.has_panel(p, n - p)) d += b.panel(p, n - p).dim();
  return d;
}

uint32_t tot_offset(const Bicomplex& b, uint32_t n, uint32_t p) {
  uint32_t off = 0;
  for (uint32_t pp = n; pp > p; --pp)
    if (b.has_panel(pp, n - pp)) off += b.panel(pp, n - pp).dim();
  return off;
}

/* the degree-n total differential, reassembled from the public panel maps */
SparseMat total_d(const Bicomplex& b, uint32_t n) {
  Triplets t;
  t.rows = tot_dim(b, n + 1);
  t.cols = tot_dim(b, n);
  for (uint32_t p = 0; p <= n; ++p) {
    uint32_t q = n - p;
    if (!b.has_panel(p, q)) continue;
    uint32_t co = tot_offset(b, n, p);
    if (b.has_dh(p, q)) {
      const SparseMat& m = b.dh(p, q);
      uint32_t ro = tot_offset(b, n + 1, p + 1);
      for (uint32_t r = 0; r < m.rows; ++r)
        for (const Entry& e : m.row[r]) t.add(r + ro, e.idx + co, e.val);
    }
    if (b.has_dv(p, q)) {
      const SparseMat& m = b.dv(p, q);
      uint32_t ro = tot_offset(b, n + 1, p);
      bool neg = p % 2 == 1;
      for (uint32_t r = 0; r < m.rows; ++r)
        for (const Entry& e : m.row[r]) t.add(r + ro, e.idx + co, neg ? -e.val : e.val);
    }
  }
  return t.build();
}

/* plain dense elimination, independent of the sparse rref */
uint32_t dense_rank(const SparseMat& m, uint32_t N) {
  std::vector<std::vector<Cyc>> a(m.rows, std::vector<Cyc>(m.cols, Cyc::zero(N)));
  for (uint32_t r = 0; r < m.rows; ++r)
    for (const Entry& e : m.row[r]) a[r][e.idx] = e.val;
  uint32_t rank = 0;
  for (uint32_t c = 0; c < m.cols && rank < m.rows; ++c) {
    uint32_t piv = rank;
    while (piv < m.rows && a[piv][c].is_zero()) ++piv;
    if (piv == m.rows) continue;
    std::swap(a[piv], a[rank]);
    for (uint32_t r = rank + 1; r < m.rows; ++r) {
      if (a[r][c].is_zero()) continue;
      Cyc f = a[r][c] / a[rank][c];
      for (uint32_t cc = c; cc < m.cols; ++cc) a[r][cc] -= f * a[rank][cc];
    }
    ++rank;
  }
  return rank;
}

SVec random_vec(uint32_t dim, uint32_t N, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Entry> items;
  for (uint32_t i = 0; i < dim; ++i) {
    int v = d(rng);
    if (v != 0) items.push_back({i, Cyc::integer(v, N)});
  }
  return sv_gather(items);
}

SVec perm_vec(const SVec& v, const std::vector<uint32_t>& s) {
  std::vector<Entry> items;
  for (const Entry& e : v) items.push_back({s[e.idx], e.val});
  return sv_gather(items);
}

Hopf perm_hopf(const Hopf& h, const std::vector<uint32_t>& s) {
  uint32_t n = h.dim(), N = h.field_order();
  std::vector<SVec> mult((size_t)n * n), cop(n);
  std::vector<Cyc> cnt(n, Cyc::zero(N));
  std::vector<std::string> nm(n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      mult[(size_t)s[i] * n + s[j]] = perm_vec(h.mul_basis(i, j), s);
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<Entry> items;
    for (const Entry& e : h.coprod_basis(i))
      items.push_back({s[e.idx / n] * n + s[e.idx % n], e.val});
    cop[s[i]] = sv_gather(items);
    cnt[s[i]] = h.counit_basis(i);
    nm[s[i]] = h.basis_name(i);
  }
  return Hopf::from_tables(N, n, std::move(mult), perm_vec(h.unit(), s), std::move(cop),
                           std::move(cnt), std::move(nm), std::nullopt);
}

ComoduleAlgebra perm_comodule(const ComoduleAlgebra& a, const Hopf& ph,
                              const std::vector<uint32_t>& sh,
                              const std::vector<uint32_t>& sa) {
  uint32_t n = a.dim(), N = a.field_order();
  std::vector<SVec> mult((size_t)n * n), coact(n);
  std::vector<std::string> nm(n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      mult[(size_t)sa[i] * n + sa[j]] = perm_vec(a.mul_basis(i, j), sa);
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<Entry> items;
    for (const Entry& e : a.coaction_basis(i))
      items.push_back({sh[e.idx / n] * n + sa[e.idx % n], e.val});
    coact[sa[i]] = sv_gather(items);
    nm[sa[i]] = a.basis_name(i);
  }
  (void)N;
  return ComoduleAlgebra::from_tables(ph, n, std::move(mult), perm_vec(a.unit(), sa),
                                      std::move(coact), std::move(nm));
}

ComoduleAlgebra k2_trivial(const Hopf& h) {
  const uint32_t N = h.field_order();
  std::vector<SVec> mult{sv_unit(0, N), {}, {}, sv_unit(1, N)};
  std::vector<SVec> coact{sv_unit(0, N), sv_unit(1, N)};
  return ComoduleAlgebra::from_tables(h, 2, std::move(mult),
                                      sv_gather({{0, Cyc::one(N)}, {1, Cyc::one(N)}}),
                                      std::move(coact), {"e0", "e1"});
}

}  // namespace

TEST_CASE("panel dimensions and the derivation cut") {
  Hopf h = taft_hopf(2);
  ComoduleAlgebra a = sweedler_comodule(h, Cyc::zero(2), true);
  Bicomplex b = Bicomplex::build(a, 3, 3);
  CHECK(b.p_max() == 3);
  CHECK(b.q_max() == 3);
  CHECK(b.band() == 3);

  // Der(k[w]/(w^2)) is spanned by w d/dw
  CHECK(b.derivations().rows == 1);

  auto pd = [&](uint32_t p, uint32_t q) {
    const Panel& pl = b.panel(p, q);
    return std::pair<uint32_t, uint32_t>(pl.dim_a, pl.dim_h);
  };
  CHECK(pd(1, 0) == std::pair<uint32_t, uint32_t>(1, 16));
  CHECK(pd(2, 0) == std::pair<uint32_t, uint32_t>(8, 64));
  CHECK(pd(3, 0) == std::pair<uint32_t, uint32_t>(16, 256));
  CHECK(pd(1, 1) == std::pair<uint32_t, uint32_t>(16, 64));   // dim_a = 2 * 4 * 2
  CHECK(pd(2, 1) == std::pair<uint32_t, uint32_t>(32, 256));
  CHECK(pd(1, 2) == std::pair<uint32_t, uint32_t>(64, 256));
  for (uint32_t q = 0; q <= 3; ++q) CHECK(b.panel(0, q).dim() == 0);

  // the band cuts the corners of the rectangle
  CHECK_FALSE(b.has_panel(2, 2));
  CHECK_FALSE(b.has_panel(3, 1));
  CHECK_THROWS_AS((void)b.panel(2, 2), CohomologyError);
  CHECK(b.has_dh(1, 0));
  CHECK(b.has_dv(1, 0));
  CHECK_FALSE(b.has_dh(3, 0));
  CHECK_FALSE(b.has_dv(1, 2));

  try {
    Bicomplex::build(a, 3, 3, 0);
    FAIL("expected a budget error");
  } catch (const CohomologyError& e) {
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("the bicomplex identities hold") {
  Hopf h = taft_hopf(2);
  ComoduleAlgebra a = sweedler_comodule(h, Cyc::zero(2), true);
  BicomplexReport rep = verify_bicomplex(Bicomplex::build(a, 3, 3));
  CHECK(rep.ok);
  CHECK(rep.failures.empty());

  Hopf g3 = group_hopf(3);
  ComoduleAlgebra reg = regular_comodule_algebra(g3);
  BicomplexReport rep2 = verify_bicomplex(Bicomplex::build(reg, 3, 3));
  CHECK(rep2.ok);
  CHECK(rep2.failures.empty());

  Hopf h4 = group_hopf(4);
  Subspace k = Subspace::from_vectors(4, 4, {h4.unit(), sv_unit(2, 4)});
  ComoduleAlgebra sub = coideal_subalgebra_comodule(h4, k);
  Bicomplex bsub = Bicomplex::build(sub, 3, 3);
  CHECK(verify_bicomplex(bsub).ok);
}

TEST_CASE("a corrupted vertical differential is caught") {
  Hopf h = taft_hopf(2);
  ComoduleAlgebra a = sweedler_comodule(h, Cyc::zero(2), true);
  Bicomplex bm = build_bicomplex_mutated(a, 3, 3, 1, 1, 1);
  BicomplexReport rep = verify_bicomplex(bm);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0] == "d^v d^v is nonzero at panel (1, 0)");
}

TEST_CASE("total cohomology over the Sweedler comodule") {
  Hopf h = taft_hopf(2);
  ComoduleAlgebra a = sweedler_comodule(h, Cyc::zero(2), true);
  Bicomplex b = Bicomplex::build(a, 3, 3);
  TotalCohomology tc = total_cohomology_dims(b, 2);

  REQUIRE(tc.tot_dim.size() == 3);
  CHECK(tc.tot_dim[0] == 0);
  CHECK(tc.tot_dim[1] == 17);
  CHECK(tc.tot_dim[2] == 152);

  // ranks against a plain dense elimination
  for (uint32_t n = 0; n <= 2; ++n) {
    CHECK(tc.rank_d[n] == dense_rank(total_d(b, n), 2));
    CHECK(tc.tot_dim[n] == tot_dim(b, n));
  }

  std::vector<uint32_t> frozen_rank{0, 16, 132};
  std::vector<uint32_t> frozen_h{0, 1, 4};
  for (uint32_t n = 0; n <= 2; ++n) {
    CHECK(tc.rank_d[n] == frozen_rank[n]);
    CHECK(tc.h_dim[n] == frozen_h[n]);
  }

  // telescoped Euler identity for the truncation
  long euler = 0;
  for (uint32_t n = 0; n <= 2; ++n) {
    long term = (long)tc.tot_dim[n] - (long)tc.h_dim[n];
    euler += (n % 2 == 0) ? term : -term;
  }
  CHECK(euler == (long)tc.rank_d[2]);

  Bicomplex small = Bicomplex::build(a, 2, 2);
  CHECK_THROWS_AS(total_cohomology_dims(small, 2), CohomologyError);
}

TEST_CASE("degree-2 cocycle membership") {
  Hopf h = taft_hopf(2);
  ComoduleAlgebra a = sweedler_comodule(h, Cyc::zero(2), true);
  Bicomplex b = Bicomplex::build(a, 3, 3);

  Z2Result zero = z2_membership(b, {}, {});
  CHECK(zero.member);
  REQUIRE(zero.equations.size() == 5);
  for (bool e : zero.equations) CHECK(e);

  // the total differential of any degree-1 cochain is a degree-2 cocycle
  SVec c = random_vec(b.panel(1, 0).dim(), 2, 20240917);
  SVec phi_f = mat_apply(b.dh(1, 0), c);
  SVec psi_g = sv_neg(mat_apply(b.dv(1, 0), c));
  REQUIRE(!phi_f.empty());
  REQUIRE(!psi_g.empty());
  Z2Result bd = z2_membership(b, phi_f, psi_g);
  CHECK(bd.member);

  // with the sign of the (1, 1) component wrong it is no longer one
  Z2Result wrong = z2_membership(b, phi_f, mat_apply(b.dv(1, 0), c));
  CHECK_FALSE(wrong.member);

  // a bare unit cochain in panel (2, 0) fails the first displayed equation
  Z2Result unit = z2_membership(b, sv_unit(0, 2), {});
  CHECK_FALSE(unit.member);
  CHECK_FALSE(unit.equations[0]);

  CHECK_THROWS_AS(z2_membership(b, sv_unit(72, 2), {}), CohomologyError);
}

TEST_CASE("first-order data of catalog liftings is cocyclic and vanishes") {
  Hopf h = taft_hopf(2);
  ComoduleAlgebra a0 = sweedler_comodule(h, Cyc::zero(2), true);
  Bicomplex b = Bicomplex::build(a0, 3, 3);

  // w^2 = 1 deforms w^2 = 0 two layers down, so its first-order part is zero
  ComoduleAlgebra a1 = sweedler_comodule(h, Cyc::one(2), false);
  FirstOrderData fd = first_order_deformation(b, a1);
  CHECK(fd.phi_f.empty());
  CHECK(fd.psi_g.empty());
  CHECK(z2_membership(b, fd.phi_f, fd.psi_g).member);

  CHECK_THROWS_AS(first_order_deformation(b, k2_trivial(h)), CohomologyError);

  // x^2 = 1 - g^2 against its graded version x^2 = 0, dimension 8
  Hopf gr = build_bosonization([] {
    BosSpec s;
    s.field_order = 4;
    s.group_order = 4;
    s.gens.push_back({"x", 1, Cyc::root(4, 2)});
    s.name = "taft_hat(2)";
    return s;
  }());
  Hopf rad = Hopf::build(radford(2));
  REQUIRE(gr.dim() == 8);
  REQUIRE(rad.dim() == 8);
  for (uint32_t i = 0; i < 8; ++i) REQUIRE(gr.basis_name(i) == rad.basis_name(i));

  ComoduleAlgebra agr = regular_comodule_algebra(gr);
  Bicomplex br = Bicomplex::build(agr, 3, 3);
  CHECK(verify_bicomplex(br).ok);
  FirstOrderData fr = first_order_deformation(br, regular_comodule_algebra(rad));
  CHECK(fr.phi_f.empty());
  CHECK(fr.psi_g.empty());
  CHECK(z2_membership(br, fr.phi_f, fr.psi_g).member);
}

TEST_CASE("ranks do not depend on the choice of basis") {
  Hopf h = group_hopf(3);
  ComoduleAlgebra a = regular_comodule_algebra(h);
  TotalCohomology t0 = total_cohomology_dims(Bicomplex::build(a, 3, 3), 2);

  std::vector<uint32_t> frozen_h{0, 0, 9};
  for (uint32_t n = 0; n <= 2; ++n) CHECK(t0.h_dim[n] == frozen_h[n]);

  std::vector<uint32_t> sh{2, 0, 1}, sa{1, 2, 0};
  Hopf ph = perm_hopf(h, sh);
  ComoduleAlgebra pa = perm_comodule(a, ph, sh, sa);
  TotalCohomology t1 = total_cohomology_dims(Bicomplex::build(pa, 3, 3), 2);
  for (uint32_t n = 0; n <= 2; ++n) {
    CHECK(t1.tot_dim[n] == t0.tot_dim[n]);
    CHECK(t1.rank_d[n] == t0.rank_d[n]);
    CHECK(t1.h_dim[n] == t0.h_dim[n]);
  }
}
