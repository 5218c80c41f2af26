#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "hopfkit/catalog.hpp"
#include "hopfkit/comodule.hpp"

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

uint32_t gen_mono(const Presentation& p, size_t g) {
  std::vector<uint32_t> e(p.gens.size(), 0);
  e[g] = 1;
  return p.mono_index(e);
}

uint32_t by_name(const Hopf& h, const std::string& s) {
  for (uint32_t i = 0; i < h.dim(); ++i)
    if (h.basis_name(i) == s) return i;
  throw std::runtime_error("no basis vector named " + s);
}

/* A(d, xi) over taft(n): h^d = 1, h w = q^m w h, w^n = xi 1,
 * lambda(h) = g^m (x) h, lambda(w) = x (x) 1 + g (x) w; needs n | m d */
Presentation a_pres(uint32_t d, uint32_t n, uint32_t m, const Cyc& xi) {
  Presentation p;
  p.field_order = n;
  p.name = "A(" + std::to_string(d) + ")";
  if (d > 1) p.gens.push_back({"h", d});
  p.gens.push_back({"w", n});
  p.init_rules();
  const size_t iw = p.gens.size() - 1;
  if (d > 1) p.power[0] = sv_unit(0, n);
  if (!xi.is_zero()) p.power[iw] = SVec{{0, xi}};
  if (d > 1) p.swap[1][0] = SwapRule{Cyc::root(n, 1).pow(-(long)m), {}};
  return p;
}

std::vector<SVec> a_coaction_gens(const Hopf& h, const Presentation& ap, uint32_t m) {
  const Presentation& hp = *h.pres();
  const uint32_t da = ap.dim(), N = h.field_order();
  std::vector<uint32_t> ge(hp.gens.size(), 0);
  ge[0] = m % hp.gens[0].bound;
  uint32_t gm = hp.mono_index(ge);
  ge[0] = 1;
  uint32_t g1 = hp.mono_index(ge);
  uint32_t x1 = gen_mono(hp, 1);
  const size_t iw = ap.gens.size() - 1;
  SVec lw = sv_gather({{x1 * da + 0, Cyc::one(N)}, {g1 * da + gen_mono(ap, iw), Cyc::one(N)}});
  if (ap.gens.size() == 1) return {lw};
  SVec lh = sv_unit(gm * da + gen_mono(ap, 0), N);
  return {lh, lw};
}

std::optional<std::vector<uint32_t>> w_layers(const Presentation& ap) {
  const size_t iw = ap.gens.size() - 1;
  std::vector<uint32_t> l(ap.dim());
  for (uint32_t i = 0; i < ap.dim(); ++i) l[i] = ap.exponents(i)[iw];
  return l;
}

ComoduleAlgebra k2_trivial(const Hopf& h) {
  const uint32_t N = h.field_order();
  std::vector<SVec> mult{sv_unit(0, N), {}, {}, sv_unit(1, N)};
  std::vector<SVec> coact{sv_unit(0, N), sv_unit(1, N)};  // 1 (x) e_i at flat 0*2+i
  return ComoduleAlgebra::from_tables(h, 2, std::move(mult),
                                      sv_gather({{0, Cyc::one(N)}, {1, Cyc::one(N)}}),
                                      std::move(coact), {"e0", "e1"});
}

/* phi matching basis vectors of a to basis vectors of b by name */
SparseMat name_match(const ComoduleAlgebra& a, const ComoduleAlgebra& b) {
  Triplets t;
  t.rows = b.dim();
  t.cols = a.dim();
  for (uint32_t i = 0; i < a.dim(); ++i) {
    bool found = false;
    for (uint32_t j = 0; j < b.dim(); ++j)
      if (b.basis_name(j) == a.basis_name(i)) {
        t.add(j, i, Cyc::one(a.field_order()));
        found = true;
        break;
      }
    REQUIRE(found);
  }
  return t.build();
}

}  // namespace

TEST_CASE("regular comodule algebra: coinvariants and Loewy series") {
  for (const Hopf& h : {taft_hopf(3), Hopf::build(uq_lifting(3))}) {
    ComoduleAlgebra a = regular_comodule_algebra(h);
    CHECK(a.dim() == h.dim());
    CHECK(a.coinvariants().dim() == 1);
    CHECK(a.coinvariants().contains(h.unit()));
    const auto& lw = a.loewy_series();
    const auto& filt = h.coradical_filtration();
    REQUIRE(lw.size() == filt.size());
    for (size_t i = 0; i < lw.size(); ++i) CHECK(lw[i] == filt[i]);
  }
}

TEST_CASE("regular comodule algebra over Taft is right simple") {
  Hopf h = taft_hopf(3);
  ComoduleAlgebra a = regular_comodule_algebra(h);
  auto v = is_right_simple(a);
  CHECK(v.simple);
}

TEST_CASE("A(d, xi) over the Taft algebra is a comodule algebra") {
  Hopf h = taft_hopf(3);
  for (const Cyc& xi : {Cyc::zero(3), Cyc::one(3), Cyc::root(3, 1)}) {
    Presentation ap = a_pres(3, 3, 1, xi);
    ComoduleAlgebra a = ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1));
    CHECK(a.dim() == 9);
    CHECK(a.coinvariants().dim() == 1);
    const auto& lw = a.loewy_series();
    REQUIRE(lw.size() == 3);
    CHECK(lw[0].dim() == 3);
    CHECK(lw[1].dim() == 6);
    CHECK(lw[2].dim() == 9);
    CHECK(is_right_simple(a).simple);
  }
}

TEST_CASE("A(d, 0) accepts its w-degree grading, A(d, 1) rejects it") {
  Hopf h = taft_hopf(3);
  Presentation ap0 = a_pres(3, 3, 1, Cyc::zero(3));
  ComoduleAlgebra a0 = ComoduleAlgebra::build(h, ap0, a_coaction_gens(h, ap0, 1),
                                              w_layers(ap0));
  CHECK(a0.layer_count() == 3);
  CHECK(a0.layer_span(0).dim() == 3);

  Presentation ap1 = a_pres(3, 3, 1, Cyc::one(3));
  bool threw = false;
  try {
    ComoduleAlgebra::build(h, ap1, a_coaction_gens(h, ap1, 1), w_layers(ap1));
  } catch (const ComoduleError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("not graded") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("coaction axiom failures are reported") {
  Hopf h = taft_hopf(3);

  SUBCASE("coassociativity: lambda(w) = x (x) 1 only") {
    Presentation ap = a_pres(1, 3, 0, Cyc::zero(3));
    auto gens = a_coaction_gens(h, ap, 0);
    gens.back() = sv_unit(gen_mono(*h.pres(), 1) * ap.dim() + 0, 3);  // x (x) 1
    bool threw = false;
    try {
      ComoduleAlgebra::build(h, ap, gens);
    } catch (const ComoduleError& e) {
      threw = true;
      CHECK(std::string(e.what()).find("coassociative") != std::string::npos);
    }
    CHECK(threw);
  }

  SUBCASE("counit axiom: lambda(w) = 0") {
    Presentation ap = a_pres(1, 3, 0, Cyc::zero(3));
    auto gens = a_coaction_gens(h, ap, 0);
    gens.back() = SVec{};
    bool threw = false;
    try {
      ComoduleAlgebra::build(h, ap, gens);
    } catch (const ComoduleError& e) {
      threw = true;
      CHECK(std::string(e.what()).find("counit axiom") != std::string::npos);
    }
    CHECK(threw);
  }

  SUBCASE("algebra map: wrong commutation between h and w") {
    Presentation ap = a_pres(3, 3, 1, Cyc::zero(3));
    ap.swap[1][0] = SwapRule{Cyc::root(3, 1), {}};  // should be q^{-1}
    bool threw = false;
    try {
      ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1));
    } catch (const ComoduleError& e) {
      threw = true;
      CHECK(std::string(e.what()).find("not an algebra map") != std::string::npos);
    }
    CHECK(threw);
  }

  SUBCASE("non-associative tables are rejected") {
    std::vector<SVec> mult(9);
    mult[0] = sv_unit(0, 3);
    mult[1] = sv_unit(1, 3);
    mult[2] = sv_unit(2, 3);
    mult[3] = sv_unit(1, 3);
    mult[4] = sv_unit(2, 3);   // e1 e1 = e2
    mult[5] = sv_unit(0, 3);   // e1 e2 = e0
    mult[6] = sv_unit(2, 3);
    std::vector<SVec> coact(3);
    for (uint32_t i = 0; i < 3; ++i) coact[i] = sv_unit(i, 3);
    bool threw = false;
    try {
      ComoduleAlgebra::from_tables(h, 3, std::move(mult), sv_unit(0, 3), std::move(coact),
                                   {"e0", "e1", "e2"});
    } catch (const ComoduleError& e) {
      threw = true;
      CHECK(std::string(e.what()).find("associative") != std::string::npos);
    }
    CHECK(threw);
  }
}

TEST_CASE("group algebra comodule kC_d over kC_n") {
  Hopf h = group_hopf(3);
  Presentation ap;
  ap.field_order = 3;
  ap.name = "kC_3";
  ap.gens.push_back({"h", 3});
  ap.init_rules();
  ap.power[0] = sv_unit(0, 3);
  SVec lh = sv_unit(gen_mono(*h.pres(), 0) * ap.dim() + gen_mono(ap, 0), 3);
  ComoduleAlgebra a =
      ComoduleAlgebra::build(h, ap, {lh}, std::vector<uint32_t>(3, 0));
  CHECK(a.dim() == 3);
  CHECK(a.coinvariants().dim() == 1);
  REQUIRE(a.loewy_series().size() == 1);
  CHECK(a.loewy_series()[0].dim() == 3);
  CHECK(is_right_simple(a).simple);
}

TEST_CASE("trivial coaction on k x k is not right simple") {
  Hopf h = taft_hopf(3);
  ComoduleAlgebra a = k2_trivial(h);
  CHECK(a.coinvariants().dim() == 2);
  auto v = is_right_simple(a);
  CHECK(!v.simple);
  CHECK(v.certificate.dim() == 1);
  CHECK(v.certificate.contains(sv_unit(0, 3)));
}

TEST_CASE("k[w]/(w^n) with lambda(w) = x (x) 1 + g (x) w is right simple") {
  Hopf h = taft_hopf(3);
  Presentation ap = a_pres(1, 3, 0, Cyc::zero(3));
  ComoduleAlgebra a = ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 0),
                                             w_layers(ap));
  CHECK(a.dim() == 3);
  CHECK(a.coinvariants().dim() == 1);
  const auto& lw = a.loewy_series();
  REQUIRE(lw.size() == 3);
  CHECK(lw[0].dim() == 1);
  CHECK(lw[1].dim() == 2);
  CHECK(is_right_simple(a).simple);
}

TEST_CASE("right ideals of A(3, xi)") {
  Hopf h = taft_hopf(3);
  Presentation ap0 = a_pres(3, 3, 1, Cyc::zero(3));
  ComoduleAlgebra a0 = ComoduleAlgebra::build(h, ap0, a_coaction_gens(h, ap0, 1));
  SVec w = sv_unit(gen_mono(ap0, 1), 3);
  CHECK(a0.right_ideal({w}).dim() == 6);

  Presentation ap1 = a_pres(3, 3, 1, Cyc::one(3));
  ComoduleAlgebra a1 = ComoduleAlgebra::build(h, ap1, a_coaction_gens(h, ap1, 1));
  CHECK(a1.right_ideal({w}).dim() == 9);  // w^3 = 1 makes w invertible
}

TEST_CASE("associated graded comodule of A(3, 1) is A(3, 0)") {
  Hopf h = taft_hopf(3);
  Hopf grh = associated_graded_hopf(h);
  Presentation ap1 = a_pres(3, 3, 1, Cyc::one(3));
  ComoduleAlgebra a1 = ComoduleAlgebra::build(h, ap1, a_coaction_gens(h, ap1, 1));
  ComoduleAlgebra gra = associated_graded_comodule(a1, grh);
  REQUIRE(gra.layers().has_value());
  CHECK(gra.layer_count() == 3);
  CHECK(gra.layer_span(0).dim() == 3);

  /* build A(3, 0) directly over the graded Hopf algebra and match by name */
  Presentation ap0 = a_pres(3, 3, 1, Cyc::zero(3));
  const uint32_t da = ap0.dim();
  SVec lh = sv_unit(by_name(grh, "g") * da + gen_mono(ap0, 0), 3);
  SVec lw = sv_gather({{by_name(grh, "x") * da + 0, Cyc::one(3)},
                       {by_name(grh, "g") * da + gen_mono(ap0, 1), Cyc::one(3)}});
  ComoduleAlgebra a0 = ComoduleAlgebra::build(grh, ap0, {lh, lw}, w_layers(ap0));

  SparseMat phi = name_match(gra, a0);
  std::string why;
  CHECK(verify_comodule_iso(gra, a0, phi, nullptr, &why));
  INFO(why);
  CHECK(why.empty());
}

TEST_CASE("degree zero part of A(3, 0)") {
  Hopf h = taft_hopf(3);
  Presentation ap = a_pres(3, 3, 1, Cyc::zero(3));
  ComoduleAlgebra a = ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1),
                                             w_layers(ap));
  ComoduleAlgebra z = degree_zero_part(a);
  CHECK(z.dim() == 3);
  CHECK(z.coinvariants().dim() == 1);
}

TEST_CASE("diagram of the regular comodule algebra is the Nichols part") {
  Hopf h = taft_hopf(3);
  ComoduleAlgebra a = regular_comodule_algebra(h);
  Diagram d = diagram(a);
  CHECK(d.space.dim() == 3);
  REQUIRE(d.layer.size() == 3);
  CHECK(d.layer == std::vector<uint32_t>{0, 1, 2});
  CHECK(mat_col(d.iota, 0) == h.unit());
  CHECK(mat_col(d.iota, 1) == sv_unit(by_name(h, "x"), 3));
  CHECK(mat_col(d.iota, 2) == sv_unit(by_name(h, "x^2"), 3));
}

TEST_CASE("diagram of A(3, 0) is k[w]/(w^3) embedded on x") {
  Hopf h = taft_hopf(3);
  Presentation ap = a_pres(3, 3, 1, Cyc::zero(3));
  ComoduleAlgebra a = ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1),
                                             w_layers(ap));
  Diagram d = diagram(a);
  CHECK(d.space.dim() == 3);
  CHECK(d.layer == std::vector<uint32_t>{0, 1, 2});
  CHECK(mat_col(d.iota, 1) == sv_unit(by_name(h, "x"), 3));
  CHECK(d.basis[1] == sv_unit(gen_mono(ap, 1), 3));
}

TEST_CASE("diagram of kC_3 over kC_3 is trivial") {
  Hopf h = group_hopf(3);
  Presentation ap;
  ap.field_order = 3;
  ap.gens.push_back({"h", 3});
  ap.init_rules();
  ap.power[0] = sv_unit(0, 3);
  SVec lh = sv_unit(gen_mono(*h.pres(), 0) * 3 + gen_mono(ap, 0), 3);
  ComoduleAlgebra a =
      ComoduleAlgebra::build(h, ap, {lh}, std::vector<uint32_t>(3, 0));
  Diagram d = diagram(a);
  CHECK(d.space.dim() == 1);
  CHECK(d.space.contains(a.unit()));
}

TEST_CASE("diagram requires a grading and a bosonization base") {
  Hopf h = taft_hopf(3);
  CHECK_THROWS_AS(diagram(k2_trivial(h)), ComoduleError);
  Hopf uq = Hopf::build(uq_lifting(3));
  ComoduleAlgebra r = regular_comodule_algebra(uq);
  CHECK_THROWS_AS(diagram(r), ComoduleError);
}

TEST_CASE("smash product reconstructs A from its diagram and degree zero part") {
  Hopf h = taft_hopf(3);

  auto reconstruct = [&](const ComoduleAlgebra& a) {
    Diagram d = diagram(a);
    BraidedData bd = braided_data_from_diagram(a, d);
    ComoduleAlgebra f = degree_zero_part(a);
    ComoduleAlgebra sm = smash_product(bd, f);
    CHECK(sm.dim() == d.space.dim() * f.dim());
    CHECK(sm.coinvariants().dim() == 1);

    Subspace a0 = a.layer_span(0);
    std::vector<SVec> cols;
    for (uint32_t i = 0; i < d.space.dim(); ++i)
      for (const SVec& fb : a0.basis()) cols.push_back(a.mul(d.basis[i], fb));
    SparseMat phi = mat_from_columns(a.dim(), cols);
    std::string why;
    bool ok = verify_comodule_iso(sm, a, phi, nullptr, &why);
    INFO(why);
    CHECK(ok);
  };

  SUBCASE("A = H") { reconstruct(regular_comodule_algebra(h)); }
  SUBCASE("A = A(3, 0)") {
    Presentation ap = a_pres(3, 3, 1, Cyc::zero(3));
    reconstruct(ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1), w_layers(ap)));
  }
}

TEST_CASE("cotensor with the trivial coideal subalgebras") {
  Hopf h = taft_hopf(3);

  SUBCASE("K = k 1, Q = H: cotensor picks out the counit kernel condition") {
    Subspace k = Subspace::from_vectors(9, 3, {h.unit()});
    QuotientCoalgebra q = quotient_coalgebra(h, k);
    CHECK(q.dim == 9);
    Triplets t;
    t.rows = q.dim;
    t.cols = 1;
    for (const Entry& e : mat_col(q.projection, 0)) t.add(e.idx, 0, e.val);
    CotensorResult c = cotensor(h, q, k, t.build(), 1);
    CHECK(c.space.dim() == 1);
    CHECK(c.space.contains(h.unit()));
  }

  SUBCASE("K = H, Q = k: cotensor is all of H") {
    Subspace k = Subspace::full(9, 3);
    QuotientCoalgebra q = quotient_coalgebra(h, k);
    CHECK(q.dim == 1);
    Triplets t;
    t.rows = 1;
    t.cols = 1;
    t.add(0, 0, Cyc::one(3));
    CotensorResult c = cotensor(h, q, k, t.build(), 1);
    CHECK(c.space.dim() == 9);
    CHECK(c.mod.bdim == 9);
  }
}

TEST_CASE("cotensor over K(2) in the Taft algebra of order 16 recovers gK") {
  Hopf h = taft_hopf(4);
  const Presentation& hp = *h.pres();

  /* K = span{ g^{2i} x^j } = <g^2, x>, dim 8 */
  std::vector<SVec> kg;
  for (uint32_t i = 0; i < 2; ++i)
    for (uint32_t j = 0; j < 4; ++j)
      kg.push_back(sv_unit(hp.mono_index({2 * i, j}), 4));
  Subspace k = Subspace::from_vectors(16, 4, kg);
  REQUIRE(check_coideal_subalgebra(h, k).ok);

  QuotientCoalgebra q = quotient_coalgebra(h, k);
  CHECK(q.dim == 2);
  CHECK(count_grouplike_basis(q) == 2);

  /* P = k v with delta(v) = gbar (x) v */
  uint32_t gidx = hp.mono_index({1, 0});
  Triplets t;
  t.rows = q.dim;
  t.cols = 1;
  for (const Entry& e : mat_col(q.projection, gidx)) t.add(e.idx, 0, e.val);
  CotensorResult c = cotensor(h, q, k, t.build(), 1);

  std::vector<SVec> gk;
  for (const SVec& kb : k.basis()) gk.push_back(h.mul(sv_unit(gidx, 4), kb));
  Subspace expected = Subspace::from_vectors(16, 4, gk);
  CHECK(c.space.dim() == 8);
  CHECK(c.space == expected);

  SUBCASE("End_K(gK) is isomorphic to gKg^{-1} = K by left multiplication") {
    EndAlgebra e = end_comodule_algebra(c.mod);
    CHECK(e.alg.dim() == 8);

    ComoduleAlgebra ka = coideal_subalgebra_comodule(h, k);
    SparseMat bw = c.space.inclusion();
    SparseMat be = mat_from_columns(8 * 8, e.basis);
    Triplets ph;
    ph.rows = 8;
    ph.cols = 8;
    for (uint32_t j = 0; j < 8; ++j) {
      std::vector<Entry> flat;
      for (uint32_t cidx = 0; cidx < 8; ++cidx) {
        SVec img = h.mul(k.basis()[j], c.space.basis()[cidx]);
        auto sol = solve(bw, img, 4);
        REQUIRE(sol.has_value());
        for (const Entry& en : sol->particular) flat.push_back({cidx * 8 + en.idx, en.val});
      }
      auto co = solve(be, sv_gather(std::move(flat)), 4);
      REQUIRE(co.has_value());
      for (const Entry& en : co->particular) ph.add(en.idx, j, en.val);
    }
    std::string why;
    bool ok = verify_comodule_iso(ka, e.alg, ph.build(), nullptr, &why);
    INFO(why);
    CHECK(ok);
  }
}

TEST_CASE("End_B(B) of the regular module is B itself") {
  Hopf h = taft_hopf(3);

  auto check_end = [&](const ComoduleAlgebra& a) {
    HopfModule p = regular_hopf_module(a);
    EndAlgebra e = end_comodule_algebra(p);
    CHECK(e.alg.dim() == a.dim());

    SparseMat be = mat_from_columns(a.dim() * a.dim(), e.basis);
    Triplets ph;
    ph.rows = a.dim();
    ph.cols = a.dim();
    for (uint32_t j = 0; j < a.dim(); ++j) {
      SparseMat lm = a.left_mult(sv_unit(j, a.field_order()));
      std::vector<Entry> flat;
      for (uint32_t col = 0; col < a.dim(); ++col)
        for (const Entry& en : mat_col(lm, col)) flat.push_back({col * a.dim() + en.idx, en.val});
      auto co = solve(be, sv_gather(std::move(flat)), a.field_order());
      REQUIRE(co.has_value());
      for (const Entry& en : co->particular) ph.add(en.idx, j, en.val);
    }
    std::string why;
    bool ok = verify_comodule_iso(a, e.alg, ph.build(), nullptr, &why);
    INFO(why);
    CHECK(ok);
  };

  SUBCASE("B = kC_3 over kC_3") {
    Hopf g3 = group_hopf(3);
    Presentation ap;
    ap.field_order = 3;
    ap.gens.push_back({"h", 3});
    ap.init_rules();
    ap.power[0] = sv_unit(0, 3);
    SVec lh = sv_unit(gen_mono(*g3.pres(), 0) * 3 + gen_mono(ap, 0), 3);
    check_end(ComoduleAlgebra::build(g3, ap, {lh}));
  }
  SUBCASE("B = A(3, 0) over the Taft algebra") {
    Presentation ap = a_pres(3, 3, 1, Cyc::zero(3));
    check_end(ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1)));
  }
}

TEST_CASE("comodule iso rejects maps that break structure") {
  Hopf h = taft_hopf(3);
  Presentation ap = a_pres(3, 3, 1, Cyc::zero(3));
  ComoduleAlgebra a = ComoduleAlgebra::build(h, ap, a_coaction_gens(h, ap, 1));
  std::string why;

  SUBCASE("identity works") {
    CHECK(verify_comodule_iso(a, a, SparseMat::identity(9, 3), nullptr, &why));
  }
  SUBCASE("a permutation that is not an algebra map fails") {
    Triplets t;
    t.rows = 9;
    t.cols = 9;
    for (uint32_t i = 0; i < 9; ++i) t.add((i + 1) % 9, i, Cyc::one(3));
    CHECK(!verify_comodule_iso(a, a, t.build(), nullptr, &why));
    CHECK(!why.empty());
  }
  SUBCASE("singular maps fail") {
    CHECK(!verify_comodule_iso(a, a, SparseMat::zero(9, 9), nullptr, &why));
    CHECK(why.find("invertible") != std::string::npos);
  }
}
