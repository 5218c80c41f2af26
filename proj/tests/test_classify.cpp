#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "hopfkit/classify.hpp"

using namespace hopfkit;

namespace {

FamilySpec mk(HopfFamily f, uint32_t n, char tag, uint32_t d) {
  FamilySpec s;
  s.hopf_family = f;
  s.n = n;
  s.list_tag = tag;
  s.d = d;
  return s;
}

std::string thrown(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::string failures(const ClassificationReport& r) {
  std::string out;
  for (const CheckResult& c : r.global_checks)
    if (!c.pass) out += c.name + ": " + c.witness + "\n";
  for (const InstanceCertificate& i : r.instances)
    for (const CheckResult& c : i.checks)
      if (!c.pass) out += i.name + " / " + c.name + ": " + c.witness + "\n";
  return out;
}

const LiftingForcing* slot_named(const std::vector<LiftingForcing>& v, const std::string& s) {
  for (const LiftingForcing& f : v)
    if (f.slot == s) return &f;
  return nullptr;
}

}  // namespace

TEST_CASE("family hosts and trivial instances") {
  auto h = build_family_hopf(HopfFamily::taft, 3);
  CHECK(h->dim() == 9);
  auto bf = builtin_hopf_family(*h);
  REQUIRE(bf);
  CHECK(bf->first == HopfFamily::taft);
  CHECK(bf->second == 3);
  CHECK(family_from_name("radford") == HopfFamily::radford);
  CHECK(!family_from_name("nonsense"));

  // k C_1 is the zero generator algebra
  ComoduleAlgebra triv = build_family_comodule(*h, mk(HopfFamily::taft, 3, 'a', 1));
  CHECK(triv.dim() == 1);
  CHECK(triv.coinvariants().dim() == 1);
  CHECK(is_right_simple(triv).simple);

  ComoduleAlgebra k3 = build_family_comodule(*h, mk(HopfFamily::taft, 3, 'a', 3));
  CHECK(k3.dim() == 3);
  CHECK(k3.coinvariants().dim() == 1);

  FamilySpec b = mk(HopfFamily::taft, 3, 'b', 1);
  b.xi = Cyc::root(3, 1);
  ComoduleAlgebra A = build_family_comodule(*h, b);
  CHECK(A.dim() == 3);
  CHECK(A.coinvariants().dim() == 1);
  CHECK(is_right_simple(A).simple);
  CHECK(h->dim() % A.dim() == 0);
}

TEST_CASE("constraint violations quote the constraint") {
  auto has = [](const std::string& msg, const std::string& needle) {
    return msg.find(needle) != std::string::npos;
  };

  CHECK(has(thrown([] { family_presentation(mk(HopfFamily::taft, 3, 'b', 2)); }), "d | n"));

  FamilySpec rc = mk(HopfFamily::radford, 2, 'c', 1);
  rc.xi = Cyc::one(4);
  CHECK(has(thrown([&] { family_presentation(rc); }), "n a = d"));

  FamilySpec uh = mk(HopfFamily::uqsl2_twisted, 3, 'h', 1);
  uh.xi = Cyc::zero(3);
  uh.mu = Cyc::zero(3);
  uh.eta = Cyc::one(3);
  CHECK(has(thrown([&] { family_presentation(uh); }), "m a = n - 2"));

  FamilySpec bg = mk(HopfFamily::book, 3, 'g', 3);
  CHECK(has(thrown([&] { family_presentation(bg); }), "eta != 0"));

  FamilySpec bd = mk(HopfFamily::book, 3, 'd', 1);
  bd.mu = Cyc::zero(3);
  CHECK(has(thrown([&] { family_presentation(bd); }), "mu != 0"));

  FamilySpec be = mk(HopfFamily::book, 3, 'e', 1);
  be.mu = Cyc::one(3);
  CHECK(has(thrown([&] { family_presentation(be); }), "n even"));

  FamilySpec uf = mk(HopfFamily::uqsl2_twisted, 3, 'f', 1);
  uf.mu = Cyc::one(3);
  CHECK(has(thrown([&] { family_presentation(uf); }), "n = 4m"));

  CHECK(has(thrown([] { family_presentation(mk(HopfFamily::bosonization_qls, 3, 'h', 3)); }),
            "no entry (h)"));

  FamilySpec ta = mk(HopfFamily::taft, 3, 'b', 1);
  ta.a = 1;
  CHECK(has(thrown([&] { family_presentation(ta); }), "not a parameter"));

  CHECK_THROWS_AS(family_presentation(mk(HopfFamily::book, 2, 'a', 1)), UnsupportedError);
  CHECK_THROWS_AS(verify_classification(HopfFamily::book, 2), UnsupportedError);
}

TEST_CASE("uq (f) at n = 4 exists on the presentation level") {
  FamilySpec s = mk(HopfFamily::uqsl2_twisted, 4, 'f', 4);
  s.mu = Cyc::one(4);
  FamilyPresentation fp = family_presentation(s);
  CHECK(fp.algebra.gens.size() == 2);
  CHECK(fp.algebra.gens[0].bound == 4);
  CHECK(fp.algebra.gens[1].bound == 4);
  CHECK(fp.algebra.dim() == 16);
  CHECK(fp.coaction.size() == 2);
}

TEST_CASE("taft(3) classification report") {
  ClassificationReport r = verify_classification(HopfFamily::taft, 3);
  INFO(failures(r));
  CHECK(r.ok);
  CHECK(r.hopf_error.empty());
  CHECK(r.instances.size() == 8);

  bool saw_full = false;
  for (const InstanceCertificate& c : r.instances) {
    CHECK(c.ok);
    if (c.spec.list_tag != 'b' || c.spec.d != 3) continue;
    saw_full = true;
    REQUIRE(c.fingerprint);
    CHECK(c.fingerprint->dim == 9);
    CHECK(c.fingerprint->loewy == std::vector<uint32_t>{3, 6, 9});
    CHECK(c.fingerprint->group_order == 3);
    CHECK(c.fingerprint->hilbert == std::vector<uint32_t>{1, 1, 1});
    CHECK(c.fingerprint->iota == std::vector<std::string>{"x"});
    CHECK(c.fingerprint->params_known);
    REQUIRE(c.fingerprint->params.size() == 1);
  }
  CHECK(saw_full);
}

TEST_CASE("lifting forcing closed forms") {
  auto t3 = build_family_hopf(HopfFamily::taft, 3);
  auto tf = lifting_forcing(*t3, HopfFamily::taft, 3);
  REQUIRE(tf.size() == 1);
  CHECK(tf[0].slot == "w^3");
  CHECK(tf[0].agrees);
  CHECK(tf[0].solution.consistent);
  CHECK(tf[0].solution.base.empty());
  REQUIRE(tf[0].solution.free_dirs.rows == 1);
  CHECK(tf[0].solution.free_dirs.row[0] == sv_unit(0, 3));

  auto r2 = build_family_hopf(HopfFamily::radford, 2);
  for (uint32_t d : {1u, 2u, 4u}) {
    auto rf = lifting_forcing(*r2, HopfFamily::radford, d);
    REQUIRE(rf.size() == 1);
    INFO("radford d = " << d);
    CHECK(rf[0].agrees);
    CHECK(rf[0].solution.base == sv_unit(0, 4));
    if (d % 2 == 0) {
      REQUIRE(rf[0].solution.free_dirs.rows == 1);
      CHECK(rf[0].solution.free_dirs.row[0] == sv_unit(d / 2, 4));
    } else {
      CHECK(rf[0].solution.free_dirs.rows == 0);
    }
  }

  auto b3 = build_family_hopf(HopfFamily::book, 3);
  for (uint32_t d : {1u, 3u}) {
    auto bf = lifting_forcing(*b3, HopfFamily::book, d);
    REQUIRE(bf.size() == 3);
    for (const LiftingForcing& f : bf) {
      INFO("book d = " << d << " slot " << f.slot);
      CHECK(f.agrees);
    }
    const LiftingForcing* zw = slot_named(bf, "zw");
    REQUIRE(zw);
    CHECK(zw->solution.base.empty());
    if (d == 3) {
      REQUIRE(zw->solution.free_dirs.rows == 1);
      CHECK(zw->solution.free_dirs.row[0] == sv_unit(1, 3));
    } else {
      CHECK(zw->solution.free_dirs.rows == 0);
    }
  }

  auto b4 = build_family_hopf(HopfFamily::book, 4);
  for (uint32_t d : {1u, 2u, 4u}) {
    auto bf = lifting_forcing(*b4, HopfFamily::book, d);
    const LiftingForcing* zw = slot_named(bf, "zw");
    REQUIRE(zw);
    INFO("book n=4 d = " << d);
    CHECK(zw->agrees);
    // m = n/d; a free direction h^{(n-2)/m} exists iff m | n-2
    uint32_t m = 4 / d;
    CHECK(zw->solution.free_dirs.rows == (2 % m == 0 ? 1u : 0u));
  }

  auto u3 = build_family_hopf(HopfFamily::uqsl2_twisted, 3);
  for (uint32_t d : {1u, 3u}) {
    auto uf = lifting_forcing(*u3, HopfFamily::uqsl2_twisted, d);
    REQUIRE(uf.size() == 3);
    for (const LiftingForcing& f : uf) {
      INFO("uq d = " << d << " slot " << f.slot);
      CHECK(f.agrees);
    }
    const LiftingForcing* zw = slot_named(uf, "zw");
    REQUIRE(zw);
    CHECK(zw->solution.base == sv_unit(0, 3));
    CHECK(zw->solution.free_dirs.rows == (d == 3 ? 1u : 0u));
    if (d == 3) CHECK(zw->solution.free_dirs.row[0] == sv_unit(1, 3));
  }

  // an unsatisfiable pattern is reported as inconsistent
  {
    ComoduleAlgebra a0 = build_family_comodule(*t3, mk(HopfFamily::taft, 3, 'a', 3));
    CentralPattern bad;
    bad.ghost = 0;
    std::vector<uint32_t> e(t3->pres()->gens.size(), 0);
    e[1] = 1;
    bad.pattern = sv_kron(sv_unit(t3->pres()->mono_index(e), 3), a0.unit(), a0.dim());
    CHECK(!lifting_solve_central(a0, bad).consistent);
  }

  CHECK_THROWS_AS(lifting_forcing(*t3, HopfFamily::bosonization_qls, 1), ClassifyError);
}

TEST_CASE("degree one generation") {
  DegreeOneReport r = check_degree_one_generation(3, Cyc::one(3), Cyc::one(3), 2);
  CHECK(r.verdict);
  CHECK(r.coefficient_match);
  CHECK(r.space.dim() == 1);

  for (uint32_t m = 1; m < 3; ++m) {
    DegreeOneReport s = check_degree_one_generation(3, Cyc::one(3), Cyc::zero(3), m);
    CHECK(s.verdict);
    CHECK(s.generator_power == sv_unit(0, 3));
    DegreeOneReport t = check_degree_one_generation(3, Cyc::zero(3), Cyc::one(3), m);
    CHECK(t.verdict);
    CHECK(t.generator_power == sv_unit(m, 3));
  }

  DegreeOneReport t = check_degree_one_generation(5, Cyc::one(5), Cyc::root(5, 1), 3);
  CHECK(t.verdict);
  CHECK(t.coefficient_match);

  for (uint32_t n : {3u, 4u, 5u}) {
    auto h = build_family_hopf(HopfFamily::book, n);
    const Cyc q = Cyc::root(n, 1);
    std::vector<std::pair<Cyc, Cyc>> pts = {
        {Cyc::one(n), Cyc::zero(n)},
        {Cyc::zero(n), Cyc::one(n)},
        {Cyc::one(n), Cyc::one(n)},
        {Cyc::one(n), q},
    };
    for (uint32_t m = 1; m < n; ++m)
      for (const auto& [a, b] : pts) {
        DegreeOneReport rep = check_degree_one_generation(*h, a, b, m);
        INFO("n=" << n << " m=" << m << " a=" << a.str() << " b=" << b.str());
        CHECK(rep.verdict);
        CHECK(rep.coefficient_match);
      }
  }

  CHECK_THROWS_AS(check_degree_one_generation(3, Cyc::zero(3), Cyc::zero(3), 1), ClassifyError);
  CHECK_THROWS_AS(check_degree_one_generation(3, Cyc::one(3), Cyc::one(3), 3), ClassifyError);
}

TEST_CASE("radford(2) classification and the omega orbit") {
  ClassificationReport r = verify_classification(HopfFamily::radford, 2);
  INFO(failures(r));
  CHECK(r.ok);
  CHECK(r.instances.size() == 10);

  const InstanceCertificate* b1 = nullptr;
  const InstanceCertificate* bm1 = nullptr;
  for (const InstanceCertificate& c : r.instances) {
    if (c.spec.list_tag != 'c' || c.spec.d != 2) continue;
    if (c.spec.xi->is_one())
      b1 = &c;
    else
      bm1 = &c;
  }
  REQUIRE(b1);
  REQUIRE(bm1);
  REQUIRE(b1->fingerprint);
  REQUIRE(bm1->fingerprint);
  CHECK(*b1->fingerprint == *bm1->fingerprint);

  // the identification is h -> -h, w -> w; verified as an explicit matrix
  auto H = build_family_hopf(HopfFamily::radford, 2);
  FamilySpec s1 = mk(HopfFamily::radford, 2, 'c', 2);
  s1.xi = Cyc::one(4);
  FamilySpec s2 = s1;
  s2.xi = Cyc::integer(-1, 4);
  ComoduleAlgebra A1 = build_family_comodule(*H, s1);
  ComoduleAlgebra A2 = build_family_comodule(*H, s2);
  Triplets t;
  t.rows = A2.dim();
  t.cols = A1.dim();
  for (uint32_t i = 0; i < A1.dim(); ++i) {
    uint32_t he = A1.pres()->exponents(i)[0];
    t.add(i, i, he % 2 ? Cyc::integer(-1, 4) : Cyc::one(4));
  }
  std::string why;
  CHECK(verify_comodule_iso(A1, A2, t.build(), nullptr, &why));
  INFO(why);
}

TEST_CASE("uq lifting reports") {
  ClassificationReport r3 = verify_classification(HopfFamily::uqsl2_twisted, 3);
  INFO(failures(r3));
  CHECK(r3.ok);
  CHECK(r3.hopf_error.empty());
  CHECK(r3.instances.size() == 56);
  bool has_c = false;
  for (const InstanceCertificate& c : r3.instances)
    if (c.spec.list_tag == 'h') {
      has_c = true;
      CHECK(c.spec.d == 3);
      CHECK(c.spec.a == 1u);
    }
  CHECK(has_c);

  ClassificationReport r4 = verify_classification(HopfFamily::uqsl2_twisted, 4);
  CHECK(!r4.ok);
  CHECK(!r4.hopf_error.empty());
  CHECK(r4.instances.empty());
}

TEST_CASE("graded qls report") {
  ClassificationReport r = verify_classification(HopfFamily::bosonization_qls, 3);
  INFO(failures(r));
  CHECK(r.ok);
}

TEST_CASE("book(3) classification and the eta orbit") {
  ClassificationReport r = verify_classification(HopfFamily::book, 3);
  INFO(failures(r));
  CHECK(r.ok);

  const InstanceCertificate* e1 = nullptr;
  const InstanceCertificate* eq = nullptr;
  for (const InstanceCertificate& c : r.instances) {
    if (c.spec.list_tag != 'g') continue;
    if (!c.spec.xi->is_zero() || !c.spec.mu->is_zero()) continue;
    if (c.spec.eta->is_one())
      e1 = &c;
    else
      eq = &c;
  }
  REQUIRE(e1);
  REQUIRE(eq);
  REQUIRE(e1->fingerprint);
  REQUIRE(eq->fingerprint);
  CHECK(*e1->fingerprint == *eq->fingerprint);

  // explicit identification h -> omega h with omega = eta'/eta
  auto H = build_family_hopf(HopfFamily::book, 3);
  ComoduleAlgebra A1 = build_family_comodule(*H, e1->spec);
  ComoduleAlgebra Aq = build_family_comodule(*H, eq->spec);
  const Cyc omega = *eq->spec.eta;
  Triplets t;
  t.rows = Aq.dim();
  t.cols = A1.dim();
  for (uint32_t i = 0; i < A1.dim(); ++i)
    t.add(i, i, omega.pow((long)A1.pres()->exponents(i)[0]));
  std::string why;
  CHECK(verify_comodule_iso(A1, Aq, t.build(), nullptr, &why));
  INFO(why);
}

TEST_CASE("public comodule invariants") {
  Hopf h = Hopf::build(group_algebra(4), std::vector<uint32_t>(4, 0));
  Presentation p;
  p.field_order = 4;
  p.name = "kC_2";
  p.gens.push_back({"h", 2});
  p.init_rules();
  p.power[0] = sv_unit(0, 4);
  std::vector<SVec> co = {sv_unit(2 * 2 + 1, 4)};  // g^2 (x) h
  ComoduleAlgebra A = ComoduleAlgebra::build(h, p, co, std::vector<uint32_t>{0, 0});
  Fingerprint fp = comodule_invariants(A);
  CHECK(fp.dim == 2);
  CHECK(fp.loewy == std::vector<uint32_t>{2});
  CHECK(fp.group_order == 2);
  CHECK(fp.hilbert == std::vector<uint32_t>{1});
  CHECK(fp.iota.empty());
  CHECK(fp.params_known);
  CHECK(fp.params.empty());

  // a lifted instance goes through the graded transport
  FamilySpec s = mk(HopfFamily::taft, 3, 'b', 3);
  s.xi = Cyc::one(3);
  BuiltInstance bi = build_family(s);
  Fingerprint fp2 = comodule_invariants(*bi.comodule);
  CHECK(fp2.dim == 9);
  CHECK(fp2.hilbert == std::vector<uint32_t>{1, 1, 1});
  CHECK(fp2.iota == std::vector<std::string>{"x"});
  CHECK(fp2.params_known);
}

TEST_CASE("report json is deterministic") {
  ClassificationReport r1 = verify_classification(HopfFamily::taft, 2);
  ClassificationReport r2 = verify_classification(HopfFamily::taft, 2);
  INFO(failures(r1));
  CHECK(r1.ok);
  std::string j1 = report_json(r1);
  CHECK(j1 == report_json(r2));
  CHECK(j1.find("\"family\":\"taft\"") != std::string::npos);
  CHECK(j1.find("\"fingerprint\"") != std::string::npos);
}
