#include "hopfkit/twist.hpp"

#include <atomic>

namespace hopfkit {

namespace {

std::optional<uint32_t> group_monomial_exp(const Presentation& p, uint32_t idx) {
  std::vector<uint32_t> e = p.exponents(idx);
  for (size_t j = 1; j < e.size(); ++j)
    if (e[j] != 0) return std::nullopt;
  return e[0];
}

std::vector<Cyc> dense_form(const SparseMat& form, uint32_t n, uint32_t N) {
  return sv_to_dense(form.row[0], n * n, N);
}

std::string triple_str(const Hopf& h, uint32_t a, uint32_t b, uint32_t c) {
  return "(" + h.basis_name(a) + ", " + h.basis_name(b) + ", " + h.basis_name(c) + ")";
}

/* convolution inverse of a functional given by its basis values; nullopt when
 * not invertible; the left and right solves must agree */
std::optional<std::vector<Cyc>> functional_inverse(const Hopf& h, const std::vector<Cyc>& f) {
  const uint32_t n = h.dim(), N = h.field_order();
  Triplets l, r;
  l.rows = l.cols = r.rows = r.cols = n;
  std::vector<Entry> rhs_items;
  for (uint32_t c = 0; c < n; ++c) {
    for (const Entry& e : h.coprod_basis(c)) {
      uint32_t c1 = e.idx / n, c2 = e.idx % n;
      l.add(c, c2, e.val * f[c1]);
      r.add(c, c1, e.val * f[c2]);
    }
    Cyc eps = h.counit_basis(c);
    if (!eps.is_zero()) rhs_items.push_back({c, eps});
  }
  SVec rhs = sv_gather(std::move(rhs_items));
  auto sl = solve(l.build(), rhs, N);
  auto sr = solve(r.build(), rhs, N);
  if (!sl || !sr || sl->homogeneous.rows != 0 || sr->homogeneous.rows != 0)
    return std::nullopt;
  if (!(sl->particular == sr->particular)) return std::nullopt;
  return sv_to_dense(sl->particular, n, N);
}

}  // namespace

Cyc Cocycle::eval(uint32_t a, uint32_t b) const {
  return sv_get(form_.row[0], a * hopf_->dim() + b, hopf_->field_order());
}

Cyc Cocycle::eval_inv(uint32_t a, uint32_t b) const {
  return sv_get(inv_.row[0], a * hopf_->dim() + b, hopf_->field_order());
}

Cyc Cocycle::eval(const SVec& x, const SVec& y) const {
  Cyc acc = Cyc::zero(hopf_->field_order());
  for (const Entry& ex : x)
    for (const Entry& ey : y) acc += ex.val * ey.val * eval(ex.idx, ey.idx);
  return acc;
}

Cocycle Cocycle::verify(const Hopf& h, const SparseMat& form) {
  const uint32_t n = h.dim(), N = h.field_order();
  if (form.rows != 1 || form.cols != n * n)
    throw TwistError("cocycle form must be a 1 x dim^2 matrix");
  std::vector<Cyc> sig = dense_form(form, n, N);

  /* unitality: sigma(x, 1) = eps(x) = sigma(1, x) */
  for (uint32_t a = 0; a < n; ++a) {
    Cyc su = Cyc::zero(N), us = Cyc::zero(N);
    for (const Entry& e : h.unit()) {
      su += e.val * sig[(size_t)a * n + e.idx];
      us += e.val * sig[(size_t)e.idx * n + a];
    }
    if (su != h.counit_basis(a))
      throw TwistError("cocycle is not unital: sigma(" + h.basis_name(a) +
                       ", 1) != eps(" + h.basis_name(a) + ")");
    if (us != h.counit_basis(a))
      throw TwistError("cocycle is not unital: sigma(1, " + h.basis_name(a) +
                       ") != eps(" + h.basis_name(a) + ")");
  }

  /* sigma(x1, y1) sigma(x2 y2, z) = sigma(y1, z1) sigma(x, y2 z2) */
  std::atomic<uint64_t> worst{UINT64_MAX};
#pragma omp parallel for schedule(dynamic, 1)
  for (uint32_t x = 0; x < n; ++x) {
    for (uint32_t y = 0; y < n; ++y)
      for (uint32_t z = 0; z < n; ++z) {
        Cyc lhs = Cyc::zero(N), rhs = Cyc::zero(N);
        for (const Entry& ex : h.coprod_basis(x))
          for (const Entry& ey : h.coprod_basis(y)) {
            Cyc c = ex.val * ey.val * sig[(size_t)(ex.idx / n) * n + ey.idx / n];
            if (c.is_zero()) continue;
            for (const Entry& em : h.mul_basis(ex.idx % n, ey.idx % n))
              lhs += c * em.val * sig[(size_t)em.idx * n + z];
          }
        for (const Entry& ey : h.coprod_basis(y))
          for (const Entry& ez : h.coprod_basis(z)) {
            Cyc c = ey.val * ez.val * sig[(size_t)(ey.idx / n) * n + ez.idx / n];
            if (c.is_zero()) continue;
            for (const Entry& em : h.mul_basis(ey.idx % n, ez.idx % n))
              rhs += c * em.val * sig[(size_t)x * n + em.idx];
          }
        if (lhs != rhs) {
          uint64_t flat = ((uint64_t)x * n + y) * n + z;
          uint64_t cur = worst.load();
          while (flat < cur && !worst.compare_exchange_weak(cur, flat)) {
          }
        }
      }
  }
  if (worst.load() != UINT64_MAX) {
    uint32_t z = (uint32_t)(worst.load() % n), y = (uint32_t)(worst.load() / n % n);
    uint32_t x = (uint32_t)(worst.load() / n / n);
    throw TwistError("cocycle identity fails at " + triple_str(h, x, y, z));
  }

  /* two-sided convolution inverse on H (x) H by linear solves */
  Triplets l, r;
  l.rows = r.rows = n * n;
  l.cols = r.cols = n * n;
  std::vector<Entry> rhs_items;
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      for (const Entry& ea : h.coprod_basis(a))
        for (const Entry& eb : h.coprod_basis(b)) {
          uint32_t a1 = ea.idx / n, a2 = ea.idx % n;
          uint32_t b1 = eb.idx / n, b2 = eb.idx % n;
          Cyc c = ea.val * eb.val;
          l.add(a * n + b, a2 * n + b2, c * sig[(size_t)a1 * n + b1]);
          r.add(a * n + b, a1 * n + b1, c * sig[(size_t)a2 * n + b2]);
        }
      Cyc eps = h.counit_basis(a) * h.counit_basis(b);
      if (!eps.is_zero()) rhs_items.push_back({a * n + b, eps});
    }
  SVec rhs = sv_gather(std::move(rhs_items));
  auto sl = solve(l.build(), rhs, N);
  auto sr = solve(r.build(), rhs, N);
  if (!sl || !sr || sl->homogeneous.rows != 0 || sr->homogeneous.rows != 0)
    throw TwistError("cocycle is not convolution invertible");
  if (!(sl->particular == sr->particular))
    throw TwistError("left and right convolution inverses differ");

  Cocycle out;
  out.hopf_ = &h;
  out.form_ = form;
  out.inv_ = SparseMat::zero(1, n * n);
  out.inv_.row[0] = sl->particular;
  return out;
}

SparseMat trivial_form(const Hopf& h) {
  const uint32_t n = h.dim();
  Triplets t;
  t.rows = 1;
  t.cols = n * n;
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      t.add(0, a * n + b, h.counit_basis(a) * h.counit_basis(b));
  return t.build();
}

Cocycle trivial_cocycle(const Hopf& h) { return Cocycle::verify(h, trivial_form(h)); }

SparseMat bicharacter_form(const Hopf& h, const Cyc& zeta) {
  if (!h.pres()) throw TwistError("bicharacter form needs a presented Hopf algebra");
  const Presentation& p = *h.pres();
  const uint32_t n = h.dim();
  if (!zeta.pow((long)p.gens[0].bound).is_one())
    throw TwistError("bicharacter parameter must have order dividing the group order");
  std::vector<std::optional<uint32_t>> gexp(n);
  for (uint32_t i = 0; i < n; ++i) gexp[i] = group_monomial_exp(p, i);
  Triplets t;
  t.rows = 1;
  t.cols = n * n;
  for (uint32_t a = 0; a < n; ++a) {
    if (!gexp[a]) continue;
    for (uint32_t b = 0; b < n; ++b)
      if (gexp[b]) t.add(0, a * n + b, zeta.pow((long)*gexp[a] * (long)*gexp[b]));
  }
  return t.build();
}

SparseMat coboundary_form(const Hopf& h, const SVec& f) {
  const uint32_t n = h.dim(), N = h.field_order();
  std::vector<Cyc> fv = sv_to_dense(f, n, N);
  Cyc f1 = Cyc::zero(N);
  for (const Entry& e : h.unit()) f1 += e.val * fv[e.idx];
  if (!f1.is_one()) throw TwistError("coboundary functional must satisfy f(1) = 1");
  auto finv = functional_inverse(h, fv);
  if (!finv) throw TwistError("coboundary functional is not convolution invertible");

  Triplets t;
  t.rows = 1;
  t.cols = n * n;
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      Cyc acc = Cyc::zero(N);
      for (const Entry& ea : h.coprod_basis(a))
        for (const Entry& eb : h.coprod_basis(b)) {
          Cyc c = ea.val * eb.val * fv[ea.idx / n] * fv[eb.idx / n];
          if (c.is_zero()) continue;
          for (const Entry& em : h.mul_basis(ea.idx % n, eb.idx % n))
            acc += c * em.val * (*finv)[em.idx];
        }
      t.add(0, a * n + b, acc);
    }
  return t.build();
}

bool is_cocentral(const Cocycle& c) {
  const Hopf& h = c.hopf();
  const uint32_t n = h.dim(), N = h.field_order();
  std::vector<Cyc> sig = dense_form(c.form(), n, N);
  DenseAccum la, ra;
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      la.init(n);
      ra.init(n);
      for (const Entry& ea : h.coprod_basis(a))
        for (const Entry& eb : h.coprod_basis(b)) {
          uint32_t a1 = ea.idx / n, a2 = ea.idx % n;
          uint32_t b1 = eb.idx / n, b2 = eb.idx % n;
          Cyc v = ea.val * eb.val;
          la.add_scaled(v * sig[(size_t)a1 * n + b1], h.mul_basis(a2, b2));
          ra.add_scaled(v * sig[(size_t)a2 * n + b2], h.mul_basis(a1, b1));
        }
      if (!(la.take() == ra.take())) return false;
    }
  return true;
}

Hopf twisted_hopf(const Cocycle& c) {
  const Hopf& h = c.hopf();
  const uint32_t n = h.dim(), N = h.field_order();
  std::vector<Cyc> sig = dense_form(c.form(), n, N);
  std::vector<Cyc> tau = dense_form(c.inverse_form(), n, N);

  struct Leg3 {
    uint32_t i, j, k;
    Cyc v;
  };
  std::vector<std::vector<Leg3>> d2(n);
  for (uint32_t a = 0; a < n; ++a)
    for (const Entry& e : h.coprod_basis(a)) {
      uint32_t a12 = e.idx / n, a3 = e.idx % n;
      for (const Entry& e2 : h.coprod_basis(a12))
        d2[a].push_back({e2.idx / n, e2.idx % n, a3, e.val * e2.val});
    }

  std::vector<SVec> mt((size_t)n * n);
  DenseAccum acc;
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      acc.init(n);
      for (const Leg3& la : d2[a])
        for (const Leg3& lb : d2[b]) {
          Cyc v = la.v * lb.v * sig[(size_t)la.i * n + lb.i] * tau[(size_t)la.k * n + lb.k];
          if (v.is_zero()) continue;
          acc.add_scaled(v, h.mul_basis(la.j, lb.j));
        }
      mt[(size_t)a * n + b] = acc.take();
    }

  std::vector<SVec> coprod(n);
  std::vector<Cyc> counit;
  std::vector<std::string> names;
  for (uint32_t i = 0; i < n; ++i) {
    coprod[i] = h.coprod_basis(i);
    counit.push_back(h.counit_basis(i));
    names.push_back(h.basis_name(i));
  }
  return Hopf::from_tables(N, n, std::move(mt), h.unit(), std::move(coprod),
                           std::move(counit), std::move(names), std::nullopt);
}

ComoduleAlgebra twist_comodule_algebra(const ComoduleAlgebra& k, const Cocycle& c,
                                       const Hopf& h_sigma) {
  const Hopf& h = c.hopf();
  if (&k.hopf() != &h)
    throw TwistError("comodule algebra is not over the Hopf algebra of the cocycle");
  const uint32_t n = h.dim(), N = h.field_order(), d = k.dim();
  if (h_sigma.dim() != n || h_sigma.field_order() != N)
    throw TwistError("twisted base does not share the coalgebra of H");
  for (uint32_t i = 0; i < n; ++i)
    if (!(h_sigma.coprod_basis(i) == h.coprod_basis(i)) ||
        h_sigma.counit_basis(i) != h.counit_basis(i))
      throw TwistError("twisted base does not share the coalgebra of H");

  std::vector<Cyc> sig = dense_form(c.form(), n, N);
  std::vector<SVec> mt((size_t)d * d), coact(d);
  std::vector<std::string> names(d);
  DenseAccum acc;
  for (uint32_t a = 0; a < d; ++a)
    for (uint32_t b = 0; b < d; ++b) {
      acc.init(d);
      for (const Entry& ea : k.coaction_basis(a))
        for (const Entry& eb : k.coaction_basis(b)) {
          Cyc v = ea.val * eb.val * sig[(size_t)(ea.idx / d) * n + eb.idx / d];
          if (v.is_zero()) continue;
          acc.add_scaled(v, k.mul_basis(ea.idx % d, eb.idx % d));
        }
      mt[(size_t)a * d + b] = acc.take();
    }
  for (uint32_t i = 0; i < d; ++i) {
    coact[i] = k.coaction_basis(i);
    names[i] = k.basis_name(i);
  }
  return ComoduleAlgebra::from_tables(h_sigma, d, std::move(mt), k.unit(),
                                      std::move(coact), std::move(names));
}

ComoduleAlgebra twist_left(const Hopf& h, const Subspace& k, const Cocycle& c) {
  if (&c.hopf() != &h) throw TwistError("cocycle is not over this Hopf algebra");
  CoidealCheck ck = check_coideal_subalgebra(h, k);
  if (!ck.ok) throw TwistError("not a coideal subalgebra: " + ck.certificate);
  const uint32_t n = h.dim(), N = h.field_order(), d = k.dim();
  std::vector<Cyc> sig = dense_form(c.form(), n, N);
  SparseMat bk = k.inclusion();
  auto coords = [&](const SVec& v, const char* what) {
    auto s = solve(bk, v, N);
    if (!s) throw TwistError(std::string(what) + ": vector leaves K");
    return s->particular;
  };

  std::vector<SVec> mt((size_t)d * d), coact(d);
  std::vector<SVec> dk(d);
  for (uint32_t i = 0; i < d; ++i) dk[i] = h.coprod(k.basis()[i]);
  DenseAccum acc;
  for (uint32_t a = 0; a < d; ++a)
    for (uint32_t b = 0; b < d; ++b) {
      acc.init(n);
      for (const Entry& ea : dk[a])
        for (const Entry& eb : dk[b]) {
          Cyc v = ea.val * eb.val * sig[(size_t)(ea.idx % n) * n + eb.idx % n];
          if (v.is_zero()) continue;
          acc.add_scaled(v, h.mul_basis(ea.idx / n, eb.idx / n));
        }
      SVec t = acc.take();
      if (!k.contains(t))
        throw TwistError("cocycle is not compatible with K at (" +
                         h.vec_str(k.basis()[a]) + ", " + h.vec_str(k.basis()[b]) + ")");
      mt[(size_t)a * d + b] = coords(t, "twisted product");
    }
  for (uint32_t i = 0; i < d; ++i) {
    std::vector<Entry> items;
    for (uint32_t hh = 0; hh < n; ++hh) {
      std::vector<Entry> second;
      for (const Entry& e : dk[i])
        if (e.idx / n == hh) second.push_back({e.idx % n, e.val});
      if (second.empty()) continue;
      SVec sc = coords(sv_gather(std::move(second)), "twisted coaction");
      for (const Entry& e : sc) items.push_back({hh * d + e.idx, e.val});
    }
    coact[i] = sv_gather(std::move(items));
  }
  std::vector<std::string> names(d);
  for (uint32_t i = 0; i < d; ++i) names[i] = h.vec_str(k.basis()[i]);
  ComoduleAlgebra out = ComoduleAlgebra::from_tables(
      h, d, std::move(mt), coords(h.unit(), "twisted unit"), std::move(coact),
      std::move(names));

  /* cocentral cocycles are compatible with every K and _sigma K = K_sigma */
  if (is_cocentral(c)) {
    ComoduleAlgebra ks = twist_comodule_algebra(coideal_subalgebra_comodule(h, k), c, h);
    for (uint32_t a = 0; a < d; ++a)
      for (uint32_t b = 0; b < d; ++b)
        if (!(out.mul_basis(a, b) == ks.mul_basis(a, b)))
          throw TwistError("cocentral twist mismatch between _sigma K and K_sigma at (" +
                           out.basis_name(a) + ", " + out.basis_name(b) + ")");
  }
  return out;
}

ComoduleAlgebra twist_left(const Hopf& h, const Cocycle& c) {
  return twist_left(h, Subspace::full(h.dim(), h.field_order()), c);
}

}  // namespace hopfkit
