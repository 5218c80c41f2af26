#include "hopfkit/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace hopfkit {

namespace {

uint64_t upow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// component j (from the left) of a length-s base-d tuple index
uint32_t digit(uint64_t flat, uint32_t j, uint32_t s, uint32_t d) {
  return (uint32_t)(flat / upow(d, s - 1 - j) % d);
}

void copy_block(Triplets& t, const SparseMat& m, uint32_t ro, uint32_t co,
                bool neg = false) {
  for (uint32_t r = 0; r < m.rows; ++r)
    for (const Entry& e : m.row[r]) t.add(r + ro, e.idx + co, neg ? -e.val : e.val);
}

/* A cochain f in Hom(X, Y) is a coordinate vector with f(e_x)_y at
 * x * dim_Y + y. The builders below turn the maps f -> f.m, f -> n.f,
 * f -> n.(id_W (x) f), f -> n.(f (x) id_W), f -> (id_W (x) f).d and
 * f -> (f (x) id_W).d into sparse matrices on such coordinates. */

SparseMat pre_op(const SparseMat& m, uint32_t dy, uint32_t N) {
  return mat_kron(mat_transpose(m), SparseMat::identity(dy, N));
}

SparseMat post_op(uint32_t dx, const SparseMat& n, uint32_t N) {
  return mat_kron(SparseMat::identity(dx, N), n);
}

SparseMat wrap_left_op(const SparseMat& n, uint32_t dw, uint32_t dx, uint32_t dy) {
  Triplets t;
  t.rows = dw * dx * n.rows;
  t.cols = dx * dy;
  for (uint32_t i = 0; i < n.rows; ++i)
    for (const Entry& e : n.row[i]) {
      uint32_t w = e.idx / dy, z = e.idx % dy;
      for (uint32_t x = 0; x < dx; ++x)
        t.add((w * dx + x) * n.rows + i, x * dy + z, e.val);
    }
  return t.build();
}

SparseMat wrap_right_op(const SparseMat& n, uint32_t dx, uint32_t dy, uint32_t dw) {
  Triplets t;
  t.rows = dx * dw * n.rows;
  t.cols = dx * dy;
  for (uint32_t i = 0; i < n.rows; ++i)
    for (const Entry& e : n.row[i]) {
      uint32_t z = e.idx / dw, w = e.idx % dw;
      for (uint32_t x = 0; x < dx; ++x)
        t.add((x * dw + w) * n.rows + i, x * dy + z, e.val);
    }
  return t.build();
}

SparseMat pull_left_op(const SparseMat& d, uint32_t dw, uint32_t dx, uint32_t dy) {
  Triplets t;
  t.rows = d.cols * dw * dy;
  t.cols = dx * dy;
  for (uint32_t r = 0; r < d.rows; ++r) {
    uint32_t w = r / dx, x = r % dx;
    for (const Entry& e : d.row[r])
      for (uint32_t i = 0; i < dy; ++i)
        t.add(e.idx * (dw * dy) + w * dy + i, x * dy + i, e.val);
  }
  return t.build();
}

SparseMat pull_right_op(const SparseMat& d, uint32_t dx, uint32_t dy, uint32_t dw) {
  Triplets t;
  t.rows = d.cols * dy * dw;
  t.cols = dx * dy;
  for (uint32_t r = 0; r < d.rows; ++r) {
    uint32_t x = r / dw, w = r % dw;
    for (const Entry& e : d.row[r])
      for (uint32_t i = 0; i < dy; ++i)
        t.add(e.idx * (dy * dw) + i * dw + w, x * dy + i, e.val);
  }
  return t.build();
}

// f: H^p -> H^q to (f (x) id_A).lam2 for lam2: A^p -> H^p (x) A
SparseMat cross_op(const SparseMat& lam2, uint32_t dyh, uint32_t da) {
  Triplets t;
  t.rows = lam2.cols * dyh * da;
  t.cols = (lam2.rows / da) * dyh;
  for (uint32_t r = 0; r < lam2.rows; ++r) {
    uint32_t y = r / da, c = r % da;
    for (const Entry& e : lam2.row[r])
      for (uint32_t i = 0; i < dyh; ++i)
        t.add(e.idx * (dyh * da) + i * da + c, y * dyh + i, e.val);
  }
  return t.build();
}

SparseMat acc_signed(const SparseMat& acc, const SparseMat& term, bool minus) {
  return minus ? mat_sub(acc, term) : mat_add(acc, term);
}

struct Ctx {
  const ComoduleAlgebra& a;
  const Hopf& h;
  uint32_t da, dh, N;
  SparseMat amult, hmult, hcop, acoact;

  explicit Ctx(const ComoduleAlgebra& a_in)
      : a(a_in),
        h(a_in.hopf()),
        da(a_in.dim()),
        dh(a_in.hopf().dim()),
        N(a_in.field_order()) {
    Triplets t;
    t.rows = da;
    t.cols = da * da;
    for (uint32_t i = 0; i < da; ++i)
      for (uint32_t j = 0; j < da; ++j)
        for (const Entry& e : a.mul_basis(i, j)) t.add(e.idx, i * da + j, e.val);
    amult = t.build();
    hmult = h.mult_matrix();
    hcop = h.coprod_matrix();
    acoact = a.coaction_matrix();
  }

  uint64_t pa(uint32_t e) const { return upow(da, e); }
  uint64_t ph(uint32_t e) const { return upow(dh, e); }

  // full Hom dimension of C^{p,q}(A); the Der(A) cut at (1,0) is applied by
  // the panel assembly
  uint32_t dim_ca(uint32_t p, uint32_t q) const {
    return p == 0 ? 0 : (uint32_t)(pa(p) * ph(q) * da);
  }
  uint32_t dim_ch(uint32_t p, uint32_t q) const {
    return (p >= 1 && q >= 1) ? (uint32_t)(ph(p) * ph(q)) : 0;
  }

  // branches of the (s-1)-fold iterated coproduct of e_x as s-leg tuples
  std::vector<std::pair<uint64_t, Cyc>> cop_legs(uint32_t x, uint32_t s) const {
    if (s == 1) return {{x, Cyc::one(N)}};
    std::vector<std::pair<uint64_t, Cyc>> out;
    uint64_t tail = ph(s - 1);
    for (const Entry& e : h.coprod_basis(x))
      for (const auto& [fl, c] : cop_legs(e.idx % dh, s - 1))
        out.push_back({(uint64_t)(e.idx / dh) * tail + fl, e.val * c});
    return out;
  }

  SparseMat m_i(uint32_t p, uint32_t i) const {  // H^{p+1} -> H^p
    return mat_kron(mat_kron(SparseMat::identity((uint32_t)ph(i - 1), N), hmult),
                    SparseMat::identity((uint32_t)ph(p - i), N));
  }
  SparseMat mu_i(uint32_t p, uint32_t i) const {  // A^{p+1} -> A^p
    return mat_kron(mat_kron(SparseMat::identity((uint32_t)pa(i - 1), N), amult),
                    SparseMat::identity((uint32_t)pa(p - i), N));
  }
  SparseMat delta_i(uint32_t q, uint32_t i) const {  // H^q -> H^{q+1}
    return mat_kron(mat_kron(SparseMat::identity((uint32_t)ph(i - 1), N), hcop),
                    SparseMat::identity((uint32_t)ph(q - i), N));
  }

  // x (x) z^1..z^q -> x_1 z^1 (x) ... (x) x_q z^q
  SparseMat lam_l(uint32_t q) const {
    uint64_t dq = ph(q);
    Triplets t;
    t.rows = (uint32_t)dq;
    t.cols = (uint32_t)(dh * dq);
    for (uint32_t x = 0; x < dh; ++x) {
      auto legs = cop_legs(x, q);
      for (uint64_t z = 0; z < dq; ++z)
        for (const auto& [fl, c] : legs) {
          SVec cur = sv_unit(0, N);
          for (uint32_t j = 0; j < q && !cur.empty(); ++j)
            cur = sv_kron(cur, h.mul_basis(digit(fl, j, q, dh), digit(z, j, q, dh)), dh);
          for (const Entry& e : cur) t.add(e.idx, (uint32_t)(x * dq + z), c * e.val);
        }
    }
    return t.build();
  }

  // z^1..z^q (x) x -> z^1 x_1 (x) ... (x) z^q x_q
  SparseMat lam_r(uint32_t q) const {
    uint64_t dq = ph(q);
    Triplets t;
    t.rows = (uint32_t)dq;
    t.cols = (uint32_t)(dq * dh);
    for (uint32_t x = 0; x < dh; ++x) {
      auto legs = cop_legs(x, q);
      for (uint64_t z = 0; z < dq; ++z)
        for (const auto& [fl, c] : legs) {
          SVec cur = sv_unit(0, N);
          for (uint32_t j = 0; j < q && !cur.empty(); ++j)
            cur = sv_kron(cur, h.mul_basis(digit(z, j, q, dh), digit(fl, j, q, dh)), dh);
          for (const Entry& e : cur) t.add(e.idx, (uint32_t)(z * dh + x), c * e.val);
        }
    }
    return t.build();
  }

  struct Br {
    SVec prod;
    uint64_t rest = 0;
    Cyc c;
  };

  // y^1..y^p -> y^1_1 ... y^p_1 (x) y^1_2 (x) ... (x) y^p_2
  SparseMat del_l(uint32_t p) const {
    uint64_t dp = ph(p);
    Triplets t;
    t.rows = (uint32_t)(dh * dp);
    t.cols = (uint32_t)dp;
    for (uint64_t w = 0; w < dp; ++w) {
      std::vector<Br> cur{{h.unit(), 0, Cyc::one(N)}};
      for (uint32_t j = 0; j < p; ++j) {
        std::vector<Br> next;
        uint32_t yj = digit(w, j, p, dh);
        for (const Br& b : cur)
          for (const Entry& e : h.coprod_basis(yj))
            next.push_back({h.mul(b.prod, sv_unit(e.idx / dh, N)),
                            b.rest * dh + e.idx % dh, b.c * e.val});
        cur = std::move(next);
      }
      for (const Br& b : cur)
        for (const Entry& e : b.prod)
          t.add((uint32_t)(e.idx * dp + b.rest), (uint32_t)w, b.c * e.val);
    }
    return t.build();
  }

  // y^1..y^p -> y^1_1 (x) ... (x) y^p_1 (x) y^1_2 ... y^p_2
  SparseMat del_r(uint32_t p) const {
    uint64_t dp = ph(p);
    Triplets t;
    t.rows = (uint32_t)(dp * dh);
    t.cols = (uint32_t)dp;
    for (uint64_t w = 0; w < dp; ++w) {
      std::vector<Br> cur{{h.unit(), 0, Cyc::one(N)}};
      for (uint32_t j = 0; j < p; ++j) {
        std::vector<Br> next;
        uint32_t yj = digit(w, j, p, dh);
        for (const Br& b : cur)
          for (const Entry& e : h.coprod_basis(yj))
            next.push_back({h.mul(b.prod, sv_unit(e.idx % dh, N)),
                            b.rest * dh + e.idx / dh, b.c * e.val});
        cur = std::move(next);
      }
      for (const Br& b : cur)
        for (const Entry& e : b.prod)
          t.add((uint32_t)(b.rest * dh + e.idx), (uint32_t)w, b.c * e.val);
    }
    return t.build();
  }

  // a^1..a^p -> a^1_{-1} ... a^p_{-1} (x) a^1_0 (x) ... (x) a^p_0
  SparseMat lam1(uint32_t p) const {
    uint64_t dp = pa(p);
    Triplets t;
    t.rows = (uint32_t)(dh * dp);
    t.cols = (uint32_t)dp;
    for (uint64_t w = 0; w < dp; ++w) {
      std::vector<Br> cur{{h.unit(), 0, Cyc::one(N)}};
      for (uint32_t j = 0; j < p; ++j) {
        std::vector<Br> next;
        uint32_t aj = digit(w, j, p, da);
        for (const Br& b : cur)
          for (const Entry& e : a.coaction_basis(aj))
            next.push_back({h.mul(b.prod, sv_unit(e.idx / da, N)),
                            b.rest * da + e.idx % da, b.c * e.val});
        cur = std::move(next);
      }
      for (const Br& b : cur)
        for (const Entry& e : b.prod)
          t.add((uint32_t)(e.idx * dp + b.rest), (uint32_t)w, b.c * e.val);
    }
    return t.build();
  }

  // a^1..a^p -> a^1_{-1} (x) ... (x) a^p_{-1} (x) a^1_0 ... a^p_0
  SparseMat lam2(uint32_t p) const {
    uint64_t dp = pa(p);
    Triplets t;
    t.rows = (uint32_t)(ph(p) * da);
    t.cols = (uint32_t)dp;
    for (uint64_t w = 0; w < dp; ++w) {
      std::vector<Br> cur{{a.unit(), 0, Cyc::one(N)}};
      for (uint32_t j = 0; j < p; ++j) {
        std::vector<Br> next;
        uint32_t aj = digit(w, j, p, da);
        for (const Br& b : cur)
          for (const Entry& e : a.coaction_basis(aj))
            next.push_back({a.mul(b.prod, sv_unit(e.idx % da, N)),
                            b.rest * dh + e.idx / da, b.c * e.val});
        cur = std::move(next);
      }
      for (const Br& b : cur)
        for (const Entry& e : b.prod)
          t.add((uint32_t)(b.rest * da + e.idx), (uint32_t)w, b.c * e.val);
    }
    return t.build();
  }

  // a (x) z^1..z^q (x) b -> (a_{-1})_1 z^1 (x) ... (x) (a_{-1})_q z^q (x) a_0 b
  SparseMat beta_l(uint32_t q) const {
    if (q == 0) return amult;
    uint64_t dq = ph(q);
    Triplets t;
    t.rows = (uint32_t)(dq * da);
    t.cols = (uint32_t)(da * dq * da);
    for (uint32_t af = 0; af < da; ++af)
      for (const Entry& ce : a.coaction_basis(af)) {
        uint32_t a0 = ce.idx % da;
        auto legs = cop_legs(ce.idx / da, q);
        for (uint64_t z = 0; z < dq; ++z)
          for (const auto& [fl, c] : legs) {
            SVec cur = sv_unit(0, N);
            for (uint32_t j = 0; j < q && !cur.empty(); ++j)
              cur = sv_kron(cur, h.mul_basis(digit(fl, j, q, dh), digit(z, j, q, dh)), dh);
            if (cur.empty()) continue;
            for (uint32_t b = 0; b < da; ++b) {
              uint32_t col = (uint32_t)((af * dq + z) * da + b);
              for (const Entry& e1 : cur)
                for (const Entry& e2 : a.mul_basis(a0, b))
                  t.add((uint32_t)(e1.idx * da + e2.idx), col,
                        ce.val * c * e1.val * e2.val);
            }
          }
      }
    return t.build();
  }

  // z^1..z^q (x) c (x) b -> z^1 (b_{-1})_1 (x) ... (x) z^q (b_{-1})_q (x) c b_0
  SparseMat beta_r(uint32_t q) const {
    if (q == 0) return amult;
    uint64_t dq = ph(q);
    Triplets t;
    t.rows = (uint32_t)(dq * da);
    t.cols = (uint32_t)(dq * da * da);
    for (uint32_t b = 0; b < da; ++b)
      for (const Entry& ce : a.coaction_basis(b)) {
        uint32_t b0 = ce.idx % da;
        auto legs = cop_legs(ce.idx / da, q);
        for (uint64_t z = 0; z < dq; ++z)
          for (const auto& [fl, c] : legs) {
            SVec cur = sv_unit(0, N);
            for (uint32_t j = 0; j < q && !cur.empty(); ++j)
              cur = sv_kron(cur, h.mul_basis(digit(z, j, q, dh), digit(fl, j, q, dh)), dh);
            if (cur.empty()) continue;
            for (uint32_t cc = 0; cc < da; ++cc) {
              uint32_t col = (uint32_t)((z * da + cc) * da + b);
              for (const Entry& e1 : cur)
                for (const Entry& e2 : a.mul_basis(cc, b0))
                  t.add((uint32_t)(e1.idx * da + e2.idx), col,
                        ce.val * c * e1.val * e2.val);
            }
          }
      }
    return t.build();
  }

  SparseMat coact_last(uint32_t q) const {  // H^q (x) A -> H^q (x) H (x) A
    return mat_kron(SparseMat::identity((uint32_t)ph(q), N), acoact);
  }

  /* the four differentials on full Hom coordinates, as alternating sums of
   * the primitive terms */

  SparseMat dh_h(uint32_t p, uint32_t q) const {
    uint32_t rows = dim_ch(p + 1, q), cols = dim_ch(p, q);
    if (cols == 0 || rows == 0) return SparseMat::zero(rows, cols);
    SparseMat acc = wrap_left_op(lam_l(q), dh, (uint32_t)ph(p), (uint32_t)ph(q));
    for (uint32_t i = 1; i <= p; ++i)
      acc = acc_signed(acc, pre_op(m_i(p, i), (uint32_t)ph(q), N), i % 2 == 1);
    return acc_signed(acc, wrap_right_op(lam_r(q), (uint32_t)ph(p), (uint32_t)ph(q), dh),
                      (p + 1) % 2 == 1);
  }

  SparseMat dv_h(uint32_t p, uint32_t q) const {
    uint32_t rows = dim_ch(p, q + 1), cols = dim_ch(p, q);
    if (cols == 0 || rows == 0) return SparseMat::zero(rows, cols);
    SparseMat acc = pull_left_op(del_l(p), dh, (uint32_t)ph(p), (uint32_t)ph(q));
    for (uint32_t i = 1; i <= q; ++i)
      acc = acc_signed(acc, post_op((uint32_t)ph(p), delta_i(q, i), N), i % 2 == 1);
    return acc_signed(acc, pull_right_op(del_r(p), (uint32_t)ph(p), (uint32_t)ph(q), dh),
                      (q + 1) % 2 == 1);
  }

  SparseMat dh_a(uint32_t p, uint32_t q) const {
    uint32_t rows = dim_ca(p + 1, q), cols = dim_ca(p, q);
    if (cols == 0) return SparseMat::zero(rows, cols);
    uint32_t dy = (uint32_t)(ph(q) * da);
    SparseMat acc = wrap_left_op(beta_l(q), da, (uint32_t)pa(p), dy);
    for (uint32_t i = 1; i <= p; ++i)
      acc = acc_signed(acc, pre_op(mu_i(p, i), dy, N), i % 2 == 1);
    return acc_signed(acc, wrap_right_op(beta_r(q), (uint32_t)pa(p), dy, da),
                      (p + 1) % 2 == 1);
  }

  SparseMat dv_a(uint32_t p, uint32_t q, int mp, int mq, int mi) const {
    uint32_t rows = dim_ca(p, q + 1), cols = dim_ca(p, q);
    if (cols == 0) return SparseMat::zero(rows, cols);
    uint32_t dy = (uint32_t)(ph(q) * da);
    auto flip = [&](uint32_t i, bool minus) {
      return ((int)p == mp && (int)q == mq && (int)i == mi) ? !minus : minus;
    };
    SparseMat acc = pull_left_op(lam1(p), dh, (uint32_t)pa(p), dy);
    if (flip(0, false)) acc = mat_scale(-Cyc::one(N), acc);
    for (uint32_t i = 1; i <= q; ++i)
      acc = acc_signed(
          acc,
          post_op((uint32_t)pa(p), mat_kron(delta_i(q, i), SparseMat::identity(da, N)), N),
          flip(i, i % 2 == 1));
    return acc_signed(acc, post_op((uint32_t)pa(p), coact_last(q), N),
                      flip(q + 1, (q + 1) % 2 == 1));
  }

  SparseMat cross(uint32_t p, uint32_t q) const {  // C^{p,q}(H) -> C^{p,q}(A)
    uint32_t rows = dim_ca(p, q), cols = dim_ch(p, q);
    if (cols == 0 || rows == 0) return SparseMat::zero(rows, cols);
    return cross_op(lam2(p), (uint32_t)ph(q), da);
  }
};

}  // namespace

Bicomplex Bicomplex::build_impl(const ComoduleAlgebra& a, uint32_t p_max, uint32_t q_max,
                                uint64_t budget_mb, int mut_p, int mut_q, int mut_i) {
  if (a.dim() == 0) throw CohomologyError("comodule algebra has dimension 0");
  Ctx cx(a);
  uint32_t band = std::max(p_max, q_max);

  // footprint estimate before anything is allocated
  long double worst = 0, total = 0;
  for (uint32_t p = 0; p <= p_max; ++p)
    for (uint32_t q = 0; q <= q_max; ++q) {
      if (p + q > band) continue;
      long double ca =
          p == 0 ? 0.0L
                 : powl((long double)cx.da, p) * powl((long double)cx.dh, q) * cx.da;
      long double ch = p == 0 ? 0.0L : powl((long double)cx.dh, p + q + 1);
      total += ca + ch;
      worst = std::max(worst, ca + ch);
    }
  long double est_mb = total * 2048.0L / (1024.0L * 1024.0L);
  if (worst > 2147483647.0L || est_mb > (long double)budget_mb)
    throw CohomologyError("cohomology budget exceeded: about " +
                          std::to_string((long long)est_mb + 1) + " MB needed, budget " +
                          std::to_string(budget_mb) + " MB");

  Bicomplex b;
  b.a_ = &a;
  b.pmax_ = p_max;
  b.qmax_ = q_max;
  b.band_ = band;
  b.N_ = cx.N;

  {
    SparseMat leib = mat_sub(mat_sub(pre_op(cx.amult, cx.da, cx.N),
                                     wrap_left_op(cx.amult, cx.da, cx.da, cx.da)),
                             wrap_right_op(cx.amult, cx.da, cx.da, cx.da));
    b.der_ = kernel(leib, cx.N);
  }

  size_t nslots = (size_t)(p_max + 1) * (q_max + 1);
  b.panels_.assign(nslots, Panel{});
  b.present_.assign(nslots, 0);
  b.hasdh_.assign(nslots, 0);
  b.hasdv_.assign(nslots, 0);
  b.dh_.assign(nslots, SparseMat::zero(0, 0));
  b.dv_.assign(nslots, SparseMat::zero(0, 0));

  for (uint32_t p = 0; p <= p_max; ++p)
    for (uint32_t q = 0; q <= q_max; ++q) {
      if (p + q > band) continue;
      Panel& pl = b.panels_[b.slot(p, q)];
      pl.p = p;
      pl.q = q;
      pl.dim_a = (p == 1 && q == 0) ? b.der_.rows : cx.dim_ca(p, q);
      pl.dim_h = cx.dim_ch(p, q + 1);
      b.present_[b.slot(p, q)] = 1;
    }

  SparseMat inc = mat_transpose(b.der_);  // Der(A) into Hom(A, A)

  std::vector<std::pair<uint32_t, uint32_t>> todo;
  for (uint32_t p = 0; p <= p_max; ++p)
    for (uint32_t q = 0; q <= q_max; ++q)
      if (b.present_[b.slot(p, q)]) todo.push_back({p, q});

#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < (long)todo.size(); ++k) {
    uint32_t p = todo[k].first, q = todo[k].second;
    size_t s = b.slot(p, q);
    const Panel& src = b.panels_[s];
    bool der_src = (p == 1 && q == 0);
    if (p + 1 <= p_max && p + 1 + q <= band) {
      const Panel& dst = b.panels_[b.slot(p + 1, q)];
      SparseMat ah = cx.dh_a(p, q);
      if (der_src) ah = mat_mul(ah, inc);
      SparseMat hh = cx.dh_h(p, q + 1);
      Triplets t;
      t.rows = dst.dim();
      t.cols = src.dim();
      copy_block(t, ah, 0, 0);
      copy_block(t, hh, dst.dim_a, src.dim_a);
      b.dh_[s] = t.build();
      b.hasdh_[s] = 1;
    }
    if (q + 1 <= q_max && p + q + 1 <= band) {
      const Panel& dst = b.panels_[b.slot(p, q + 1)];
      SparseMat av = cx.dv_a(p, q, mut_p, mut_q, mut_i);
      if (der_src) av = mat_mul(av, inc);
      SparseMat x = cx.cross(p, q + 1);
      if (q % 2 == 1) x = mat_scale(-Cyc::one(cx.N), x);
      SparseMat hv = cx.dv_h(p, q + 1);
      Triplets t;
      t.rows = dst.dim();
      t.cols = src.dim();
      copy_block(t, av, 0, 0);
      copy_block(t, x, 0, src.dim_a);
      copy_block(t, hv, dst.dim_a, src.dim_a);
      b.dv_[s] = t.build();
      b.hasdv_[s] = 1;
    }
  }
  return b;
}

Bicomplex Bicomplex::build(const ComoduleAlgebra& a, uint32_t p_max, uint32_t q_max,
                           uint64_t budget_mb) {
  return build_impl(a, p_max, q_max, budget_mb, -1, -1, -1);
}

Bicomplex build_bicomplex_mutated(const ComoduleAlgebra& a, uint32_t p_max,
                                  uint32_t q_max, uint32_t p, uint32_t q, uint32_t i) {
  return Bicomplex::build_impl(a, p_max, q_max, 256, (int)p, (int)q, (int)i);
}

bool Bicomplex::has_panel(uint32_t p, uint32_t q) const {
  return p <= pmax_ && q <= qmax_ && present_[slot(p, q)] != 0;
}

const Panel& Bicomplex::panel(uint32_t p, uint32_t q) const {
  if (!has_panel(p, q))
    throw CohomologyError("panel (" + std::to_string(p) + ", " + std::to_string(q) +
                          ") is out of range");
  return panels_[slot(p, q)];
}

bool Bicomplex::has_dh(uint32_t p, uint32_t q) const {
  return p <= pmax_ && q <= qmax_ && hasdh_[slot(p, q)] != 0;
}

bool Bicomplex::has_dv(uint32_t p, uint32_t q) const {
  return p <= pmax_ && q <= qmax_ && hasdv_[slot(p, q)] != 0;
}

const SparseMat& Bicomplex::dh(uint32_t p, uint32_t q) const {
  if (!has_dh(p, q))
    throw CohomologyError("d^h at (" + std::to_string(p) + ", " + std::to_string(q) +
                          ") is out of range");
  return dh_[slot(p, q)];
}

const SparseMat& Bicomplex::dv(uint32_t p, uint32_t q) const {
  if (!has_dv(p, q))
    throw CohomologyError("d^v at (" + std::to_string(p) + ", " + std::to_string(q) +
                          ") is out of range");
  return dv_[slot(p, q)];
}

BicomplexReport verify_bicomplex(const Bicomplex& b) {
  BicomplexReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  auto at = [](uint32_t p, uint32_t q) {
    return "(" + std::to_string(p) + ", " + std::to_string(q) + ")";
  };
  for (uint32_t p = 0; p <= b.p_max(); ++p)
    for (uint32_t q = 0; q <= b.q_max(); ++q) {
      if (!b.has_panel(p, q)) continue;
      if (b.has_dh(p, q) && b.has_dh(p + 1, q) &&
          !mat_mul(b.dh(p + 1, q), b.dh(p, q)).is_zero())
        fail("d^h d^h is nonzero at panel " + at(p, q));
      if (b.has_dv(p, q) && b.has_dv(p, q + 1) &&
          !mat_mul(b.dv(p, q + 1), b.dv(p, q)).is_zero())
        fail("d^v d^v is nonzero at panel " + at(p, q));
      if (b.has_dh(p, q) && b.has_dv(p, q) && b.has_dv(p + 1, q) && b.has_dh(p, q + 1) &&
          !(mat_mul(b.dv(p + 1, q), b.dh(p, q)) == mat_mul(b.dh(p, q + 1), b.dv(p, q))))
        fail("d^h d^v and d^v d^h differ at panel " + at(p, q));
    }
  // the mixing block commutes with both differentials, as operator identities
  Ctx cx(b.comodule());
  for (uint32_t p = 1; p + 1 <= b.p_max(); ++p)
    for (uint32_t s = 1; s + 1 <= b.q_max(); ++s) {
      if (p + s + 1 > b.band()) continue;
      if (!(mat_mul(cx.dv_a(p, s, -1, -1, -1), cx.cross(p, s)) ==
            mat_mul(cx.cross(p, s + 1), cx.dv_h(p, s))))
        fail("vertical mixing identity fails at " + at(p, s));
      if (!(mat_mul(cx.dh_a(p, s), cx.cross(p, s)) ==
            mat_mul(cx.cross(p + 1, s), cx.dh_h(p, s))))
        fail("horizontal mixing identity fails at " + at(p, s));
    }
  return rep;
}

TotalCohomology total_cohomology_dims(const Bicomplex& b, uint32_t n_max) {
  if (b.p_max() < n_max + 1 || b.q_max() < n_max + 1)
    throw CohomologyError("total cohomology up to degree " + std::to_string(n_max) +
                          " needs p_max and q_max of at least " +
                          std::to_string(n_max + 1));
  uint32_t N = b.comodule().field_order();

  auto tot_dim = [&](uint32_t n) {
    uint32_t d = 0;
    for (uint32_t p = 0; p <= n; ++p)
      if (b.has_panel(p, n - p)) d += b.panel(p, n - p).dim();
    return d;
  };
  // blocks ordered by descending p inside Tot^n
  auto offset_of = [&](uint32_t n, uint32_t p) {
    uint32_t off = 0;
    for (uint32_t pp = n; pp > p; --pp)
      if (b.has_panel(pp, n - pp)) off += b.panel(pp, n - pp).dim();
    return off;
  };

  std::vector<SparseMat> d(n_max + 1, SparseMat::zero(0, 0));
  for (uint32_t n = 0; n <= n_max; ++n) {
    Triplets t;
    t.rows = tot_dim(n + 1);
    t.cols = tot_dim(n);
    for (uint32_t p = 0; p <= n; ++p) {
      uint32_t q = n - p;
      if (!b.has_panel(p, q)) continue;
      uint32_t co = offset_of(n, p);
      if (b.has_dh(p, q)) copy_block(t, b.dh(p, q), offset_of(n + 1, p + 1), co);
      if (b.has_dv(p, q)) copy_block(t, b.dv(p, q), offset_of(n + 1, p), co, p % 2 == 1);
    }
    d[n] = t.build();
  }

  TotalCohomology out;
  out.tot_dim.resize(n_max + 1);
  out.rank_d.resize(n_max + 1);
  out.h_dim.resize(n_max + 1);
  for (uint32_t n = 0; n <= n_max; ++n) out.tot_dim[n] = tot_dim(n);

#pragma omp parallel for schedule(dynamic, 1)
  for (long n = 0; n <= (long)n_max; ++n)
    out.rank_d[n] = (uint32_t)rref(d[n], N).pivots.size();

  for (uint32_t n = 0; n <= n_max; ++n) {
    uint32_t cut = out.rank_d[n] + (n ? out.rank_d[n - 1] : 0);
    if (cut > out.tot_dim[n])
      throw CohomologyError("rank-nullity violation in the total complex at degree " +
                            std::to_string(n));
    out.h_dim[n] = out.tot_dim[n] - cut;
  }
  return out;
}

Z2Result z2_membership(const Bicomplex& b, const SVec& phi_f, const SVec& psi_g) {
  if (!b.has_panel(2, 0) || !b.has_panel(1, 1))
    throw CohomologyError("degree-2 cocycle test needs panels (2, 0) and (1, 1)");
  const Panel& p20 = b.panel(2, 0);
  const Panel& p11 = b.panel(1, 1);
  if (!phi_f.empty() && phi_f.back().idx >= p20.dim())
    throw CohomologyError("cochain does not fit panel (2, 0)");
  if (!psi_g.empty() && psi_g.back().idx >= p11.dim())
    throw CohomologyError("cochain does not fit panel (1, 1)");

  auto split = [](const SVec& v, uint32_t cut) {
    std::pair<SVec, SVec> out;
    for (const Entry& e : v) {
      if (e.idx < cut)
        out.first.push_back(e);
      else
        out.second.push_back({e.idx - cut, e.val});
    }
    return out;
  };
  auto [phi, f] = split(phi_f, p20.dim_a);
  auto [psi, g] = split(psi_g, p11.dim_a);

  Ctx cx(b.comodule());
  SVec e1 = mat_apply(cx.dh_a(2, 0), phi);
  SVec e2 = sv_sub(mat_apply(cx.dv_a(1, 1, -1, -1, -1), psi), mat_apply(cx.cross(1, 2), g));
  SVec e3a = mat_apply(cx.dh_h(2, 1), f);
  SVec e3b = mat_apply(cx.dv_h(1, 2), g);
  SVec e4 = sv_add(mat_apply(cx.dv_h(2, 1), f), mat_apply(cx.dh_h(1, 2), g));
  SVec e5 = sv_add(sv_add(mat_apply(cx.dv_a(2, 0, -1, -1, -1), phi),
                          mat_apply(cx.cross(2, 1), f)),
                   mat_apply(cx.dh_a(1, 1), psi));

  Z2Result r;
  r.equations = {e1.empty(), e2.empty(), e3a.empty() && e3b.empty(), e4.empty(),
                 e5.empty()};
  r.member = std::all_of(r.equations.begin(), r.equations.end(), [](bool x) { return x; });
  return r;
}

FirstOrderData first_order_deformation(const Bicomplex& b, const ComoduleAlgebra& lifted) {
  const ComoduleAlgebra& a = b.comodule();
  const Hopf& h = b.hopf();
  const Hopf& lh = lifted.hopf();
  if (!a.layers() || !h.layers())
    throw CohomologyError("first-order extraction needs a graded comodule algebra");
  if (lifted.dim() != a.dim() || lh.dim() != h.dim())
    throw CohomologyError("lifting does not share the dimensions of the graded structure");
  for (uint32_t i = 0; i < a.dim(); ++i)
    if (lifted.basis_name(i) != a.basis_name(i))
      throw CohomologyError("lifting does not share the comodule algebra basis");
  for (uint32_t i = 0; i < h.dim(); ++i)
    if (lh.basis_name(i) != h.basis_name(i))
      throw CohomologyError("lifting does not share the Hopf algebra basis");
  if (!b.has_panel(2, 0) || !b.has_panel(1, 1))
    throw CohomologyError("first-order extraction needs panels (2, 0) and (1, 1)");

  const std::vector<uint32_t>& la = *a.layers();
  const std::vector<uint32_t>& lgh = *h.layers();
  uint32_t da = a.dim(), dh = h.dim();

  FirstOrderData out;
  for (uint32_t i = 0; i < da; ++i)
    for (uint32_t j = 0; j < da; ++j)
      for (const Entry& e : lifted.mul_basis(i, j))
        if (la[e.idx] + 1 == la[i] + la[j])
          out.phi_f.push_back({(i * da + j) * da + e.idx, e.val});
  uint32_t off20 = b.panel(2, 0).dim_a;
  for (uint32_t i = 0; i < dh; ++i)
    for (uint32_t j = 0; j < dh; ++j)
      for (const Entry& e : lh.mul_basis(i, j))
        if (lgh[e.idx] + 1 == lgh[i] + lgh[j])
          out.phi_f.push_back({off20 + (i * dh + j) * dh + e.idx, e.val});

  for (uint32_t i = 0; i < da; ++i)
    for (const Entry& e : lifted.coaction_basis(i))
      if (lgh[e.idx / da] + la[e.idx % da] + 1 == la[i])
        out.psi_g.push_back({i * (dh * da) + e.idx, e.val});
  uint32_t off11 = b.panel(1, 1).dim_a;
  for (uint32_t i = 0; i < dh; ++i)
    for (const Entry& e : lh.coprod_basis(i))
      if (lgh[e.idx / dh] + lgh[e.idx % dh] + 1 == lgh[i])
        out.psi_g.push_back({off11 + i * dh * dh + e.idx, e.val});
  return out;
}

}  // namespace hopfkit
