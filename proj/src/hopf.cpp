#include "hopfkit/hopf.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <sstream>

namespace hopfkit {

namespace {

SparseMat reshape_tensor(const SVec& v, uint32_t n) {
  Triplets t;
  t.rows = n;
  t.cols = n;
  for (const Entry& e : v) t.add(e.idx / n, e.idx % n, e.val);
  return t.build();
}

SVec grouplike_pattern(uint32_t idx, uint32_t dim, uint32_t N) {
  return sv_unit(idx * dim + idx, N);
}

}  // namespace

std::string Hopf::vec_str(const SVec& v) const {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Entry& e : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << e.val.str() << ")*" << names_[e.idx];
  }
  return os.str();
}

SVec Hopf::mul(const SVec& a, const SVec& b) const {
  std::vector<Entry> items;
  for (const Entry& ea : a)
    for (const Entry& eb : b) {
      Cyc c = ea.val * eb.val;
      for (const Entry& e : mul_basis(ea.idx, eb.idx)) items.push_back({e.idx, c * e.val});
    }
  return sv_gather(std::move(items));
}

SVec Hopf::power(const SVec& a, uint32_t e) const {
  SVec out = unit_;
  for (uint32_t i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

SparseMat Hopf::left_mult(const SVec& a) const {
  Triplets t;
  t.rows = dim_;
  t.cols = dim_;
  for (const Entry& ea : a)
    for (uint32_t j = 0; j < dim_; ++j)
      for (const Entry& e : mul_basis(ea.idx, j)) t.add(e.idx, j, ea.val * e.val);
  return t.build();
}

SparseMat Hopf::right_mult(const SVec& a) const {
  Triplets t;
  t.rows = dim_;
  t.cols = dim_;
  for (const Entry& ea : a)
    for (uint32_t j = 0; j < dim_; ++j)
      for (const Entry& e : mul_basis(j, ea.idx)) t.add(e.idx, j, ea.val * e.val);
  return t.build();
}

SparseMat Hopf::mult_matrix() const {
  Triplets t;
  t.rows = dim_;
  t.cols = dim_ * dim_;
  for (uint32_t a = 0; a < dim_; ++a)
    for (uint32_t b = 0; b < dim_; ++b)
      for (const Entry& e : mul_basis(a, b)) t.add(e.idx, a * dim_ + b, e.val);
  return t.build();
}

SVec Hopf::coprod(const SVec& v) const {
  std::vector<Entry> items;
  for (const Entry& e : v)
    for (const Entry& d : coprod_[e.idx]) items.push_back({d.idx, e.val * d.val});
  return sv_gather(std::move(items));
}

Cyc Hopf::counit(const SVec& v) const {
  Cyc out = Cyc::zero(N_);
  for (const Entry& e : v) out += e.val * counit_[e.idx];
  return out;
}

SparseMat Hopf::coprod_matrix() const {
  Triplets t;
  t.rows = dim_ * dim_;
  t.cols = dim_;
  for (uint32_t j = 0; j < dim_; ++j)
    for (const Entry& e : coprod_[j]) t.add(e.idx, j, e.val);
  return t.build();
}

SparseMat Hopf::counit_matrix() const {
  Triplets t;
  t.rows = 1;
  t.cols = dim_;
  for (uint32_t j = 0; j < dim_; ++j)
    if (!counit_[j].is_zero()) t.add(0, j, counit_[j]);
  return t.build();
}

SVec Hopf::mul2(const SVec& u, const SVec& v) const {
  std::vector<Entry> items;
  for (const Entry& eu : u) {
    uint32_t a1 = eu.idx / dim_, a2 = eu.idx % dim_;
    for (const Entry& ev : v) {
      uint32_t b1 = ev.idx / dim_, b2 = ev.idx % dim_;
      Cyc c = eu.val * ev.val;
      for (const Entry& p1 : mul_basis(a1, b1))
        for (const Entry& p2 : mul_basis(a2, b2))
          items.push_back({p1.idx * dim_ + p2.idx, c * p1.val * p2.val});
    }
  }
  return sv_gather(std::move(items));
}

bool Hopf::is_grouplike(const SVec& v) const {
  if (v.empty()) return false;
  return coprod(v) == sv_kron(v, v, dim_) && counit(v).is_one();
}

Hopf Hopf::build(const HopfPresentation& p, std::optional<std::vector<uint32_t>> layer_of) {
  Algebra alg = Algebra::build(p.alg);
  if (auto bad = alg.associativity_failure())
    throw HopfError("product is not associative: " + *bad);
  const uint32_t dim = alg.dim();
  const uint32_t N = alg.field_order();
  const size_t ngens = p.alg.gens.size();
  if (p.coprod.size() != ngens || p.counit.size() != ngens)
    throw HopfError("coproduct and counit must be given on every generator");

  Hopf h;
  h.dim_ = dim;
  h.N_ = N;
  h.pres_ = p.alg;
  h.unit_ = sv_unit(0, N);
  h.mul_.resize((size_t)dim * dim);
  for (uint32_t a = 0; a < dim; ++a)
    for (uint32_t b = 0; b < dim; ++b) h.mul_[(size_t)a * dim + b] = alg.mul_basis(a, b);
  h.names_.resize(dim);
  for (uint32_t i = 0; i < dim; ++i) h.names_[i] = alg.mono_name(i);

  for (size_t j = 0; j < ngens; ++j) {
    if (p.alg.gens[j].bound < 2)
      throw HopfError("generator " + p.alg.gens[j].name + " has bound < 2");
    for (const Entry& e : p.coprod[j])
      if (e.idx >= dim * dim) throw HopfError("coproduct entry out of range");
  }

  h.coprod_.resize(dim);
  h.counit_.resize(dim);
  h.coprod_[0] = sv_unit(0, N);
  h.counit_[0] = Cyc::one(N);
  for (uint32_t idx = 1; idx < dim; ++idx) {
    std::vector<uint32_t> exps = p.alg.exponents(idx);
    size_t j = ngens;
    while (j > 0 && exps[j - 1] == 0) --j;
    --j;
    exps[j] -= 1;
    uint32_t prefix = p.alg.mono_index(exps);
    h.coprod_[idx] = h.mul2(h.coprod_[prefix], p.coprod[j]);
    h.counit_[idx] = h.counit_[prefix] * p.counit[j];
  }

  h.layer_ = std::move(layer_of);
  h.verify_axioms();
  h.compute_antipode();
  return h;
}

Hopf Hopf::from_tables(uint32_t field_order, uint32_t dim, std::vector<SVec> mult_table,
                       SVec unit, std::vector<SVec> coprod_table, std::vector<Cyc> counit,
                       std::vector<std::string> basis_names,
                       std::optional<std::vector<uint32_t>> layer_of,
                       std::optional<Presentation> pres) {
  if (mult_table.size() != (size_t)dim * dim || coprod_table.size() != dim ||
      counit.size() != dim || basis_names.size() != dim)
    throw HopfError("structure table sizes do not match the dimension");

  Hopf h;
  h.dim_ = dim;
  h.N_ = field_order;
  h.mul_ = std::move(mult_table);
  h.unit_ = std::move(unit);
  h.coprod_ = std::move(coprod_table);
  h.counit_ = std::move(counit);
  h.names_ = std::move(basis_names);
  h.layer_ = std::move(layer_of);
  h.pres_ = std::move(pres);

  // associativity on basis triples: exhaustive for small dimensions,
  // seeded samples otherwise (same policy as presentation-built algebras)
  auto check_triple = [&](uint32_t a, uint32_t b, uint32_t c) {
    SVec l = h.mul(h.mul_basis(a, b), sv_unit(c, field_order));
    SVec r = h.mul(sv_unit(a, field_order), h.mul_basis(b, c));
    if (l != r)
      throw HopfError("product is not associative at (" + h.names_[a] + ", " + h.names_[b] +
                      ", " + h.names_[c] + ")");
  };
  if (dim <= 64) {
    for (uint32_t a = 0; a < dim; ++a)
      for (uint32_t b = 0; b < dim; ++b)
        for (uint32_t c = 0; c < dim; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0xa550c1a7e);
    std::uniform_int_distribution<uint32_t> pick(0, dim - 1);
    for (size_t s = 0; s < 100000; ++s) check_triple(pick(rng), pick(rng), pick(rng));
  }

  h.verify_axioms();
  h.compute_antipode();
  return h;
}

void Hopf::verify_axioms() const {
  const uint32_t n = dim_;

  for (uint32_t j = 0; j < n; ++j) {
    SVec ej = sv_unit(j, N_);
    if (mul(unit_, ej) != ej || mul(ej, unit_) != ej)
      throw HopfError("unit axiom fails at " + names_[j]);
  }
  if (!counit(unit_).is_one()) throw HopfError("counit of the unit is not 1");
  if (coprod(unit_) != sv_kron(unit_, unit_, n))
    throw HopfError("coproduct of the unit is not 1 (x) 1");

  for (uint32_t j = 0; j < n; ++j) {
    const SVec& d = coprod_[j];
    std::vector<Entry> l, r, cl, cr;
    for (const Entry& e : d) {
      uint32_t a = e.idx / n, b = e.idx % n;
      for (const Entry& f : coprod_[a]) l.push_back({f.idx * n + b, e.val * f.val});
      for (const Entry& f : coprod_[b]) r.push_back({a * n * n + f.idx, e.val * f.val});
      if (!counit_[a].is_zero()) cl.push_back({b, e.val * counit_[a]});
      if (!counit_[b].is_zero()) cr.push_back({a, e.val * counit_[b]});
    }
    if (sv_gather(std::move(l)) != sv_gather(std::move(r)))
      throw HopfError("coassociativity fails at " + names_[j]);
    SVec ej = sv_unit(j, N_);
    if (sv_gather(std::move(cl)) != ej || sv_gather(std::move(cr)) != ej)
      throw HopfError("counit axiom fails at " + names_[j]);
  }

  std::atomic<uint64_t> worst_eps{UINT64_MAX}, worst_pair{UINT64_MAX};
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t a = 0; a < (int64_t)n; ++a) {
    for (uint32_t b = 0; b < n; ++b) {
      const SVec& ab = mul_basis((uint32_t)a, b);
      uint64_t key = (uint64_t)a * n + b;
      if (counit(ab) != counit_[a] * counit_[b]) {
        uint64_t cur = worst_eps.load();
        while (key < cur && !worst_eps.compare_exchange_weak(cur, key)) {
        }
      }
      if (coprod(ab) != mul2(coprod_[a], coprod_[b])) {
        uint64_t cur = worst_pair.load();
        while (key < cur && !worst_pair.compare_exchange_weak(cur, key)) {
        }
      }
    }
  }
  if (worst_eps.load() != UINT64_MAX) {
    uint32_t a = (uint32_t)(worst_eps.load() / n), b = (uint32_t)(worst_eps.load() % n);
    throw HopfError("counit is not an algebra map at (" + names_[a] + ", " + names_[b] + ")");
  }
  if (worst_pair.load() != UINT64_MAX) {
    uint32_t a = (uint32_t)(worst_pair.load() / n), b = (uint32_t)(worst_pair.load() % n);
    throw HopfError("coproduct is not an algebra map at (" + names_[a] + ", " + names_[b] +
                    ")");
  }

  if (layer_) {
    const auto& L = *layer_;
    if (L.size() != n) throw HopfError("grading size mismatch");
    for (const Entry& e : unit_)
      if (L[e.idx] != 0) throw HopfError("unit is not in degree 0");
    for (uint32_t j = 0; j < n; ++j) {
      if (L[j] > 0 && !counit_[j].is_zero())
        throw HopfError("counit does not vanish in positive degree at " + names_[j]);
      for (const Entry& e : coprod_[j])
        if (L[e.idx / n] + L[e.idx % n] != L[j])
          throw HopfError("coproduct is not graded at " + names_[j]);
    }
    for (uint32_t a = 0; a < n; ++a)
      for (uint32_t b = 0; b < n; ++b)
        for (const Entry& e : mul_basis(a, b))
          if (L[e.idx] != L[a] + L[b])
            throw HopfError("product is not graded at (" + names_[a] + ", " + names_[b] + ")");
  }
}

namespace {

/* checks m(s (x) id) Delta = u eps (left = true) or m(id (x) s) Delta */
bool antipode_identity_ok(const Hopf& h, const SparseMat& s, bool left) {
  const uint32_t n = h.dim();
  for (uint32_t j = 0; j < n; ++j) {
    std::vector<Entry> items;
    for (const Entry& e : h.coprod_basis(j)) {
      uint32_t a = e.idx / n, b = e.idx % n;
      uint32_t src = left ? a : b;
      uint32_t other = left ? b : a;
      SVec sc = mat_col(s, src);
      for (const Entry& es : sc) {
        const SVec& prod = left ? h.mul_basis(es.idx, other) : h.mul_basis(other, es.idx);
        for (const Entry& em : prod) items.push_back({em.idx, e.val * es.val * em.val});
      }
    }
    SVec expect = h.unit();
    sv_scale(expect, h.counit_basis(j));
    if (sv_gather(std::move(items)) != expect) return false;
  }
  return true;
}

}  // namespace

void Hopf::compute_antipode() {
  std::optional<SparseMat> s;

  if (pres_) {
    // structural path: generators are group-like or skew-primitive over a
    // group-like, so S(g) = g^{-1} and S(x) = -gamma^{-1} x extend
    // anti-multiplicatively along the normal form
    const Presentation& P = *pres_;
    const size_t ngens = P.gens.size();
    std::vector<SVec> sgen(ngens);
    bool ok = true;
    for (size_t j = 0; j < ngens && ok; ++j) {
      std::vector<uint32_t> exps(ngens, 0);
      exps[j] = 1;
      uint32_t gj = P.mono_index(exps);
      const SVec& d = coprod_[gj];
      if (d == grouplike_pattern(gj, dim_, N_)) {
        auto inv = solve(left_mult(sv_unit(gj, N_)), unit_, N_);
        if (!inv) {
          ok = false;
          break;
        }
        sgen[j] = inv->particular;
      } else {
        SVec gamma;
        bool seen_right = false, shape = true;
        for (const Entry& e : d) {
          uint32_t a = e.idx / dim_, b = e.idx % dim_;
          if (a == gj && b == 0 && e.val.is_one())
            seen_right = true;
          else if (b == gj)
            gamma.push_back({a, e.val});
          else {
            shape = false;
            break;
          }
        }
        if (!shape || !seen_right || gamma.empty() || !is_grouplike(gamma)) {
          ok = false;
          break;
        }
        auto ginv = solve(left_mult(gamma), unit_, N_);
        if (!ginv) {
          ok = false;
          break;
        }
        sgen[j] = sv_neg(mul(ginv->particular, sv_unit(gj, N_)));
      }
    }
    if (ok) {
      std::vector<SVec> scol(dim_);
      scol[0] = unit_;
      for (uint32_t idx = 1; idx < dim_; ++idx) {
        std::vector<uint32_t> exps = P.exponents(idx);
        size_t j = ngens;
        while (j > 0 && exps[j - 1] == 0) --j;
        --j;
        exps[j] -= 1;
        scol[idx] = mul(sgen[j], scol[P.mono_index(exps)]);
      }
      SparseMat cand = mat_from_columns(dim_, scol);
      if (antipode_identity_ok(*this, cand, true)) s = std::move(cand);
    }
  }

  if (!s) {
    // solve m(S (x) id) Delta = u eps as a linear system in the matrix of S
    Triplets t;
    t.rows = dim_ * dim_;
    t.cols = dim_ * dim_;
    for (uint32_t j = 0; j < dim_; ++j)
      for (const Entry& e : coprod_[j]) {
        uint32_t a = e.idx / dim_, b = e.idx % dim_;
        for (uint32_t rp = 0; rp < dim_; ++rp)
          for (const Entry& em : mul_basis(rp, b))
            t.add(j * dim_ + em.idx, a * dim_ + rp, e.val * em.val);
      }
    std::vector<Entry> rhs_items;
    for (uint32_t j = 0; j < dim_; ++j) {
      if (counit_[j].is_zero()) continue;
      for (const Entry& u : unit_) rhs_items.push_back({j * dim_ + u.idx, counit_[j] * u.val});
    }
    auto sol = solve(t.build(), sv_gather(std::move(rhs_items)), N_);
    if (!sol) throw HopfError("no antipode: the convolution equation has no solution");
    if (sol->homogeneous.rows != 0)
      throw HopfError("no antipode: the convolution equation is degenerate");
    SparseMat cand = SparseMat::zero(dim_, dim_);
    for (const Entry& e : sol->particular) cand.set(e.idx % dim_, e.idx / dim_, e.val);
    if (!antipode_identity_ok(*this, cand, true))
      throw HopfError("no antipode: solved candidate fails the left counit identity");
    s = std::move(cand);
  }

  if (!antipode_identity_ok(*this, *s, false))
    throw HopfError("antipode fails the right counit identity");
  antipode_ = std::move(*s);
  auto inv = mat_inverse(antipode_, N_);
  if (!inv) throw HopfError("antipode is not invertible");
  antipode_inv_ = std::move(*inv);
}

const std::vector<uint32_t>& Hopf::grouplikes() const {
  if (grouplikes_) return *grouplikes_;
  const Subspace& c0 = coradical_filtration()[0];
  std::vector<uint32_t> gs;
  for (const SVec& row : c0.basis()) {
    if (row.size() != 1 || !row[0].val.is_one()) continue;
    uint32_t m = row[0].idx;
    if (coprod_[m] == grouplike_pattern(m, dim_, N_) && counit_[m].is_one()) gs.push_back(m);
  }
  if (gs.size() != c0.dim())
    throw HopfError("coradical is not split by group-like basis monomials over this field");
  grouplikes_ = std::move(gs);
  return *grouplikes_;
}

const std::vector<Subspace>& Hopf::coradical_filtration() const {
  if (filtration_) return *filtration_;
  const uint32_t n = dim_;

  // radical of the dual algebra via the trace form of its regular
  // representation; the coradical is its annihilator in H
  std::vector<Cyc> tr(n, Cyc::zero(N_));
  for (uint32_t x = 0; x < n; ++x)
    for (const Entry& e : coprod_[x])
      if (e.idx % n == x) tr[e.idx / n] += e.val;
  Triplets gt;
  gt.rows = n;
  gt.cols = n;
  for (uint32_t c = 0; c < n; ++c) {
    if (tr[c].is_zero()) continue;
    for (const Entry& e : coprod_[c]) gt.add(e.idx / n, e.idx % n, e.val * tr[c]);
  }
  SparseMat rad = kernel(gt.build(), N_);
  Subspace c0 = Subspace::from_vectors(n, N_, kernel(rad, N_).row);

  std::vector<Subspace> filt{c0};
  SparseMat dmat = coprod_matrix();
  SparseMat q0 = c0.quotient_projection();
  while (filt.back().dim() < n) {
    SparseMat w = mat_mul(mat_kron(q0, filt.back().quotient_projection()), dmat);
    Subspace next = Subspace::from_vectors(n, N_, kernel(w, N_).row);
    if (!next.contains(filt.back()) || next.dim() <= filt.back().dim())
      throw HopfError("coradical filtration stalls before reaching H");
    filt.push_back(std::move(next));
  }

  const size_t top = filt.size() - 1;
  for (size_t i = 0; i <= top; ++i)
    for (size_t j = 0; j <= top; ++j) {
      const Subspace& tgt = filt[std::min(i + j, top)];
      for (const SVec& u : filt[i].basis())
        for (const SVec& v : filt[j].basis())
          if (!tgt.contains(mul(u, v)))
            throw HopfError("coradical filtration is not multiplicative");
    }

  filtration_ = std::move(filt);
  return *filtration_;
}

uint32_t Hopf::layer_count() const {
  if (!layer_) throw HopfError("object carries no grading");
  uint32_t m = 0;
  for (uint32_t l : *layer_) m = std::max(m, l);
  return m + 1;
}

Subspace Hopf::layer_span(uint32_t l) const {
  if (!layer_) throw HopfError("object carries no grading");
  std::vector<SVec> gens;
  for (uint32_t i = 0; i < dim_; ++i)
    if ((*layer_)[i] == l) gens.push_back(sv_unit(i, N_));
  return Subspace::from_vectors(dim_, N_, gens);
}

SparseMat Hopf::grading_projector(uint32_t l) const {
  if (!layer_) throw HopfError("object carries no grading");
  SparseMat p = SparseMat::zero(dim_, dim_);
  for (uint32_t i = 0; i < dim_; ++i)
    if ((*layer_)[i] == l) p.row[i] = sv_unit(i, N_);
  return p;
}

Subspace Hopf::left_ideal(const std::vector<SVec>& gens) const {
  RowSpace rs(dim_, N_);
  std::vector<SVec> queue;
  for (const SVec& g : gens)
    if (rs.insert(g)) queue.push_back(g);
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (uint32_t i = 0; i < dim_; ++i) {
      SVec w = mul(sv_unit(i, N_), queue[qi]);
      if (rs.insert(w)) queue.push_back(std::move(w));
    }
  return Subspace::from_rowspace(rs);
}

CoidealCheck check_coideal_subalgebra(const Hopf& h, const Subspace& s) {
  CoidealCheck out;
  const uint32_t n = h.dim();
  if (s.ambient() != n) {
    out.certificate = "ambient dimension mismatch";
    return out;
  }
  if (!s.contains(h.unit())) {
    out.certificate = "does not contain the unit";
    return out;
  }
  const auto& bas = s.basis();
  for (size_t i = 0; i < bas.size(); ++i)
    for (size_t j = 0; j < bas.size(); ++j)
      if (!s.contains(h.mul(bas[i], bas[j]))) {
        out.certificate = "not closed under multiplication at basis pair (" +
                          std::to_string(i) + ", " + std::to_string(j) + ")";
        return out;
      }
  for (size_t k = 0; k < bas.size(); ++k) {
    SVec d = h.coprod(bas[k]);
    size_t p = 0;
    while (p < d.size()) {
      uint32_t a = d[p].idx / n;
      SVec slice;
      while (p < d.size() && d[p].idx / n == a) {
        slice.push_back({d[p].idx % n, d[p].val});
        ++p;
      }
      if (!s.contains(slice)) {
        out.certificate =
            "coproduct does not land in H (x) K at basis vector " + std::to_string(k);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

QuotientCoalgebra quotient_coalgebra(const Hopf& h, const Subspace& k) {
  auto ck = check_coideal_subalgebra(h, k);
  if (!ck.ok) throw HopfError("not a coideal subalgebra: " + ck.certificate);
  const uint32_t n = h.dim(), N = h.field_order();

  Subspace ker_eps = Subspace::from_vectors(n, N, kernel(h.counit_matrix(), N).row);
  Subspace kplus = k.intersect(ker_eps);
  Subspace ideal = h.left_ideal(kplus.basis());
  for (const SVec& v : ideal.basis())
    if (!h.counit(v).is_zero())
      throw HopfError("counit does not vanish on the ideal H K+");

  SparseMat gamma = ideal.quotient_projection();
  SparseMat gammaT = mat_transpose(gamma);
  const uint32_t qd = n - ideal.dim();

  QuotientCoalgebra out;
  out.dim = qd;
  out.field_order = N;
  out.projection = gamma;
  std::vector<char> is_pivot(n, 0);
  for (uint32_t p : ideal.pivots()) is_pivot[p] = 1;
  for (uint32_t j = 0; j < n; ++j)
    if (!is_pivot[j]) out.section.push_back(j);

  for (const SVec& v : ideal.basis()) {
    SparseMat m = reshape_tensor(h.coprod(v), n);
    if (!mat_mul(mat_mul(gamma, m), gammaT).is_zero())
      throw HopfError("induced coproduct on H / H K+ is not well defined");
  }

  Triplets dq, eq;
  dq.rows = qd * qd;
  dq.cols = qd;
  eq.rows = 1;
  eq.cols = qd;
  for (uint32_t c = 0; c < qd; ++c) {
    uint32_t f = out.section[c];
    SparseMat m = mat_mul(mat_mul(gamma, reshape_tensor(h.coprod_basis(f), n)), gammaT);
    for (uint32_t i = 0; i < m.rows; ++i)
      for (const Entry& e : m.row[i]) dq.add(i * qd + e.idx, c, e.val);
    if (!h.counit_basis(f).is_zero()) eq.add(0, c, h.counit_basis(f));
  }
  out.delta = dq.build();
  out.eps = eq.build();
  return out;
}

uint32_t count_grouplike_basis(const QuotientCoalgebra& q) {
  uint32_t count = 0;
  for (uint32_t c = 0; c < q.dim; ++c)
    if (mat_col(q.delta, c) == sv_unit(c * q.dim + c, q.field_order) &&
        q.eps.get(0, c, q.field_order).is_one())
      ++count;
  return count;
}

Hopf associated_graded_hopf(const Hopf& h) {
  const auto& filt = h.coradical_filtration();
  const uint32_t n = h.dim(), N = h.field_order();
  const Subspace& c0 = filt[0];

  // H^0 must be a Hopf subalgebra
  for (const SVec& v : c0.basis()) {
    if (!c0.contains(mat_apply(h.antipode(), v)))
      throw HopfError("coradical is not a Hopf subalgebra: not antipode-stable");
    SVec d = h.coprod(v);
    SparseMat m = reshape_tensor(d, n);
    for (uint32_t i = 0; i < m.rows; ++i)
      if (!m.row[i].empty() && !c0.contains(m.row[i]))
        throw HopfError("coradical is not a Hopf subalgebra: coproduct leaves C0 (x) C0");
    SparseMat mt = mat_transpose(m);
    for (uint32_t i = 0; i < mt.rows; ++i)
      if (!mt.row[i].empty() && !c0.contains(mt.row[i]))
        throw HopfError("coradical is not a Hopf subalgebra: coproduct leaves C0 (x) C0");
  }

  // canonical echelon complements: pivots of C_{l-1} nest into C_l
  std::vector<SVec> cols;
  std::vector<uint32_t> lay;
  std::vector<std::string> nm;
  for (size_t l = 0; l < filt.size(); ++l) {
    std::set<uint32_t> prev;
    if (l > 0) prev.insert(filt[l - 1].pivots().begin(), filt[l - 1].pivots().end());
    const auto& piv = filt[l].pivots();
    for (size_t r = 0; r < piv.size(); ++r) {
      if (prev.count(piv[r])) continue;
      cols.push_back(filt[l].basis()[r]);
      lay.push_back((uint32_t)l);
      nm.push_back(h.basis_name(piv[r]));
    }
  }
  if (cols.size() != n) throw HopfError("echelon complements do not fill H");
  SparseMat T = mat_from_columns(n, cols);
  auto Ti = mat_inverse(T, N);
  if (!Ti) throw HopfError("echelon complement basis is singular");
  SparseMat TiT = mat_transpose(*Ti);

  std::vector<SVec> mul((size_t)n * n), cop(n);
  std::vector<Cyc> cnt(n, Cyc::zero(N));
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      SVec wc = mat_apply(*Ti, h.mul(cols[a], cols[b]));
      uint32_t target = lay[a] + lay[b];
      SVec out;
      for (const Entry& e : wc) {
        if (lay[e.idx] == target)
          out.push_back(e);
        else if (lay[e.idx] > target)
          throw HopfError("filtration product exceeds its degree");
      }
      mul[(size_t)a * n + b] = std::move(out);
    }
  for (uint32_t a = 0; a < n; ++a) {
    SparseMat m = mat_mul(mat_mul(*Ti, reshape_tensor(h.coprod(cols[a]), n)), TiT);
    SVec out;
    for (uint32_t i = 0; i < m.rows; ++i)
      for (const Entry& e : m.row[i]) {
        if (lay[i] + lay[e.idx] == lay[a])
          out.push_back({i * n + e.idx, e.val});
        else if (lay[i] + lay[e.idx] > lay[a])
          throw HopfError("coradical filtration is not a coalgebra filtration");
      }
    cop[a] = std::move(out);
    if (lay[a] == 0) cnt[a] = h.counit(cols[a]);
  }
  SVec unit_gr = mat_apply(*Ti, h.unit());
  return Hopf::from_tables(N, n, std::move(mul), std::move(unit_gr), std::move(cop),
                           std::move(cnt), std::move(nm), lay);
}

std::optional<SparseMat> graded_iso_from_presentation(const HopfPresentation& target,
                                                      const Hopf& graded, std::string* why) {
  auto fail = [&](const std::string& m) -> std::optional<SparseMat> {
    if (why) *why = m;
    return std::nullopt;
  };
  Hopf tgt = Hopf::build(target);
  const uint32_t n = tgt.dim(), N = tgt.field_order();
  if (graded.dim() != n || graded.field_order() != N)
    return fail("dimension or field mismatch");
  if (!graded.layers()) return fail("codomain carries no grading");

  const Presentation& P = target.alg;
  const size_t ng = P.gens.size();
  std::vector<SVec> img(ng);
  std::vector<char> matched(ng, 0);
  std::vector<uint32_t> gen_mono(ng);
  for (size_t j = 0; j < ng; ++j) {
    std::vector<uint32_t> exps(ng, 0);
    exps[j] = 1;
    gen_mono[j] = P.mono_index(exps);
  }

  SparseMat dmat = graded.coprod_matrix();
  SparseMat id_n = SparseMat::identity(n, N);
  SparseMat unit_col = mat_from_columns(n, {graded.unit()});

  for (size_t j = 0; j < ng; ++j) {
    const std::string& namej = P.gens[j].name;
    uint32_t gj = gen_mono[j];
    const SVec& d = tgt.coprod_basis(gj);
    if (d == grouplike_pattern(gj, n, N)) {
      std::optional<uint32_t> m;
      for (uint32_t i = 0; i < n; ++i)
        if (graded.basis_name(i) == namej) {
          m = i;
          break;
        }
      if (!m) return fail("no basis vector named '" + namej + "' in the codomain");
      if (graded.coprod_basis(*m) != grouplike_pattern(*m, n, N) ||
          !graded.counit_basis(*m).is_one())
        return fail("basis vector '" + namej + "' is not group-like in the codomain");
      img[j] = sv_unit(*m, N);
      matched[j] = 1;
      continue;
    }

    // skew-primitive generator: Delta t = t (x) 1 + gamma (x) t
    SVec gamma;
    bool seen_right = false, shape = true;
    for (const Entry& e : d) {
      uint32_t a = e.idx / n, b = e.idx % n;
      if (a == gj && b == 0 && e.val.is_one())
        seen_right = true;
      else if (b == gj)
        gamma.push_back({a, e.val});
      else {
        shape = false;
        break;
      }
    }
    if (!shape || !seen_right || gamma.size() != 1 || !gamma[0].val.is_one())
      return fail("generator '" + namej + "' is neither group-like nor skew-primitive");
    std::vector<uint32_t> gexp = P.exponents(gamma[0].idx);
    SVec gamma_hat = graded.unit();
    for (size_t i = 0; i < ng; ++i) {
      if (gexp[i] == 0) continue;
      if (!matched[i])
        return fail("generator '" + namej + "' references an unmatched group-like");
      gamma_hat = graded.mul(gamma_hat, graded.power(img[i], gexp[i]));
    }

    SparseMat ghat_col = mat_from_columns(n, {gamma_hat});
    SparseMat shape_op =
        mat_sub(mat_sub(dmat, mat_kron(id_n, unit_col)), mat_kron(ghat_col, id_n));
    SparseMat B = graded.layer_span(1).inclusion();
    SparseMat full = mat_mul(shape_op, B);
    for (size_t i = 0; i < j; ++i) {
      if (!matched[i]) continue;
      const auto& rule = P.swap[j][i];
      if (!rule || !rule->tail.empty()) continue;
      SparseMat comm =
          mat_sub(graded.right_mult(img[i]), mat_scale(rule->coeff, graded.left_mult(img[i])));
      full = mat_vstack(full, mat_mul(comm, B));
    }
    SparseMat kb = kernel(full, N);
    if (kb.rows != 1)
      return fail("generator '" + namej + "': matching space has dimension " +
                  std::to_string(kb.rows));
    img[j] = mat_apply(B, kb.row[0]);
    matched[j] = 1;
  }

  std::vector<SVec> phi(n);
  phi[0] = graded.unit();
  for (uint32_t idx = 1; idx < n; ++idx) {
    std::vector<uint32_t> exps = P.exponents(idx);
    size_t j = ng;
    while (j > 0 && exps[j - 1] == 0) --j;
    --j;
    exps[j] -= 1;
    phi[idx] = graded.mul(phi[P.mono_index(exps)], img[j]);
  }
  SparseMat Phi = mat_from_columns(n, phi);
  if (!mat_inverse(Phi, N)) return fail("generator images do not span the codomain");

  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      SVec lhs = graded.mul(phi[a], phi[b]);
      SVec rhs = mat_apply(Phi, tgt.mul_basis(a, b));
      if (lhs != rhs)
        return fail("products differ at (" + tgt.basis_name(a) + ", " + tgt.basis_name(b) +
                    ")");
    }
  for (uint32_t jb = 0; jb < n; ++jb) {
    std::vector<Entry> items;
    for (const Entry& e : tgt.coprod_basis(jb)) {
      SVec piece = sv_kron(phi[e.idx / n], phi[e.idx % n], n);
      for (const Entry& p : piece) items.push_back({p.idx, e.val * p.val});
    }
    if (sv_gather(std::move(items)) != graded.coprod(phi[jb]))
      return fail("coproducts differ at " + tgt.basis_name(jb));
    if (tgt.counit_basis(jb) != graded.counit(phi[jb]))
      return fail("counits differ at " + tgt.basis_name(jb));
  }
  return Phi;
}

}  // namespace hopfkit
