#include "hopfkit/comodule.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <sstream>

namespace hopfkit {

namespace {

/* flat tensor -> matrix, entry (x*dim_y + y) -> (x, y) */
SparseMat reshape2(const SVec& v, uint32_t dim_x, uint32_t dim_y) {
  Triplets t;
  t.rows = dim_x;
  t.cols = dim_y;
  for (const Entry& e : v) t.add(e.idx / dim_y, e.idx % dim_y, e.val);
  return t.build();
}

SVec coords_in(const SparseMat& basis_cols, const SVec& v, uint32_t N,
               const char* what) {
  auto sol = solve(basis_cols, v, N);
  if (!sol) throw ComoduleError(std::string(what) + ": vector leaves the span");
  return sol->particular;
}

}  // namespace

std::string ComoduleAlgebra::vec_str(const SVec& v) const {
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

SVec ComoduleAlgebra::mul(const SVec& a, const SVec& b) const {
  std::vector<Entry> items;
  for (const Entry& ea : a)
    for (const Entry& eb : b) {
      Cyc c = ea.val * eb.val;
      for (const Entry& e : mul_basis(ea.idx, eb.idx)) items.push_back({e.idx, c * e.val});
    }
  return sv_gather(std::move(items));
}

SVec ComoduleAlgebra::power(const SVec& a, uint32_t e) const {
  SVec out = unit_;
  for (uint32_t i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

SparseMat ComoduleAlgebra::left_mult(const SVec& a) const {
  Triplets t;
  t.rows = dim_;
  t.cols = dim_;
  for (const Entry& ea : a)
    for (uint32_t j = 0; j < dim_; ++j)
      for (const Entry& e : mul_basis(ea.idx, j)) t.add(e.idx, j, ea.val * e.val);
  return t.build();
}

SparseMat ComoduleAlgebra::right_mult(const SVec& a) const {
  Triplets t;
  t.rows = dim_;
  t.cols = dim_;
  for (const Entry& ea : a)
    for (uint32_t j = 0; j < dim_; ++j)
      for (const Entry& e : mul_basis(j, ea.idx)) t.add(e.idx, j, ea.val * e.val);
  return t.build();
}

SVec ComoduleAlgebra::coaction(const SVec& v) const {
  std::vector<Entry> items;
  for (const Entry& e : v)
    for (const Entry& d : coaction_[e.idx]) items.push_back({d.idx, e.val * d.val});
  return sv_gather(std::move(items));
}

SparseMat ComoduleAlgebra::coaction_matrix() const {
  Triplets t;
  t.rows = hopf_->dim() * dim_;
  t.cols = dim_;
  for (uint32_t j = 0; j < dim_; ++j)
    for (const Entry& e : coaction_[j]) t.add(e.idx, j, e.val);
  return t.build();
}

namespace {

/* product in H (x) A on flattened tensors */
SVec mul_ha(const Hopf& h, const ComoduleAlgebra& a, const SVec& u, const SVec& v) {
  const uint32_t da = a.dim();
  std::vector<Entry> items;
  for (const Entry& eu : u) {
    uint32_t h1 = eu.idx / da, a1 = eu.idx % da;
    for (const Entry& ev : v) {
      uint32_t h2 = ev.idx / da, a2 = ev.idx % da;
      Cyc c = eu.val * ev.val;
      for (const Entry& eh : h.mul_basis(h1, h2)) {
        Cyc ch = c * eh.val;
        for (const Entry& eb : a.mul_basis(a1, a2))
          items.push_back({eh.idx * da + eb.idx, ch * eb.val});
      }
    }
  }
  return sv_gather(std::move(items));
}

}  // namespace

void ComoduleAlgebra::verify_axioms() const {
  const Hopf& h = *hopf_;
  const uint32_t n = dim_, dh = h.dim();

  for (uint32_t j = 0; j < n; ++j) {
    SVec ej = sv_unit(j, N_);
    if (mul(unit_, ej) != ej || mul(ej, unit_) != ej)
      throw ComoduleError("unit axiom fails at " + names_[j]);
  }

  for (uint32_t j = 0; j < n; ++j) {
    const SVec& d = coaction_[j];
    std::vector<Entry> l, r, c;
    for (const Entry& e : d) {
      uint32_t hh = e.idx / n, aa = e.idx % n;
      for (const Entry& f : h.coprod_basis(hh)) l.push_back({f.idx * n + aa, e.val * f.val});
      for (const Entry& f : coaction_[aa])
        r.push_back({hh * dh * n + f.idx, e.val * f.val});
      Cyc eps = h.counit_basis(hh);
      if (!eps.is_zero()) c.push_back({aa, e.val * eps});
    }
    if (sv_gather(std::move(l)) != sv_gather(std::move(r)))
      throw ComoduleError("coaction is not coassociative at " + names_[j]);
    if (sv_gather(std::move(c)) != sv_unit(j, N_))
      throw ComoduleError("coaction counit axiom fails at " + names_[j]);
  }

  if (coaction(unit_) != sv_kron(h.unit(), unit_, n))
    throw ComoduleError("coaction of the unit is not 1 (x) 1");

  std::atomic<uint64_t> worst{UINT64_MAX};
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t a = 0; a < (int64_t)n; ++a) {
    for (uint32_t b = 0; b < n; ++b) {
      if (coaction(mul_basis((uint32_t)a, b)) !=
          mul_ha(h, *this, coaction_[a], coaction_[b])) {
        uint64_t key = (uint64_t)a * n + b;
        uint64_t cur = worst.load();
        while (key < cur && !worst.compare_exchange_weak(cur, key)) {
        }
      }
    }
  }
  if (worst.load() != UINT64_MAX) {
    uint32_t a = (uint32_t)(worst.load() / n), b = (uint32_t)(worst.load() % n);
    throw ComoduleError("coaction is not an algebra map at (" + names_[a] + ", " + names_[b] +
                        ")");
  }

  if (layer_) {
    if (!h.layers())
      throw ComoduleError("a graded comodule algebra needs a graded Hopf algebra");
    const auto& L = *layer_;
    const auto& LH = *h.layers();
    if (L.size() != n) throw ComoduleError("grading size mismatch");
    for (const Entry& e : unit_)
      if (L[e.idx] != 0) throw ComoduleError("unit is not in degree 0");
    for (uint32_t a = 0; a < n; ++a)
      for (uint32_t b = 0; b < n; ++b)
        for (const Entry& e : mul_basis(a, b))
          if (L[e.idx] != L[a] + L[b])
            throw ComoduleError("product is not graded at (" + names_[a] + ", " + names_[b] +
                                ")");
    for (uint32_t j = 0; j < n; ++j)
      for (const Entry& e : coaction_[j])
        if (LH[e.idx / n] + L[e.idx % n] != L[j])
          throw ComoduleError("coaction is not graded at " + names_[j]);
  }
}

ComoduleAlgebra ComoduleAlgebra::from_tables(const Hopf& h, uint32_t dim,
                                             std::vector<SVec> mult_table, SVec unit,
                                             std::vector<SVec> coaction_table,
                                             std::vector<std::string> basis_names,
                                             std::optional<std::vector<uint32_t>> layer_of,
                                             std::optional<Presentation> pres) {
  if (mult_table.size() != (size_t)dim * dim || coaction_table.size() != dim ||
      basis_names.size() != dim)
    throw ComoduleError("table sizes do not match the dimension");

  ComoduleAlgebra a;
  a.hopf_ = &h;
  a.dim_ = dim;
  a.N_ = h.field_order();
  a.mul_ = std::move(mult_table);
  a.unit_ = std::move(unit);
  a.coaction_ = std::move(coaction_table);
  a.names_ = std::move(basis_names);
  a.layer_ = std::move(layer_of);
  a.pres_ = std::move(pres);

  auto assoc = [&](uint32_t x, uint32_t y, uint32_t z) {
    SVec l, r;
    for (const Entry& e : a.mul_basis(x, y))
      for (const Entry& f : a.mul_basis(e.idx, z)) l.push_back({f.idx, e.val * f.val});
    for (const Entry& e : a.mul_basis(y, z))
      for (const Entry& f : a.mul_basis(x, e.idx)) r.push_back({f.idx, e.val * f.val});
    return sv_gather(std::move(l)) == sv_gather(std::move(r));
  };
  if (dim <= 64) {
    for (uint32_t x = 0; x < dim; ++x)
      for (uint32_t y = 0; y < dim; ++y)
        for (uint32_t z = 0; z < dim; ++z)
          if (!assoc(x, y, z))
            throw ComoduleError("product is not associative at (" + a.names_[x] + ", " +
                                a.names_[y] + ", " + a.names_[z] + ")");
  } else {
    std::mt19937_64 rng(0xa550c1a7e);
    std::uniform_int_distribution<uint32_t> pick(0, dim - 1);
    for (size_t s = 0; s < 100000; ++s) {
      uint32_t x = pick(rng), y = pick(rng), z = pick(rng);
      if (!assoc(x, y, z))
        throw ComoduleError("product is not associative at (" + a.names_[x] + ", " +
                            a.names_[y] + ", " + a.names_[z] + ")");
    }
  }

  a.verify_axioms();
  if (a.layer_) {
    /* Loewy-graded: the Loewy series must be the partial sums of the grading */
    const auto& loewy = a.loewy_series();
    for (uint32_t l = 0; l < loewy.size(); ++l)
      if (loewy[l] != a.layer_span_upto(l))
        throw ComoduleError("the grading is not Loewy: level " + std::to_string(l) +
                            " of the Loewy series differs from the span of degrees <= " +
                            std::to_string(l));
  }
  return a;
}

ComoduleAlgebra ComoduleAlgebra::build(const Hopf& h, const Presentation& pres,
                                       const std::vector<SVec>& coaction_gens,
                                       std::optional<std::vector<uint32_t>> layer_of) {
  Algebra alg = Algebra::build(pres);
  if (auto bad = alg.associativity_failure())
    throw ComoduleError("product is not associative: " + *bad);
  if (pres.field_order != h.field_order())
    throw ComoduleError("field order of the presentation differs from the Hopf algebra");
  const uint32_t dim = alg.dim();
  const size_t ngens = pres.gens.size();
  if (coaction_gens.size() != ngens)
    throw ComoduleError("the coaction must be given on every generator");
  for (const SVec& v : coaction_gens)
    for (const Entry& e : v)
      if (e.idx >= h.dim() * dim) throw ComoduleError("coaction entry out of range");

  std::vector<SVec> mult((size_t)dim * dim);
  for (uint32_t a = 0; a < dim; ++a)
    for (uint32_t b = 0; b < dim; ++b) mult[(size_t)a * dim + b] = alg.mul_basis(a, b);
  std::vector<std::string> names(dim);
  for (uint32_t i = 0; i < dim; ++i) names[i] = alg.mono_name(i);

  ComoduleAlgebra a;
  a.hopf_ = &h;
  a.dim_ = dim;
  a.N_ = h.field_order();
  a.mul_ = std::move(mult);
  a.unit_ = sv_unit(0, a.N_);
  a.names_ = std::move(names);
  a.pres_ = pres;

  a.coaction_.resize(dim);
  a.coaction_[0] = sv_kron(h.unit(), a.unit_, dim);
  for (uint32_t idx = 1; idx < dim; ++idx) {
    std::vector<uint32_t> exps = pres.exponents(idx);
    size_t j = ngens;
    while (j > 0 && exps[j - 1] == 0) --j;
    --j;
    exps[j] -= 1;
    uint32_t prefix = pres.mono_index(exps);
    a.coaction_[idx] = mul_ha(h, a, a.coaction_[prefix], coaction_gens[j]);
  }

  a.layer_ = std::move(layer_of);
  a.verify_axioms();
  if (a.layer_) {
    const auto& loewy = a.loewy_series();
    for (uint32_t l = 0; l < loewy.size(); ++l)
      if (loewy[l] != a.layer_span_upto(l))
        throw ComoduleError("the grading is not Loewy: level " + std::to_string(l) +
                            " of the Loewy series differs from the span of degrees <= " +
                            std::to_string(l));
  }
  return a;
}

const Subspace& ComoduleAlgebra::coinvariants() const {
  if (coinv_) return *coinv_;
  const Hopf& h = *hopf_;
  SparseMat m = coaction_matrix();
  Triplets u;
  u.rows = m.rows;
  u.cols = dim_;
  for (uint32_t a = 0; a < dim_; ++a)
    for (const Entry& e : h.unit()) u.add(e.idx * dim_ + a, a, e.val);
  SparseMat ker = kernel(mat_sub(m, u.build()), N_);
  coinv_ = Subspace::from_vectors(dim_, N_, ker.row);
  return *coinv_;
}

const std::vector<Subspace>& ComoduleAlgebra::loewy_series() const {
  if (loewy_) return *loewy_;
  const Hopf& h = *hopf_;
  const auto& filt = h.coradical_filtration();
  SparseMat cm = coaction_matrix();

  std::vector<Subspace> series;
  for (const Subspace& hn : filt) {
    std::vector<SVec> gens;
    for (const SVec& hb : hn.basis())
      for (uint32_t a = 0; a < dim_; ++a) gens.push_back(sv_kron(hb, sv_unit(a, N_), dim_));
    Subspace target = Subspace::from_vectors(h.dim() * dim_, N_, gens);
    series.push_back(preimage(cm, target));
  }
  if (series.back().dim() != dim_)
    throw ComoduleError("the Loewy series does not exhaust the algebra");
  for (size_t i = 0; i + 1 < series.size(); ++i)
    if (!series[i + 1].contains(series[i]))
      throw ComoduleError("the Loewy series is not a filtration");

  /* compatibility lambda(A_n) in sum_i H_i (x) A_{n-i}, tested through the
   * flag identity: the sum equals the intersection over k of
   * H_{k-1} (x) A + H (x) A_{n-k} (with the k = 0 term H (x) A_n) */
  std::vector<SparseMat> qh, qa;
  for (const Subspace& s : filt) qh.push_back(s.quotient_projection());
  for (const Subspace& s : series) qa.push_back(s.quotient_projection());
  for (size_t nlev = 0; nlev < series.size(); ++nlev) {
    for (const SVec& v : series[nlev].basis()) {
      SparseMat t = reshape2(coaction(v), h.dim(), dim_);
      if (!mat_mul(t, mat_transpose(qa[nlev])).is_zero())
        throw ComoduleError("the Loewy series is not compatible with the coradical filtration");
      for (size_t k = 1; k <= nlev; ++k)
        if (!mat_mul(mat_mul(qh[k - 1], t), mat_transpose(qa[nlev - k])).is_zero())
          throw ComoduleError(
              "the Loewy series is not compatible with the coradical filtration");
    }
  }

  /* multiplicativity A_i A_j in A_{i+j} on echelon complement generators */
  const uint32_t top = (uint32_t)series.size() - 1;
  std::vector<std::vector<SVec>> comp(series.size());
  {
    std::set<uint32_t> seen;
    for (size_t l = 0; l < series.size(); ++l) {
      const auto& piv = series[l].pivots();
      for (size_t r = 0; r < piv.size(); ++r)
        if (!seen.count(piv[r])) {
          seen.insert(piv[r]);
          comp[l].push_back(series[l].basis()[r]);
        }
    }
  }
  for (uint32_t i = 0; i <= top; ++i)
    for (uint32_t j = 0; j <= top; ++j) {
      uint32_t lev = std::min(i + j, top);
      for (const SVec& u : comp[i])
        for (const SVec& v : comp[j])
          if (!series[lev].contains(mul(u, v)))
            throw ComoduleError("the Loewy series is not multiplicative at levels (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
    }

  loewy_ = std::move(series);
  return *loewy_;
}

uint32_t ComoduleAlgebra::layer_count() const {
  if (!layer_) throw ComoduleError("object carries no grading");
  uint32_t m = 0;
  for (uint32_t l : *layer_) m = std::max(m, l);
  return m + 1;
}

Subspace ComoduleAlgebra::layer_span(uint32_t n) const {
  if (!layer_) throw ComoduleError("object carries no grading");
  std::vector<SVec> gens;
  for (uint32_t i = 0; i < dim_; ++i)
    if ((*layer_)[i] == n) gens.push_back(sv_unit(i, N_));
  return Subspace::from_vectors(dim_, N_, gens);
}

Subspace ComoduleAlgebra::layer_span_upto(uint32_t n) const {
  if (!layer_) throw ComoduleError("object carries no grading");
  std::vector<SVec> gens;
  for (uint32_t i = 0; i < dim_; ++i)
    if ((*layer_)[i] <= n) gens.push_back(sv_unit(i, N_));
  return Subspace::from_vectors(dim_, N_, gens);
}

SparseMat ComoduleAlgebra::grading_projector(uint32_t n) const {
  if (!layer_) throw ComoduleError("object carries no grading");
  Triplets t;
  t.rows = dim_;
  t.cols = dim_;
  for (uint32_t i = 0; i < dim_; ++i)
    if ((*layer_)[i] == n) t.add(i, i, Cyc::one(N_));
  return t.build();
}

Subspace ComoduleAlgebra::right_ideal(const std::vector<SVec>& gens) const {
  RowSpace rs(dim_, N_);
  std::vector<SVec> work;
  for (const SVec& g : gens)
    if (rs.insert(g)) work.push_back(g);
  while (!work.empty()) {
    SVec v = std::move(work.back());
    work.pop_back();
    for (uint32_t j = 0; j < dim_; ++j) {
      SVec w = mul(v, sv_unit(j, N_));
      if (rs.insert(w)) work.push_back(std::move(w));
    }
  }
  return Subspace::from_rowspace(rs);
}

ComoduleAlgebra regular_comodule_algebra(const Hopf& h) {
  const uint32_t n = h.dim();
  std::vector<SVec> mult((size_t)n * n), coact(n);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) mult[(size_t)a * n + b] = h.mul_basis(a, b);
  for (uint32_t a = 0; a < n; ++a) coact[a] = h.coprod_basis(a);
  std::vector<std::string> names(n);
  for (uint32_t i = 0; i < n; ++i) names[i] = h.basis_name(i);
  return ComoduleAlgebra::from_tables(h, n, std::move(mult), h.unit(), std::move(coact),
                                      std::move(names), h.layers(), h.pres());
}

ComoduleAlgebra coideal_subalgebra_comodule(const Hopf& h, const Subspace& k) {
  CoidealCheck ck = check_coideal_subalgebra(h, k);
  if (!ck.ok) throw ComoduleError("not a coideal subalgebra: " + ck.certificate);
  const uint32_t d = k.dim(), N = h.field_order();
  SparseMat bk = k.inclusion();
  std::vector<SVec> mult((size_t)d * d), coact(d);
  for (uint32_t a = 0; a < d; ++a)
    for (uint32_t b = 0; b < d; ++b) {
      SVec p = h.mul(k.basis()[a], k.basis()[b]);
      mult[(size_t)a * d + b] = coords_in(bk, p, N, "coideal subalgebra product");
    }
  for (uint32_t a = 0; a < d; ++a) {
    SparseMat t = reshape2(h.coprod(k.basis()[a]), h.dim(), h.dim());
    std::vector<Entry> items;
    for (uint32_t hh = 0; hh < t.rows; ++hh) {
      if (t.row[hh].empty()) continue;
      SVec c = coords_in(bk, t.row[hh], N, "coideal subalgebra coaction");
      for (const Entry& e : c) items.push_back({hh * d + e.idx, e.val});
    }
    coact[a] = sv_gather(std::move(items));
  }
  SVec unit = coords_in(bk, h.unit(), N, "coideal subalgebra unit");
  std::vector<std::string> names(d);
  for (uint32_t i = 0; i < d; ++i) names[i] = h.vec_str(k.basis()[i]);
  return ComoduleAlgebra::from_tables(h, d, std::move(mult), std::move(unit),
                                      std::move(coact), std::move(names));
}

ComoduleAlgebra degree_zero_part(const ComoduleAlgebra& a) {
  Subspace z = a.layer_span(0);
  const uint32_t d = z.dim(), N = a.field_order(), dh = a.hopf().dim();
  SparseMat bz = z.inclusion();
  std::vector<SVec> mult((size_t)d * d), coact(d);
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j)
      mult[(size_t)i * d + j] =
          coords_in(bz, a.mul(z.basis()[i], z.basis()[j]), N, "degree zero product");
  for (uint32_t i = 0; i < d; ++i) {
    SparseMat t = reshape2(a.coaction(z.basis()[i]), dh, a.dim());
    std::vector<Entry> items;
    for (uint32_t hh = 0; hh < t.rows; ++hh) {
      if (t.row[hh].empty()) continue;
      SVec c = coords_in(bz, t.row[hh], N, "degree zero coaction");
      for (const Entry& e : c) items.push_back({hh * d + e.idx, e.val});
    }
    coact[i] = sv_gather(std::move(items));
  }
  SVec unit = coords_in(bz, a.unit(), N, "degree zero unit");
  std::vector<std::string> names(d);
  for (uint32_t i = 0; i < d; ++i) names[i] = a.vec_str(z.basis()[i]);
  return ComoduleAlgebra::from_tables(a.hopf(), d, std::move(mult), std::move(unit),
                                      std::move(coact), std::move(names));
}

namespace {

/* echelon complements of a filtration: new-pivot rows per level */
void echelon_complements(const std::vector<Subspace>& filt, std::vector<SVec>* cols,
                         std::vector<uint32_t>* lay, std::vector<uint32_t>* piv) {
  std::set<uint32_t> seen;
  for (size_t l = 0; l < filt.size(); ++l) {
    const auto& p = filt[l].pivots();
    for (size_t r = 0; r < p.size(); ++r)
      if (!seen.count(p[r])) {
        seen.insert(p[r]);
        cols->push_back(filt[l].basis()[r]);
        lay->push_back((uint32_t)l);
        piv->push_back(p[r]);
      }
  }
}

}  // namespace

ComoduleAlgebra associated_graded_comodule(const ComoduleAlgebra& a, const Hopf& gr_h) {
  const Hopf& h = a.hopf();
  const uint32_t n = a.dim(), N = a.field_order(), dh = h.dim();
  if (gr_h.dim() != dh || gr_h.field_order() != N)
    throw ComoduleError("graded Hopf algebra does not match the base of the comodule");
  if (!gr_h.layers()) throw ComoduleError("the base of gr_l must be graded");

  const auto& loewy = a.loewy_series();
  std::vector<SVec> acols;
  std::vector<uint32_t> alay, apiv;
  echelon_complements(loewy, &acols, &alay, &apiv);
  SparseMat ta = mat_from_columns(n, acols);
  auto tai = mat_inverse(ta, N);
  if (!tai) throw ComoduleError("echelon complement basis is singular");

  std::vector<SVec> hcols;
  std::vector<uint32_t> hlay, hpiv;
  echelon_complements(h.coradical_filtration(), &hcols, &hlay, &hpiv);
  SparseMat th = mat_from_columns(dh, hcols);
  auto thi = mat_inverse(th, N);
  if (!thi) throw ComoduleError("echelon complement basis is singular");
  if (hlay != *gr_h.layers())
    throw ComoduleError("gr_h is not the associated graded Hopf algebra of the base");

  std::vector<SVec> mult((size_t)n * n), coact(n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      SVec w = mat_apply(*tai, a.mul(acols[i], acols[j]));
      SVec keep;
      for (const Entry& e : w) {
        if (alay[e.idx] > alay[i] + alay[j])
          throw ComoduleError("Loewy level products exceed their degree");
        if (alay[e.idx] == alay[i] + alay[j]) keep.push_back(e);
      }
      mult[(size_t)i * n + j] = std::move(keep);
    }
  for (uint32_t i = 0; i < n; ++i) {
    SVec w = a.coaction(acols[i]);
    std::vector<Entry> items;
    for (const Entry& e : w) {
      uint32_t hh = e.idx / n, aa = e.idx % n;
      SVec hc = mat_col(*thi, hh);
      SVec ac = mat_col(*tai, aa);
      for (const Entry& eh : hc)
        for (const Entry& ea : ac) items.push_back({eh.idx * n + ea.idx, e.val * eh.val * ea.val});
    }
    SVec full = sv_gather(std::move(items));
    SVec keep;
    for (const Entry& e : full) {
      uint32_t lsum = hlay[e.idx / n] + alay[e.idx % n];
      if (lsum > alay[i]) throw ComoduleError("coaction exceeds the Loewy degree");
      if (lsum == alay[i]) keep.push_back(e);
    }
    coact[i] = std::move(keep);
  }
  SVec unit = mat_apply(*tai, a.unit());
  std::vector<std::string> names(n);
  for (uint32_t i = 0; i < n; ++i) names[i] = a.basis_name(apiv[i]);
  return ComoduleAlgebra::from_tables(gr_h, n, std::move(mult), std::move(unit),
                                      std::move(coact), std::move(names), alay);
}

SimplicityVerdict is_right_simple(const ComoduleAlgebra& a) {
  const Hopf& h = a.hopf();
  const uint32_t N = a.field_order(), dh = h.dim();
  const auto& gl = h.grouplikes();  // errors unless H_0 is a split group algebra
  const Subspace& a0 = a.loewy_series()[0];
  const uint32_t d0 = a0.dim();
  SparseMat b0 = a0.inclusion();
  SparseMat ca = mat_mul(a.coaction_matrix(), b0);

  auto right_ideal_in_a0 = [&](const SVec& v) {
    RowSpace rs(a.dim(), N);
    std::vector<SVec> work;
    if (rs.insert(v)) work.push_back(v);
    while (!work.empty()) {
      SVec w = std::move(work.back());
      work.pop_back();
      for (const SVec& b : a0.basis()) {
        SVec p = a.mul(w, b);
        if (rs.insert(p)) work.push_back(std::move(p));
      }
    }
    return Subspace::from_rowspace(rs);
  };

  uint32_t decomposed = 0;
  bool multiplicity_free = true;
  for (uint32_t g : gl) {
    Triplets u;
    u.rows = dh * a.dim();
    u.cols = d0;
    for (uint32_t c = 0; c < d0; ++c)
      for (const Entry& e : a0.basis()[c]) u.add((size_t)g * a.dim() + e.idx, c, e.val);
    SparseMat comp = kernel(mat_sub(ca, u.build()), N);
    decomposed += comp.rows;
    if (comp.rows > 1) multiplicity_free = false;
    for (const SVec& cvec : comp.row) {
      SVec v = mat_apply(b0, cvec);
      Subspace ideal = right_ideal_in_a0(v);
      if (ideal.dim() < d0) return {false, ideal};
    }
  }
  if (decomposed != d0)
    throw ComoduleError("the degree zero part does not decompose over the group-likes");
  if (!multiplicity_free)
    throw ComoduleError("right simplicity is undecidable with implemented criterion: "
                        "a homogeneous component of the degree zero part has dimension > 1");
  return {true, Subspace(a.dim(), N)};
}

namespace {

struct BosShape {
  uint32_t group_bound = 0;
  std::vector<uint32_t> cexp;  // Delta x_i = x_i (x) 1 + g^{c_i} (x) x_i
};

BosShape bosonization_shape(const Hopf& h) {
  if (!h.pres() || !h.layers())
    throw ComoduleError("the Hopf algebra is not presented as a graded bosonization");
  const Presentation& p = *h.pres();
  const size_t ng = p.gens.size();
  BosShape s;
  s.group_bound = p.gens[0].bound;
  std::vector<uint32_t> exps(ng, 0);
  exps[0] = 1;
  uint32_t gidx = p.mono_index(exps);
  if (h.coprod_basis(gidx) != sv_unit((size_t)gidx * h.dim() + gidx, h.field_order()))
    throw ComoduleError("the first generator of the presentation is not group-like");
  for (size_t i = 1; i < ng; ++i) {
    std::vector<uint32_t> xe(ng, 0);
    xe[i] = 1;
    uint32_t xi = p.mono_index(xe);
    std::optional<uint32_t> c;
    for (const Entry& e : h.coprod_basis(xi)) {
      uint32_t l = e.idx / h.dim(), r = e.idx % h.dim();
      if (l == xi && r == 0 && e.val.is_one()) continue;
      if (r == xi && e.val.is_one()) {
        std::vector<uint32_t> le = p.exponents(l);
        bool group = true;
        for (size_t j = 1; j < ng; ++j) group = group && le[j] == 0;
        if (group && !c) {
          c = le[0];
          continue;
        }
      }
      throw ComoduleError("generator " + p.gens[i].name +
                          " is not skew-primitive over the group part");
    }
    if (!c) throw ComoduleError("generator " + p.gens[i].name +
                                " is not skew-primitive over the group part");
    s.cexp.push_back(*c);
  }
  return s;
}

/* index of the pure group monomial when the basis vector is one */
std::optional<uint32_t> group_monomial_exp(const Presentation& p, uint32_t idx) {
  std::vector<uint32_t> e = p.exponents(idx);
  for (size_t j = 1; j < e.size(); ++j)
    if (e[j] != 0) return std::nullopt;
  return e[0];
}

/* p : H -> kG, monomial g^a x^e -> [e = 0] g^a */
SparseMat group_projection(const Hopf& h) {
  const Presentation& p = *h.pres();
  Triplets t;
  t.rows = h.dim();
  t.cols = h.dim();
  for (uint32_t i = 0; i < h.dim(); ++i)
    if (group_monomial_exp(p, i)) t.add(i, i, Cyc::one(h.field_order()));
  return t.build();
}

/* theta(c) = c_1 S(p(c_2)), the projection of the bosonization onto its
 * Nichols part; theta(h_1) p(h_2) = h is verified */
SparseMat nichols_projection(const Hopf& h, const SparseMat& pg) {
  const uint32_t n = h.dim();
  SparseMat sp = mat_mul(h.antipode(), pg);
  Triplets t;
  t.rows = n;
  t.cols = n;
  for (uint32_t c = 0; c < n; ++c) {
    std::vector<Entry> items;
    for (const Entry& e : h.coprod_basis(c)) {
      uint32_t a = e.idx / n, b = e.idx % n;
      SVec s = mat_col(sp, b);
      if (s.empty()) continue;
      SVec prod = h.mul(sv_unit(a, h.field_order()), s);
      for (const Entry& f : prod) items.push_back({f.idx, e.val * f.val});
    }
    for (const Entry& f : sv_gather(std::move(items))) t.add(f.idx, c, f.val);
  }
  SparseMat theta = t.build();
  for (uint32_t c = 0; c < n; ++c) {
    std::vector<Entry> items;
    for (const Entry& e : h.coprod_basis(c)) {
      uint32_t a = e.idx / n, b = e.idx % n;
      SVec tb = mat_col(theta, a);
      SVec pb = mat_col(pg, b);
      if (tb.empty() || pb.empty()) continue;
      for (const Entry& f : h.mul(tb, pb)) items.push_back({f.idx, e.val * f.val});
    }
    if (sv_gather(std::move(items)) != sv_unit(c, h.field_order()))
      throw ComoduleError("bosonization projections do not reconstruct the identity");
  }
  return theta;
}

}  // namespace

Diagram diagram(const ComoduleAlgebra& a) {
  const Hopf& h = a.hopf();
  const uint32_t n = a.dim(), N = a.field_order(), dh = h.dim();
  bosonization_shape(h);
  if (!a.layers()) throw ComoduleError("the diagram needs a Loewy-graded comodule algebra");

  SparseMat m = mat_mul(mat_kron(SparseMat::identity(dh, N), a.grading_projector(0)),
                        a.coaction_matrix());
  std::vector<SVec> hgens;
  for (uint32_t hh = 0; hh < dh; ++hh)
    hgens.push_back(sv_kron(sv_unit(hh, N), a.unit(), n));
  Subspace honeone = Subspace::from_vectors(dh * n, N, hgens);

  Diagram d;
  std::vector<SVec> all;
  for (uint32_t l = 0; l < a.layer_count(); ++l) {
    SparseMat inc = a.layer_span(l).inclusion();
    Subspace pn = preimage(mat_mul(m, inc), honeone);
    for (const SVec& c : pn.basis()) {
      SVec v = mat_apply(inc, c);
      d.basis.push_back(v);
      d.layer.push_back(l);
      all.push_back(v);
    }
  }
  d.space = Subspace::from_vectors(n, N, all);
  Subspace whole = preimage(m, honeone);

  /* (1): B_A(0) = k 1 and B_A is the direct sum of its layers */
  if (d.space.dim() != whole.dim() || d.space != whole)
    throw ComoduleError("diagram clause (1): the diagram is not the sum of its layers");
  {
    Subspace k1 = Subspace::from_vectors(n, N, {a.unit()});
    uint32_t zero_cnt = 0;
    for (size_t i = 0; i < d.basis.size(); ++i) zero_cnt += d.layer[i] == 0;
    std::vector<SVec> zvecs(d.basis.begin(), d.basis.begin() + zero_cnt);
    if (Subspace::from_vectors(n, N, zvecs) != k1)
      throw ComoduleError("diagram clause (1): degree zero is not k 1");
  }

  const uint32_t db = d.space.dim();
  SparseMat bb = mat_from_columns(n, d.basis);
  const auto& lh = *h.layers();
  const auto& la = *a.layers();

  /* (2): subcomodule, subalgebra, graded coaction */
  for (uint32_t i = 0; i < db; ++i) {
    SparseMat t = reshape2(a.coaction(d.basis[i]), dh, n);
    for (uint32_t hh = 0; hh < dh; ++hh) {
      if (t.row[hh].empty()) continue;
      if (!d.space.contains(t.row[hh]))
        throw ComoduleError("diagram clause (2): the diagram is not a subcomodule");
      for (const Entry& e : t.row[hh])
        if (lh[hh] + la[e.idx] != d.layer[i])
          throw ComoduleError("diagram clause (2): the coaction is not graded on the diagram");
    }
    for (uint32_t j = 0; j < db; ++j)
      if (!d.space.contains(a.mul(d.basis[i], d.basis[j])))
        throw ComoduleError("diagram clause (2): the diagram is not a subalgebra");
  }

  /* (3): iota into the Nichols part, injective homogeneous comodule algebra map */
  SparseMat pg = group_projection(h);
  nichols_projection(h, pg);  // also validates the projection identity
  {
    Triplets t;
    t.rows = dh;
    t.cols = db;
    for (uint32_t i = 0; i < db; ++i) {
      SVec w = mat_apply(m, d.basis[i]);
      SparseMat ws = reshape2(w, dh, n);
      SVec hv;
      Cyc lead = Cyc::zero(N);
      uint32_t lead_idx = 0;
      for (const Entry& e : a.unit()) {
        lead = e.val;
        lead_idx = e.idx;
        break;
      }
      for (uint32_t hh = 0; hh < dh; ++hh) {
        if (ws.row[hh].empty()) continue;
        Cyc c = sv_get(ws.row[hh], lead_idx, N) * lead.inverse();
        if (!c.is_zero()) hv.push_back({hh, c});
      }
      if (w != sv_kron(hv, a.unit(), n))
        throw ComoduleError("diagram clause (3): the projected coaction does not land in H (x) 1");
      for (const Entry& e : hv) t.add(e.idx, i, e.val);
    }
    d.iota = t.build();
  }
  if (rref(d.iota, N).pivots.size() != db)
    throw ComoduleError("diagram clause (3): iota is not injective");
  const Presentation& hp = *h.pres();
  for (uint32_t i = 0; i < db; ++i) {
    SVec col = mat_col(d.iota, i);
    for (const Entry& e : col) {
      if (lh[e.idx] != d.layer[i])
        throw ComoduleError("diagram clause (3): iota is not homogeneous");
      std::vector<uint32_t> ex = hp.exponents(e.idx);
      if (ex[0] != 0)
        throw ComoduleError("diagram clause (3): iota does not land in the Nichols part");
    }
  }
  {
    SVec cu = coords_in(bb, a.unit(), N, "diagram unit");
    if (mat_apply(d.iota, cu) != h.unit())
      throw ComoduleError("diagram clause (3): iota does not preserve the unit");
    for (uint32_t i = 0; i < db; ++i) {
      for (uint32_t j = 0; j < db; ++j) {
        SVec pc = coords_in(bb, a.mul(d.basis[i], d.basis[j]), N, "diagram product");
        if (mat_apply(d.iota, pc) != h.mul(mat_col(d.iota, i), mat_col(d.iota, j)))
          throw ComoduleError("diagram clause (3): iota is not an algebra map");
      }
      /* comodule map: Delta(iota v) = (id (x) iota) lambda(v) */
      SVec lhs = h.coprod(mat_col(d.iota, i));
      SparseMat t = reshape2(a.coaction(d.basis[i]), dh, n);
      std::vector<Entry> rhs;
      for (uint32_t hh = 0; hh < dh; ++hh) {
        if (t.row[hh].empty()) continue;
        SVec c = coords_in(bb, t.row[hh], N, "diagram coaction");
        for (const Entry& e : mat_apply(d.iota, c)) rhs.push_back({hh * dh + e.idx, e.val});
      }
      if (lhs != sv_gather(std::move(rhs)))
        throw ComoduleError("diagram clause (3): iota is not a comodule map");
    }
  }

  /* (4): no degree one part forces the trivial diagram */
  {
    bool has1 = false;
    for (uint32_t l : d.layer) has1 = has1 || l == 1;
    if (!has1 && db != 1)
      throw ComoduleError("diagram clause (4): degree one vanishes but the diagram is not k 1");
  }

  /* (5): iota of degree one is a group-comodule inside V */
  {
    std::vector<SVec> wcols;
    for (uint32_t i = 0; i < db; ++i)
      if (d.layer[i] == 1) wcols.push_back(mat_col(d.iota, i));
    Subspace w = Subspace::from_vectors(dh, N, wcols);
    BosShape shape = bosonization_shape(h);
    std::set<uint32_t> cvals(shape.cexp.begin(), shape.cexp.end());
    for (const SVec& v : w.basis()) {
      for (uint32_t c : cvals) {
        SVec proj;
        for (const Entry& e : v) {
          std::vector<uint32_t> ex = hp.exponents(e.idx);
          size_t which = 0;
          for (size_t j = 1; j < ex.size(); ++j)
            if (ex[j] != 0) which = j;
          if (shape.cexp[which - 1] == c) proj.push_back(e);
        }
        if (!proj.empty() && !w.contains(proj))
          throw ComoduleError("diagram clause (5): iota of degree one is not a group subcomodule");
      }
    }
  }

  /* (6): multiplication B_A (x) A(0) -> A is injective */
  {
    Subspace a0 = a.layer_span(0);
    std::vector<SVec> cols;
    for (uint32_t i = 0; i < db; ++i)
      for (const SVec& f : a0.basis()) cols.push_back(a.mul(d.basis[i], f));
    SparseMat mm = mat_from_columns(n, cols);
    if (rref(mm, N).pivots.size() != cols.size())
      throw ComoduleError("diagram clause (6): multiplication from the diagram is not injective");
  }

  return d;
}

BraidedData braided_data_from_diagram(const ComoduleAlgebra& a, const Diagram& d) {
  const Hopf& h = a.hopf();
  const uint32_t n = a.dim(), N = a.field_order(), dh = h.dim();
  const uint32_t db = d.space.dim();
  SparseMat bb = mat_from_columns(n, d.basis);
  SparseMat pg = group_projection(h);
  SparseMat theta = nichols_projection(h, pg);

  BraidedData b;
  b.dim = db;
  b.unit = coords_in(bb, a.unit(), N, "diagram unit");
  b.mult.resize((size_t)db * db);
  for (uint32_t i = 0; i < db; ++i)
    for (uint32_t j = 0; j < db; ++j)
      b.mult[(size_t)i * db + j] =
          coords_in(bb, a.mul(d.basis[i], d.basis[j]), N, "diagram product");
  b.coaction_nichols.resize(db);
  b.coaction_group.resize(db);
  for (uint32_t i = 0; i < db; ++i) {
    SparseMat t = reshape2(a.coaction(d.basis[i]), dh, n);
    std::vector<Entry> nich, grp;
    for (uint32_t hh = 0; hh < dh; ++hh) {
      if (t.row[hh].empty()) continue;
      SVec c = coords_in(bb, t.row[hh], N, "diagram coaction");
      for (const Entry& eh : mat_col(theta, hh))
        for (const Entry& ec : c) nich.push_back({eh.idx * db + ec.idx, eh.val * ec.val});
      for (const Entry& eh : mat_col(pg, hh))
        for (const Entry& ec : c) grp.push_back({eh.idx * db + ec.idx, eh.val * ec.val});
    }
    b.coaction_nichols[i] = sv_gather(std::move(nich));
    b.coaction_group[i] = sv_gather(std::move(grp));
  }
  b.names.resize(db);
  for (uint32_t i = 0; i < db; ++i) b.names[i] = a.vec_str(d.basis[i]);
  b.layers = d.layer;

  /* conjugation action of the homogeneous degree-zero basis */
  const Presentation& hp = *h.pres();
  Subspace a0 = a.layer_span(0);
  for (const SVec& ef : a0.basis()) {
    SVec cf = a.coaction(ef);
    SparseMat t = reshape2(cf, dh, n);
    std::optional<uint32_t> deg;
    for (uint32_t hh = 0; hh < dh; ++hh) {
      if (t.row[hh].empty()) continue;
      if (deg || t.row[hh] != ef)
        throw ComoduleError("degree zero basis vector " + a.vec_str(ef) +
                            " is not homogeneous for the group coaction");
      deg = hh;
    }
    if (!deg) throw ComoduleError("degree zero basis vector has no coaction");
    auto gexp = group_monomial_exp(hp, *deg);
    if (!gexp)
      throw ComoduleError("degree zero coaction is not supported on group monomials");
    auto inv = solve(a.left_mult(ef), a.unit(), N);
    if (!inv) throw ComoduleError("degree zero basis vector " + a.vec_str(ef) +
                                  " is not invertible");
    Triplets act;
    act.rows = db;
    act.cols = db;
    for (uint32_t j = 0; j < db; ++j) {
      SVec conj = a.mul(a.mul(ef, d.basis[j]), inv->particular);
      SVec c = coords_in(bb, conj, N, "conjugation does not preserve the diagram");
      for (const Entry& e : c) act.add(e.idx, j, e.val);
    }
    b.action[*gexp] = act.build();
  }
  return b;
}

ComoduleAlgebra smash_product(const BraidedData& b, const ComoduleAlgebra& f) {
  const Hopf& h = f.hopf();
  const uint32_t N = h.field_order(), dh = h.dim();
  const uint32_t db = b.dim, df = f.dim();
  const Presentation& hp = *h.pres();
  bosonization_shape(h);

  if (b.mult.size() != (size_t)db * db || b.coaction_nichols.size() != db ||
      b.coaction_group.size() != db || b.names.size() != db)
    throw ComoduleError("braided data sizes do not match");
  for (const auto& [k, mat] : b.action) {
    if (mat.rows != db || mat.cols != db)
      throw ComoduleError("group action has the wrong shape");
    if (mat_apply(mat, b.unit) != b.unit)
      throw ComoduleError("group action does not fix the unit");
    Triplets mt;
    mt.rows = db;
    mt.cols = db * db;
    for (uint32_t i = 0; i < db; ++i)
      for (uint32_t j = 0; j < db; ++j)
        for (const Entry& e : b.mult[(size_t)i * db + j]) mt.add(e.idx, i * db + j, e.val);
    SparseMat mm = mt.build();
    for (uint32_t i = 0; i < db; ++i)
      for (uint32_t j = 0; j < db; ++j) {
        SVec lhs = mat_apply(mat, mat_apply(mm, sv_kron(sv_unit(i, N), sv_unit(j, N), db)));
        SVec rhs = mat_apply(mm, sv_kron(mat_col(mat, i), mat_col(mat, j), db));
        if (lhs != rhs)
          throw ComoduleError("group action on the braided factor is not an algebra map");
      }
  }

  const uint32_t dim = db * df;
  auto mul_b = [&](const SVec& u, const SVec& v) {
    std::vector<Entry> items;
    for (const Entry& eu : u)
      for (const Entry& ev : v)
        for (const Entry& e : b.mult[(size_t)eu.idx * db + ev.idx])
          items.push_back({e.idx, eu.val * ev.val * e.val});
    return sv_gather(std::move(items));
  };

  std::vector<SVec> mult((size_t)dim * dim);
  for (uint32_t i = 0; i < db; ++i)
    for (uint32_t j = 0; j < df; ++j)
      for (uint32_t k = 0; k < db; ++k)
        for (uint32_t l = 0; l < df; ++l) {
          std::vector<Entry> items;
          for (const Entry& e : f.coaction_basis(j)) {
            uint32_t hh = e.idx / df, f0 = e.idx % df;
            auto gexp = group_monomial_exp(hp, hh);
            if (!gexp)
              throw ComoduleError("smash factor coaction leaves the group part at " +
                                  f.basis_name(j));
            auto it = b.action.find(*gexp);
            if (it == b.action.end())
              throw ComoduleError("no group action supplied for exponent " +
                                  std::to_string(*gexp));
            SVec y = mul_b(sv_unit(i, N), mat_col(it->second, k));
            SVec g = f.mul_basis(f0, l);
            for (const Entry& ey : y)
              for (const Entry& eg : g)
                items.push_back({ey.idx * df + eg.idx, e.val * ey.val * eg.val});
          }
          mult[(size_t)(i * df + j) * dim + (k * df + l)] = sv_gather(std::move(items));
        }

  std::vector<SVec> coact(dim);
  for (uint32_t i = 0; i < db; ++i)
    for (uint32_t j = 0; j < df; ++j) {
      std::vector<Entry> items;
      for (const Entry& er : b.coaction_nichols[i]) {
        uint32_t r = er.idx / db, b0 = er.idx % db;
        for (const Entry& eg : b.coaction_group[b0]) {
          uint32_t g1 = eg.idx / db, b00 = eg.idx % db;
          SVec rg = h.mul_basis(r, g1);
          for (const Entry& ef : f.coaction_basis(j)) {
            uint32_t g2 = ef.idx / df, f0 = ef.idx % df;
            SVec hv = h.mul(rg, sv_unit(g2, N));
            Cyc c = er.val * eg.val * ef.val;
            for (const Entry& eh : hv)
              items.push_back({eh.idx * dim + b00 * df + f0, c * eh.val});
          }
        }
      }
      coact[(size_t)i * df + j] = sv_gather(std::move(items));
    }

  SVec unit;
  for (const Entry& eb : b.unit)
    for (const Entry& ef : f.unit()) unit.push_back({eb.idx * df + ef.idx, eb.val * ef.val});
  unit = sv_gather(std::move(unit));

  std::vector<std::string> names(dim);
  for (uint32_t i = 0; i < db; ++i)
    for (uint32_t j = 0; j < df; ++j) names[(size_t)i * df + j] = b.names[i] + "#" + f.basis_name(j);

  std::optional<std::vector<uint32_t>> lay;
  if (b.layers) {
    lay.emplace(dim);
    for (uint32_t i = 0; i < db; ++i)
      for (uint32_t j = 0; j < df; ++j) (*lay)[(size_t)i * df + j] = (*b.layers)[i];
  }

  ComoduleAlgebra out = ComoduleAlgebra::from_tables(h, dim, std::move(mult), std::move(unit),
                                                     std::move(coact), std::move(names), lay);

  /* coinvariant triviality carries over from the factors */
  {
    Triplets u;
    u.rows = dh * db;
    u.cols = db;
    for (uint32_t c = 0; c < db; ++c)
      for (const Entry& e : h.unit()) u.add((size_t)e.idx * db + c, c, e.val);
    Triplets cn;
    cn.rows = dh * db;
    cn.cols = db;
    for (uint32_t c = 0; c < db; ++c)
      for (const Entry& e : b.coaction_nichols[c]) cn.add(e.idx, c, e.val);
    bool btriv = kernel(mat_sub(cn.build(), u.build()), N).rows == 1;
    if (btriv && f.coinvariants().dim() == 1 && out.coinvariants().dim() != 1)
      throw ComoduleError("smash product of factors with trivial coinvariants has "
                          "nontrivial coinvariants");
  }
  return out;
}

void verify_hopf_module(const HopfModule& p) {
  const Hopf& h = *p.hopf;
  const uint32_t N = h.field_order(), dh = h.dim(), dp = p.dim, db = p.bdim;
  if (p.bmult.size() != (size_t)db * db || p.bcoaction.size() != db ||
      p.action.size() != db || p.coaction.rows != dh * dp || p.coaction.cols != dp)
    throw ComoduleError("module table sizes do not match");

  SparseMat unit_action = SparseMat::zero(dp, dp);
  for (const Entry& e : p.bunit)
    unit_action = mat_add(unit_action, mat_scale(e.val, p.action[e.idx]));
  if (!(unit_action == SparseMat::identity(dp, N)))
    throw ComoduleError("the unit of B does not act as the identity");

  for (uint32_t i = 0; i < db; ++i)
    for (uint32_t j = 0; j < db; ++j) {
      SparseMat lhs = SparseMat::zero(dp, dp);
      for (const Entry& e : p.bmult[(size_t)i * db + j])
        lhs = mat_add(lhs, mat_scale(e.val, p.action[e.idx]));
      if (!(lhs == mat_mul(p.action[j], p.action[i])))
        throw ComoduleError("the right action is not a module structure at basis pair (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
    }

  for (uint32_t j = 0; j < dp; ++j) {
    SVec d = mat_col(p.coaction, j);
    std::vector<Entry> l, r, c;
    for (const Entry& e : d) {
      uint32_t hh = e.idx / dp, pp = e.idx % dp;
      for (const Entry& f : h.coprod_basis(hh)) l.push_back({f.idx * dp + pp, e.val * f.val});
      for (const Entry& f : mat_col(p.coaction, pp))
        r.push_back({hh * dh * dp + f.idx, e.val * f.val});
      Cyc eps = h.counit_basis(hh);
      if (!eps.is_zero()) c.push_back({pp, e.val * eps});
    }
    if (sv_gather(std::move(l)) != sv_gather(std::move(r)))
      throw ComoduleError("module coaction is not coassociative");
    if (sv_gather(std::move(c)) != sv_unit(j, N))
      throw ComoduleError("module coaction counit axiom fails");
  }

  /* the action map P (x) B -> P is an H-comodule map */
  for (uint32_t j = 0; j < db; ++j)
    for (uint32_t pp = 0; pp < dp; ++pp) {
      SVec lhs = mat_apply(p.coaction, mat_col(p.action[j], pp));
      std::vector<Entry> items;
      for (const Entry& ep : mat_col(p.coaction, pp)) {
        uint32_t hp_ = ep.idx / dp, p0 = ep.idx % dp;
        for (const Entry& eb : p.bcoaction[j]) {
          uint32_t hb = eb.idx / db, b0 = eb.idx % db;
          SVec hv = h.mul_basis(hp_, hb);
          SVec pv = mat_col(p.action[b0], p0);
          for (const Entry& eh : hv)
            for (const Entry& ev : pv)
              items.push_back({eh.idx * dp + ev.idx, ep.val * eb.val * eh.val * ev.val});
        }
      }
      if (lhs != sv_gather(std::move(items)))
        throw ComoduleError("the action map is not a comodule map at (p_" +
                            std::to_string(pp) + ", b_" + std::to_string(j) + ")");
    }
}

HopfModule regular_hopf_module(const ComoduleAlgebra& a) {
  HopfModule p;
  p.hopf = &a.hopf();
  p.dim = a.dim();
  p.bdim = a.dim();
  p.bunit = a.unit();
  p.bmult.resize((size_t)a.dim() * a.dim());
  p.bcoaction.resize(a.dim());
  for (uint32_t i = 0; i < a.dim(); ++i) {
    p.bcoaction[i] = a.coaction_basis(i);
    for (uint32_t j = 0; j < a.dim(); ++j)
      p.bmult[(size_t)i * a.dim() + j] = a.mul_basis(i, j);
  }
  for (uint32_t j = 0; j < a.dim(); ++j)
    p.action.push_back(a.right_mult(sv_unit(j, a.field_order())));
  p.coaction = a.coaction_matrix();
  verify_hopf_module(p);
  return p;
}

CotensorResult cotensor(const Hopf& h, const QuotientCoalgebra& q, const Subspace& k,
                        const SparseMat& delta_p, uint32_t dim_p) {
  const uint32_t N = h.field_order(), dh = h.dim(), dq = q.dim;
  CoidealCheck ck = check_coideal_subalgebra(h, k);
  if (!ck.ok) throw ComoduleError("not a coideal subalgebra: " + ck.certificate);
  if (delta_p.rows != dq * dim_p || delta_p.cols != dim_p)
    throw ComoduleError("Q-comodule structure has the wrong shape");

  /* rho = (id (x) gamma) Delta : H -> H (x) Q */
  Triplets rt;
  rt.rows = dh * dq;
  rt.cols = dh;
  for (uint32_t c = 0; c < dh; ++c)
    for (const Entry& e : h.coprod_basis(c)) {
      uint32_t a = e.idx / dh, b = e.idx % dh;
      for (const Entry& g : mat_col(q.projection, b)) rt.add(a * dq + g.idx, c, e.val * g.val);
    }
  SparseMat rho = rt.build();
  SparseMat m1 = mat_kron(rho, SparseMat::identity(dim_p, N));
  SparseMat m2 = mat_kron(SparseMat::identity(dh, N), delta_p);
  SparseMat ker = kernel(mat_sub(m1, m2), N);
  Subspace w = Subspace::from_vectors(dh * dim_p, N, ker.row);
  const uint32_t dw = w.dim();
  SparseMat bw = w.inclusion();

  HopfModule mod;
  mod.hopf = &h;
  mod.dim = dw;
  mod.bdim = k.dim();
  SparseMat bk = k.inclusion();
  mod.bunit = coords_in(bk, h.unit(), N, "coideal subalgebra unit");
  mod.bmult.resize((size_t)k.dim() * k.dim());
  for (uint32_t i = 0; i < k.dim(); ++i)
    for (uint32_t j = 0; j < k.dim(); ++j)
      mod.bmult[(size_t)i * k.dim() + j] =
          coords_in(bk, h.mul(k.basis()[i], k.basis()[j]), N, "coideal subalgebra product");
  mod.bcoaction.resize(k.dim());
  for (uint32_t i = 0; i < k.dim(); ++i) {
    SparseMat t = reshape2(h.coprod(k.basis()[i]), dh, dh);
    std::vector<Entry> items;
    for (uint32_t hh = 0; hh < dh; ++hh) {
      if (t.row[hh].empty()) continue;
      SVec c = coords_in(bk, t.row[hh], N, "coideal subalgebra coaction");
      for (const Entry& e : c) items.push_back({hh * k.dim() + e.idx, e.val});
    }
    mod.bcoaction[i] = sv_gather(std::move(items));
  }
  for (uint32_t j = 0; j < k.dim(); ++j) {
    SparseMat rm = mat_kron(h.right_mult(k.basis()[j]), SparseMat::identity(dim_p, N));
    Triplets t;
    t.rows = dw;
    t.cols = dw;
    for (uint32_t c = 0; c < dw; ++c) {
      SVec img = mat_apply(rm, w.basis()[c]);
      SVec cc = coords_in(bw, img, N, "cotensor is not stable under the right action of K");
      for (const Entry& e : cc) t.add(e.idx, c, e.val);
    }
    mod.action.push_back(t.build());
  }
  {
    Triplets t;
    t.rows = dh * dw;
    t.cols = dw;
    for (uint32_t c = 0; c < dw; ++c) {
      /* (Delta (x) id) w, first leg kept, remainder expressed in W */
      std::vector<std::vector<Entry>> slices(dh);
      for (const Entry& e : w.basis()[c]) {
        uint32_t hh = e.idx / dim_p, pp = e.idx % dim_p;
        for (const Entry& f : h.coprod_basis(hh))
          slices[f.idx / dh].push_back({(f.idx % dh) * dim_p + pp, e.val * f.val});
      }
      for (uint32_t h1 = 0; h1 < dh; ++h1) {
        if (slices[h1].empty()) continue;
        SVec s = sv_gather(std::move(slices[h1]));
        if (s.empty()) continue;
        SVec cc = coords_in(bw, s, N, "cotensor is not stable under the left coaction");
        for (const Entry& e : cc) t.add(h1 * dw + e.idx, c, e.val);
      }
    }
    mod.coaction = t.build();
  }
  verify_hopf_module(mod);
  return {std::move(mod), std::move(w)};
}

EndAlgebra end_comodule_algebra(const HopfModule& p) {
  verify_hopf_module(p);
  const Hopf& h = *p.hopf;
  const uint32_t N = h.field_order(), dh = h.dim(), dp = p.dim;

  /* commutant of the right action; endomorphisms flattened column-major */
  SparseMat id = SparseMat::identity(dp, N);
  SparseMat constraints = SparseMat::zero(0, dp * dp);
  for (const SparseMat& rb : p.action) {
    SparseMat c = mat_sub(mat_kron(mat_transpose(rb), id), mat_kron(id, rb));
    constraints = constraints.rows == 0 ? c : mat_vstack(constraints, c);
  }
  SparseMat ker = kernel(constraints, N);
  const uint32_t de = ker.rows;
  std::vector<SVec> basis(ker.row.begin(), ker.row.end());
  SparseMat be = mat_from_columns(dp * dp, basis);

  auto to_mat = [&](const SVec& t) {
    Triplets m;
    m.rows = dp;
    m.cols = dp;
    for (const Entry& e : t) m.add(e.idx % dp, e.idx / dp, e.val);
    return m.build();
  };
  auto to_vec = [&](const SparseMat& m) {
    std::vector<Entry> items;
    for (uint32_t i = 0; i < dp; ++i)
      for (const Entry& e : m.row[i]) items.push_back({e.idx * dp + i, e.val});
    return sv_gather(std::move(items));
  };

  std::vector<SparseMat> emat;
  for (const SVec& t : basis) emat.push_back(to_mat(t));

  std::vector<SVec> mult((size_t)de * de);
  for (uint32_t i = 0; i < de; ++i)
    for (uint32_t j = 0; j < de; ++j)
      mult[(size_t)i * de + j] =
          coords_in(be, to_vec(mat_mul(emat[i], emat[j])), N, "endomorphism composition");
  SVec unit = coords_in(be, to_vec(id), N, "identity endomorphism");

  /* coaction from T(p_0)_(-1) S^{-1}(p_(-1)) (x) T(p_0)_(0) */
  std::vector<SVec> coact(de);
  for (uint32_t t = 0; t < de; ++t) {
    std::vector<Entry> items;
    for (uint32_t j = 0; j < dp; ++j) {
      for (const Entry& e1 : mat_col(p.coaction, j)) {
        uint32_t h1 = e1.idx / dp, p0 = e1.idx % dp;
        SVec sh = mat_col(h.antipode_inv(), h1);
        for (const Entry& em : mat_col(emat[t], p0)) {
          for (const Entry& e2 : mat_col(p.coaction, em.idx)) {
            uint32_t h2 = e2.idx / dp, p1 = e2.idx % dp;
            Cyc c = e1.val * em.val * e2.val;
            for (const Entry& eh : h.mul(sv_unit(h2, N), sh))
              items.push_back({eh.idx * dp * dp + j * dp + p1, c * eh.val});
          }
        }
      }
    }
    SVec full = sv_gather(std::move(items));
    SparseMat slices = reshape2(full, dh, dp * dp);
    std::vector<Entry> out;
    for (uint32_t hh = 0; hh < dh; ++hh) {
      if (slices.row[hh].empty()) continue;
      auto sol = solve(be, slices.row[hh], N);
      if (!sol)
        throw ComoduleError(
            "the coaction formula does not define a comodule on the endomorphism algebra");
      for (const Entry& e : sol->particular) out.push_back({hh * de + e.idx, e.val});
    }
    coact[t] = sv_gather(std::move(out));
  }

  std::vector<std::string> names(de);
  for (uint32_t i = 0; i < de; ++i) names[i] = "t" + std::to_string(i);
  ComoduleAlgebra alg = ComoduleAlgebra::from_tables(h, de, std::move(mult), std::move(unit),
                                                     std::move(coact), std::move(names));

  /* coinvariants must be the H-comodule endomorphisms of P */
  {
    Triplets tt;
    tt.rows = dh * dp * dp;
    tt.cols = dp * dp;
    for (uint32_t i = 0; i < dp; ++i)
      for (const Entry& e : mat_col(p.coaction, i)) {
        /* coaction(T e_j) = sum_i T_ij coaction(e_i) */
        for (uint32_t j = 0; j < dp; ++j) tt.add((size_t)e.idx * dp + j, (size_t)j * dp + i, e.val);
      }
    Triplets t2;
    t2.rows = dh * dp * dp;
    t2.cols = dp * dp;
    for (uint32_t j = 0; j < dp; ++j)
      for (const Entry& e : mat_col(p.coaction, j)) {
        uint32_t hh = e.idx / dp, pp = e.idx % dp;
        for (uint32_t i = 0; i < dp; ++i)
          t2.add(((size_t)hh * dp + i) * dp + j, (size_t)pp * dp + i, e.val);
      }
    SparseMat endo = kernel(mat_mul(mat_sub(tt.build(), t2.build()), be), N);
    if (Subspace::from_vectors(de, N, endo.row) != alg.coinvariants())
      throw ComoduleError("coinvariants differ from the comodule-map endomorphisms");
  }

  return {std::move(alg), std::move(basis)};
}

bool verify_comodule_iso(const ComoduleAlgebra& a, const ComoduleAlgebra& b,
                         const SparseMat& phi, const SparseMat* phi_h, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const uint32_t N = a.field_order();
  if (a.field_order() != b.field_order()) return fail("field orders differ");
  if (a.dim() != b.dim()) return fail("dimensions differ");
  if (phi.rows != b.dim() || phi.cols != a.dim()) return fail("phi has the wrong shape");
  if (!mat_inverse(phi, N)) return fail("phi is not invertible");
  if (phi_h && (phi_h->rows != b.hopf().dim() || phi_h->cols != a.hopf().dim()))
    return fail("phi_h has the wrong shape");
  if (!phi_h && a.hopf().dim() != b.hopf().dim())
    return fail("comodule algebras live over different Hopf algebras");
  if (mat_apply(phi, a.unit()) != b.unit()) return fail("phi does not preserve the unit");
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = 0; j < a.dim(); ++j)
      if (mat_apply(phi, a.mul_basis(i, j)) !=
          b.mul(mat_col(phi, i), mat_col(phi, j)))
        return fail("phi is not an algebra map at (" + a.basis_name(i) + ", " +
                    a.basis_name(j) + ")");
  SparseMat ph = phi_h ? *phi_h : SparseMat::identity(a.hopf().dim(), N);
  SparseMat lhs = mat_mul(mat_kron(ph, phi), a.coaction_matrix());
  SparseMat rhs = mat_mul(b.coaction_matrix(), phi);
  if (!(lhs == rhs)) return fail("phi does not intertwine the coactions");
  return true;
}

}  // namespace hopfkit
