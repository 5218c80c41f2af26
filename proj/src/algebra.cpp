#include "hopfkit/algebra.hpp"

#include <random>
#include <sstream>

namespace hopfkit {

uint32_t Presentation::dim() const {
  uint64_t d = 1;
  for (const GenSpec& g : gens) {
    d *= g.bound;
    if (d > (1u << 24)) throw AlgebraError("presentation dimension too large");
  }
  return (uint32_t)d;
}

uint32_t Presentation::mono_index(const std::vector<uint32_t>& exps) const {
  if (exps.size() != gens.size()) throw AlgebraError("exponent tuple arity mismatch");
  uint32_t idx = 0;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (exps[i] >= gens[i].bound) throw AlgebraError("exponent exceeds bound");
    idx = idx * gens[i].bound + exps[i];
  }
  return idx;
}

std::vector<uint32_t> Presentation::exponents(uint32_t idx) const {
  std::vector<uint32_t> e(gens.size(), 0);
  for (size_t i = gens.size(); i-- > 0;) {
    e[i] = idx % gens[i].bound;
    idx /= gens[i].bound;
  }
  return e;
}

void Presentation::init_rules() {
  swap.assign(gens.size(), {});
  for (size_t j = 0; j < gens.size(); ++j) swap[j].resize(j);
  power.assign(gens.size(), SVec{});
}

namespace {

/* Normal-form engine used while the table is being built. */
struct Builder {
  const Presentation& p;
  uint32_t dim;
  size_t ngens;
  // gen_table[a * ngens + i] = normal form of mono_a * g_i
  std::vector<std::optional<SVec>> gen_table;
  std::vector<char> in_progress;
  DenseAccum acc;

  explicit Builder(const Presentation& pres)
      : p(pres), dim(pres.dim()), ngens(pres.gens.size()) {
    gen_table.resize((size_t)dim * ngens);
    in_progress.assign(gen_table.size(), 0);
    acc.init(dim);
  }

  uint32_t highest_gen(const std::vector<uint32_t>& e) const {
    for (size_t i = ngens; i-- > 0;)
      if (e[i] > 0) return (uint32_t)i;
    return UINT32_MAX;  // unit monomial
  }

  const SVec& mul_gen(uint32_t a, uint32_t i) {
    size_t key = (size_t)a * ngens + i;
    if (gen_table[key]) return *gen_table[key];
    if (in_progress[key]) throw AlgebraError("rewriting does not terminate");
    in_progress[key] = 1;
    SVec result = compute_mul_gen(a, i);
    in_progress[key] = 0;
    gen_table[key] = std::move(result);
    return *gen_table[key];
  }

  SVec compute_mul_gen(uint32_t a, uint32_t i) {
    std::vector<uint32_t> e = p.exponents(a);
    uint32_t j = highest_gen(e);
    uint32_t N = p.field_order;
    if (j == UINT32_MAX || j < i) {
      // append a fresh generator block
      e[i] = 1;
      if (p.gens[i].bound == 1) return mul_vec(a, p.power[i]);
      return sv_unit(p.mono_index(e), N);
    }
    if (j == i) {
      if (e[i] + 1 < p.gens[i].bound) {
        e[i] += 1;
        return sv_unit(p.mono_index(e), N);
      }
      // whole block overflows: prefix * power-tail, all in generators < i
      e[i] = 0;
      return mul_vec(p.mono_index(e), p.power[i]);
    }
    // j > i: peel one g_j and push g_i through it
    const auto& rule = p.swap[j][i];
    if (!rule) throw AlgebraError("missing swap rule for " + p.gens[j].name + "*" +
                                  p.gens[i].name);
    e[j] -= 1;
    uint32_t b = p.mono_index(e);
    // a g_i = b (g_j g_i) = coeff * (b g_i) g_j + b * tail
    SVec main = mul_vec_gen(mul_gen(b, i), j);
    sv_scale(main, rule->coeff);
    SVec rest = mul_vec(b, rule->tail);
    sv_axpy(main, Cyc::one(N), rest);
    return main;
  }

  SVec mul_vec_gen(const SVec& v, uint32_t i) {
    SVec out;
    for (const Entry& t : v) sv_axpy(out, t.val, mul_gen(t.idx, i));
    return out;
  }

  // mono_a * v for a normal-form linear combination v
  SVec mul_vec(uint32_t a, const SVec& v) {
    SVec out;
    for (const Entry& t : v) sv_axpy(out, t.val, mul_mono(a, t.idx));
    return out;
  }

  // mono_a * mono_b: fold the word of b through the generator tables
  SVec mul_mono(uint32_t a, uint32_t b) {
    std::vector<uint32_t> e = p.exponents(b);
    SVec cur = sv_unit(a, p.field_order);
    for (uint32_t i = 0; i < ngens; ++i)
      for (uint32_t rep = 0; rep < e[i]; ++rep) cur = mul_vec_gen(cur, i);
    return cur;
  }
};

}  // namespace

Algebra Algebra::build(const Presentation& p) {
  if (p.gens.empty()) throw AlgebraError("presentation needs at least one generator");
  if (p.swap.size() != p.gens.size() || p.power.size() != p.gens.size())
    throw AlgebraError("presentation rules not initialized");
  for (size_t i = 0; i < p.gens.size(); ++i) {
    if (p.gens[i].bound == 0) throw AlgebraError("generator bound must be positive");
    if (p.swap[i].size() != i) throw AlgebraError("swap table shape mismatch");
  }
  uint32_t dim = p.dim();
  // tails must live strictly below the rewritten generator
  auto check_tail = [&](const SVec& tail, size_t below, const char* what) {
    for (const Entry& e : tail) {
      if (e.idx >= dim) throw AlgebraError(std::string(what) + ": tail index out of range");
      std::vector<uint32_t> exps = p.exponents(e.idx);
      for (size_t g = below; g < p.gens.size(); ++g)
        if (exps[g] != 0)
          throw AlgebraError(std::string(what) + ": tail must use generators below " +
                             p.gens[below].name);
      if (e.val.field_order() != p.field_order)
        throw AlgebraError(std::string(what) + ": scalar from the wrong field");
    }
  };
  for (size_t j = 0; j < p.gens.size(); ++j) {
    check_tail(p.power[j], j, "power rule");
    for (size_t i = 0; i < j; ++i) {
      if (!p.swap[j][i])
        throw AlgebraError("missing swap rule for " + p.gens[j].name + "*" + p.gens[i].name);
      if (p.swap[j][i]->coeff.is_zero())
        throw AlgebraError("swap coefficient must be nonzero");
      if (p.swap[j][i]->coeff.field_order() != p.field_order)
        throw AlgebraError("swap coefficient from the wrong field");
      check_tail(p.swap[j][i]->tail, i, "swap rule");
    }
  }

  Algebra a;
  a.pres_ = p;
  a.dim_ = dim;
  Builder builder(p);
  a.table_.resize((size_t)dim * dim);
  for (uint32_t x = 0; x < dim; ++x)
    for (uint32_t y = 0; y < dim; ++y) a.table_[(size_t)x * dim + y] = builder.mul_mono(x, y);
  return a;
}

SVec Algebra::mul(const SVec& a, const SVec& b) const {
  SVec out;
  for (const Entry& ea : a) {
    SVec part;
    for (const Entry& eb : b) sv_axpy(part, eb.val, mul_basis(ea.idx, eb.idx));
    sv_axpy(out, ea.val, part);
  }
  return out;
}

SVec Algebra::mul(const SVec& a, const SVec& b, const SVec& c) const {
  return mul(mul(a, b), c);
}

SVec Algebra::power(const SVec& a, uint32_t e) const {
  SVec out = unit();
  for (uint32_t k = 0; k < e; ++k) out = mul(out, a);
  return out;
}

SparseMat Algebra::left_mult(const SVec& a) const {
  std::vector<SVec> cols(dim_);
  for (uint32_t b = 0; b < dim_; ++b) {
    SVec acc;
    for (const Entry& ea : a) sv_axpy(acc, ea.val, mul_basis(ea.idx, b));
    cols[b] = std::move(acc);
  }
  return mat_from_columns(dim_, cols);
}

SparseMat Algebra::right_mult(const SVec& a) const {
  std::vector<SVec> cols(dim_);
  for (uint32_t b = 0; b < dim_; ++b) {
    SVec acc;
    for (const Entry& ea : a) sv_axpy(acc, ea.val, mul_basis(b, ea.idx));
    cols[b] = std::move(acc);
  }
  return mat_from_columns(dim_, cols);
}

SparseMat Algebra::mult_matrix() const {
  std::vector<SVec> cols((size_t)dim_ * dim_);
  for (uint32_t a = 0; a < dim_; ++a)
    for (uint32_t b = 0; b < dim_; ++b) cols[(size_t)a * dim_ + b] = mul_basis(a, b);
  return mat_from_columns(dim_, cols);
}

std::string Algebra::mono_name(uint32_t idx) const {
  std::vector<uint32_t> e = pres_.exponents(idx);
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << "*";
    any = true;
    os << pres_.gens[i].name;
    if (e[i] > 1) os << "^" << e[i];
  }
  return any ? os.str() : "1";
}

std::string Algebra::vec_str(const SVec& v) const {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Entry& e : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << e.val.str() << ")*" << mono_name(e.idx);
  }
  return os.str();
}

std::optional<std::string> Algebra::associativity_failure(uint32_t exhaustive_limit,
                                                          size_t samples,
                                                          uint64_t seed) const {
  auto check = [&](uint32_t x, uint32_t y, uint32_t z) -> bool {
    SVec left, right;
    const SVec& xy = mul_basis(x, y);
    for (const Entry& e : xy) sv_axpy(left, e.val, mul_basis(e.idx, z));
    const SVec& yz = mul_basis(y, z);
    for (const Entry& e : yz) sv_axpy(right, e.val, mul_basis(x, e.idx));
    return left == right;
  };
  if (dim_ <= exhaustive_limit) {
    for (uint32_t x = 0; x < dim_; ++x)
      for (uint32_t y = 0; y < dim_; ++y)
        for (uint32_t z = 0; z < dim_; ++z)
          if (!check(x, y, z))
            return "(" + mono_name(x) + ", " + mono_name(y) + ", " + mono_name(z) + ")";
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  for (size_t s = 0; s < samples; ++s) {
    uint32_t x = (uint32_t)(rng() % dim_), y = (uint32_t)(rng() % dim_),
             z = (uint32_t)(rng() % dim_);
    if (!check(x, y, z))
      return "(" + mono_name(x) + ", " + mono_name(y) + ", " + mono_name(z) + ")";
  }
  return std::nullopt;
}

Subspace Algebra::closure(const std::vector<SVec>& start,
                          const std::vector<SparseMat>& ops) const {
  RowSpace rs(dim_, field_order());
  // worklist of vectors that enlarged the span; applying every operator to
  // each of them (and inserting the results) closes the span under the ops
  std::vector<SVec> queue;
  for (const SVec& v : start)
    if (rs.insert(v)) queue.push_back(v);
  for (size_t head = 0; head < queue.size(); ++head) {
    SVec v = queue[head];
    for (const SparseMat& op : ops) {
      SVec w = mat_apply(op, v);
      if (rs.insert(w)) queue.push_back(std::move(w));
    }
  }
  return Subspace::from_rowspace(rs);
}

Subspace Algebra::right_ideal(const std::vector<SVec>& gens) const {
  std::vector<SparseMat> ops;
  for (uint32_t i = 0; i < pres_.gens.size(); ++i) {
    std::vector<uint32_t> e(pres_.gens.size(), 0);
    e[i] = pres_.gens[i].bound > 1 ? 1 : 0;
    if (e[i] == 0) continue;
    ops.push_back(right_mult(sv_unit(pres_.mono_index(e), field_order())));
  }
  return closure(gens, ops);
}

Subspace Algebra::left_ideal(const std::vector<SVec>& gens) const {
  std::vector<SparseMat> ops;
  for (uint32_t i = 0; i < pres_.gens.size(); ++i) {
    std::vector<uint32_t> e(pres_.gens.size(), 0);
    e[i] = pres_.gens[i].bound > 1 ? 1 : 0;
    if (e[i] == 0) continue;
    ops.push_back(left_mult(sv_unit(pres_.mono_index(e), field_order())));
  }
  return closure(gens, ops);
}

Subspace Algebra::two_sided_ideal(const std::vector<SVec>& gens) const {
  std::vector<SparseMat> ops;
  for (uint32_t i = 0; i < pres_.gens.size(); ++i) {
    std::vector<uint32_t> e(pres_.gens.size(), 0);
    e[i] = pres_.gens[i].bound > 1 ? 1 : 0;
    if (e[i] == 0) continue;
    SVec g = sv_unit(pres_.mono_index(e), field_order());
    ops.push_back(right_mult(g));
    ops.push_back(left_mult(g));
  }
  return closure(gens, ops);
}

Subspace Algebra::subalgebra(const std::vector<SVec>& gens) const {
  std::vector<SVec> start = gens;
  start.push_back(unit());
  // closing under right multiplication by the generators of the sub-span is
  // not expressible with fixed operators; iterate pairwise products instead
  RowSpace rs(dim_, field_order());
  for (const SVec& v : start) rs.insert(v);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SVec> basis = rs.basis();
    for (const SVec& a : basis) {
      for (const SVec& b : basis) {
        if (rs.insert(mul(a, b))) {
          grew = true;
        }
      }
      if (grew) break;  // basis changed under us; restart with the new one
    }
  }
  return Subspace::from_vectors(dim_, field_order(), rs.basis());
}

}  // namespace hopfkit
