#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfkit/linalg.hpp"

namespace hopfkit {

struct AlgebraError : std::runtime_error {
  explicit AlgebraError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Presentation with a normal-form basis: ordered generators g_1 < ... < g_k,
 * basis monomials g_1^{a_1} ... g_k^{a_k} with 0 <= a_i < bound_i, indexed in
 * lexicographic order (first generator most significant).
 *
 * Rewriting data:
 *   swap rule (j,i), j > i :  g_j g_i -> coeff * g_i g_j + tail
 *   power rule i          :  g_i^{bound_i} -> tail
 * Tails are linear combinations of basis monomials in generators strictly
 * below i, which makes the rewriting terminate. */
struct GenSpec {
  std::string name;
  uint32_t bound = 0;
};

struct SwapRule {
  Cyc coeff;
  SVec tail;
};

struct Presentation {
  uint32_t field_order = 1;
  std::string name;
  std::vector<GenSpec> gens;
  std::vector<std::vector<std::optional<SwapRule>>> swap;  // swap[j][i], j > i
  std::vector<SVec> power;                                 // tail of g_i^{bound_i}

  uint32_t dim() const;
  uint32_t mono_index(const std::vector<uint32_t>& exps) const;
  std::vector<uint32_t> exponents(uint32_t idx) const;
  void init_rules();  // size swap/power after gens are set
};

class Algebra {
 public:
  static Algebra build(const Presentation& p);

  const Presentation& pres() const { return pres_; }
  uint32_t dim() const { return dim_; }
  uint32_t field_order() const { return pres_.field_order; }

  uint32_t unit_index() const { return 0; }
  SVec unit() const { return sv_unit(0, field_order()); }

  const SVec& mul_basis(uint32_t a, uint32_t b) const { return table_[a * dim_ + b]; }
  SVec mul(const SVec& a, const SVec& b) const;
  SVec mul(const SVec& a, const SVec& b, const SVec& c) const;
  SVec power(const SVec& a, uint32_t e) const;

  SparseMat left_mult(const SVec& a) const;
  SparseMat right_mult(const SVec& a) const;
  /* multiplication as a map A (x) A -> A, cols indexed a*dim+b */
  SparseMat mult_matrix() const;

  std::string mono_name(uint32_t idx) const;
  std::string vec_str(const SVec& v) const;

  /* (a b) c = a (b c): exhaustive when dim <= exhaustive_limit, otherwise
   * on seeded random basis triples. Returns a failing triple description. */
  std::optional<std::string> associativity_failure(uint32_t exhaustive_limit = 64,
                                                   size_t samples = 100000,
                                                   uint64_t seed = 0xa550c1a7e) const;

  /* smallest subspace containing gens and closed under right multiplication */
  Subspace right_ideal(const std::vector<SVec>& gens) const;
  Subspace left_ideal(const std::vector<SVec>& gens) const;
  Subspace two_sided_ideal(const std::vector<SVec>& gens) const;
  /* smallest unital subalgebra containing gens */
  Subspace subalgebra(const std::vector<SVec>& gens) const;

 private:
  Presentation pres_;
  uint32_t dim_ = 0;
  std::vector<SVec> table_;  // [a * dim + b] = normal form of mono_a * mono_b

  Subspace closure(const std::vector<SVec>& start,
                   const std::vector<SparseMat>& ops) const;
};

}  // namespace hopfkit
