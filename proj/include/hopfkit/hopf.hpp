#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfkit/algebra.hpp"

namespace hopfkit {

struct HopfError : std::runtime_error {
  explicit HopfError(const std::string& msg) : std::runtime_error(msg) {}
};

struct HopfPresentation {
  Presentation alg;
  std::vector<SVec> coprod;  // per generator: element of H (x) H, index a*dim+b
  std::vector<Cyc> counit;   // per generator
};

/* Finite-dimensional Hopf algebra with fully materialized structure tables.
 * Built either from a presentation (coproduct extended multiplicatively) or
 * from explicit tables (used for associated graded and twisted objects).
 * All axioms are verified exhaustively at build time. */
class Hopf {
 public:
  static Hopf build(const HopfPresentation& p,
                    std::optional<std::vector<uint32_t>> layer_of = std::nullopt);
  static Hopf from_tables(uint32_t field_order, uint32_t dim,
                          std::vector<SVec> mult_table, SVec unit,
                          std::vector<SVec> coprod_table, std::vector<Cyc> counit,
                          std::vector<std::string> basis_names,
                          std::optional<std::vector<uint32_t>> layer_of,
                          std::optional<Presentation> pres = std::nullopt);

  uint32_t dim() const { return dim_; }
  uint32_t field_order() const { return N_; }
  const std::optional<Presentation>& pres() const { return pres_; }
  const std::string& basis_name(uint32_t i) const { return names_[i]; }
  std::string vec_str(const SVec& v) const;

  const SVec& unit() const { return unit_; }
  const SVec& mul_basis(uint32_t a, uint32_t b) const { return mul_[(size_t)a * dim_ + b]; }
  SVec mul(const SVec& a, const SVec& b) const;
  SVec power(const SVec& a, uint32_t e) const;
  SparseMat left_mult(const SVec& a) const;
  SparseMat right_mult(const SVec& a) const;
  SparseMat mult_matrix() const;  // dim x dim^2

  const SVec& coprod_basis(uint32_t i) const { return coprod_[i]; }
  SVec coprod(const SVec& v) const;
  Cyc counit_basis(uint32_t i) const { return counit_[i]; }
  Cyc counit(const SVec& v) const;
  SparseMat coprod_matrix() const;  // dim^2 x dim
  SparseMat counit_matrix() const;  // 1 x dim

  const SparseMat& antipode() const { return antipode_; }
  const SparseMat& antipode_inv() const { return antipode_inv_; }

  /* product in H (x) H on flattened tensors */
  SVec mul2(const SVec& u, const SVec& v) const;

  bool is_grouplike(const SVec& v) const;
  /* basis monomials spanning the coradical; errors when the coradical is not
   * split by group-like basis vectors over this field */
  const std::vector<uint32_t>& grouplikes() const;
  const std::vector<Subspace>& coradical_filtration() const;

  /* grading by basis index, when the object carries one */
  const std::optional<std::vector<uint32_t>>& layers() const { return layer_; }
  uint32_t layer_count() const;
  Subspace layer_span(uint32_t n) const;
  SparseMat grading_projector(uint32_t n) const;

  Subspace left_ideal(const std::vector<SVec>& gens) const;

 private:
  uint32_t dim_ = 0, N_ = 1;
  std::vector<SVec> mul_;
  SVec unit_;
  std::vector<SVec> coprod_;
  std::vector<Cyc> counit_;
  SparseMat antipode_, antipode_inv_;
  std::vector<std::string> names_;
  std::optional<std::vector<uint32_t>> layer_;
  std::optional<Presentation> pres_;

  mutable std::optional<std::vector<Subspace>> filtration_;
  mutable std::optional<std::vector<uint32_t>> grouplikes_;

  void verify_axioms() const;
  void compute_antipode();
};

struct CoidealCheck {
  bool ok = false;
  std::string certificate;  // names the failing condition when !ok
};
CoidealCheck check_coideal_subalgebra(const Hopf& h, const Subspace& s);

/* quotient coalgebra Q = H / (H K+), K+ = K ∩ ker eps */
struct QuotientCoalgebra {
  uint32_t dim = 0, field_order = 1;
  SparseMat delta;       // dim^2 x dim
  SparseMat eps;         // 1 x dim
  SparseMat projection;  // gamma: dim x dim_H
  std::vector<uint32_t> section;  // H basis monomials lifting the quotient basis
};
QuotientCoalgebra quotient_coalgebra(const Hopf& h, const Subspace& k);

/* basis vectors of a quotient coalgebra that are group-like */
uint32_t count_grouplike_basis(const QuotientCoalgebra& q);

/* associated graded Hopf algebra of the coradical filtration, on the
 * canonical echelon complements of H^{n-1} inside H^n */
Hopf associated_graded_hopf(const Hopf& h);

/* Isomorphism from a target presentation onto a graded Hopf algebra by the
 * canonical generator correspondence: group-like generators match by name,
 * skew-primitive generators by their (coproduct, commutation) signature in
 * layer 1. Returns the matrix of the iso on basis vectors, or nullopt with a
 * reason. */
std::optional<SparseMat> graded_iso_from_presentation(const HopfPresentation& target,
                                                      const Hopf& graded,
                                                      std::string* why = nullptr);

}  // namespace hopfkit
