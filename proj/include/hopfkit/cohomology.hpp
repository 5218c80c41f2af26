#pragma once

#include "hopfkit/comodule.hpp"

namespace hopfkit {

struct CohomologyError : std::runtime_error {
  explicit CohomologyError(const std::string& msg) : std::runtime_error(msg) {}
};

/* One panel of the deformation bicomplex of a comodule algebra A over H:
 * the direct sum of the comodule-algebra cochains C^{p,q}(A) and the
 * truncated bialgebra cochains C^{p,q+1}(H).
 *   C^{p,q}(A) = 0 at p = 0, Der(A) at (p,q) = (1,0),
 *                Hom(A^p, H^q (x) A) otherwise;
 *   C^{p,q}(H) = Hom(H^p, H^q), truncated to 0 when pq = 0.
 * Hom spaces are flattened domain-major: a map f contributes f(e_j)_i at
 * flat index j * dim_target + i. */
struct Panel {
  uint32_t p = 0, q = 0;
  uint32_t dim_a = 0;
  uint32_t dim_h = 0;
  uint32_t dim() const { return dim_a + dim_h; }
};

/* Panels for p <= p_max, q <= q_max, p + q <= max(p_max, q_max), with the
 * horizontal and vertical differentials materialized as exact sparse
 * matrices wherever the target panel is in range. The vertical differential
 * carries the mixing block f -> (-1)^q (f (x) id_A) lambda^p_2 from the
 * bialgebra summand into the comodule summand. */
class Bicomplex {
 public:
  /* The estimated footprint is checked against budget_mb before any panel
   * is allocated. */
  static Bicomplex build(const ComoduleAlgebra& a, uint32_t p_max, uint32_t q_max,
                         uint64_t budget_mb = 256);

  const ComoduleAlgebra& comodule() const { return *a_; }
  const Hopf& hopf() const { return a_->hopf(); }
  uint32_t p_max() const { return pmax_; }
  uint32_t q_max() const { return qmax_; }
  uint32_t band() const { return band_; }

  bool has_panel(uint32_t p, uint32_t q) const;
  const Panel& panel(uint32_t p, uint32_t q) const;

  /* basis of Der(A), one row per derivation, over Hom(A, A) coordinates */
  const SparseMat& derivations() const { return der_; }

  bool has_dh(uint32_t p, uint32_t q) const;
  bool has_dv(uint32_t p, uint32_t q) const;
  const SparseMat& dh(uint32_t p, uint32_t q) const;
  const SparseMat& dv(uint32_t p, uint32_t q) const;

 private:
  Bicomplex() = default;
  static Bicomplex build_impl(const ComoduleAlgebra& a, uint32_t p_max, uint32_t q_max,
                              uint64_t budget_mb, int mut_p, int mut_q, int mut_i);

  const ComoduleAlgebra* a_ = nullptr;
  uint32_t pmax_ = 0, qmax_ = 0, band_ = 0, N_ = 1;
  SparseMat der_;
  std::vector<Panel> panels_;
  std::vector<uint8_t> present_, hasdh_, hasdv_;
  std::vector<SparseMat> dh_, dv_;

  size_t slot(uint32_t p, uint32_t q) const { return (size_t)p * (qmax_ + 1) + q; }

  friend Bicomplex build_bicomplex_mutated(const ComoduleAlgebra&, uint32_t, uint32_t,
                                           uint32_t, uint32_t, uint32_t);
};

/* d^h d^h = 0, d^v d^v = 0, d^h d^v = d^v d^h on every in-range panel, plus
 * the auxiliary commutation identities between the mixing block and both
 * differentials; failures name the panel coordinates */
struct BicomplexReport {
  bool ok = true;
  std::vector<std::string> failures;
};
BicomplexReport verify_bicomplex(const Bicomplex& b);

/* dim Tot^n, rank d^n and dim H^n of the total complex for n = 0..n_max;
 * needs p_max, q_max >= n_max + 1 and a verified bicomplex */
struct TotalCohomology {
  std::vector<uint32_t> tot_dim, rank_d, h_dim;
};
TotalCohomology total_cohomology_dims(const Bicomplex& b, uint32_t n_max);

/* membership of (phi, f) + (psi, g) in the degree-2 total cocycles, where
 * phi_f holds panel (2,0) coordinates and psi_g panel (1,1) coordinates;
 * equations[0..4] report the five displayed conditions: d^h phi = 0,
 * d^v psi - (g (x) id)lambda = 0, d^h f = 0 together with d^v g = 0,
 * d^v f + d^h g = 0, and d^v phi + (f (x) id)lambda^2_2 + d^h psi = 0. */
struct Z2Result {
  bool member = false;
  std::vector<bool> equations;
};
Z2Result z2_membership(const Bicomplex& b, const SVec& phi_f, const SVec& psi_g);

/* first-order deformation datum of a lifted comodule algebra sharing the
 * monomial basis of the graded comodule algebra of b: the components of the
 * lifted product, coproduct and coaction tables one degree below their
 * graded degree, as panel (2,0) and (1,1) coordinate vectors */
struct FirstOrderData {
  SVec phi_f, psi_g;
};
FirstOrderData first_order_deformation(const Bicomplex& b, const ComoduleAlgebra& lifted);

/* builds with the sign of vertical comodule-side term i at (p, q) flipped;
 * only for exercising verify_bicomplex */
Bicomplex build_bicomplex_mutated(const ComoduleAlgebra& a, uint32_t p_max,
                                  uint32_t q_max, uint32_t p, uint32_t q, uint32_t i);

}  // namespace hopfkit
