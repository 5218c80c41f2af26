#pragma once

#include "hopfkit/comodule.hpp"

namespace hopfkit {

struct TwistError : std::runtime_error {
  explicit TwistError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Hopf 2-cocycle sigma : H (x) H -> k, stored as a 1 x dim^2 form over the
 * basis (flat index a*dim + b) together with its convolution inverse. The
 * constructor checks the cocycle identity
 *   sigma(x1, y1) sigma(x2 y2, z) = sigma(y1, z1) sigma(x, y2 z2)
 * on all basis triples, unitality sigma(x, 1) = eps(x) = sigma(1, x), and
 * computes the two-sided convolution inverse by a linear solve. */
class Cocycle {
 public:
  static Cocycle verify(const Hopf& h, const SparseMat& form);

  const Hopf& hopf() const { return *hopf_; }
  const SparseMat& form() const { return form_; }
  const SparseMat& inverse_form() const { return inv_; }

  Cyc eval(uint32_t a, uint32_t b) const;
  Cyc eval_inv(uint32_t a, uint32_t b) const;
  Cyc eval(const SVec& x, const SVec& y) const;

 private:
  Cocycle() = default;
  const Hopf* hopf_ = nullptr;
  SparseMat form_, inv_;
};

/* eps (x) eps */
SparseMat trivial_form(const Hopf& h);
Cocycle trivial_cocycle(const Hopf& h);

/* zeta^{ij} on pairs of pure group monomials g^i, g^j and 0 elsewhere: the
 * pullback of the group bicharacter along the projection that kills the
 * other generators; needs a presented H with the group generator first and
 * zeta of order dividing ord(g) */
SparseMat bicharacter_form(const Hopf& h, const Cyc& zeta);

/* coboundary sigma_f(x, y) = f(x1) f(y1) f^{-1}(x2 y2) of a convolution
 * invertible functional f with f(1) = 1 (f given by its basis values) */
SparseMat coboundary_form(const Hopf& h, const SVec& f);

/* Eq. sigma(x1, y1) x2 y2 = sigma(x2, y2) x1 y1 on all basis pairs */
bool is_cocentral(const Cocycle& c);

/* H^sigma: same coalgebra, product x . y = sigma(x1, y1) sigma^{-1}(x3, y3) x2 y2 */
Hopf twisted_hopf(const Cocycle& c);

/* K_sigma with a ._sigma b = sigma(a_{-1}, b_{-1}) a_0 b_0, a comodule algebra
 * over h_sigma; h_sigma must share the coalgebra of c.hopf() (H itself for
 * cocentral sigma, twisted_hopf(c) otherwise) */
ComoduleAlgebra twist_comodule_algebra(const ComoduleAlgebra& k, const Cocycle& c,
                                       const Hopf& h_sigma);

/* _sigma K for a left coideal subalgebra (or all of H): product
 * x . y = sigma(x2, y2) x1 y1, coaction the restricted coproduct. Checks
 * compatibility pairwise first and names a violating pair. For cocentral
 * sigma the result is verified to equal K_sigma elementwise. */
ComoduleAlgebra twist_left(const Hopf& h, const Subspace& k, const Cocycle& c);
ComoduleAlgebra twist_left(const Hopf& h, const Cocycle& c);

}  // namespace hopfkit
