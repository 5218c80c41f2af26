#pragma once

#include "hopfkit/hopf.hpp"

namespace hopfkit {

struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Diagonal Yetter-Drinfeld generator over the cyclic group C_M = <g>:
 * coaction delta(x) = g^c (x) x, action g.x = q x. */
struct YDGen {
  std::string name;
  long c = 0;
  Cyc q;
};

struct BosSpec {
  uint32_t field_order = 1;  // scalars live in Q(zeta_N)
  uint32_t group_order = 0;  // M = ord(g)
  std::vector<YDGen> gens;
  std::string name;
};

/* Bosonization B(V) # k C_M of a quantum linear space: generators
 * g, x_1, ..., x_k with
 *   g^M = 1,  g x_i = q_i x_i g,  x_j x_i = q_i^{c_j} x_i x_j (j > i),
 *   x_i^{N_i} = 0 with N_i = ord(q_i^{c_i}),
 *   Delta(g) = g (x) g,  Delta(x_i) = x_i (x) 1 + g^{c_i} (x) x_i.
 * Requires q_i^M = 1 and the quantum-linear-space condition
 * q_j^{c_i} q_i^{c_j} = 1 for i != j. */
HopfPresentation bosonization(const BosSpec& spec);

/* Nichols degree (total x-exponent) of every basis monomial */
std::vector<uint32_t> bosonization_layers(const Presentation& p);

/* bosonization with its coradical grading attached */
Hopf build_bosonization(const BosSpec& spec);

/* k C_M with Delta(g) = g (x) g */
HopfPresentation group_algebra(uint32_t order);

/* g^n = 1, x^n = 0, gx = q xg; Delta(x) = x (x) 1 + g (x) x; q = zeta_n */
HopfPresentation taft(uint32_t n);

/* like taft but with g of order n^2 and q = zeta_{n^2}^n */
HopfPresentation taft_hat(uint32_t n);

/* g^{n^2} = 1, x^n = 1 - g^n, gx = q xg; Delta(x) = x (x) 1 + g (x) x */
HopfPresentation radford(uint32_t n);

/* g^n = 1, gx = q xg, gy = q^{-1} yg, xy = q yx, x^n = y^n = 0;
 * Delta(x) = x (x) 1 + g^{-1} (x) x and likewise for y; n >= 3 */
HopfPresentation book(uint32_t n);

/* B(V) # k C_n with delta(x) = delta(y) = g^{-1} (x) -, g.x = q^2 x,
 * g.y = q^{-2} y; n >= 3 */
HopfPresentation uq_graded(uint32_t n);

/* lifting of uq_graded: g^n = 1, gx = q^2 xg, gy = q^{-2} yg,
 * x^n = y^n = 0, xy - q^2 yx = 1 - g^{-2};
 * Delta(x) = x (x) 1 + g^{-1} (x) x and likewise for y; n >= 3 */
HopfPresentation uq_lifting(uint32_t n);

}  // namespace hopfkit
