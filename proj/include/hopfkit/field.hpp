#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfkit {

using Rat = mpq_class;

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Precomputed data for the cyclotomic field Q(zeta_N):
 * the minimal polynomial Phi_N and reductions of x^k against it. */
struct CycContext {
  uint32_t N = 1;
  uint32_t deg = 1;                       // deg Phi_N = phi(N)
  std::vector<Rat> phi;                   // Phi_N, monic, size deg+1
  std::vector<std::vector<Rat>> xpow;     // x^k mod Phi_N for k in [0, 2N], each size deg
};

const CycContext& cyc_context(uint32_t N);

/* Element of Q(zeta_N), stored as the canonical residue mod Phi_N.
 * Coefficient vector always has size phi(N); equality is coefficient equality. */
class Cyc {
 public:
  Cyc() : N_(1), c_(1, Rat(0)) {}
  Cyc(uint32_t N, std::vector<Rat> coeffs);  // coeffs of any size, gets reduced

  static Cyc zero(uint32_t N);
  static Cyc one(uint32_t N);
  static Cyc rational(const Rat& r, uint32_t N);
  static Cyc integer(long v, uint32_t N);
  static Cyc root(uint32_t N, long k);  // zeta_N^k

  uint32_t field_order() const { return N_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rat rational_part() const;  // the coefficient of 1; whole value iff is_rational()

  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o);

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }

  bool operator==(const Cyc& o) const { return N_ == o.N_ && c_ == o.c_; }
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  Cyc inverse() const;
  Cyc pow(long e) const;

  /* Smallest k >= 1 with x^k == 1, or 0 if none exists (finite orders in
   * Q(zeta_N) divide lcm(2, N), so the search is bounded). */
  uint32_t multiplicative_order() const;

  std::string str() const;  // canonical form, parses back bit-identically

 private:
  void check_same_field(const Cyc& o) const;

  uint32_t N_;
  std::vector<Rat> c_;
};

/* Gaussian binomial coefficient via the Pascal recurrence
 * chi(n,i) = chi(n-1,i-1) + q^i * chi(n-1,i); exact for any q, including
 * roots of unity where the product formula degenerates. */
Cyc q_binomial(uint32_t n, uint32_t i, const Cyc& q);

Cyc q_factorial(uint32_t n, const Cyc& q);

/* All roots of unity in Q(zeta_N) whose order divides d.
 * These are exactly the elements +-zeta_N^j of suitable order. */
std::vector<Cyc> roots_of_unity(uint32_t N, uint32_t d);

/* Scalar literal grammar:
 *   expr   := term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := '-' factor | INT ('/' INT)? | 'z' ('^' '-'? INT)? | '(' expr ')'
 * where z denotes zeta_N. */
Cyc parse_scalar(const std::string& text, uint32_t N);

}  // namespace hopfkit
