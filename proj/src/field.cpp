#include "hopfkit/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>

namespace hopfkit {

namespace {

using Poly = std::vector<Rat>;  // coefficient list, index = power

int poly_deg(const Poly& p) {
  for (int i = (int)p.size() - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

void poly_trim(Poly& p) { p.resize(poly_deg(p) + 1); }

/* Exact division p / q over Q; throws if the division is not exact. */
Poly poly_divexact(Poly p, const Poly& q) {
  int dq = poly_deg(q);
  if (dq < 0) throw FieldError("polynomial division by zero");
  int dp = poly_deg(p);
  if (dp < dq) {
    if (dp >= 0) throw FieldError("inexact polynomial division");
    return {};
  }
  Poly out(dp - dq + 1, Rat(0));
  for (int k = dp - dq; k >= 0; --k) {
    Rat c = p[k + dq] / q[dq];
    out[k] = c;
    if (c != 0)
      for (int j = 0; j <= dq; ++j) p[k + j] -= c * q[j];
  }
  if (poly_deg(p) >= 0) throw FieldError("inexact polynomial division");
  return out;
}

Poly cyclotomic(uint32_t N) {
  if (N == 0) throw FieldError("field order must be positive");
  if (N == 1) return {Rat(-1), Rat(1)};  // x - 1
  Poly num(N + 1, Rat(0));
  num[0] = -1;
  num[N] = 1;  // x^N - 1
  for (uint32_t d = 1; d < N; ++d)
    if (N % d == 0) num = poly_divexact(num, cyclotomic(d));
  return num;
}

std::map<uint32_t, CycContext>& context_store() {
  static std::map<uint32_t, CycContext> store;
  return store;
}

std::shared_mutex context_mutex;

}  // namespace

const CycContext& cyc_context(uint32_t N) {
  {
    std::shared_lock<std::shared_mutex> lock(context_mutex);
    auto& store = context_store();
    auto it = store.find(N);
    if (it != store.end()) return it->second;
  }
  std::unique_lock<std::shared_mutex> lock(context_mutex);
  auto& store = context_store();
  auto it = store.find(N);
  if (it != store.end()) return it->second;

  CycContext ctx;
  ctx.N = N;
  ctx.phi = cyclotomic(N);
  ctx.deg = (uint32_t)(ctx.phi.size() - 1);
  uint32_t d = ctx.deg;
  ctx.xpow.resize(2 * N + 1);
  for (uint32_t k = 0; k <= 2 * N; ++k) {
    std::vector<Rat> v(d, Rat(0));
    if (k < d) {
      v[k] = 1;
    } else {
      const std::vector<Rat>& prev = ctx.xpow[k - 1];
      // multiply by x, then reduce the overflowing top term against Phi_N
      Rat top = prev[d - 1];
      for (uint32_t j = d - 1; j >= 1; --j) v[j] = prev[j - 1];
      v[0] = 0;
      if (top != 0)
        for (uint32_t j = 0; j < d; ++j) v[j] -= top * ctx.phi[j];
    }
    ctx.xpow[k] = std::move(v);
  }
  return store.emplace(N, std::move(ctx)).first->second;
}

Cyc::Cyc(uint32_t N, std::vector<Rat> coeffs) : N_(N) {
  const CycContext& ctx = cyc_context(N);
  c_.assign(ctx.deg, Rat(0));
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    const std::vector<Rat>& red = ctx.xpow[k % N];
    for (uint32_t j = 0; j < ctx.deg; ++j) c_[j] += coeffs[k] * red[j];
  }
}

Cyc Cyc::zero(uint32_t N) { return rational(Rat(0), N); }
Cyc Cyc::one(uint32_t N) { return rational(Rat(1), N); }

Cyc Cyc::rational(const Rat& r, uint32_t N) {
  Cyc out;
  out.N_ = N;
  out.c_.assign(cyc_context(N).deg, Rat(0));
  out.c_[0] = r;
  return out;
}

Cyc Cyc::integer(long v, uint32_t N) { return rational(Rat(v), N); }

Cyc Cyc::root(uint32_t N, long k) {
  long r = k % (long)N;
  if (r < 0) r += N;
  Cyc out;
  out.N_ = N;
  out.c_ = cyc_context(N).xpow[(size_t)r];
  return out;
}

bool Cyc::is_zero() const {
  for (const Rat& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_part() const { return c_[0]; }

void Cyc::check_same_field(const Cyc& o) const {
  if (N_ != o.N_) throw FieldError("mixing elements of Q(zeta_" + std::to_string(N_) +
                                   ") and Q(zeta_" + std::to_string(o.N_) + ")");
}

Cyc Cyc::operator-() const {
  Cyc out = *this;
  for (Rat& x : out.c_) x = -x;
  return out;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  check_same_field(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
  check_same_field(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  check_same_field(o);
  const CycContext& ctx = cyc_context(N_);
  uint32_t d = ctx.deg;
  std::vector<Rat> conv(2 * d - 1, Rat(0));
  for (uint32_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (uint32_t j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rat> out(d, Rat(0));
  for (uint32_t k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    if (k < d) {
      out[k] += conv[k];
    } else {
      const std::vector<Rat>& red = ctx.xpow[k];
      for (uint32_t j = 0; j < d; ++j) out[j] += conv[k] * red[j];
    }
  }
  c_ = std::move(out);
  return *this;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  const CycContext& ctx = cyc_context(N_);
  // extended Euclid: u*c + v*Phi_N = gcd; Phi_N irreducible over Q, so gcd is a unit
  Poly r0 = ctx.phi;
  Poly r1(c_.begin(), c_.end());
  poly_trim(r1);
  Poly u0 = {}, u1 = {Rat(1)};
  while (poly_deg(r1) > 0) {
    int d0 = poly_deg(r0), d1 = poly_deg(r1);
    Poly quo(std::max(d0 - d1 + 1, 0), Rat(0));
    Poly rem = r0;
    for (int k = d0 - d1; k >= 0; --k) {
      Rat c = rem[k + d1] / r1[d1];
      quo[k] = c;
      if (c != 0)
        for (int j = 0; j <= d1; ++j) rem[k + j] -= c * r1[j];
    }
    poly_trim(rem);
    // u_next = u0 - quo * u1
    Poly un(std::max(u0.size(), quo.size() + u1.size()), Rat(0));
    for (size_t i = 0; i < u0.size(); ++i) un[i] = u0[i];
    for (size_t i = 0; i < quo.size(); ++i) {
      if (quo[i] == 0) continue;
      for (size_t j = 0; j < u1.size(); ++j) un[i + j] -= quo[i] * u1[j];
    }
    poly_trim(un);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(un);
  }
  if (poly_deg(r1) != 0) throw FieldError("element has no inverse");
  Rat lead = r1[0];
  for (Rat& x : u1) x /= lead;
  return Cyc(N_, std::move(u1));
}

Cyc& Cyc::operator/=(const Cyc& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

Cyc Cyc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyc acc = Cyc::one(N_);
  Cyc base = *this;
  unsigned long k = (unsigned long)e;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

uint32_t Cyc::multiplicative_order() const {
  if (is_zero()) return 0;
  uint32_t bound = N_ % 2 == 0 ? N_ : 2 * N_;
  Cyc acc = *this;
  for (uint32_t k = 1; k <= bound; ++k) {
    if (acc.is_one()) return k;
    acc *= *this;
  }
  return 0;
}

std::string Cyc::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rat coeff = c_[i];
    if (first) {
      first = false;
    } else if (coeff > 0) {
      os << " + ";
    } else {
      os << " - ";
      coeff = -coeff;
    }
    if (i == 0) {
      os << coeff.get_str();
    } else {
      if (coeff == -1)
        os << "-";
      else if (coeff != 1)
        os << coeff.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Cyc q_binomial(uint32_t n, uint32_t i, const Cyc& q) {
  if (i > n) return Cyc::zero(q.field_order());
  uint32_t N = q.field_order();
  std::vector<Cyc> qpow(n + 1, Cyc::one(N));
  for (uint32_t k = 1; k <= n; ++k) qpow[k] = qpow[k - 1] * q;
  std::vector<Cyc> row(1, Cyc::one(N));
  for (uint32_t m = 1; m <= n; ++m) {
    std::vector<Cyc> next(m + 1, Cyc::one(N));
    for (uint32_t j = 1; j < m; ++j) next[j] = row[j - 1] + qpow[j] * row[j];
    row = std::move(next);
  }
  return row[i];
}

Cyc q_factorial(uint32_t n, const Cyc& q) {
  uint32_t N = q.field_order();
  Cyc acc = Cyc::one(N);
  Cyc qk = Cyc::one(N);  // q^k
  Cyc bracket = Cyc::zero(N);
  for (uint32_t k = 1; k <= n; ++k) {
    bracket += qk;  // [k]_q = 1 + q + ... + q^{k-1}
    acc *= bracket;
    qk *= q;
  }
  return acc;
}

std::vector<Cyc> roots_of_unity(uint32_t N, uint32_t d) {
  std::vector<Cyc> out;
  std::set<std::vector<Rat>> seen;
  for (int sign = 0; sign < 2; ++sign) {
    for (uint32_t j = 0; j < N; ++j) {
      Cyc x = Cyc::root(N, j);
      if (sign) x = -x;
      if (!seen.insert(x.coeffs()).second) continue;
      if (x.pow(d).is_one()) out.push_back(x);
    }
  }
  return out;
}

namespace {

struct ScalarParser {
  const std::string& s;
  size_t pos = 0;
  uint32_t N;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw FieldError("scalar parse error at offset " + std::to_string(pos) + ": " + what +
                     " in '" + s + "'");
  }

  long parse_int() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    if (pos >= s.size() || !isdigit((unsigned char)s[pos])) fail("expected integer");
    long v = 0;
    while (pos < s.size() && isdigit((unsigned char)s[pos])) v = v * 10 + (s[pos++] - '0');
    return neg ? -v : v;
  }

  Cyc parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    if (eat('(')) {
      Cyc v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    char c = peek();
    if (c == 'z') {
      ++pos;
      long e = 1;
      if (eat('^')) e = parse_int();
      return Cyc::root(N, e);
    }
    if (isdigit((unsigned char)c)) {
      long num = parse_int();
      if (eat('/')) {
        long den = parse_int();
        if (den == 0) fail("zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return Cyc::rational(r, N);
      }
      return Cyc::integer(num, N);
    }
    fail("expected scalar factor");
  }

  Cyc parse_term() {
    Cyc v = parse_factor();
    while (eat('*')) v *= parse_factor();
    return v;
  }

  Cyc parse_expr() {
    Cyc v = parse_term();
    while (true) {
      if (eat('+')) {
        v += parse_term();
      } else if (peek() == '-') {
        // '-' begins the next term; leave consumption to parse_factor via subtraction
        ++pos;
        v -= parse_term();
      } else {
        break;
      }
    }
    return v;
  }
};

}  // namespace

Cyc parse_scalar(const std::string& text, uint32_t N) {
  ScalarParser p{text, 0, N};
  Cyc v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace hopfkit
