#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfkit/field.hpp"

using namespace hopfkit;

TEST_CASE("cyclotomic polynomial degrees and evaluation at the root") {
  // phi(N) for N = 1..12
  const uint32_t phi[] = {1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (uint32_t N = 1; N <= 12; ++N) {
    const CycContext& ctx = cyc_context(N);
    CHECK(ctx.deg == phi[N - 1]);
    // Phi_N(zeta_N) = 0: evaluate the stored polynomial at z
    Cyc z = Cyc::root(N, 1);
    Cyc acc = Cyc::zero(N);
    for (size_t k = 0; k < ctx.phi.size(); ++k)
      acc += Cyc::rational(ctx.phi[k], N) * z.pow((long)k);
    CHECK(acc.is_zero());
  }
}

TEST_CASE("roots of unity are primitive") {
  for (uint32_t N = 2; N <= 12; ++N) {
    Cyc z = Cyc::root(N, 1);
    CHECK(z.pow(N).is_one());
    for (uint32_t k = 1; k < N; ++k) CHECK_FALSE(z.pow(k).is_one());
    CHECK(z.multiplicative_order() == N);
  }
}

TEST_CASE("field arithmetic oracle values") {
  // in Q(zeta_3): 1 + z = -z^2, so (1+z)^{-1} = -z
  Cyc z3 = Cyc::root(3, 1);
  Cyc x = Cyc::one(3) + z3;
  CHECK(x.inverse() == -z3);
  CHECK((x * x.inverse()).is_one());

  // in Q(zeta_4): (1+i)^2 = 2i
  Cyc i4 = Cyc::root(4, 1);
  Cyc y = Cyc::one(4) + i4;
  CHECK(y * y == Cyc::integer(2, 4) * i4);

  // rational subfield: 3/4 * 2/3 = 1/2
  Rat a(3, 4), b(2, 3);
  CHECK(Cyc::rational(a, 5) * Cyc::rational(b, 5) == Cyc::rational(Rat(1, 2), 5));
}

TEST_CASE("negative powers and inverse consistency") {
  for (uint32_t N : {3u, 4u, 6u, 8u}) {
    Cyc z = Cyc::root(N, 1);
    CHECK(z.pow(-1) == Cyc::root(N, (long)N - 1));
    CHECK(z.pow(-3) == z.inverse().pow(3));
  }
}

TEST_CASE("random nonzero elements have two-sided inverses") {
  std::mt19937_64 rng(0x5eed0001);
  std::uniform_int_distribution<int> small(-4, 4);
  const CycContext& ctx = cyc_context(8);
  int done = 0;
  while (done < 20) {
    std::vector<Rat> c(ctx.deg);
    for (auto& v : c) v = small(rng);
    Cyc x(8, c);
    if (x.is_zero()) continue;
    CHECK((x * x.inverse()).is_one());
    CHECK((x.inverse() * x).is_one());
    ++done;
  }
}

TEST_CASE("gaussian binomials match the product formula away from roots of unity") {
  // q = 2 in the rational subfield: values are classical integers
  Cyc q = Cyc::integer(2, 1);
  CHECK(q_binomial(2, 1, q) == Cyc::integer(3, 1));
  CHECK(q_binomial(4, 2, q) == Cyc::integer(35, 1));
  CHECK(q_binomial(5, 2, q) == Cyc::integer(155, 1));
  CHECK(q_factorial(3, q) == Cyc::integer(21, 1));

  // generic cross-check: chi(n,i) * [i]! * [n-i]! = [n]!
  std::mt19937_64 rng(0x5eed0002);
  std::uniform_int_distribution<int> small(2, 5);
  for (int trial = 0; trial < 10; ++trial) {
    uint32_t n = 2 + (uint32_t)(rng() % 5);
    uint32_t i = (uint32_t)(rng() % (n + 1));
    Cyc qq = Cyc::integer(small(rng), 1);
    CHECK(q_binomial(n, i, qq) * q_factorial(i, qq) * q_factorial(n - i, qq) ==
          q_factorial(n, qq));
  }
}

TEST_CASE("gaussian binomials vanish at primitive roots") {
  for (uint32_t n = 2; n <= 12; ++n) {
    Cyc q = Cyc::root(n, 1);
    for (uint32_t i = 1; i < n; ++i) CHECK(q_binomial(n, i, q).is_zero());
    // and the endpoints stay 1
    CHECK(q_binomial(n, 0, q).is_one());
    CHECK(q_binomial(n, n, q).is_one());
  }
  // non-primitive root does not vanish: chi(4,2) at q = -1 equals 2
  Cyc m1 = -Cyc::one(4);
  CHECK(q_binomial(4, 2, m1) == Cyc::integer(2, 4));
}

TEST_CASE("gaussian binomial symmetry") {
  std::mt19937_64 rng(0x5eed0003);
  for (int trial = 0; trial < 10; ++trial) {
    uint32_t n = 2 + (uint32_t)(rng() % 6);
    uint32_t i = (uint32_t)(rng() % (n + 1));
    Cyc q = Cyc::root(12, 1 + (long)(rng() % 11));
    CHECK(q_binomial(n, i, q) == q_binomial(n, n - i, q));
  }
}

TEST_CASE("multiplicative orders") {
  CHECK(Cyc::one(5).multiplicative_order() == 1);
  CHECK((-Cyc::one(5)).multiplicative_order() == 2);
  CHECK(Cyc::root(6, 1).multiplicative_order() == 6);
  CHECK((-Cyc::root(6, 1)).multiplicative_order() == 3);
  CHECK(Cyc::integer(2, 3).multiplicative_order() == 0);
  CHECK(Cyc::zero(3).multiplicative_order() == 0);
}

TEST_CASE("roots of unity enumeration") {
  auto r33 = roots_of_unity(3, 3);
  CHECK(r33.size() == 3);
  auto r32 = roots_of_unity(3, 2);
  CHECK(r32.size() == 2);
  auto r36 = roots_of_unity(3, 6);
  CHECK(r36.size() == 6);
  auto r44 = roots_of_unity(4, 4);
  CHECK(r44.size() == 4);
  auto r45 = roots_of_unity(4, 5);
  CHECK(r45.size() == 1);  // only 1 has order dividing 5 in Q(i)
  for (const auto& x : r36) CHECK(x.pow(6).is_one());
}

TEST_CASE("scalar literals parse and print round-trip") {
  for (const char* text : {"0", "1", "-1", "1/2", "-3/7", "z", "z^2", "-z", "2*z^3",
                           "1/2 - 3*z^2 + z", "(1+z)*(1-z)", "z^-1", "-2 + z - z^2"}) {
    Cyc x = parse_scalar(text, 5);
    Cyc y = parse_scalar(x.str(), 5);
    CHECK(x == y);
  }
  CHECK(parse_scalar("z^-1", 5) == Cyc::root(5, 4));
  CHECK(parse_scalar("(1+z)*(1-z)", 5) == Cyc::one(5) - Cyc::root(5, 2));
  CHECK(parse_scalar("2/4", 5) == Cyc::rational(Rat(1, 2), 5));
}

TEST_CASE("scalar parse errors") {
  CHECK_THROWS_AS(parse_scalar("z+", 5), FieldError);
  CHECK_THROWS_AS(parse_scalar("1//2", 5), FieldError);
  CHECK_THROWS_AS(parse_scalar("q", 5), FieldError);
  CHECK_THROWS_AS(parse_scalar("1/0", 5), FieldError);
  CHECK_THROWS_AS(parse_scalar("(1+z", 5), FieldError);
}

TEST_CASE("mixing fields is an error") {
  Cyc a = Cyc::root(3, 1), b = Cyc::root(4, 1);
  CHECK_THROWS_AS(a + b, FieldError);
  CHECK_THROWS_AS(a * b, FieldError);
}

TEST_CASE("division by zero is an error") {
  CHECK_THROWS_AS(Cyc::zero(3).inverse(), FieldError);
  Cyc one = Cyc::one(3);
  CHECK_THROWS_AS(one / Cyc::zero(3), FieldError);
}
