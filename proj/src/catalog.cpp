#include "hopfkit/catalog.hpp"

#include <string>

namespace hopfkit {

namespace {

uint32_t mod_exp(long e, uint32_t m) {
  long r = e % (long)m;
  if (r < 0) r += m;
  return (uint32_t)r;
}

SVec gen_coprod_grouplike(const Presentation& p, size_t gen, uint32_t N) {
  std::vector<uint32_t> exps(p.gens.size(), 0);
  exps[gen] = 1;
  uint32_t ig = p.mono_index(exps);
  return sv_unit(ig * p.dim() + ig, N);
}

/* Delta(x) = x (x) 1 + g^c (x) x for the generator at index gen */
SVec gen_coprod_skew(const Presentation& p, size_t gen, long c, uint32_t N) {
  std::vector<uint32_t> exps(p.gens.size(), 0);
  exps[gen] = 1;
  uint32_t ix = p.mono_index(exps);
  exps[gen] = 0;
  exps[0] = mod_exp(c, p.gens[0].bound);
  uint32_t ig = p.mono_index(exps);
  const uint32_t d = p.dim();
  std::vector<Entry> items{{ix * d + 0, Cyc::one(N)}, {ig * d + ix, Cyc::one(N)}};
  return sv_gather(std::move(items));
}

}  // namespace

HopfPresentation bosonization(const BosSpec& spec) {
  const uint32_t N = spec.field_order, M = spec.group_order;
  if (M < 2) throw UnsupportedError("bosonization needs a group of order >= 2");
  const size_t k = spec.gens.size();
  for (size_t i = 0; i < k; ++i) {
    if (spec.gens[i].q.field_order() != N)
      throw UnsupportedError("action scalar lives in the wrong field");
    if (!spec.gens[i].q.pow((long)M).is_one())
      throw UnsupportedError("action scalar of " + spec.gens[i].name + " has order not dividing " +
                             std::to_string(M));
  }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j) {
      Cyc braid = spec.gens[j].q.pow(spec.gens[i].c) * spec.gens[i].q.pow(spec.gens[j].c);
      if (!braid.is_one())
        throw UnsupportedError("not a quantum linear space: braiding of (" + spec.gens[i].name +
                               ", " + spec.gens[j].name + ") is " + braid.str());
    }

  Presentation p;
  p.field_order = N;
  p.name = spec.name.empty() ? "B(V)#kC_" + std::to_string(M) : spec.name;
  p.gens.push_back({"g", M});
  for (size_t i = 0; i < k; ++i) {
    uint32_t ni = spec.gens[i].q.pow(spec.gens[i].c).multiplicative_order();
    if (ni < 2)
      throw UnsupportedError("truncation order of " + spec.gens[i].name + " is " +
                             std::to_string(ni));
    p.gens.push_back({spec.gens[i].name, ni});
  }
  p.init_rules();
  p.power[0] = sv_unit(0, N);
  for (size_t i = 0; i < k; ++i) {
    p.swap[i + 1][0] = SwapRule{spec.gens[i].q.inverse(), {}};
    for (size_t j = i + 1; j < k; ++j)
      p.swap[j + 1][i + 1] = SwapRule{spec.gens[i].q.pow(spec.gens[j].c), {}};
  }

  HopfPresentation h;
  h.alg = std::move(p);
  h.coprod.push_back(gen_coprod_grouplike(h.alg, 0, N));
  h.counit.push_back(Cyc::one(N));
  for (size_t i = 0; i < k; ++i) {
    h.coprod.push_back(gen_coprod_skew(h.alg, i + 1, spec.gens[i].c, N));
    h.counit.push_back(Cyc::zero(N));
  }
  return h;
}

std::vector<uint32_t> bosonization_layers(const Presentation& p) {
  std::vector<uint32_t> out(p.dim(), 0);
  for (uint32_t idx = 0; idx < p.dim(); ++idx) {
    std::vector<uint32_t> exps = p.exponents(idx);
    uint32_t s = 0;
    for (size_t i = 1; i < exps.size(); ++i) s += exps[i];
    out[idx] = s;
  }
  return out;
}

Hopf build_bosonization(const BosSpec& spec) {
  HopfPresentation p = bosonization(spec);
  std::vector<uint32_t> layers = bosonization_layers(p.alg);
  return Hopf::build(p, std::move(layers));
}

HopfPresentation group_algebra(uint32_t order) {
  BosSpec s;
  s.field_order = order;
  s.group_order = order;
  s.name = "kC_" + std::to_string(order);
  return bosonization(s);
}

HopfPresentation taft(uint32_t n) {
  if (n < 2) throw UnsupportedError("taft needs n >= 2");
  BosSpec s;
  s.field_order = n;
  s.group_order = n;
  s.gens.push_back({"x", 1, Cyc::root(n, 1)});
  s.name = "taft(" + std::to_string(n) + ")";
  return bosonization(s);
}

HopfPresentation taft_hat(uint32_t n) {
  if (n < 2) throw UnsupportedError("taft_hat needs n >= 2");
  BosSpec s;
  s.field_order = n * n;
  s.group_order = n * n;
  s.gens.push_back({"x", 1, Cyc::root(n * n, n)});
  s.name = "taft_hat(" + std::to_string(n) + ")";
  return bosonization(s);
}

HopfPresentation radford(uint32_t n) {
  if (n < 2) throw UnsupportedError("radford needs n >= 2");
  const uint32_t N = n * n;
  const Cyc q = Cyc::root(N, n);

  Presentation p;
  p.field_order = N;
  p.name = "radford(" + std::to_string(n) + ")";
  p.gens.push_back({"g", n * n});
  p.gens.push_back({"x", n});
  p.init_rules();
  p.power[0] = sv_unit(0, N);
  std::vector<uint32_t> exps{n, 0};
  uint32_t ign = p.mono_index(exps);  // g^n
  p.power[1] = sv_gather({{0, Cyc::one(N)}, {ign, -Cyc::one(N)}});
  p.swap[1][0] = SwapRule{q.inverse(), {}};

  HopfPresentation h;
  h.alg = std::move(p);
  h.coprod.push_back(gen_coprod_grouplike(h.alg, 0, N));
  h.coprod.push_back(gen_coprod_skew(h.alg, 1, 1, N));
  h.counit = {Cyc::one(N), Cyc::zero(N)};
  return h;
}

HopfPresentation book(uint32_t n) {
  if (n < 3) throw UnsupportedError("book needs n >= 3");
  BosSpec s;
  s.field_order = n;
  s.group_order = n;
  s.gens.push_back({"x", -1, Cyc::root(n, 1)});
  s.gens.push_back({"y", -1, Cyc::root(n, -1)});
  s.name = "book(" + std::to_string(n) + ")";
  return bosonization(s);
}

HopfPresentation uq_graded(uint32_t n) {
  if (n < 3) throw UnsupportedError("uq_graded needs n >= 3");
  BosSpec s;
  s.field_order = n;
  s.group_order = n;
  s.gens.push_back({"x", -1, Cyc::root(n, 2)});
  s.gens.push_back({"y", -1, Cyc::root(n, -2)});
  s.name = "uq_graded(" + std::to_string(n) + ")";
  return bosonization(s);
}

HopfPresentation uq_lifting(uint32_t n) {
  if (n < 3) throw UnsupportedError("uq_lifting needs n >= 3");
  const uint32_t N = n;
  const Cyc q = Cyc::root(n, 1);

  Presentation p;
  p.field_order = N;
  p.name = "uq_lifting(" + std::to_string(n) + ")";
  p.gens.push_back({"g", n});
  p.gens.push_back({"x", n});
  p.gens.push_back({"y", n});
  p.init_rules();
  p.power[0] = sv_unit(0, N);
  p.swap[1][0] = SwapRule{q.pow(-2), {}};
  p.swap[2][0] = SwapRule{q.pow(2), {}};
  // xy - q^2 yx = 1 - g^{-2}  =>  y x = q^{-2} x y - q^{-2} (1 - g^{n-2})
  std::vector<uint32_t> exps{n - 2, 0, 0};
  uint32_t ig2 = p.mono_index(exps);
  SVec tail = sv_gather({{0, -q.pow(-2)}, {ig2, q.pow(-2)}});
  p.swap[2][1] = SwapRule{q.pow(-2), std::move(tail)};

  HopfPresentation h;
  h.alg = std::move(p);
  h.coprod.push_back(gen_coprod_grouplike(h.alg, 0, N));
  h.coprod.push_back(gen_coprod_skew(h.alg, 1, -1, N));
  h.coprod.push_back(gen_coprod_skew(h.alg, 2, -1, N));
  h.counit = {Cyc::one(N), Cyc::zero(N), Cyc::zero(N)};
  return h;
}

}  // namespace hopfkit
