#include "hopfkit/classify.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <utility>

namespace hopfkit {

namespace {

std::string join_u32(const std::vector<uint32_t>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  return os.str();
}

std::string join_str(const std::vector<std::string>& v, const char* sep) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

bool sv_eq(const SVec& a, const SVec& b) { return a == b; }

/* The scalar t with b = t * a entrywise, if the supports agree. */
std::optional<Cyc> proportional(const SVec& a, const SVec& b, uint32_t N) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.empty()) return Cyc::one(N);
  std::optional<Cyc> t;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].idx != b[i].idx) return std::nullopt;
    Cyc r = b[i].val * a[i].val.inverse();
    if (t) {
      if (!(*t == r)) return std::nullopt;
    } else {
      t = r;
    }
  }
  return t;
}

/* Index of the unique coefficient-one entry, if the vector has that shape. */
std::optional<uint32_t> single_unit(const SVec& v) {
  if (v.size() != 1 || !v[0].val.is_one()) return std::nullopt;
  return v[0].idx;
}

std::vector<uint32_t> divisors_of(uint32_t v) {
  std::vector<uint32_t> out;
  for (uint32_t d = 1; d <= v; ++d)
    if (v % d == 0) out.push_back(d);
  return out;
}

}  // namespace

std::string family_name(HopfFamily f) {
  switch (f) {
    case HopfFamily::taft: return "taft";
    case HopfFamily::taft_hat: return "taft_hat";
    case HopfFamily::radford: return "radford";
    case HopfFamily::book: return "book";
    case HopfFamily::uqsl2_twisted: return "uqsl2_twisted";
    case HopfFamily::bosonization_qls: return "bosonization_qls";
  }
  throw ClassifyError("unknown family");
}

std::optional<HopfFamily> family_from_name(const std::string& s) {
  for (HopfFamily f : {HopfFamily::taft, HopfFamily::taft_hat, HopfFamily::radford,
                       HopfFamily::book, HopfFamily::uqsl2_twisted, HopfFamily::bosonization_qls})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

std::string FamilySpec::str() const {
  std::ostringstream os;
  os << family_name(hopf_family) << "(" << n << "):";
  if (list_tag == 0)
    os << "hopf";
  else
    os << (char)list_tag;
  os << "[d=" << d;
  if (a) os << ",a=" << *a;
  if (xi) os << ",xi=" << xi->str();
  if (mu) os << ",mu=" << mu->str();
  if (eta) os << ",eta=" << eta->str();
  os << "]";
  return os.str();
}

namespace {

/* Host Hopf algebra data for one family member. */
struct HostData {
  HopfPresentation hp;
  bool graded = false;   // the defining presentation is coradically graded
  uint32_t M = 0;        // order of the group like generator g
  uint32_t N = 0;        // cyclotomic field order
  Cyc q;                 // the root of unity the family is built on
};

HostData host_data(HopfFamily f, uint32_t n) {
  HostData h;
  switch (f) {
    case HopfFamily::taft:
      h.hp = taft(n);
      h.graded = true;
      h.M = n;
      h.N = n;
      h.q = Cyc::root(n, 1);
      break;
    case HopfFamily::taft_hat:
      h.hp = taft_hat(n);
      h.graded = true;
      h.M = n * n;
      h.N = n * n;
      h.q = Cyc::root(n * n, n);
      break;
    case HopfFamily::radford:
      h.hp = radford(n);
      h.graded = false;
      h.M = n * n;
      h.N = n * n;
      h.q = Cyc::root(n * n, n);
      break;
    case HopfFamily::book:
      h.hp = book(n);
      h.graded = true;
      h.M = n;
      h.N = n;
      h.q = Cyc::root(n, 1);
      break;
    case HopfFamily::uqsl2_twisted:
      h.hp = uq_lifting(n);
      h.graded = false;
      h.M = n;
      h.N = n;
      h.q = Cyc::root(n, 1);
      break;
    case HopfFamily::bosonization_qls:
      h.hp = uq_graded(n);
      h.graded = true;
      h.M = n;
      h.N = n;
      h.q = Cyc::root(n, 1);
      break;
  }
  return h;
}

/* The graded family a member degenerates to under gr. */
HopfFamily graded_host_family(HopfFamily f) {
  switch (f) {
    case HopfFamily::taft: return HopfFamily::taft;
    case HopfFamily::taft_hat: return HopfFamily::taft_hat;
    case HopfFamily::radford: return HopfFamily::taft_hat;
    case HopfFamily::book: return HopfFamily::book;
    case HopfFamily::uqsl2_twisted: return HopfFamily::bosonization_qls;
    case HopfFamily::bosonization_qls: return HopfFamily::bosonization_qls;
  }
  throw ClassifyError("unknown family");
}

/* One coaction skew generator of a comodule algebra instance:
 * lambda(w) = v (x) 1 + g^uexp (x) w in the host, w^bound lands in the group part. */
struct SkewGen {
  std::string name;
  SVec v;            // element of the host carried by the free part
  uint32_t u = 0;    // host basis index of the group leg g^uexp
  uint32_t uexp = 0;
  uint32_t bound = 0;
  Cyc hconj;         // g^m w g^{-m} = hconj * w inside the instance
};

/* One relation slot whose right hand side the classification pins down. */
struct Slot {
  std::string name;
  bool commutator = false;  // zw - qhat wz rather than a generator power
  uint32_t gen = 0;         // index into skew when a power slot
  std::vector<Cyc> tail;    // coordinates on 1, h, ..., h^{d-1}
};

struct InstanceData {
  HostData host;
  FamilySpec spec;
  uint32_t d = 1;
  uint32_t m = 1;  // lambda(h) = g^m (x) h
  std::vector<SkewGen> skew;
  Cyc zw_scalar;   // qhat for two-generator instances
  std::vector<Slot> slots;
};

/* List tags per family, in the order of the classification lists.
 * taft:            a = kC_d, b = A(d, xi)
 * taft_hat:        a = kC_d, b = A(d)          (graded quotients only)
 * radford:         a = kC_d, b = A(d), c = B(a, xi)
 * book:            a = kC_d, b = A0(d, xi), c = A1(d, xi), d = A(xi, mu),
 *                  e = A'(xi, mu), f = D(d, xi, mu), g = D1(xi, mu, eta),
 *                  h = D2(xi, mu, eta)
 * uqsl2_twisted:   a = kC_d, b = A0(d, xi), c = A1(d, xi), d = A(xi, mu),
 *                  e = A'(xi, mu), f = A''(xi, mu), g = B(d, xi, mu),
 *                  h = C(d, xi, mu, eta, a)
 * bosonization_qls: graded shadows a..g of the uqsl2_twisted list. */
InstanceData instance_data(const FamilySpec& spec) {
  InstanceData out;
  out.host = host_data(spec.hopf_family, spec.n);
  out.spec = spec;
  const uint32_t n = spec.n;
  const uint32_t M = out.host.M;
  const uint32_t N = out.host.N;
  const Presentation& hp = out.host.hp.alg;
  const std::string gname = (M == n) ? "n" : "n^2";

  auto fail = [&](const std::string& c) {
    throw ClassifyError(spec.str() + " violates the constraint " + c);
  };
  if (spec.d == 0 || M % spec.d != 0) fail("d | " + gname);
  out.d = spec.d;
  out.m = M / spec.d;
  out.zw_scalar = Cyc::one(N);

  auto checked = [&](const std::optional<Cyc>& v, const char* nm) -> Cyc {
    if (!v) return Cyc::zero(N);
    if (v->field_order() != N)
      throw ClassifyError(spec.str() + ": " + nm + " must lie in Q(zeta_" +
                          std::to_string(N) + ")");
    return *v;
  };
  auto need_nonzero = [&](const std::optional<Cyc>& v, const char* nm) -> Cyc {
    Cyc c = checked(v, nm);
    if (c.is_zero()) fail(std::string(nm) + " != 0");
    return c;
  };
  auto no_param = [&](const std::optional<Cyc>& v, const char* nm) {
    if (v && !checked(v, nm).is_zero())
      throw ClassifyError(spec.str() + ": " + nm +
                          " is not a parameter of this list item");
  };
  auto no_a = [&]() {
    if (spec.a)
      throw ClassifyError(spec.str() + ": a is not a parameter of this list item");
  };

  auto host_mono = [&](uint32_t gexp, uint32_t gen, uint32_t e) {
    std::vector<uint32_t> exps(hp.gens.size(), 0);
    exps[0] = gexp;
    if (e) exps[gen] = e;
    return hp.mono_index(exps);
  };
  auto conj_by_g = [&](uint32_t gen) {
    // x g = c g x in the host, so g x g^{-1} = c^{-1} x
    return hp.swap[gen][0]->coeff.inverse();
  };

  auto mk_skew = [&](const std::string& nm, SVec v, uint32_t uexp, uint32_t bound) {
    SkewGen s;
    s.name = nm;
    s.uexp = uexp;
    s.u = host_mono(uexp, 0, 0);
    s.bound = bound;
    std::optional<Cyc> c;
    for (const Entry& e : v) {
      std::vector<uint32_t> exps = hp.exponents(e.idx);
      uint32_t gen = 0, tot = 0;
      for (size_t i = 1; i < exps.size(); ++i) {
        tot += exps[i];
        if (exps[i]) gen = (uint32_t)i;
      }
      if (tot != 1 || exps[0] != 0)
        throw ClassifyError(spec.str() + ": the coaction line must sit on degree one");
      Cyc cc = conj_by_g(gen).pow((long)out.m);
      if (c && !(*c == cc)) fail("the coaction line is stable under h");
      c = cc;
    }
    s.hconj = c ? *c : Cyc::one(N);
    s.v = std::move(v);
    out.skew.push_back(std::move(s));
  };
  auto power_slot = [&](uint32_t genidx, std::vector<Cyc> tail) {
    Slot s;
    s.name = out.skew[genidx].name + "^" + std::to_string(out.skew[genidx].bound);
    s.gen = genidx;
    s.tail = std::move(tail);
    out.slots.push_back(std::move(s));
  };
  auto comm_slot = [&](std::vector<Cyc> tail) {
    Slot s;
    s.name = "zw";
    s.commutator = true;
    s.tail = std::move(tail);
    out.slots.push_back(std::move(s));
  };
  auto dense1 = [&](const Cyc& c0) {
    std::vector<Cyc> t(out.d, Cyc::zero(N));
    t[0] = c0;
    return t;
  };

  const HopfFamily f = spec.hopf_family;
  const bool gleg_is_g =
      f == HopfFamily::taft || f == HopfFamily::taft_hat || f == HopfFamily::radford;
  const uint32_t uexp = gleg_is_g ? 1u : M - 1;
  const int tag = spec.list_tag;
  auto unknown_tag = [&]() {
    throw ClassifyError(spec.str() + ": unknown list tag");
  };

  if (tag == 'a') {
    no_param(spec.xi, "xi");
    no_param(spec.mu, "mu");
    no_param(spec.eta, "eta");
    no_a();
    return out;
  }

  switch (f) {
    case HopfFamily::taft: {
      if (tag != 'b') unknown_tag();
      no_param(spec.mu, "mu");
      no_param(spec.eta, "eta");
      no_a();
      mk_skew("w", sv_unit(host_mono(0, 1, 1), N), uexp, n);
      power_slot(0, dense1(checked(spec.xi, "xi")));
      break;
    }
    case HopfFamily::taft_hat: {
      if (tag != 'b') unknown_tag();
      no_param(spec.xi, "xi");
      no_param(spec.mu, "mu");
      no_param(spec.eta, "eta");
      no_a();
      mk_skew("w", sv_unit(host_mono(0, 1, 1), N), uexp, n);
      power_slot(0, dense1(Cyc::zero(N)));
      break;
    }
    case HopfFamily::radford: {
      no_param(spec.mu, "mu");
      no_param(spec.eta, "eta");
      if (tag == 'b') {
        no_param(spec.xi, "xi");
        no_a();
        mk_skew("w", sv_unit(host_mono(0, 1, 1), N), uexp, n);
        power_slot(0, dense1(Cyc::one(N)));
      } else if (tag == 'c') {
        if (out.d % n != 0) fail("n a = d");
        uint32_t a = out.d / n;
        if (spec.a && *spec.a != a) fail("n a = d");
        if (out.m * a != n) fail("m a = n");
        Cyc xi = need_nonzero(spec.xi, "xi");
        mk_skew("w", sv_unit(host_mono(0, 1, 1), N), uexp, n);
        std::vector<Cyc> t = dense1(Cyc::one(N));
        t[a] = xi;
        power_slot(0, std::move(t));
        out.spec.a = a;
      } else {
        unknown_tag();
      }
      break;
    }
    case HopfFamily::book:
    case HopfFamily::uqsl2_twisted:
    case HopfFamily::bosonization_qls: {
      const bool graded_family = f == HopfFamily::bosonization_qls;
      const uint32_t bx = hp.gens[1].bound;
      const uint32_t by = hp.gens[2].bound;
      SVec ex = sv_unit(host_mono(0, 1, 1), N);
      SVec ey = sv_unit(host_mono(0, 2, 1), N);
      auto scalar_or_zero = [&](const std::optional<Cyc>& v, const char* nm) {
        return graded_family ? (no_param(v, nm), Cyc::zero(N)) : checked(v, nm);
      };
      auto line_mu = [&]() {
        Cyc mu = need_nonzero(spec.mu, "mu");
        std::vector<Entry> items;
        for (const Entry& e : ex) items.push_back({e.idx, mu * e.val});
        for (const Entry& e : ey) items.push_back(e);
        return sv_gather(std::move(items));
      };
      switch (tag) {
        case 'b':
          no_param(spec.mu, "mu");
          no_param(spec.eta, "eta");
          no_a();
          mk_skew("w", ex, uexp, bx);
          power_slot(0, dense1(scalar_or_zero(spec.xi, "xi")));
          break;
        case 'c':
          no_param(spec.mu, "mu");
          no_param(spec.eta, "eta");
          no_a();
          mk_skew("w", ey, uexp, by);
          power_slot(0, dense1(scalar_or_zero(spec.xi, "xi")));
          break;
        case 'd':
          no_param(spec.eta, "eta");
          no_a();
          if (out.d != 1) fail("d = 1");
          mk_skew("w", line_mu(), uexp, bx);
          power_slot(0, dense1(scalar_or_zero(spec.xi, "xi")));
          break;
        case 'e':
          no_param(spec.eta, "eta");
          no_a();
          if (n % 2 != 0) fail("n even");
          if (out.d != 2) fail("d = 2");
          mk_skew("w", line_mu(), uexp, bx);
          power_slot(0, dense1(scalar_or_zero(spec.xi, "xi")));
          break;
        case 'f': {
          if (f == HopfFamily::book) {
            no_param(spec.eta, "eta");
            no_a();
            mk_skew("w", ey, uexp, by);
            mk_skew("z", ex, uexp, bx);
            power_slot(0, dense1(checked(spec.xi, "xi")));
            power_slot(1, dense1(checked(spec.mu, "mu")));
            comm_slot(dense1(Cyc::zero(N)));
          } else {
            no_param(spec.eta, "eta");
            no_a();
            if (n % 4 != 0) fail("n = 4m");
            if (out.d != 4) fail("d = 4");
            mk_skew("w", line_mu(), uexp, bx);
            power_slot(0, dense1(scalar_or_zero(spec.xi, "xi")));
          }
          break;
        }
        case 'g': {
          if (f == HopfFamily::book) {
            no_a();
            if (out.d != n) fail("d = n");
            Cyc eta = need_nonzero(spec.eta, "eta");
            mk_skew("w", ey, uexp, by);
            mk_skew("z", ex, uexp, bx);
            power_slot(0, dense1(checked(spec.xi, "xi")));
            power_slot(1, dense1(checked(spec.mu, "mu")));
            std::vector<Cyc> t(out.d, Cyc::zero(N));
            t[n - 2] = eta;
            comm_slot(std::move(t));
          } else {
            no_param(spec.eta, "eta");
            no_a();
            mk_skew("w", ey, uexp, by);
            mk_skew("z", ex, uexp, bx);
            power_slot(0, dense1(scalar_or_zero(spec.xi, "xi")));
            power_slot(1, dense1(scalar_or_zero(spec.mu, "mu")));
            comm_slot(dense1(graded_family ? Cyc::zero(N) : Cyc::one(N)));
          }
          break;
        }
        case 'h': {
          if (f == HopfFamily::book) {
            no_a();
            if (n % 2 != 0 || n / 2 < 2) fail("n = 2k with k > 1");
            if (out.d != n / 2) fail("d = k");
            Cyc eta = need_nonzero(spec.eta, "eta");
            mk_skew("w", ey, uexp, by);
            mk_skew("z", ex, uexp, bx);
            power_slot(0, dense1(checked(spec.xi, "xi")));
            power_slot(1, dense1(checked(spec.mu, "mu")));
            std::vector<Cyc> t(out.d, Cyc::zero(N));
            t[n / 2 - 1] = eta;
            comm_slot(std::move(t));
          } else if (f == HopfFamily::uqsl2_twisted) {
            if ((n - 2) % out.m != 0) fail("m a = n - 2");
            uint32_t a = (n - 2) / out.m;
            if (a == 0 || a >= out.d) fail("m a = n - 2");
            if (spec.a && *spec.a != a) fail("m a = n - 2");
            Cyc eta = need_nonzero(spec.eta, "eta");
            mk_skew("w", ey, uexp, by);
            mk_skew("z", ex, uexp, bx);
            power_slot(0, dense1(checked(spec.xi, "xi")));
            power_slot(1, dense1(checked(spec.mu, "mu")));
            std::vector<Cyc> t = dense1(Cyc::one(N));
            t[a] = eta;
            comm_slot(std::move(t));
            out.spec.a = a;
          } else {
            throw ClassifyError(spec.str() + ": the graded list has no entry (h)");
          }
          break;
        }
        default:
          unknown_tag();
      }
      if (out.skew.size() == 2) {
        out.zw_scalar = hp.swap[1][0]->coeff.pow((long)uexp);
        if (!(hp.swap[2][0]->coeff.pow(-(long)uexp) == out.zw_scalar))
          throw ClassifyError(spec.str() + ": the two cross commutation scalars disagree");
      }
      break;
    }
  }
  return out;
}

/* Tail coordinates on 1, h, ..., h^{d-1} as an element of the instance algebra. */
SVec tail_on_group(const Presentation& p, const std::vector<Cyc>& tail, uint32_t N) {
  std::vector<Entry> items;
  for (uint32_t i = 0; i < tail.size(); ++i) {
    if (tail[i].is_zero()) continue;
    std::vector<uint32_t> exps(p.gens.size(), 0);
    if (i) exps[0] = i;
    items.push_back({p.mono_index(exps), tail[i]});
  }
  return sv_gather(std::move(items));
}

}  // namespace

HopfPresentation family_hopf_presentation(HopfFamily f, uint32_t n) {
  return host_data(f, n).hp;
}

std::unique_ptr<Hopf> build_family_hopf(HopfFamily f, uint32_t n) {
  HostData host = host_data(f, n);
  std::optional<std::vector<uint32_t>> lay;
  if (host.graded) lay = bosonization_layers(host.hp.alg);
  return std::make_unique<Hopf>(Hopf::build(host.hp, std::move(lay)));
}

FamilyPresentation family_presentation(const FamilySpec& spec) {
  HostData host = host_data(spec.hopf_family, spec.n);
  FamilyPresentation out;
  out.name = spec.str();
  out.hopf = host.hp;
  if (host.graded) out.hopf_layers = bosonization_layers(out.hopf.alg);
  if (spec.list_tag == 0) {
    out.algebra = out.hopf.alg;
    out.coaction = out.hopf.coprod;
    out.algebra_layers = out.hopf_layers;
    return out;
  }
  InstanceData inst = instance_data(spec);
  const uint32_t N = host.N;

  Presentation p;
  p.field_order = N;
  p.name = spec.str();
  const bool hash = inst.d > 1;
  if (hash) p.gens.push_back({"h", inst.d});
  for (const SkewGen& s : inst.skew) p.gens.push_back({s.name, s.bound});
  p.init_rules();
  const uint32_t base = hash ? 1u : 0u;
  if (hash) {
    p.power[0] = sv_unit(0, N);
    for (size_t i = 0; i < inst.skew.size(); ++i)
      p.swap[base + i][0] = SwapRule{inst.skew[i].hconj.inverse(), {}};
  }
  if (inst.skew.size() == 2) p.swap[base + 1][base] = SwapRule{inst.zw_scalar, {}};
  for (const Slot& s : inst.slots) {
    SVec tail = tail_on_group(p, s.tail, N);
    if (s.commutator)
      p.swap[base + 1][base]->tail = std::move(tail);
    else
      p.power[base + s.gen] = std::move(tail);
  }

  const uint32_t da = p.dim();
  std::vector<SVec> co;
  if (hash) {
    std::vector<uint32_t> exps(p.gens.size(), 0);
    exps[0] = 1;
    uint32_t hmono = p.mono_index(exps);
    std::vector<uint32_t> gexps(host.hp.alg.gens.size(), 0);
    gexps[0] = inst.m;
    uint32_t gm = host.hp.alg.mono_index(gexps);
    co.push_back(sv_unit(gm * da + hmono, N));
  }
  for (size_t i = 0; i < inst.skew.size(); ++i) {
    const SkewGen& s = inst.skew[i];
    std::vector<uint32_t> exps(p.gens.size(), 0);
    exps[base + i] = 1;
    uint32_t wmono = p.mono_index(exps);
    std::vector<Entry> items;
    for (const Entry& e : s.v) items.push_back({e.idx * da, e.val});
    items.push_back({s.u * da + wmono, Cyc::one(N)});
    co.push_back(sv_gather(std::move(items)));
  }

  bool graded_inst = host.graded;
  for (const Slot& s : inst.slots)
    for (const Cyc& c : s.tail)
      if (!c.is_zero()) graded_inst = false;
  if (graded_inst) {
    std::vector<uint32_t> lay(da, 0);
    for (uint32_t idx = 0; idx < da; ++idx) {
      std::vector<uint32_t> exps = p.exponents(idx);
      uint32_t tot = 0;
      for (size_t i = base; i < exps.size(); ++i) tot += exps[i];
      lay[idx] = tot;
    }
    out.algebra_layers = std::move(lay);
  }
  out.algebra = std::move(p);
  out.coaction = std::move(co);
  return out;
}

ComoduleAlgebra build_family_comodule(const Hopf& h, const FamilySpec& spec) {
  FamilyPresentation fp = family_presentation(spec);
  if (!h.pres() || h.pres()->name != fp.hopf.alg.name)
    throw ClassifyError("the Hopf algebra was not built from " + fp.hopf.alg.name);
  if (h.field_order() != fp.algebra.field_order)
    throw ClassifyError("field order mismatch for " + spec.str());
  std::optional<std::vector<uint32_t>> lay = fp.algebra_layers;
  if (!h.layers()) lay.reset();
  return ComoduleAlgebra::build(h, fp.algebra, fp.coaction, std::move(lay));
}

BuiltInstance build_family(const FamilySpec& spec) {
  BuiltInstance out;
  out.spec = spec;
  out.name = spec.str();
  out.hopf = build_family_hopf(spec.hopf_family, spec.n);
  out.comodule =
      std::make_unique<ComoduleAlgebra>(build_family_comodule(*out.hopf, spec));
  return out;
}

std::optional<std::pair<HopfFamily, uint32_t>> builtin_hopf_family(const Hopf& h) {
  if (!h.pres()) return std::nullopt;
  const std::string& nm = h.pres()->name;
  auto match = [&](const char* pre) -> std::optional<uint32_t> {
    std::string p(pre);
    if (nm.size() <= p.size() + 1 || nm.compare(0, p.size(), p) != 0 || nm.back() != ')')
      return std::nullopt;
    std::string digits = nm.substr(p.size(), nm.size() - p.size() - 1);
    if (digits.empty()) return std::nullopt;
    uint32_t v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (uint32_t)(c - '0');
    }
    return v;
  };
  if (auto n = match("taft_hat(")) return std::make_pair(HopfFamily::taft_hat, *n);
  if (auto n = match("taft(")) return std::make_pair(HopfFamily::taft, *n);
  if (auto n = match("radford(")) return std::make_pair(HopfFamily::radford, *n);
  if (auto n = match("book(")) return std::make_pair(HopfFamily::book, *n);
  if (auto n = match("uq_lifting(")) return std::make_pair(HopfFamily::uqsl2_twisted, *n);
  if (auto n = match("uq_graded(")) return std::make_pair(HopfFamily::bosonization_qls, *n);
  return std::nullopt;
}

FamilySpec graded_sibling(const FamilySpec& spec) {
  FamilySpec out = spec;
  out.hopf_family = graded_host_family(spec.hopf_family);
  out.xi.reset();
  out.eta.reset();
  out.a.reset();
  if (spec.list_tag == 0) {
    out.mu.reset();
    return out;
  }
  switch (spec.hopf_family) {
    case HopfFamily::taft:
    case HopfFamily::taft_hat:
    case HopfFamily::bosonization_qls:
      if (spec.list_tag != 'd' && spec.list_tag != 'e' && spec.list_tag != 'f')
        out.mu.reset();
      break;
    case HopfFamily::radford:
      out.mu.reset();
      if (spec.list_tag == 'c') out.list_tag = 'b';
      break;
    case HopfFamily::book:
      if (spec.list_tag == 'g') {
        out.list_tag = 'f';
        out.d = spec.n;
        out.mu.reset();
      } else if (spec.list_tag == 'h') {
        out.list_tag = 'f';
        out.d = spec.n / 2;
        out.mu.reset();
      } else if (spec.list_tag == 'f') {
        out.mu.reset();
      }
      break;
    case HopfFamily::uqsl2_twisted:
      if (spec.list_tag == 'h') {
        out.list_tag = 'g';
        out.mu.reset();
      } else if (spec.list_tag == 'g') {
        out.mu.reset();
      }
      break;
  }
  return out;
}

CentralPattern power_pattern(const Hopf& h, const ComoduleAlgebra& a0, const SVec& v,
                             uint32_t u, uint32_t e) {
  const uint32_t N = h.field_order();
  if (e < 1) throw ClassifyError("power exponent must be positive");
  SVec uv = sv_unit(u, N);
  // E_k[j] = coefficient of w^{e-k+?}: expand (v (x) 1 + u (x) w)^e collecting w^j
  std::vector<SVec> cur(1, h.unit());
  for (uint32_t k = 1; k <= e; ++k) {
    std::vector<SVec> nxt(k + 1);
    for (uint32_t j = 0; j <= k; ++j) {
      SVec s;
      if (j <= k - 1) s = h.mul(cur[j], v);
      if (j >= 1) s = sv_add(s, h.mul(cur[j - 1], uv));
      nxt[j] = std::move(s);
    }
    cur = std::move(nxt);
  }
  for (uint32_t j = 1; j < e; ++j)
    if (!cur[j].empty())
      throw ClassifyError("the coaction power does not collapse at the chosen exponent");
  std::optional<uint32_t> ghost = single_unit(cur[e]);
  if (!ghost)
    throw ClassifyError("the group leg of the coaction power is not a group like");
  CentralPattern out;
  out.ghost = *ghost;
  out.pattern = sv_kron(cur[0], a0.unit(), a0.dim());
  return out;
}

CentralPattern commutator_pattern(const Hopf& h, const ComoduleAlgebra& a0, const SVec& vz,
                                  uint32_t uz, const SVec& vw, uint32_t uw, Cyc* scalar) {
  const uint32_t N = h.field_order();
  SVec uzv = sv_unit(uz, N);
  SVec uwv = sv_unit(uw, N);
  std::optional<Cyc> qhat = proportional(h.mul(uwv, vz), h.mul(vz, uwv), N);
  if (!qhat)
    throw ClassifyError("v_z does not commute with the group leg of w up to a scalar");
  std::optional<Cyc> cross = proportional(h.mul(vw, uzv), h.mul(uzv, vw), N);
  if (!cross || !(*cross == *qhat))
    throw ClassifyError("the two cross commutation scalars disagree");
  if (!sv_eq(h.mul(uzv, uwv), h.mul(uwv, uzv)))
    throw ClassifyError("the two group legs do not commute");
  std::optional<uint32_t> ghost = single_unit(h.mul(uzv, uwv));
  if (!ghost)
    throw ClassifyError("the product of the group legs is not a group like");
  SVec b = sv_sub(h.mul(vz, vw), [&] {
    SVec t = h.mul(vw, vz);
    sv_scale(t, *qhat);
    return t;
  }());
  if (scalar) *scalar = *qhat;
  CentralPattern out;
  out.ghost = *ghost;
  out.pattern = sv_kron(b, a0.unit(), a0.dim());
  return out;
}

LiftingSolution lifting_solve_central(const ComoduleAlgebra& a0, const CentralPattern& p) {
  const uint32_t N = a0.field_order();
  const uint32_t da = a0.dim();
  const uint32_t dh = a0.hopf().dim();
  SparseMat L = a0.coaction_matrix();
  Triplets shift;
  shift.rows = dh * da;
  shift.cols = da;
  for (uint32_t j = 0; j < da; ++j) shift.add(p.ghost * da + j, j, Cyc::one(N));
  L = mat_sub(L, shift.build());
  std::optional<AffineSolution> sol = solve(L, p.pattern, N);
  LiftingSolution out;
  out.free_dirs = SparseMat::zero(0, da);
  if (!sol) return out;
  out.consistent = true;
  out.base = sol->particular;
  out.free_dirs = sol->homogeneous;
  for (const SVec& row : out.free_dirs.row) {
    if (row.empty()) continue;
    Cyc c = sv_get(out.base, row[0].idx, N);
    if (!c.is_zero()) sv_axpy(out.base, Cyc::zero(N) - c, row);
  }
  return out;
}

bool lifting_contains(const LiftingSolution& s, const SVec& value) {
  if (!s.consistent) return false;
  SVec r = sv_sub(value, s.base);
  for (const SVec& row : s.free_dirs.row) {
    if (row.empty() || r.empty()) continue;
    const uint32_t N = row[0].val.field_order();
    Cyc c = sv_get(r, row[0].idx, N);
    if (!c.is_zero()) sv_axpy(r, Cyc::zero(N) - c, row);
  }
  return r.empty();
}

namespace {

struct ExpectedSlot {
  SVec base;
  SparseMat dirs;
};

SparseMat one_dir(uint32_t idx, uint32_t d, uint32_t N) {
  SparseMat m = SparseMat::zero(1, d);
  m.row[0] = sv_unit(idx, N);
  return m;
}

ExpectedSlot expected_power_slot(HopfFamily f, uint32_t n, uint32_t d, uint32_t N) {
  ExpectedSlot e;
  e.dirs = SparseMat::zero(0, d);
  switch (f) {
    case HopfFamily::taft:
    case HopfFamily::book:
    case HopfFamily::uqsl2_twisted:
      e.dirs = one_dir(0, d, N);
      break;
    case HopfFamily::radford:
      e.base = sv_unit(0, N);
      if (d % n == 0) e.dirs = one_dir(d / n, d, N);
      break;
    default:
      throw ClassifyError("no forced power shape for this family");
  }
  return e;
}

ExpectedSlot expected_comm_slot(HopfFamily f, uint32_t n, uint32_t d, uint32_t N) {
  ExpectedSlot e;
  e.dirs = SparseMat::zero(0, d);
  uint32_t m = n / d;
  if (f == HopfFamily::uqsl2_twisted) e.base = sv_unit(0, N);
  if ((n - 2) % m == 0 && (n - 2) / m < d) e.dirs = one_dir((n - 2) / m, d, N);
  return e;
}

}  // namespace

std::vector<LiftingForcing> lifting_forcing(const Hopf& h, HopfFamily f, uint32_t d) {
  if (f != HopfFamily::taft && f != HopfFamily::radford && f != HopfFamily::book &&
      f != HopfFamily::uqsl2_twisted)
    throw ClassifyError("the classification states no lifting forcing for this family");
  auto bf = builtin_hopf_family(h);
  if (!bf || bf->first != f)
    throw ClassifyError("the Hopf algebra was not built from family " + family_name(f));
  const uint32_t n = bf->second;
  const uint32_t N = h.field_order();

  FamilySpec a0spec;
  a0spec.hopf_family = f;
  a0spec.n = n;
  a0spec.list_tag = 'a';
  a0spec.d = d;
  ComoduleAlgebra a0 = build_family_comodule(h, a0spec);

  FamilySpec full = a0spec;
  full.list_tag = (f == HopfFamily::book) ? 'f' : (f == HopfFamily::uqsl2_twisted ? 'g' : 'b');
  InstanceData inst = instance_data(full);

  std::vector<LiftingForcing> out;
  for (const Slot& slot : inst.slots) {
    LiftingForcing lf;
    lf.slot = slot.name;
    CentralPattern pat =
        slot.commutator
            ? commutator_pattern(h, a0, inst.skew[1].v, inst.skew[1].u, inst.skew[0].v,
                                 inst.skew[0].u, nullptr)
            : power_pattern(h, a0, inst.skew[slot.gen].v, inst.skew[slot.gen].u,
                            inst.skew[slot.gen].bound);
    lf.solution = lifting_solve_central(a0, pat);
    ExpectedSlot ex = slot.commutator ? expected_comm_slot(f, n, d, N)
                                      : expected_power_slot(f, n, d, N);
    lf.expected_base = ex.base;
    lf.expected_dirs = ex.dirs;
    lf.agrees = lf.solution.consistent && sv_eq(lf.solution.base, lf.expected_base) &&
                lf.solution.free_dirs == lf.expected_dirs;
    out.push_back(std::move(lf));
  }
  return out;
}

DegreeOneReport check_degree_one_generation(const Hopf& book_h, const Cyc& a, const Cyc& b,
                                            uint32_t m) {
  if (!book_h.pres() || book_h.pres()->gens.size() != 3)
    throw ClassifyError("degree one generation needs a rank two Nichols datum");
  const Presentation& P = *book_h.pres();
  const uint32_t N = book_h.field_order();
  const uint32_t n = P.gens[1].bound;
  if (m < 1 || m >= n) throw ClassifyError("the degree must satisfy 1 <= m < n");
  if (a.is_zero() && b.is_zero()) throw ClassifyError("(a, b) must be nonzero");
  auto mono = [&](uint32_t exx, uint32_t eyy) { return P.mono_index({0, exx, eyy}); };
  SVec wv = sv_gather({{mono(1, 0), a}, {mono(0, 1), b}});
  const uint32_t dimH = book_h.dim();

  Triplets C;
  uint32_t rowoff = 0;
  const uint32_t top = (m == 1) ? 1u : m - 1;
  for (uint32_t ic = 1; ic <= top; ++ic) {
    SVec wp = book_h.power(wv, ic);
    if (wp.empty())
      throw ClassifyError("the generator power vanishes below the top degree");
    std::map<uint32_t, uint32_t> pos;
    for (uint32_t t = 0; t <= ic; ++t) pos[mono(ic - t, t)] = t;
    std::vector<Entry> lw;
    for (const Entry& e : wp) {
      auto it = pos.find(e.idx);
      if (it == pos.end())
        throw ClassifyError("the generator power leaves its homogeneous line");
      lw.push_back({it->second, e.val});
    }
    Subspace line = Subspace::from_vectors(ic + 1, N, {sv_gather(std::move(lw))});
    SparseMat Q = line.quotient_projection();
    std::vector<std::vector<Cyc>> qd;
    for (const SVec& r : Q.row) qd.push_back(sv_to_dense(r, ic + 1, N));
    for (uint32_t cc = 0; cc <= m; ++cc) {
      const SVec& cp = book_h.coprod_basis(mono(m - cc, cc));
      for (const Entry& e : cp) {
        uint32_t l = e.idx / dimH;
        uint32_t r = e.idx % dimH;
        auto it = pos.find(r);
        if (it == pos.end()) continue;
        uint32_t t = it->second;
        for (uint32_t qr = 0; qr < Q.rows; ++qr) {
          Cyc c = e.val * qd[qr][t];
          if (!c.is_zero()) C.add(rowoff + l * Q.rows + qr, cc, c);
        }
      }
    }
    rowoff += dimH * Q.rows;
  }
  C.rows = rowoff;
  C.cols = m + 1;
  SparseMat ker = kernel(C.build(), N);

  DegreeOneReport rep;
  rep.space = Subspace::from_vectors(m + 1, N, ker.row);
  SVec wm = book_h.power(wv, m);
  std::map<uint32_t, uint32_t> pos;
  for (uint32_t i = 0; i <= m; ++i) pos[mono(m - i, i)] = i;
  std::vector<Entry> gp;
  for (const Entry& e : wm) {
    auto it = pos.find(e.idx);
    if (it == pos.end())
      throw ClassifyError("the generator power leaves its homogeneous line");
    gp.push_back({it->second, e.val});
  }
  rep.generator_power = sv_gather(std::move(gp));
  rep.verdict = rep.space.dim() == 1 && !rep.generator_power.empty() &&
                rep.space.contains(rep.generator_power);

  const Cyc q = Cyc::root(N, 1);
  std::vector<Cyc> dv = sv_to_dense(rep.generator_power, m + 1, N);
  bool cm = true;
  for (uint32_t i = 0; i <= m && cm; ++i) {
    Cyc alpha = dv[i] * q.pow((long)i * (long)(m - i));
    Cyc want = q_binomial(m, i, q);
    if (m > i) want = want * a.pow((long)(m - i));
    if (i) want = want * b.pow((long)i);
    if (!(alpha == want)) cm = false;
  }
  rep.coefficient_match = cm;
  return rep;
}

DegreeOneReport check_degree_one_generation(uint32_t n, const Cyc& a, const Cyc& b,
                                            uint32_t m) {
  std::unique_ptr<Hopf> h = build_family_hopf(HopfFamily::book, n);
  return check_degree_one_generation(*h, a, b, m);
}

namespace {

/* Lexicographically minimal serialization of the slot tails over the substitution
 * h -> omega h with omega^d = 1; the instance is insensitive to that choice. */
std::vector<std::string> canonical_slot_strings(const std::vector<std::string>& names,
                                                const std::vector<std::vector<Cyc>>& tails,
                                                uint32_t d, uint32_t N) {
  uint32_t reps = (d > 0 && N % d == 0) ? d : 1;
  std::vector<std::string> best;
  std::string bestkey;
  for (uint32_t k = 0; k < reps; ++k) {
    Cyc omega = Cyc::root(N, (long)(N / reps) * k);
    std::vector<std::string> cur;
    for (size_t s = 0; s < names.size(); ++s) {
      std::ostringstream os;
      os << names[s] << "=(";
      Cyc w = Cyc::one(N);
      for (size_t i = 0; i < tails[s].size(); ++i) {
        if (i) {
          os << ",";
          w = w * omega;
        }
        os << (tails[s][i] * w).str();
      }
      os << ")";
      cur.push_back(os.str());
    }
    std::string key = join_str(cur, ";");
    if (k == 0 || key < bestkey) {
      bestkey = key;
      best = cur;
    }
  }
  return best;
}

std::string line_string(const SVec& row, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (const Entry& e : row) {
    if (!first) os << " + ";
    first = false;
    if (e.val.is_one())
      os << names[e.idx];
    else
      os << "(" << e.val.str() << ")*" << names[e.idx];
  }
  return os.str();
}

/* L - shift by the ghost group like, acting on A0 valued unknowns. */
SVec measure_slot(const ComoduleAlgebra& A, const InstanceData& inst, const Slot& slot) {
  const Presentation& P = *A.pres();
  const uint32_t N = A.field_order();
  const uint32_t base = inst.d > 1 ? 1u : 0u;
  auto genvec = [&](uint32_t i) {
    std::vector<uint32_t> exps(P.gens.size(), 0);
    exps[base + i] = 1;
    return sv_unit(P.mono_index(exps), N);
  };
  SVec v;
  if (slot.commutator) {
    SVec W = genvec(0), Z = genvec(1);
    SVec wz = A.mul(W, Z);
    sv_scale(wz, inst.zw_scalar);
    v = sv_sub(A.mul(Z, W), wz);
  } else {
    v = A.power(genvec(slot.gen), inst.skew[slot.gen].bound);
  }
  std::vector<Entry> items;
  for (const Entry& e : v) {
    std::vector<uint32_t> exps = P.exponents(e.idx);
    for (size_t i = base; i < exps.size(); ++i)
      if (exps[i]) throw ClassifyError("the slot value leaves the trivial part");
    items.push_back({exps.empty() ? 0u : exps[0], e.val});
  }
  return sv_gather(std::move(items));
}

struct ParamExtract {
  bool known = false;
  std::vector<std::string> slots;
};

/* Recover the defining relation tails of A from its coaction alone, up to the
 * substitution h -> omega h, and serialize them canonically. */
ParamExtract canonical_params(const ComoduleAlgebra& A) {
  ParamExtract out;
  if (!A.pres()) return out;
  const Presentation& P = *A.pres();
  const Hopf& H = A.hopf();
  const uint32_t N = A.field_order();
  const uint32_t dimA = A.dim();
  const uint32_t dimH = H.dim();

  // split the generators into at most one group like and skew primitives
  std::optional<uint32_t> hgen;
  struct SkewInfo {
    uint32_t gen = 0;
    SVec v;        // host element in the free leg
    uint32_t u = 0;
  };
  std::vector<SkewInfo> skews;
  std::vector<uint32_t> gmono(P.gens.size(), 0);
  for (uint32_t t = 0; t < P.gens.size(); ++t) {
    std::vector<uint32_t> exps(P.gens.size(), 0);
    exps[t] = 1;
    gmono[t] = P.mono_index(exps);
    const SVec& co = A.coaction_basis(gmono[t]);
    SVec v;
    std::optional<uint32_t> u;
    bool ok = true;
    for (const Entry& e : co) {
      uint32_t hi = e.idx / dimA;
      uint32_t ai = e.idx % dimA;
      if (ai == 0) {
        v.push_back({hi, e.val});
      } else if (ai == gmono[t] && e.val.is_one()) {
        if (u) ok = false;
        u = hi;
      } else {
        ok = false;
      }
    }
    if (!ok || !u) return out;
    if (v.empty()) {
      if (hgen) return out;
      hgen = t;
    } else {
      skews.push_back({t, sv_gather(std::move(v)), *u});
    }
  }

  const uint32_t d = hgen ? P.gens[*hgen].bound : 1u;
  if (N % d != 0) return out;
  SVec h_elt = hgen ? sv_unit(gmono[*hgen], N) : A.unit();
  if (!sv_eq(A.power(h_elt, d), A.unit())) return out;

  SparseMat Pmat;
  {
    std::vector<SVec> cols(d);
    SVec cur = A.unit();
    for (uint32_t i = 0; i < d; ++i) {
      cols[i] = cur;
      cur = A.mul(cur, h_elt);
    }
    Pmat = mat_from_columns(dimA, cols);
  }

  // signature solve: W has the prescribed coaction and h commutation
  std::vector<SVec> W(skews.size());
  for (size_t s = 0; s < skews.size(); ++s) {
    SparseMat L = A.coaction_matrix();
    Triplets shift;
    shift.rows = dimH * dimA;
    shift.cols = dimA;
    for (uint32_t j = 0; j < dimA; ++j)
      shift.add(skews[s].u * dimA + j, j, Cyc::one(N));
    L = mat_sub(L, shift.build());
    SVec rhs = sv_kron(skews[s].v, A.unit(), dimA);
    SparseMat sys = L;
    if (hgen) {
      // commutation scalar from the host: g^m v = c v g^m
      const SVec& hc = A.coaction_basis(gmono[*hgen]);
      std::optional<uint32_t> gm;
      for (const Entry& e : hc)
        if (e.idx % dimA == gmono[*hgen] && e.val.is_one()) gm = e.idx / dimA;
      if (!gm) return out;
      SVec gmv = sv_unit(*gm, N);
      std::optional<Cyc> c =
          proportional(H.mul(skews[s].v, gmv), H.mul(gmv, skews[s].v), N);
      if (!c) return out;
      SparseMat comm = mat_sub(A.left_mult(h_elt), mat_scale(*c, A.right_mult(h_elt)));
      sys = mat_vstack(L, comm);  // the commutation rows are homogeneous
    }
    std::optional<AffineSolution> sol = solve(sys, rhs, N);
    if (!sol || sol->homogeneous.rows != 0) return out;
    W[s] = sol->particular;
  }

  // slot values, decomposed over powers of h
  std::vector<std::string> names;
  std::vector<std::vector<Cyc>> tails;
  auto decompose = [&](const SVec& val) -> std::optional<std::vector<Cyc>> {
    std::optional<AffineSolution> sol = solve(Pmat, val, N);
    if (!sol || sol->homogeneous.rows != 0) return std::nullopt;
    return sv_to_dense(sol->particular, d, N);
  };
  for (size_t s = 0; s < skews.size(); ++s) {
    uint32_t bound = P.gens[skews[s].gen].bound;
    auto t = decompose(A.power(W[s], bound));
    if (!t) return out;
    names.push_back(P.gens[skews[s].gen].name + "^" + std::to_string(bound));
    tails.push_back(std::move(*t));
  }
  if (skews.size() == 2) {
    SVec uwv = sv_unit(skews[0].u, N);
    SVec uzv = sv_unit(skews[1].u, N);
    std::optional<Cyc> qhat = proportional(H.mul(uwv, skews[1].v), H.mul(skews[1].v, uwv), N);
    std::optional<Cyc> cross = proportional(H.mul(skews[0].v, uzv), H.mul(uzv, skews[0].v), N);
    if (!qhat || !cross || !(*qhat == *cross)) return out;
    SVec wz = A.mul(W[0], W[1]);
    sv_scale(wz, *qhat);
    auto t = decompose(sv_sub(A.mul(W[1], W[0]), wz));
    if (!t) return out;
    names.push_back("zw");
    tails.push_back(std::move(*t));
  } else if (skews.size() > 2) {
    return out;
  }

  out.known = true;
  out.slots = canonical_slot_strings(names, tails, d, N);
  return out;
}

struct DiagramStats {
  bool ok = false;
  std::vector<uint32_t> hilbert;
  std::vector<std::string> iota;
};

/* Hilbert series and the degree one line of the diagram of a graded instance. */
DiagramStats diagram_stats(const ComoduleAlgebra& a) {
  DiagramStats st;
  Diagram D = diagram(a);
  uint32_t top = 0;
  for (uint32_t l : D.layer) top = std::max(top, l);
  st.hilbert.assign(top + 1, 0);
  for (uint32_t l : D.layer) st.hilbert[l]++;

  const Hopf& h = a.hopf();
  const Presentation& hp = *h.pres();
  const uint32_t N = a.field_order();
  const uint32_t k = (uint32_t)hp.gens.size() - 1;
  std::map<uint32_t, uint32_t> bare;
  std::vector<std::string> names;
  for (uint32_t t = 1; t < hp.gens.size(); ++t) {
    std::vector<uint32_t> exps(hp.gens.size(), 0);
    exps[t] = 1;
    bare[hp.mono_index(exps)] = t - 1;
    names.push_back(hp.gens[t].name);
  }
  std::vector<SVec> rows;
  for (uint32_t j = 0; j < D.layer.size(); ++j) {
    if (D.layer[j] != 1) continue;
    SVec col = mat_col(D.iota, j);
    std::vector<Entry> v;
    for (const Entry& e : col) {
      auto it = bare.find(e.idx);
      if (it == bare.end()) return st;
      v.push_back({it->second, e.val});
    }
    rows.push_back(sv_gather(std::move(v)));
  }
  Subspace sub = Subspace::from_vectors(k, N, rows);
  for (const SVec& row : sub.basis()) st.iota.push_back(line_string(row, names));
  st.ok = true;
  return st;
}

/* Move a comodule algebra over an isomorphism psi of its Hopf algebra onto `to`. */
ComoduleAlgebra transport_comodule(const ComoduleAlgebra& a, const Hopf& to,
                                   const SparseMat& psi) {
  const uint32_t dimA = a.dim();
  std::vector<SVec> mult((size_t)dimA * dimA);
  for (uint32_t i = 0; i < dimA; ++i)
    for (uint32_t j = 0; j < dimA; ++j) mult[(size_t)i * dimA + j] = a.mul_basis(i, j);
  SparseMat psit = mat_transpose(psi);
  std::vector<SVec> coact(dimA);
  for (uint32_t i = 0; i < dimA; ++i) {
    const SVec& co = a.coaction_basis(i);
    SVec acc;
    for (const Entry& e : co) {
      uint32_t hi = e.idx / dimA;
      uint32_t ai = e.idx % dimA;
      SVec img = psit.row[hi];  // column hi of psi
      for (const Entry& pe : img) {
        Cyc c = pe.val * e.val;
        acc.push_back({pe.idx * dimA + ai, c});
      }
    }
    coact[i] = sv_gather(std::move(acc));
  }
  std::vector<std::string> names(dimA);
  for (uint32_t i = 0; i < dimA; ++i) names[i] = a.basis_name(i);
  std::optional<std::vector<uint32_t>> lay;
  if (a.layers()) lay = *a.layers();
  return ComoduleAlgebra::from_tables(to, dimA, std::move(mult), a.unit(), std::move(coact),
                                      std::move(names), std::move(lay), a.pres());
}

void fill_base_fingerprint(Fingerprint& fp, const ComoduleAlgebra& a) {
  fp.dim = a.dim();
  fp.loewy.clear();
  for (const Subspace& s : a.loewy_series()) fp.loewy.push_back(s.dim());
  fp.group_order = fp.loewy.empty() ? 0 : fp.loewy[0];
}

}  // namespace

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "dim=" << dim << ";loewy=" << join_u32(loewy) << ";group=" << group_order
     << ";hilbert=" << join_u32(hilbert) << ";iota=" << join_str(iota, "|") << ";params=";
  if (!params_known)
    os << "?";
  else
    os << join_str(params, "|");
  return os.str();
}

Fingerprint comodule_invariants(const ComoduleAlgebra& a) {
  Fingerprint fp;
  fill_base_fingerprint(fp, a);
  ParamExtract pe = canonical_params(a);
  fp.params_known = pe.known;
  fp.params = pe.slots;
  try {
    if (a.layers() && a.hopf().layers() && a.hopf().pres()) {
      DiagramStats st = diagram_stats(a);
      if (st.ok) {
        fp.hilbert = st.hilbert;
        fp.iota = st.iota;
      }
    } else if (auto bf = builtin_hopf_family(a.hopf())) {
      HopfFamily sf = graded_host_family(bf->first);
      std::unique_ptr<Hopf> sibH = build_family_hopf(sf, bf->second);
      Hopf gr = associated_graded_hopf(a.hopf());
      std::string why;
      auto psi0 = graded_iso_from_presentation(family_hopf_presentation(sf, bf->second), gr, &why);
      if (psi0) {
        auto psi = mat_inverse(*psi0, a.field_order());
        if (psi) {
          ComoduleAlgebra grA = associated_graded_comodule(a, gr);
          ComoduleAlgebra moved = transport_comodule(grA, *sibH, *psi);
          DiagramStats st = diagram_stats(moved);
          if (st.ok) {
            fp.hilbert = st.hilbert;
            fp.iota = st.iota;
          }
        }
      }
    }
  } catch (const std::exception&) {
    // graded data unavailable; the base invariants stand on their own
  }
  return fp;
}

std::vector<Cyc> default_samples(HopfFamily f, uint32_t n) {
  HostData host = host_data(f, n);
  return {Cyc::zero(host.N), Cyc::one(host.N), host.q};
}

std::vector<FamilySpec> classification_samples(HopfFamily f, uint32_t n,
                                               const std::vector<Cyc>& samples) {
  HostData host = host_data(f, n);
  const uint32_t M = host.M;
  std::vector<Cyc> all;
  for (const Cyc& c : samples) {
    bool seen = false;
    for (const Cyc& p : all)
      if (p == c) seen = true;
    if (!seen) all.push_back(c);
  }
  std::vector<Cyc> nz;
  for (const Cyc& c : all)
    if (!c.is_zero()) nz.push_back(c);
  std::vector<uint32_t> divs = divisors_of(M);

  std::vector<FamilySpec> out;
  auto add = [&](char tag, uint32_t d, std::optional<Cyc> xi, std::optional<Cyc> mu,
                 std::optional<Cyc> eta, std::optional<uint32_t> a) {
    FamilySpec s;
    s.hopf_family = f;
    s.n = n;
    s.list_tag = tag;
    s.d = d;
    s.xi = std::move(xi);
    s.mu = std::move(mu);
    s.eta = std::move(eta);
    s.a = a;
    out.push_back(std::move(s));
  };
  auto none = std::nullopt;

  switch (f) {
    case HopfFamily::taft:
    case HopfFamily::taft_hat: {
      for (uint32_t d : divs) add('a', d, none, none, none, none);
      for (uint32_t d : divs) {
        if (f == HopfFamily::taft) {
          for (const Cyc& xi : all) add('b', d, xi, none, none, none);
        } else {
          add('b', d, none, none, none, none);
        }
      }
      break;
    }
    case HopfFamily::radford: {
      for (uint32_t d : divs) add('a', d, none, none, none, none);
      for (uint32_t d : divs) add('b', d, none, none, none, none);
      for (uint32_t d : divs) {
        if (d % n != 0) continue;
        for (const Cyc& xi : nz) add('c', d, xi, none, none, d / n);
      }
      break;
    }
    case HopfFamily::book: {
      for (uint32_t d : divs) add('a', d, none, none, none, none);
      for (uint32_t d : divs)
        for (const Cyc& xi : all) add('b', d, xi, none, none, none);
      for (uint32_t d : divs)
        for (const Cyc& xi : all) add('c', d, xi, none, none, none);
      for (const Cyc& xi : all)
        for (const Cyc& mu : nz) add('d', 1, xi, mu, none, none);
      if (n % 2 == 0)
        for (const Cyc& xi : all)
          for (const Cyc& mu : nz) add('e', 2, xi, mu, none, none);
      for (uint32_t d : divs)
        for (const Cyc& xi : all)
          for (const Cyc& mu : all) add('f', d, xi, mu, none, none);
      for (const Cyc& xi : all)
        for (const Cyc& mu : all)
          for (const Cyc& eta : nz) add('g', n, xi, mu, eta, none);
      if (n % 2 == 0 && n / 2 > 1)
        for (const Cyc& xi : all)
          for (const Cyc& mu : all)
            for (const Cyc& eta : nz) add('h', n / 2, xi, mu, eta, none);
      break;
    }
    case HopfFamily::uqsl2_twisted: {
      for (uint32_t d : divs) add('a', d, none, none, none, none);
      for (uint32_t d : divs)
        for (const Cyc& xi : all) add('b', d, xi, none, none, none);
      for (uint32_t d : divs)
        for (const Cyc& xi : all) add('c', d, xi, none, none, none);
      for (const Cyc& xi : all)
        for (const Cyc& mu : nz) add('d', 1, xi, mu, none, none);
      if (n % 2 == 0)
        for (const Cyc& xi : all)
          for (const Cyc& mu : nz) add('e', 2, xi, mu, none, none);
      if (n % 4 == 0)
        for (const Cyc& xi : all)
          for (const Cyc& mu : nz) add('f', 4, xi, mu, none, none);
      for (uint32_t d : divs)
        for (const Cyc& xi : all)
          for (const Cyc& mu : all) add('g', d, xi, mu, none, none);
      for (uint32_t d : divs) {
        uint32_t m = M / d;
        if ((n - 2) % m != 0) continue;
        uint32_t a = (n - 2) / m;
        if (a == 0 || a >= d) continue;
        for (const Cyc& xi : all)
          for (const Cyc& mu : all)
            for (const Cyc& eta : nz) add('h', d, xi, mu, eta, a);
      }
      break;
    }
    case HopfFamily::bosonization_qls: {
      for (uint32_t d : divs) add('a', d, none, none, none, none);
      for (uint32_t d : divs) add('b', d, none, none, none, none);
      for (uint32_t d : divs) add('c', d, none, none, none, none);
      for (const Cyc& mu : nz) add('d', 1, none, mu, none, none);
      if (n % 2 == 0)
        for (const Cyc& mu : nz) add('e', 2, none, mu, none, none);
      if (n % 4 == 0)
        for (const Cyc& mu : nz) add('f', 4, none, mu, none, none);
      for (uint32_t d : divs) add('g', d, none, none, none, none);
      break;
    }
  }
  return out;
}

namespace {

/* Isomorphism-class key of an instance, computed from its defining data alone. */
std::string canonical_class(const FamilySpec& spec) {
  InstanceData inst = instance_data(spec);
  const Presentation& hp = inst.host.hp.alg;
  const uint32_t N = inst.host.N;
  std::ostringstream os;
  os << "tag=" << (char)(spec.list_tag ? spec.list_tag : '0') << ";d=" << inst.d;
  if (inst.spec.a) os << ";a=" << *inst.spec.a;

  std::map<uint32_t, uint32_t> bare;
  std::vector<std::string> names;
  for (uint32_t t = 1; t < hp.gens.size(); ++t) {
    std::vector<uint32_t> exps(hp.gens.size(), 0);
    exps[t] = 1;
    bare[hp.mono_index(exps)] = t - 1;
    names.push_back(hp.gens[t].name);
  }
  std::vector<SVec> rows;
  for (const SkewGen& s : inst.skew) {
    std::vector<Entry> v;
    for (const Entry& e : s.v) v.push_back({bare.at(e.idx), e.val});
    rows.push_back(sv_gather(std::move(v)));
  }
  Subspace sub = Subspace::from_vectors((uint32_t)names.size(), N, rows);
  std::vector<std::string> lines;
  for (const SVec& row : sub.basis()) lines.push_back(line_string(row, names));
  os << ";iota=" << join_str(lines, "|");

  std::vector<std::string> snames;
  std::vector<std::vector<Cyc>> tails;
  for (const Slot& s : inst.slots) {
    snames.push_back(s.name);
    tails.push_back(s.tail);
  }
  os << ";slots=" << join_str(canonical_slot_strings(snames, tails, inst.d, N), "|");
  return os.str();
}

struct GradedModel {
  bool ok = false;
  std::string err;
  std::unique_ptr<ComoduleAlgebra> sib;
  bool smash_ok = false;
  std::string smash_witness;
};

GradedModel build_graded_model(const Hopf& sibH, const FamilySpec& sibspec) {
  GradedModel gm;
  try {
    gm.sib = std::make_unique<ComoduleAlgebra>(build_family_comodule(sibH, sibspec));
    gm.sib->coinvariants();
    gm.sib->loewy_series();
    const ComoduleAlgebra& S = *gm.sib;
    Diagram D = diagram(S);
    BraidedData bd = braided_data_from_diagram(S, D);
    ComoduleAlgebra B = degree_zero_part(S);
    ComoduleAlgebra Sm = smash_product(bd, B);
    const uint32_t db = B.dim();
    const uint32_t dd = (uint32_t)D.basis.size();
    Subspace deg0 = S.layer_span(0);
    const std::vector<SVec>& b0 = deg0.basis();
    std::vector<SVec> cols(Sm.dim());
    for (uint32_t i = 0; i < dd; ++i)
      for (uint32_t j = 0; j < db; ++j)
        cols[(size_t)i * db + j] = S.mul(D.basis[i], b0[j]);
    SparseMat phi = mat_from_columns(S.dim(), cols);
    std::string why;
    gm.smash_ok = verify_comodule_iso(Sm, S, phi, nullptr, &why);
    gm.smash_witness = gm.smash_ok
                           ? "smash model of dim " + std::to_string(Sm.dim()) + " matches"
                           : why;
    gm.ok = true;
  } catch (const std::exception& e) {
    gm.err = e.what();
  }
  return gm;
}

InstanceCertificate verify_instance(const FamilySpec& spec, const Hopf& H, const Hopf& gr,
                                    const std::optional<SparseMat>& psi, const Hopf& sibH,
                                    const std::map<std::string, GradedModel>& models,
                                    const std::map<uint32_t, std::unique_ptr<ComoduleAlgebra>>& a0s) {
  InstanceCertificate cert;
  cert.spec = spec;
  cert.name = spec.str();
  auto add = [&](const std::string& name, auto&& fn) {
    CheckResult r;
    r.name = name;
    try {
      auto pr = fn();
      r.pass = pr.first;
      r.witness = pr.second;
    } catch (const std::exception& e) {
      r.pass = false;
      r.witness = e.what();
    }
    cert.checks.push_back(std::move(r));
    return cert.checks.back().pass;
  };
  const uint32_t N = H.field_order();

  std::optional<ComoduleAlgebra> A;
  bool built = add("build", [&] {
    A.emplace(build_family_comodule(H, spec));
    return std::make_pair(true, "dim " + std::to_string(A->dim()));
  });
  if (!built) {
    cert.ok = false;
    return cert;
  }

  add("trivial_coinvariants", [&] {
    const Subspace& co = A->coinvariants();
    bool ok = co.dim() == 1 && co.contains(A->unit());
    return std::make_pair(ok, "dim " + std::to_string(co.dim()));
  });
  add("right_simple", [&] {
    SimplicityVerdict v = is_right_simple(*A);
    return std::make_pair(v.simple,
                          v.simple ? std::string("no proper costable right ideal")
                                   : "costable right ideal of dim " +
                                         std::to_string(v.certificate.dim()));
  });
  add("divisibility", [&] {
    bool ok = A->dim() > 0 && H.dim() % A->dim() == 0;
    return std::make_pair(ok, std::to_string(A->dim()) + " | " + std::to_string(H.dim()));
  });

  FamilySpec sib = graded_sibling(spec);
  const GradedModel* gm = nullptr;
  auto mit = models.find(sib.str());
  if (mit != models.end()) gm = &mit->second;
  std::optional<ComoduleAlgebra> moved;

  add("graded_recovery", [&]() -> std::pair<bool, std::string> {
    if (!gm || !gm->ok)
      throw ClassifyError("graded sibling unavailable: " + (gm ? gm->err : sib.str()));
    if (!psi) throw ClassifyError("no graded model of the host");
    ComoduleAlgebra grA = associated_graded_comodule(*A, gr);
    const ComoduleAlgebra& S = *gm->sib;
    if (S.dim() != grA.dim())
      return std::make_pair(false, "dimension mismatch against " + sib.str());
    std::map<std::string, uint32_t> pos;
    for (uint32_t j = 0; j < S.dim(); ++j) pos[S.basis_name(j)] = j;
    Triplets t;
    t.rows = S.dim();
    t.cols = grA.dim();
    for (uint32_t i = 0; i < grA.dim(); ++i) {
      auto it = pos.find(grA.basis_name(i));
      if (it == pos.end())
        return std::make_pair(false, "no sibling monomial " + grA.basis_name(i));
      t.add(it->second, i, Cyc::one(N));
    }
    SparseMat phi = t.build();
    std::string why;
    bool ok = verify_comodule_iso(grA, S, phi, &*psi, &why);
    if (ok) moved.emplace(transport_comodule(grA, sibH, *psi));
    return std::make_pair(ok, ok ? "gr A = " + sib.str() : why);
  });
  add("diagram_reconstruction", [&]() -> std::pair<bool, std::string> {
    if (!gm || !gm->ok)
      throw ClassifyError("graded sibling unavailable: " + (gm ? gm->err : sib.str()));
    return std::make_pair(gm->smash_ok, gm->smash_witness);
  });

  try {
    InstanceData inst = instance_data(spec);
    auto ait = a0s.find(spec.d);
    if (ait == a0s.end()) throw ClassifyError("no trivial instance at this d");
    const ComoduleAlgebra& a0 = *ait->second;
    const HopfFamily f = spec.hopf_family;
    const bool forced = f == HopfFamily::taft || f == HopfFamily::radford ||
                        f == HopfFamily::book || f == HopfFamily::uqsl2_twisted;
    for (const Slot& slot : inst.slots) {
      add("lifting " + slot.name, [&]() -> std::pair<bool, std::string> {
        Cyc qhat = Cyc::one(N);
        CentralPattern pat =
            slot.commutator
                ? commutator_pattern(H, a0, inst.skew[1].v, inst.skew[1].u, inst.skew[0].v,
                                     inst.skew[0].u, &qhat)
                : power_pattern(H, a0, inst.skew[slot.gen].v, inst.skew[slot.gen].u,
                                inst.skew[slot.gen].bound);
        LiftingSolution sol = lifting_solve_central(a0, pat);
        SVec val = measure_slot(*A, inst, slot);
        bool ok = sol.consistent && lifting_contains(sol, val);
        std::string note = ok ? "value inside the forced affine set" : "value escapes the forced set";
        if (slot.commutator && !(qhat == inst.zw_scalar)) {
          ok = false;
          note = "commutation scalar mismatch";
        }
        if (ok && forced) {
          ExpectedSlot ex = slot.commutator
                                ? expected_comm_slot(f, spec.n, inst.d, N)
                                : expected_power_slot(f, spec.n, inst.d, N);
          if (!sv_eq(sol.base, ex.base) || !(sol.free_dirs == ex.dirs)) {
            ok = false;
            note = "solution set differs from the classified shape";
          }
        }
        return std::make_pair(ok, note);
      });
    }
  } catch (const std::exception& e) {
    cert.checks.push_back({"lifting", false, e.what()});
  }

  add("fingerprint", [&]() -> std::pair<bool, std::string> {
    Fingerprint fp;
    fill_base_fingerprint(fp, *A);
    if (!moved) throw ClassifyError("graded transport unavailable");
    DiagramStats st = diagram_stats(*moved);
    if (!st.ok) throw ClassifyError("diagram unavailable on the graded model");
    fp.hilbert = st.hilbert;
    fp.iota = st.iota;
    ParamExtract pe = canonical_params(*A);
    fp.params_known = pe.known;
    fp.params = pe.slots;
    cert.fingerprint = fp;
    return std::make_pair(true, fp.str());
  });

  cert.ok = true;
  for (const CheckResult& c : cert.checks) cert.ok = cert.ok && c.pass;
  return cert;
}

}  // namespace

ClassificationReport verify_classification(HopfFamily f, uint32_t n) {
  return verify_classification(f, n, default_samples(f, n));
}

ClassificationReport verify_classification(HopfFamily f, uint32_t n,
                                           const std::vector<Cyc>& samples) {
  ClassificationReport R;
  R.family = f;
  R.n = n;
  std::vector<FamilySpec> specs = classification_samples(f, n, samples);

  std::unique_ptr<Hopf> H;
  try {
    H = build_family_hopf(f, n);
    R.global_checks.push_back({"hopf_build", true, "dim " + std::to_string(H->dim())});
  } catch (const std::exception& e) {
    R.hopf_error = e.what();
    R.global_checks.push_back({"hopf_build", false, e.what()});
    R.ok = false;
    return R;
  }
  const uint32_t N = H->field_order();

  HopfFamily sf = graded_host_family(f);
  std::unique_ptr<Hopf> sib_owner;
  const Hopf* sibH = H.get();
  if (sf != f) {
    sib_owner = build_family_hopf(sf, n);
    sibH = sib_owner.get();
  }
  std::optional<Hopf> gr;
  std::optional<SparseMat> psi;
  {
    CheckResult r;
    r.name = "graded_model";
    try {
      gr.emplace(associated_graded_hopf(*H));
      std::string why;
      auto psi0 = graded_iso_from_presentation(family_hopf_presentation(sf, n), *gr, &why);
      if (!psi0) throw ClassifyError("gr H does not match " + family_name(sf) + ": " + why);
      psi = mat_inverse(*psi0, N);
      if (!psi) throw ClassifyError("the graded identification is singular");
      r.pass = true;
      r.witness = "gr H = " + family_name(sf) + "(" + std::to_string(n) + ")";
    } catch (const std::exception& e) {
      r.pass = false;
      r.witness = e.what();
    }
    R.global_checks.push_back(std::move(r));
  }

  // warm the lazily cached structure serially before the parallel sweep
  H->grouplikes();
  H->coradical_filtration();
  sibH->grouplikes();
  sibH->coradical_filtration();
  if (gr) {
    gr->grouplikes();
    gr->coradical_filtration();
  }

  std::map<uint32_t, std::unique_ptr<ComoduleAlgebra>> a0s;
  std::map<std::string, GradedModel> models;
  for (const FamilySpec& s : specs) {
    if (!a0s.count(s.d)) {
      FamilySpec a0spec;
      a0spec.hopf_family = f;
      a0spec.n = n;
      a0spec.list_tag = 'a';
      a0spec.d = s.d;
      try {
        a0s[s.d] = std::make_unique<ComoduleAlgebra>(build_family_comodule(*H, a0spec));
      } catch (const std::exception&) {
        // left absent; the lifting checks of the affected instances will report it
      }
    }
    FamilySpec sib = graded_sibling(s);
    if (!models.count(sib.str())) models[sib.str()] = build_graded_model(*sibH, sib);
  }

  std::vector<InstanceCertificate> certs(specs.size());
  bool have_model = gr.has_value();
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < (long)specs.size(); ++i) {
    if (have_model) {
      certs[i] = verify_instance(specs[i], *H, *gr, psi, *sibH, models, a0s);
    } else {
      InstanceCertificate c;
      c.spec = specs[i];
      c.name = specs[i].str();
      c.ok = false;
      c.checks.push_back({"build", false, "no graded model of the host"});
      certs[i] = std::move(c);
    }
  }

  {
    CheckResult r;
    r.name = "fingerprint_classes";
    r.pass = true;
    try {
      std::vector<std::string> fps(specs.size()), cls(specs.size());
      for (size_t i = 0; i < specs.size(); ++i) {
        if (!certs[i].fingerprint || !certs[i].fingerprint->params_known)
          throw ClassifyError("fingerprint unavailable for " + certs[i].name);
        fps[i] = certs[i].fingerprint->str();
        cls[i] = canonical_class(specs[i]);
      }
      for (size_t i = 0; i < specs.size() && r.pass; ++i)
        for (size_t j = i + 1; j < specs.size() && r.pass; ++j) {
          bool same_fp = fps[i] == fps[j];
          bool same_cl = cls[i] == cls[j];
          if (same_fp != same_cl) {
            r.pass = false;
            r.witness = certs[i].name + " vs " + certs[j].name +
                        (same_fp ? ": fingerprints collide" : ": fingerprints split an isomorphism class");
          }
        }
      if (r.pass)
        r.witness = std::to_string(specs.size()) + " instances, fingerprints match isomorphism classes";
    } catch (const std::exception& e) {
      r.pass = false;
      r.witness = e.what();
    }
    R.global_checks.push_back(std::move(r));
  }

  R.instances = std::move(certs);
  R.ok = true;
  for (const CheckResult& c : R.global_checks) R.ok = R.ok && c.pass;
  for (const InstanceCertificate& c : R.instances) R.ok = R.ok && c.ok;
  return R;
}

namespace {

std::string json_escape(const std::string& s) {
  std::ostringstream os;
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default:
        if ((unsigned char)c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  return os.str();
}

void json_checks(std::ostringstream& os, const std::vector<CheckResult>& checks) {
  os << "[";
  for (size_t i = 0; i < checks.size(); ++i) {
    if (i) os << ",";
    os << "{\"name\":\"" << json_escape(checks[i].name) << "\",\"pass\":"
       << (checks[i].pass ? "true" : "false") << ",\"witness\":\""
       << json_escape(checks[i].witness) << "\"}";
  }
  os << "]";
}

void json_str_list(std::ostringstream& os, const std::vector<std::string>& v) {
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << "\"" << json_escape(v[i]) << "\"";
  }
  os << "]";
}

void json_u32_list(std::ostringstream& os, const std::vector<uint32_t>& v) {
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << "]";
}

}  // namespace

std::string report_json(const ClassificationReport& r) {
  std::ostringstream os;
  os << "{\"family\":\"" << family_name(r.family) << "\",\"n\":" << r.n
     << ",\"ok\":" << (r.ok ? "true" : "false") << ",\"hopf_error\":\""
     << json_escape(r.hopf_error) << "\",\"global_checks\":";
  json_checks(os, r.global_checks);
  os << ",\"instances\":[";
  for (size_t i = 0; i < r.instances.size(); ++i) {
    const InstanceCertificate& c = r.instances[i];
    if (i) os << ",";
    os << "{\"family\":\"" << family_name(c.spec.hopf_family) << "\",\"name\":\""
       << json_escape(c.name) << "\",\"params\":{\"n\":" << c.spec.n << ",\"tag\":\"";
    if (c.spec.list_tag)
      os << (char)c.spec.list_tag;
    else
      os << "hopf";
    os << "\",\"d\":" << c.spec.d;
    if (c.spec.a) os << ",\"a\":" << *c.spec.a;
    if (c.spec.xi) os << ",\"xi\":\"" << json_escape(c.spec.xi->str()) << "\"";
    if (c.spec.mu) os << ",\"mu\":\"" << json_escape(c.spec.mu->str()) << "\"";
    if (c.spec.eta) os << ",\"eta\":\"" << json_escape(c.spec.eta->str()) << "\"";
    os << "},\"ok\":" << (c.ok ? "true" : "false") << ",\"checks\":";
    json_checks(os, c.checks);
    os << ",\"fingerprint\":";
    if (c.fingerprint) {
      const Fingerprint& fp = *c.fingerprint;
      os << "{\"dim\":" << fp.dim << ",\"loewy\":";
      json_u32_list(os, fp.loewy);
      os << ",\"group_order\":" << fp.group_order << ",\"hilbert\":";
      json_u32_list(os, fp.hilbert);
      os << ",\"iota\":";
      json_str_list(os, fp.iota);
      os << ",\"params_known\":" << (fp.params_known ? "true" : "false") << ",\"params\":";
      json_str_list(os, fp.params);
      os << "}";
    } else {
      os << "null";
    }
    os << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace hopfkit
