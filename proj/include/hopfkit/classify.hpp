#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfkit/catalog.hpp"
#include "hopfkit/comodule.hpp"

namespace hopfkit {

struct ClassifyError : std::runtime_error {
  explicit ClassifyError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class HopfFamily { taft, taft_hat, radford, book, uqsl2_twisted, bosonization_qls };

std::string family_name(HopfFamily f);
std::optional<HopfFamily> family_from_name(const std::string& s);

/* One right comodule algebra from the classification lists over a built-in
 * Hopf algebra.  list_tag 0 stands for the Hopf algebra itself; the letters
 * follow the order of the lists (see family_presentation for the meaning of
 * each letter per family). */
struct FamilySpec {
  HopfFamily hopf_family = HopfFamily::taft;
  uint32_t n = 0;
  char list_tag = 0;
  uint32_t d = 1;
  std::optional<Cyc> xi;
  std::optional<Cyc> mu;
  std::optional<Cyc> eta;
  std::optional<uint32_t> a;

  std::string str() const;
};

/* Data needed to build an instance: the host Hopf algebra presentation, the
 * instance's algebra presentation, and the coaction on its generators as
 * elements of H (x) A (flat index h*dimA + a). */
struct FamilyPresentation {
  std::string name;
  HopfPresentation hopf;
  std::optional<std::vector<uint32_t>> hopf_layers;
  Presentation algebra;
  std::vector<SVec> coaction;
  std::optional<std::vector<uint32_t>> algebra_layers;  // set when the instance is graded
};

HopfPresentation family_hopf_presentation(HopfFamily f, uint32_t n);
std::unique_ptr<Hopf> build_family_hopf(HopfFamily f, uint32_t n);
FamilyPresentation family_presentation(const FamilySpec& spec);
ComoduleAlgebra build_family_comodule(const Hopf& h, const FamilySpec& spec);

struct BuiltInstance {
  FamilySpec spec;
  std::string name;
  std::unique_ptr<Hopf> hopf;
  std::unique_ptr<ComoduleAlgebra> comodule;
};
BuiltInstance build_family(const FamilySpec& spec);

/* the built-in family a Hopf algebra was constructed from, recovered from its
 * presentation name */
std::optional<std::pair<HopfFamily, uint32_t>> builtin_hopf_family(const Hopf& h);

/* the graded instance isomorphic to gr_l A (all deformation scalars dropped,
 * the host moved to the associated graded Hopf algebra where needed) */
FamilySpec graded_sibling(const FamilySpec& spec);

/* ---- central lifting solver ----
 *
 * A deformation slot asks for a central value c in A0 = k C_d such that some
 * relation r of the graded instance lifts to r = c.  Compatibility with the
 * coaction is the affine equation
 *     lambda(c) = pattern + e_ghost (x) c     in H (x) A0,
 * where pattern and the group-like ghost are forced by the coaction of the
 * generators.  Both are computed here from the Hopf algebra itself. */
struct CentralPattern {
  SVec pattern;        // element of H (x) A0, flat h*dimA0 + a
  uint32_t ghost = 0;  // H basis index of the group-like multiplying the unknown
};

/* slot w^e for lambda(w) = v (x) 1 + e_u (x) w: expands (v (x) 1 + e_u (x) w)^e
 * with w treated as a formal letter and requires every mixed term to vanish */
CentralPattern power_pattern(const Hopf& h, const ComoduleAlgebra& a0, const SVec& v,
                             uint32_t u, uint32_t e);

/* slot z w - q^ w z for skew generators z, w; the scalar q^ is derived from the
 * commutation of the group-likes past the skew legs and returned via scalar */
CentralPattern commutator_pattern(const Hopf& h, const ComoduleAlgebra& a0, const SVec& vz,
                                  uint32_t uz, const SVec& vw, uint32_t uw,
                                  Cyc* scalar = nullptr);

struct LiftingSolution {
  bool consistent = false;
  SVec base;            // canonical particular solution in A0 coordinates
  SparseMat free_dirs;  // canonical row basis of the homogeneous solutions
};
LiftingSolution lifting_solve_central(const ComoduleAlgebra& a0, const CentralPattern& p);
bool lifting_contains(const LiftingSolution& s, const SVec& value);

/* the forced parameters of every deformation slot of a family over k C_d,
 * compared against the closed form stated by the classification */
struct LiftingForcing {
  std::string slot;
  LiftingSolution solution;
  SVec expected_base;
  SparseMat expected_dirs;
  bool agrees = false;
};
std::vector<LiftingForcing> lifting_forcing(const Hopf& h, HopfFamily f, uint32_t d);

/* ---- degree one generation ----
 *
 * Homogeneous left coideal subalgebras of the Nichols algebra B(V) for the
 * two-dimensional braided space of the book family: the coefficient space of
 * theta = sum_i c_i x^{m-i} y^i whose coproduct components of bidegree
 * (m-i, i) stay inside H (x) k w^i for w = a x + b y.  The verdict states the
 * space is the line spanned by w^m. */
struct DegreeOneReport {
  Subspace space;
  SVec generator_power;            // coordinates of w^m on x^{m-i} y^i
  bool verdict = false;            // space == span{w^m}, one dimensional
  bool coefficient_match = false;  // q-binomial pattern of w^m on y^i x^{m-i}
};
DegreeOneReport check_degree_one_generation(const Hopf& book_h, const Cyc& a, const Cyc& b,
                                            uint32_t m);
DegreeOneReport check_degree_one_generation(uint32_t n, const Cyc& a, const Cyc& b, uint32_t m);

/* ---- fingerprints ---- */
struct Fingerprint {
  uint32_t dim = 0;
  std::vector<uint32_t> loewy;    // dimensions of the Loewy filtration steps
  uint32_t group_order = 0;       // dimension of the degree zero part
  std::vector<uint32_t> hilbert;  // dimensions of the diagram layers
  std::vector<std::string> iota;  // canonical basis of iota(B_A(1)) in generator coordinates
  bool params_known = false;
  std::vector<std::string> params;  // canonical lifting parameters per slot

  std::string str() const;
  bool operator==(const Fingerprint& o) const { return str() == o.str(); }
  bool operator!=(const Fingerprint& o) const { return str() != o.str(); }
};
Fingerprint comodule_invariants(const ComoduleAlgebra& a);

/* ---- classification reports ---- */
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct InstanceCertificate {
  FamilySpec spec;
  std::string name;
  bool ok = false;
  std::vector<CheckResult> checks;
  std::optional<Fingerprint> fingerprint;
};

struct ClassificationReport {
  HopfFamily family = HopfFamily::taft;
  uint32_t n = 0;
  bool ok = false;
  std::string hopf_error;
  std::vector<CheckResult> global_checks;
  std::vector<InstanceCertificate> instances;
};

/* {0, 1, q} with q the family's root of unity */
std::vector<Cyc> default_samples(HopfFamily f, uint32_t n);

/* deterministic enumeration of all admissible instances with every scalar slot
 * sampled from the given list (zero samples are dropped on slots that require
 * a nonzero scalar) */
std::vector<FamilySpec> classification_samples(HopfFamily f, uint32_t n,
                                               const std::vector<Cyc>& samples);

ClassificationReport verify_classification(HopfFamily f, uint32_t n);
ClassificationReport verify_classification(HopfFamily f, uint32_t n,
                                           const std::vector<Cyc>& samples);
std::string report_json(const ClassificationReport& r);

}  // namespace hopfkit
