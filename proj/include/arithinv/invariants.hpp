#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithinv/group.hpp"
#include "arithinv/matrix.hpp"
#include "arithinv/polynomial.hpp"

namespace arithinv {

/// Basis of the degree-d invariants (S^G)_d: a vector-space basis over a
/// field, a basis of the saturated kernel lattice over Z. Columns of
/// `vectors` are coordinates over the degree-d monomial basis.
struct InvariantBasis {
  int degree = 0;
  RingDescriptor ring = RingDescriptor::rationals();
  ExactMatrix vectors;
  std::vector<Polynomial> polynomials;

  int dimension() const { return vectors.cols(); }
};

InvariantBasis invariant_basis(const MatrixGroup& g, int degree);

/// max(|G|, n(|G|-1)), the termination bound for generator search.
int default_generator_bound(const MatrixGroup& g);

struct GeneratorSet {
  std::vector<std::pair<int, Polynomial>> generators;  // degrees nondecreasing
  int beta = 0;                 // max degree present (0 when empty)
  int bound = 0;                // bound actually used
  int extra_sweep = 0;
  int sweep_clean_through = 0;  // degrees in (beta, this] verified to add nothing
  bool generator_at_bound = false;  // BoundTooSmallWarning

  std::vector<int> degrees() const;
};

/// Minimal algebra generators of S^G, degree by degree up to
/// bound + extra_sweep. Over fields new generators complete the subalgebra
/// span inside (S^G)_d; over Z they are cokernel preimages chosen via SNF
/// (degreewise minimal over Q, possibly redundant over Z).
GeneratorSet algebra_generators(const MatrixGroup& g, int bound = -1, int extra_sweep = 0);

enum class HsopProvenance { dade_linear_forms, user_supplied };

struct Hsop {
  std::vector<Polynomial> polys;  // n homogeneous invariants
  std::vector<int> degrees;
  HsopProvenance provenance = HsopProvenance::user_supplied;
  std::vector<Polynomial> linear_forms;  // the Dade forms, when applicable
};

enum class HsopVerdict { hsop, not_hsop };

/// Graded quotient-vanishing record: quotient_dims[e] is
/// dim (S_F / (f_1..f_n) S_F)_e for e = 0..D+1 with D = sum(deg f_i - 1).
struct HsopCertificate {
  RingDescriptor field = RingDescriptor::rationals();
  std::vector<int> quotient_dims;
  HsopVerdict verdict = HsopVerdict::not_hsop;
  bool regular_sequence = false;
};

/// dim of S_e modulo the span of {m * f_i : deg m = e - deg f_i}.
int quotient_dimension(const std::vector<Polynomial>& fs, int e);

/// Checks the field-level hsop hypothesis via graded quotient vanishing.
/// The group supplies the invariance check; it must live over `field`.
HsopCertificate verify_hsop(const MatrixGroup& g, const std::vector<Polynomial>& fs,
                            const RingDescriptor& field);

struct DadeOptions {
  int candidate_budget = 4096;      // per linear form
  long initial_box = 1;             // coefficients drawn from [-B, B]
  int draws_per_box = 64;           // B doubles after this many failures
};

/// Dade construction: linear forms g_1..g_n avoiding, for every tuple
/// (s_1..s_{j-1}) in G^{j-1}, the span of s_1 g_1, ..., s_{j-1} g_{j-1};
/// returns the orbit products, each homogeneous of degree |G|, verified
/// before returning.
Hsop dade_hsop(const MatrixGroup& g, unsigned long rng_seed,
               const DadeOptions& options = {});

struct LiftedHsop {
  Hsop hsop;                 // over Z, orbit products under the full group
  HsopCertificate fp_certificate;
  HsopCertificate q_certificate;
  int reduced_order = 0;     // order of the mod-p image
};

/// Picks integer forms whose mod-p classes satisfy the Dade condition for
/// the reduced group, then certifies the integer orbit products over F_p
/// (hsop over Z_(p)) and over Q.
LiftedHsop lift_hsop_over_Z(const MatrixGroup& g, const mpz_class& p, unsigned long rng_seed,
                            const DadeOptions& options = {});

struct SecondaryGenerators {
  std::vector<int> hsop_degrees;
  std::vector<std::pair<int, Polynomial>> gens;
  int max_degree = 0;
  int degree_bound = 0;  // sum(deg f_i - 1)

  std::vector<int> degrees() const;
};

/// Module generators of S^G over R[f_1..f_n] through degree
/// sum(deg f_i - 1); requires a certificate with verdict hsop.
SecondaryGenerators secondary_generators(const MatrixGroup& g, const Hsop& h,
                                         const HsopCertificate& certificate);

struct MolienSeries {
  std::vector<long> coefficients;  // degrees 0..truncation
  int truncation = 0;
};

/// (1/|G|) sum_sigma 1/det(I - t sigma), truncated. Exact dimensions in
/// characteristic 0; dimensions mod p over F_p with p not dividing |G|.
MolienSeries molien_series(const MatrixGroup& g, int truncation);

struct FlatnessPrimeRow {
  mpz_class p;
  int dimension = 0;  // dim of F_p-invariants of the reduced group
  bool matches_lattice_rank = false;
};

struct FlatnessDegreeRow {
  int degree = 0;
  int lattice_rank = 0;
  int q_dimension = 0;
  bool q_spans = false;  // must hold (Q is flat over Z)
  std::vector<FlatnessPrimeRow> primes;
};

struct FlatnessReport {
  int max_degree = 0;
  std::vector<mpz_class> primes;
  std::vector<FlatnessDegreeRow> rows;
};

/// Asserts the Z-lattice basis spans the Q-invariants degree by degree
/// (throws FlatnessViolation otherwise) and reports mod-p dimensions,
/// where discrepancies are recorded, never raised.
FlatnessReport flatness_check(const MatrixGroup& g, int max_degree,
                              const std::vector<mpz_class>& primes = {});

struct CmProbe {
  int window = 0;  // sum(d_i - 1) + slack
  std::vector<long> secondary_counts;   // degree histogram of the secondaries
  std::vector<long> expected_counts;    // H_{S^G}(t) * prod(1 - t^{d_i})
  bool consistent = false;
  std::string verdict;
};

/// Truncated freeness probe: compares sum_j t^{e_j} against
/// H_{S^G}(t) * prod(1 - t^{d_i}) through the window. slack < 0 means the
/// default max(deg f_i).
CmProbe cm_probe(const MatrixGroup& g, const Hsop& h, const SecondaryGenerators& s,
                 const HsopCertificate& certificate, int slack = -1);

}  // namespace arithinv
