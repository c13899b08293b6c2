#include "arithinv/invariants.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace arithinv {

namespace {

ExactMatrix matrix_from_polynomials(const RingDescriptor& ring,
                                    const std::vector<Polynomial>& polys,
                                    const DegreeComponent& comp) {
  ExactMatrix out(ring, comp.size(), static_cast<int>(polys.size()));
  for (size_t j = 0; j < polys.size(); ++j) {
    std::vector<mpq_class> coords = coordinates(polys[j], comp);
    for (int i = 0; i < comp.size(); ++i) out.set(i, static_cast<int>(j), coords[i]);
  }
  return out;
}

std::vector<Polynomial> reduce_span(const RingDescriptor& ring,
                                    const std::vector<Polynomial>& polys,
                                    const DegreeComponent& comp) {
  if (polys.empty()) return {};
  ExactMatrix m = matrix_from_polynomials(ring, polys, comp);
  ExactMatrix basis = column_space_basis(m);
  return columns_as_polynomials(basis, comp);
}

struct Extraction {
  std::vector<Polynomial> polynomials;
};

// Complement of span(span_polys) inside the invariant space: a greedy
// complement basis over fields (single-monomial basis vectors first, then
// canonical order), SNF cokernel preimages over Z.
Extraction extract_new_generators(const InvariantBasis& inv,
                                  const std::vector<Polynomial>& span_polys,
                                  const DegreeComponent& comp) {
  Extraction out;
  const int k = inv.dimension();
  if (k == 0) return out;
  const RingDescriptor& ring = inv.ring;
  const bool over_z = ring.kind() == RingKind::integers;
  const RingDescriptor field = over_z ? RingDescriptor::rationals() : ring;

  ExactMatrix span = span_polys.empty()
                         ? ExactMatrix(ring, comp.size(), 0)
                         : matrix_from_polynomials(ring, span_polys, comp);
  // coordinates of the span vectors over the invariant basis
  ExactMatrix coords = solve_in_column_basis(inv.vectors, span);

  if (!over_z) {
    ExactMatrix rows = rref(coords.transpose()).reduced;
    int nonzero = rank(rows);
    ExactMatrix current(field, nonzero, k);
    for (int r = 0; r < nonzero; ++r)
      for (int c = 0; c < k; ++c) current.set(r, c, rows(r, c));

    // candidate order: unit-monomial invariant basis vectors first
    std::vector<std::pair<std::pair<int, int>, int>> order;
    for (int j = 0; j < k; ++j) {
      int nz = -1, count = 0;
      for (int i = 0; i < inv.vectors.rows(); ++i)
        if (inv.vectors(i, j) != 0) { ++count; nz = i; }
      bool unit = count == 1 && inv.vectors(nz, j) == 1;
      order.push_back({{unit ? 0 : 1, unit ? nz : j}, j});
    }
    std::sort(order.begin(), order.end());

    for (const auto& [key, j] : order) {
      (void)key;
      ExactMatrix e(field, 1, k);
      e.set(0, j, 1);
      ExactMatrix extended = ExactMatrix::vcat(current, e);
      if (rank(extended) == current.rows()) continue;  // already in the span
      current = std::move(extended);
      out.polynomials.push_back(inv.polynomials[j]);
    }
    return out;
  }

  // Z: cokernel of the span lattice inside the invariant lattice, one
  // generator per elementary divisor != 1 and per free rank.
  ExactMatrix p(ring, k, coords.cols());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < coords.cols(); ++j) {
      if (!value_is_integral(coords(i, j)))
        fail(ErrorCode::verification_failed, "span vector leaves the saturated lattice");
      p.set(i, j, coords(i, j));
    }
  SmithDecomposition s = snf(p);
  ExactMatrix uinv = inverse(s.u);
  for (int i = 0; i < k; ++i) {
    mpz_class divisor = i < static_cast<int>(s.elementary_divisors.size())
                            ? s.elementary_divisors[i]
                            : mpz_class(0);
    if (divisor == 1) continue;
    Polynomial gen(ring, comp.n_vars);
    for (int j = 0; j < k; ++j) {
      const mpq_class& c = uinv(j, i);
      if (c != 0) gen = gen + inv.polynomials[j].scaled(c);
    }
    out.polynomials.push_back(std::move(gen));
  }
  return out;
}

}  // namespace

InvariantBasis invariant_basis(const MatrixGroup& g, int degree) {
  if (degree < 0) fail(ErrorCode::invalid_argument, "invariant_basis needs degree >= 0");
  DegreeComponent comp = monomial_basis(g.dimension(), degree);
  const int n = comp.size();
  const bool over_field = g.ring().is_field();

  // Invariance under the generators is invariance under the closure; each
  // step restricts the candidate space to the kernel of one block.
  ExactMatrix basis = ExactMatrix::identity(g.ring(), n);
  for (const GroupElement* gen : g.generator_elements()) {
    ExactMatrix block = action_matrix(gen->inverse, degree) - ExactMatrix::identity(g.ring(), n);
    ExactMatrix restricted = block * basis;
    if (restricted.is_zero()) continue;
    ExactMatrix kernel = over_field ? nullspace(restricted) : integer_kernel(restricted);
    basis = basis * kernel;
    if (basis.cols() == 0) break;
  }
  ExactMatrix canonical = column_space_basis(basis);
  std::vector<Polynomial> polys = columns_as_polynomials(canonical, comp);
  return {degree, g.ring(), std::move(canonical), std::move(polys)};
}

int default_generator_bound(const MatrixGroup& g) {
  return std::max(g.order(), g.dimension() * (g.order() - 1));
}

std::vector<int> GeneratorSet::degrees() const {
  std::vector<int> out;
  out.reserve(generators.size());
  for (const auto& [d, p] : generators) out.push_back(d);
  return out;
}

GeneratorSet algebra_generators(const MatrixGroup& g, int bound, int extra_sweep) {
  if (bound < 0) bound = default_generator_bound(g);
  if (bound < 1) fail(ErrorCode::invalid_argument, "generator bound must be >= 1");
  if (extra_sweep < 0) fail(ErrorCode::invalid_argument, "extra_sweep must be >= 0");
  const int limit = bound + extra_sweep;

  GeneratorSet out;
  out.bound = bound;
  out.extra_sweep = extra_sweep;

  std::vector<std::vector<Polynomial>> span(limit + 1);
  span[0] = {Polynomial::constant(g.ring(), g.dimension(), 1)};

  for (int d = 1; d <= limit; ++d) {
    DegreeComponent comp = monomial_basis(g.dimension(), d);
    std::vector<Polynomial> products;
    for (const auto& [deg, gen] : out.generators)
      for (const Polynomial& q : span[d - deg]) products.push_back(gen * q);

    InvariantBasis inv = invariant_basis(g, d);
    Extraction ext = extract_new_generators(inv, products, comp);
    if (!ext.polynomials.empty() && d == bound) out.generator_at_bound = true;
    for (Polynomial& p : ext.polynomials) {
      products.push_back(p);
      out.generators.emplace_back(d, std::move(p));
    }
    span[d] = reduce_span(g.ring(), products, comp);
  }

  out.beta = out.generators.empty() ? 0 : out.generators.back().first;
  out.sweep_clean_through = limit;
  return out;
}

namespace {

// Coefficient vector of act(sigma, l) for a linear form l given by `coeffs`:
// the substitution x -> sigma^{-1} x sends c to (sigma^{-1})^T c.
ExactMatrix form_image(const GroupElement& sigma, const ExactMatrix& coeffs) {
  return sigma.inverse.transpose() * coeffs;
}

// Candidate avoids span(s_1 g_1, ..., s_{j-1} g_{j-1}) for every tuple.
bool dade_admissible(const MatrixGroup& g,
                     const std::vector<std::vector<ExactMatrix>>& images,
                     const ExactMatrix& candidate) {
  const int j = static_cast<int>(images.size());
  const int n = g.dimension();
  const long order = g.order();
  double tuple_count = 1;
  for (int t = 0; t < j; ++t) tuple_count *= static_cast<double>(order);
  if (tuple_count > 1e6)
    fail(ErrorCode::search_budget_exceeded, "too many Dade tuples at this group order");

  std::vector<int> idx(j, 0);
  while (true) {
    ExactMatrix span(g.ring(), n, j);
    for (int t = 0; t < j; ++t) {
      const ExactMatrix& img = images[t][idx[t]];
      for (int r = 0; r < n; ++r) span.set(r, t, img(r, 0));
    }
    int base = rank(span);
    if (rank(ExactMatrix::hcat(span, candidate)) == base) return false;
    int t = j - 1;
    while (t >= 0 && idx[t] + 1 == order) { idx[t] = 0; --t; }
    if (t < 0) break;
    ++idx[t];
  }
  return true;
}

struct FormSampler {
  int n;
  RingDescriptor ring;
  std::mt19937_64 eng;
  long box;
  int draws_per_box;
  int unit_index = 0;
  int draws = 0;

  FormSampler(int n, const RingDescriptor& ring, unsigned long seed, const DadeOptions& opts)
      : n(n), ring(ring), eng(seed), box(opts.initial_box), draws_per_box(opts.draws_per_box) {}

  ExactMatrix next() {
    ExactMatrix v(ring, n, 1);
    if (unit_index < n) {
      v.set(unit_index, 0, 1);
      ++unit_index;
      return v;
    }
    while (true) {
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        unsigned long long r = eng();
        long width = 2 * box + 1;
        long val = static_cast<long>(r % static_cast<unsigned long long>(width)) - box;
        v.set(i, 0, mpq_class(val));
        if (v(i, 0) != 0) nonzero = true;
      }
      ++draws;
      if (draws % draws_per_box == 0) box *= 2;
      if (nonzero) return v;
    }
  }
};

// All nonzero vectors of F_p^n in lex order, for the exhaustive fallback.
std::vector<ExactMatrix> all_fp_vectors(const RingDescriptor& fp, int n) {
  const mpz_class& p = fp.modulus();
  if (!p.fits_slong_p()) fail(ErrorCode::search_budget_exceeded, "modulus too large to enumerate");
  long pl = p.get_si();
  double total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<double>(pl);
  if (total > 2e5) fail(ErrorCode::search_budget_exceeded, "F_p^n too large to enumerate");
  std::vector<ExactMatrix> out;
  std::vector<long> digits(n, 0);
  while (true) {
    int i = n - 1;
    while (i >= 0 && digits[i] + 1 == pl) { digits[i] = 0; --i; }
    if (i < 0) break;
    ++digits[i];
    ExactMatrix v(fp, n, 1);
    for (int k = 0; k < n; ++k) v.set(k, 0, mpq_class(digits[k]));
    out.push_back(std::move(v));
  }
  return out;
}

bool dfs_fp_forms(const MatrixGroup& g, const std::vector<ExactMatrix>& pool,
                  std::vector<ExactMatrix>& forms,
                  std::vector<std::vector<ExactMatrix>>& images) {
  const int n = g.dimension();
  if (static_cast<int>(forms.size()) == n) return true;
  for (const ExactMatrix& cand : pool) {
    if (!dade_admissible(g, images, cand)) continue;
    forms.push_back(cand);
    std::vector<ExactMatrix> row;
    for (const GroupElement& e : g.elements()) row.push_back(form_image(e, cand));
    images.push_back(std::move(row));
    if (dfs_fp_forms(g, pool, forms, images)) return true;
    forms.pop_back();
    images.pop_back();
  }
  return false;
}

// Linear forms over the group's field satisfying the per-tuple Dade
// condition. Over F_p a failed greedy pass falls back to exhaustive search.
std::vector<ExactMatrix> find_dade_forms(const MatrixGroup& g, unsigned long seed,
                                         const DadeOptions& opts) {
  const int n = g.dimension();
  const bool finite_field = g.ring().kind() == RingKind::prime_field;
  std::vector<ExactMatrix> forms;
  std::vector<std::vector<ExactMatrix>> images;
  FormSampler sampler(n, g.ring(), seed, opts);
  const int budget = finite_field ? std::min(opts.candidate_budget, 256) : opts.candidate_budget;

  bool greedy_ok = true;
  for (int j = 0; j < n && greedy_ok; ++j) {
    greedy_ok = false;
    for (int attempt = 0; attempt < budget; ++attempt) {
      ExactMatrix cand = sampler.next();
      if (!dade_admissible(g, images, cand)) continue;
      forms.push_back(cand);
      std::vector<ExactMatrix> row;
      for (const GroupElement& e : g.elements()) row.push_back(form_image(e, cand));
      images.push_back(std::move(row));
      greedy_ok = true;
      break;
    }
  }
  if (greedy_ok) return forms;
  if (!finite_field)
    fail(ErrorCode::search_budget_exceeded,
         "no admissible linear form found within the candidate budget");

  forms.clear();
  images.clear();
  std::vector<ExactMatrix> pool = all_fp_vectors(g.ring(), n);
  if (!dfs_fp_forms(g, pool, forms, images))
    fail(ErrorCode::residue_field_too_small,
         "no admissible tuple of linear forms exists over " + g.ring().name());
  return forms;
}

Polynomial orbit_product(const MatrixGroup& g, const Polynomial& form) {
  Polynomial out = Polynomial::constant(g.ring(), g.dimension(), 1);
  for (const GroupElement& e : g.elements()) out = out * act(e, form);
  return out;
}

Polynomial form_to_polynomial(const RingDescriptor& ring, const ExactMatrix& coeffs) {
  Polynomial out(ring, coeffs.rows());
  for (int i = 0; i < coeffs.rows(); ++i) {
    std::vector<int> e(coeffs.rows(), 0);
    e[i] = 1;
    out.add_term(Monomial(std::move(e)), coeffs(i, 0));
  }
  return out;
}

std::vector<Polynomial> to_field_polys(const std::vector<Polynomial>& polys,
                                       const RingDescriptor& field) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const Polynomial& p : polys) out.push_back(p.to_ring(field));
  return out;
}

// Coefficients of prod_i (1 + t + ... + t^(d_i - 1)), the Hilbert series of
// a graded complete intersection quotient, padded with zeros to `length`.
std::vector<int> regular_quotient_series(const std::vector<int>& degrees, int length) {
  std::vector<long> acc{1};
  for (int d : degrees) {
    std::vector<long> next(acc.size() + d - 1, 0);
    for (size_t i = 0; i < acc.size(); ++i)
      for (int k = 0; k < d; ++k) next[i + k] += acc[i];
    acc = std::move(next);
  }
  std::vector<int> out(length, 0);
  for (size_t i = 0; i < acc.size() && i < static_cast<size_t>(length); ++i)
    out[i] = static_cast<int>(acc[i]);
  return out;
}

}  // namespace

int quotient_dimension(const std::vector<Polynomial>& fs, int e) {
  const int n = fs.front().n_vars();
  const RingDescriptor& ring = fs.front().ring();
  DegreeComponent comp = monomial_basis(n, e);
  std::vector<Polynomial> multiples;
  for (const Polynomial& f : fs) {
    int d = f.degree();
    if (d > e) continue;
    DegreeComponent shift = monomial_basis(n, e - d);
    for (const Monomial& m : shift.basis)
      multiples.push_back(f * Polynomial::monomial_term(ring, m, 1));
  }
  if (multiples.empty()) return comp.size();
  ExactMatrix span = matrix_from_polynomials(ring, multiples, comp);
  return comp.size() - rank(span);
}

HsopCertificate verify_hsop(const MatrixGroup& g, const std::vector<Polynomial>& fs,
                            const RingDescriptor& field) {
  if (!field.is_field()) fail(ErrorCode::non_field_ring, "hsop certificates need a field");
  require_same_ring(g.ring(), field, "verify_hsop group");
  const int n = g.dimension();
  if (static_cast<int>(fs.size()) != n)
    fail(ErrorCode::wrong_count,
         "expected " + std::to_string(n) + " polynomials, got " + std::to_string(fs.size()));
  for (const Polynomial& f : fs) {
    require_same_ring(f.ring(), field, "verify_hsop polynomial");
    if (f.is_zero() || !f.is_homogeneous() || f.degree() < 1)
      fail(ErrorCode::not_homogeneous,
           "'" + f.to_string() + "' is not homogeneous of positive degree");
  }
  for (const Polynomial& f : fs)
    for (const GroupElement& e : g.elements())
      if (act(e, f) != f)
        fail(ErrorCode::not_invariant, "'" + f.to_string() + "' is not invariant");

  std::vector<int> degrees;
  int d_sum = 0;
  for (const Polynomial& f : fs) {
    degrees.push_back(f.degree());
    d_sum += f.degree() - 1;
  }

  HsopCertificate cert;
  cert.field = field;
  for (int e = 0; e <= d_sum + 1; ++e) cert.quotient_dims.push_back(quotient_dimension(fs, e));
  cert.verdict = cert.quotient_dims.back() == 0 ? HsopVerdict::hsop : HsopVerdict::not_hsop;
  std::vector<int> expected = regular_quotient_series(degrees, d_sum + 2);
  cert.regular_sequence = cert.quotient_dims == expected;
  return cert;
}

Hsop dade_hsop(const MatrixGroup& g, unsigned long rng_seed, const DadeOptions& options) {
  MatrixGroup condition_group =
      g.ring().kind() == RingKind::integers ? change_ring(g, RingDescriptor::rationals()) : g;
  std::vector<ExactMatrix> forms = find_dade_forms(condition_group, rng_seed, options);

  Hsop out;
  out.provenance = HsopProvenance::dade_linear_forms;
  for (const ExactMatrix& f : forms) {
    Polynomial form = form_to_polynomial(g.ring(), f.to_ring(g.ring()));
    out.linear_forms.push_back(form);
    Polynomial product = orbit_product(g, form);
    out.degrees.push_back(product.degree());
    out.polys.push_back(std::move(product));
  }
  for (int d : out.degrees)
    if (d != g.order())
      fail(ErrorCode::verification_failed, "orbit product degree is not |G|");

  HsopCertificate cert = verify_hsop(condition_group, to_field_polys(out.polys, condition_group.ring()),
                                     condition_group.ring());
  if (cert.verdict != HsopVerdict::hsop)
    fail(ErrorCode::verification_failed, "Dade orbit products failed the hsop certificate");
  return out;
}

LiftedHsop lift_hsop_over_Z(const MatrixGroup& g, const mpz_class& p, unsigned long rng_seed,
                            const DadeOptions& options) {
  if (g.ring().kind() != RingKind::integers)
    fail(ErrorCode::ring_mismatch, "lift_hsop_over_Z needs a Z group");
  MatrixGroup reduced = reduce_mod_p(g, p);
  std::vector<ExactMatrix> forms_p = find_dade_forms(reduced, rng_seed, options);

  LiftedHsop out;
  out.reduced_order = reduced.order();
  out.hsop.provenance = HsopProvenance::dade_linear_forms;
  for (const ExactMatrix& f : forms_p) {
    // canonical representatives in [0, p) lift the form to Z
    Polynomial form = form_to_polynomial(g.ring(), f.to_ring(g.ring()));
    out.hsop.linear_forms.push_back(form);
    Polynomial product = orbit_product(g, form);
    out.hsop.degrees.push_back(product.degree());
    out.hsop.polys.push_back(std::move(product));
  }

  out.fp_certificate =
      verify_hsop(reduced, to_field_polys(out.hsop.polys, reduced.ring()), reduced.ring());
  if (out.fp_certificate.verdict != HsopVerdict::hsop)
    fail(ErrorCode::verification_failed, "mod-p certificate rejected the lifted hsop");

  MatrixGroup gq = change_ring(g, RingDescriptor::rationals());
  out.q_certificate = verify_hsop(gq, to_field_polys(out.hsop.polys, gq.ring()), gq.ring());
  if (out.q_certificate.verdict != HsopVerdict::hsop)
    fail(ErrorCode::verification_failed, "rational certificate rejected the lifted hsop");
  return out;
}

std::vector<int> SecondaryGenerators::degrees() const {
  std::vector<int> out;
  out.reserve(gens.size());
  for (const auto& [d, p] : gens) out.push_back(d);
  return out;
}

SecondaryGenerators secondary_generators(const MatrixGroup& g, const Hsop& h,
                                         const HsopCertificate& certificate) {
  if (certificate.verdict != HsopVerdict::hsop)
    fail(ErrorCode::unverified_hsop, "hsop certificate has verdict NotHsop");
  SecondaryGenerators out;
  out.hsop_degrees = h.degrees;
  int bound = 0;
  for (int d : h.degrees) bound += d - 1;
  out.degree_bound = bound;

  std::vector<std::vector<Polynomial>> span(bound + 1);
  for (int d = 0; d <= bound; ++d) {
    DegreeComponent comp = monomial_basis(g.dimension(), d);
    std::vector<Polynomial> products;
    for (size_t i = 0; i < h.polys.size(); ++i) {
      int di = h.degrees[i];
      if (d < di) continue;
      for (const Polynomial& w : span[d - di]) products.push_back(h.polys[i] * w);
    }
    InvariantBasis inv = invariant_basis(g, d);
    Extraction ext = extract_new_generators(inv, products, comp);
    for (Polynomial& p : ext.polynomials) {
      products.push_back(p);
      out.gens.emplace_back(d, std::move(p));
    }
    span[d] = reduce_span(g.ring(), products, comp);
  }
  out.max_degree = out.gens.empty() ? 0 : out.gens.back().first;
  return out;
}

namespace {

// det(I - t * m) as coefficients 0..n via sums of principal minors.
std::vector<mpq_class> reverse_charpoly(const ExactMatrix& m, const RingDescriptor& ring) {
  const int n = m.rows();
  if (n > 16) fail(ErrorCode::invalid_argument, "dimension too large for Molien");
  std::vector<mpq_class> coeffs(n + 1, mpq_class(0));
  coeffs[0] = 1;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    ExactMatrix sub(ring, k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub.set(r, c, m(idx[r], idx[c]));
    mpq_class minor = determinant(sub);
    coeffs[k] += (k % 2 == 0 ? minor : -minor);
  }
  for (auto& c : coeffs) c = normalize_value(ring, c);
  return coeffs;
}

// 1 / a(t) through degree T for a power series with a(0) = 1.
std::vector<mpq_class> series_inverse(const std::vector<mpq_class>& a, int truncation,
                                      const RingDescriptor& ring) {
  std::vector<mpq_class> b(truncation + 1, mpq_class(0));
  b[0] = 1;
  for (int m = 1; m <= truncation; ++m) {
    mpq_class acc = 0;
    for (size_t k = 1; k < a.size() && static_cast<int>(k) <= m; ++k) acc += a[k] * b[m - k];
    b[m] = normalize_value(ring, -acc);
  }
  return b;
}

}  // namespace

MolienSeries molien_series(const MatrixGroup& g, int truncation) {
  if (truncation < 0) fail(ErrorCode::invalid_argument, "truncation must be >= 0");
  const RingDescriptor& ring = g.ring();
  if (!ring.is_field())
    fail(ErrorCode::non_field_ring, "Molien series needs Q or F_p; reduce or base change first");
  if (ring.kind() == RingKind::prime_field && mpz_class(g.order()) % ring.modulus() == 0)
    fail(ErrorCode::modular_characteristic,
         "characteristic " + ring.modulus().get_str() + " divides |G| = " + std::to_string(g.order()));

  std::vector<mpq_class> sum(truncation + 1, mpq_class(0));
  for (const GroupElement& e : g.elements()) {
    std::vector<mpq_class> det_coeffs = reverse_charpoly(e.matrix, ring);
    std::vector<mpq_class> inv = series_inverse(det_coeffs, truncation, ring);
    for (int i = 0; i <= truncation; ++i) sum[i] = normalize_value(ring, sum[i] + inv[i]);
  }
  mpq_class scale = value_inverse(ring, normalize_value(ring, mpq_class(g.order())));

  MolienSeries out;
  out.truncation = truncation;
  for (int i = 0; i <= truncation; ++i) {
    mpq_class c = normalize_value(ring, sum[i] * scale);
    if (ring.kind() == RingKind::rationals) {
      if (!value_is_integral(c) || c < 0)
        fail(ErrorCode::verification_failed, "Molien coefficient " + c.get_str() + " is not a dimension");
    }
    if (!c.get_num().fits_slong_p())
      fail(ErrorCode::verification_failed, "Molien coefficient overflows");
    out.coefficients.push_back(c.get_num().get_si());
  }
  return out;
}

FlatnessReport flatness_check(const MatrixGroup& g, int max_degree,
                              const std::vector<mpz_class>& primes) {
  if (g.ring().kind() != RingKind::integers)
    fail(ErrorCode::ring_mismatch, "flatness_check needs a Z group");
  FlatnessReport report;
  report.max_degree = max_degree;
  report.primes = primes;

  MatrixGroup gq = change_ring(g, RingDescriptor::rationals());
  std::vector<MatrixGroup> reduced;
  reduced.reserve(primes.size());
  for (const mpz_class& p : primes) reduced.push_back(reduce_mod_p(g, p));

  for (int d = 0; d <= max_degree; ++d) {
    FlatnessDegreeRow row;
    row.degree = d;
    InvariantBasis lattice = invariant_basis(g, d);
    InvariantBasis rational = invariant_basis(gq, d);
    row.lattice_rank = lattice.dimension();
    row.q_dimension = rational.dimension();
    bool spans = row.lattice_rank == row.q_dimension;
    if (spans && row.q_dimension > 0) {
      ExactMatrix joint = ExactMatrix::hcat(lattice.vectors.to_ring(RingDescriptor::rationals()),
                                            rational.vectors);
      spans = rank(joint) == row.q_dimension;
    }
    row.q_spans = spans;
    if (!spans)
      fail(ErrorCode::flatness_violation,
           "Z-lattice does not span the Q-invariants in degree " + std::to_string(d));
    for (size_t i = 0; i < primes.size(); ++i) {
      InvariantBasis modp = invariant_basis(reduced[i], d);
      row.primes.push_back({primes[i], modp.dimension(), modp.dimension() == row.lattice_rank});
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

CmProbe cm_probe(const MatrixGroup& g, const Hsop& h, const SecondaryGenerators& s,
                 const HsopCertificate& certificate, int slack) {
  if (certificate.verdict != HsopVerdict::hsop)
    fail(ErrorCode::unverified_hsop, "hsop certificate has verdict NotHsop");
  if (!g.ring().is_field())
    fail(ErrorCode::non_field_ring, "cm_probe runs over a field; base change first");
  int d_sum = 0, d_max = 0;
  for (int d : h.degrees) {
    d_sum += d - 1;
    d_max = std::max(d_max, d);
  }
  if (slack < 0) slack = d_max;

  CmProbe probe;
  probe.window = d_sum + slack;

  std::vector<long> hilbert;
  for (int d = 0; d <= probe.window; ++d)
    hilbert.push_back(invariant_basis(g, d).dimension());

  // H(t) * prod_i (1 - t^{d_i}), truncated
  std::vector<long> expected = hilbert;
  for (int d : h.degrees) {
    std::vector<long> next(expected.size(), 0);
    for (size_t i = 0; i < expected.size(); ++i) {
      next[i] += expected[i];
      if (i + d < next.size()) next[i + d] -= expected[i];
    }
    expected = std::move(next);
  }
  probe.expected_counts = expected;

  probe.secondary_counts.assign(probe.window + 1, 0);
  for (const auto& [d, p] : s.gens)
    if (d <= probe.window) ++probe.secondary_counts[d];

  probe.consistent = probe.secondary_counts == probe.expected_counts;
  probe.verdict = probe.consistent ? "consistent with free/CM (truncated check)"
                                   : "not free over this hsop";
  return probe;
}

}  // namespace arithinv
