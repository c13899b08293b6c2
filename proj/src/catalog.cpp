#include "arithinv/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace arithinv::catalog {

namespace {

using io::json;

std::string join_ints(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

struct EntryRunner {
  const MatrixGroup& g;
  const json& expected;
  const VerifyOptions& opts;
  std::vector<CheckRow>& rows;

  void record(const std::string& check, bool pass, const std::string& detail = "") {
    rows.push_back({check, pass, detail});
  }

  bool nonmodular() const {
    if (g.ring().kind() != RingKind::prime_field) return true;
    return mpz_class(g.order()) % g.ring().modulus() != 0;
  }

  // Q for Z groups, the ring itself otherwise.
  MatrixGroup field_group() const {
    return g.ring().kind() == RingKind::integers
               ? change_ring(g, RingDescriptor::rationals())
               : g;
  }

  void check_closure() {
    bool ok = audit_closure(g);
    std::string detail = "order " + std::to_string(g.order());
    if (expected.contains("order")) {
      int want = expected["order"].get<int>();
      ok = ok && g.order() == want;
      if (g.order() != want) detail += ", expected " + std::to_string(want);
    }
    record("closure", ok, detail);
  }

  void check_claimed_invariants() {
    if (!expected.contains("claimed_invariants")) return;
    for (const json& item : expected["claimed_invariants"]) {
      Polynomial p = Polynomial::parse(g.ring(), g.dimension(), item.get<std::string>());
      bool ok = true;
      for (const GroupElement& e : g.elements())
        if (act(e, p) != p) { ok = false; break; }
      record("claimed-invariant", ok,
             ok ? p.to_string() : std::string(error_code_name(ErrorCode::not_invariant)) + ": '" +
                                      p.to_string() + "' is not invariant");
    }
  }

  GeneratorSet check_generators() {
    GeneratorSet gens = algebra_generators(g, -1, 3);
    bool ok = gens.beta <= gens.bound;
    std::string detail = "beta=" + std::to_string(gens.beta) +
                         " bound=" + std::to_string(gens.bound) +
                         " degrees=" + join_ints(gens.degrees());
    if (expected.contains("beta") && gens.beta != expected["beta"].get<int>()) {
      ok = false;
      detail += " expected beta=" + std::to_string(expected["beta"].get<int>());
    }
    if (expected.contains("generator_degrees")) {
      std::vector<int> want = expected["generator_degrees"].get<std::vector<int>>();
      if (gens.degrees() != want) {
        ok = false;
        detail += " expected degrees=" + join_ints(want);
      }
    }
    if (expected.contains("expects_bound_warning") &&
        gens.generator_at_bound != expected["expects_bound_warning"].get<bool>()) {
      ok = false;
      detail += " bound-warning mismatch";
    }
    record("generator-degrees", ok, detail);

    bool inv_ok = true;
    for (const auto& [d, p] : gens.generators) {
      (void)d;
      for (const GroupElement& e : g.elements())
        if (act(e, p) != p) { inv_ok = false; break; }
      if (!inv_ok) break;
    }
    record("generator-invariance", inv_ok);
    return gens;
  }

  void check_molien() {
    if (!nonmodular()) {
      bool raised = false;
      try {
        molien_series(field_group(), 2);
      } catch (const Error& e) {
        raised = e.code() == ErrorCode::modular_characteristic;
      }
      record("molien-modular-rejected", raised);
      return;
    }
    MatrixGroup gf = field_group();
    int limit = 2 * g.order();
    MolienSeries series = molien_series(gf, limit);
    bool ok = true;
    std::string detail;
    for (int d = 0; d <= limit && ok; ++d) {
      int dim = invariant_basis(gf, d).dimension();
      if (dim != series.coefficients[d]) {
        ok = false;
        detail = "degree " + std::to_string(d) + ": kernel dim " + std::to_string(dim) +
                 " vs Molien " + std::to_string(series.coefficients[d]);
      }
    }
    if (ok && expected.contains("molien_prefix")) {
      std::vector<long> want = expected["molien_prefix"].get<std::vector<long>>();
      for (size_t i = 0; i < want.size(); ++i)
        if (i >= series.coefficients.size() || series.coefficients[i] != want[i]) {
          ok = false;
          detail = "prefix mismatch at degree " + std::to_string(i);
          break;
        }
    }
    record("molien-kernel-agreement", ok, detail);
  }

  void check_hsop_pipeline() {
    Hsop h = dade_hsop(g, opts.seed);
    MatrixGroup gf = field_group();
    std::vector<Polynomial> fs;
    for (const Polynomial& p : h.polys) fs.push_back(p.to_ring(gf.ring()));
    HsopCertificate cert = verify_hsop(gf, fs, gf.ring());

    bool deg_ok = static_cast<int>(h.polys.size()) == g.dimension();
    for (int d : h.degrees) deg_ok = deg_ok && d == g.order();
    bool cert_ok = cert.verdict == HsopVerdict::hsop && cert.regular_sequence;
    record("dade-hsop", deg_ok && cert_ok,
           "degrees=" + join_ints(h.degrees) +
               (cert_ok ? " certificate Hsop, regular" : " certificate failed"));

    SecondaryGenerators sec = secondary_generators(g, h, cert);
    bool sec_ok = sec.max_degree <= sec.degree_bound;
    std::string detail = "degrees=" + join_ints(sec.degrees()) +
                         " bound=" + std::to_string(sec.degree_bound);
    if (expected.contains("secondary_degrees")) {
      std::vector<int> want = expected["secondary_degrees"].get<std::vector<int>>();
      if (sec.degrees() != want) {
        sec_ok = false;
        detail += " expected=" + join_ints(want);
      }
    }
    record("secondary-bound", sec_ok, detail);

    // CM probe runs over the field side.
    Hsop hf;
    hf.provenance = h.provenance;
    hf.degrees = h.degrees;
    for (const Polynomial& p : h.polys) hf.polys.push_back(p.to_ring(gf.ring()));
    SecondaryGenerators sec_f =
        g.ring().kind() == RingKind::integers ? secondary_generators(gf, hf, cert) : sec;
    CmProbe probe = cm_probe(gf, hf, sec_f, cert);
    record("cm-probe", probe.consistent, probe.verdict);
  }

  void check_flatness() {
    if (g.ring().kind() != RingKind::integers) return;
    FlatnessReport report = flatness_check(g, 2 * g.order(), opts.certification_primes);
    int mismatches = 0;
    for (const FlatnessDegreeRow& row : report.rows)
      for (const FlatnessPrimeRow& pr : row.primes)
        if (!pr.matches_lattice_rank) ++mismatches;
    record("flatness", true,
           "Q spans everywhere; " + std::to_string(mismatches) + " mod-p discrepancies reported");
  }
};

}  // namespace

EntryResult run_entry(const io::GroupDocument& doc, const json& expected,
                      const VerifyOptions& options) {
  EntryResult result;
  result.entry = doc.name;
  try {
    MatrixGroup g = io::group_from_document(doc, options.cap);
    EntryRunner runner{g, expected, options, result.checks};
    runner.check_closure();
    runner.check_claimed_invariants();
    runner.check_generators();
    runner.check_molien();
    runner.check_hsop_pipeline();
    runner.check_flatness();
  } catch (const Error& e) {
    result.checks.push_back({"error", false, e.what()});
  }
  result.pass = true;
  for (const CheckRow& row : result.checks) result.pass = result.pass && row.pass;
  return result;
}

std::vector<EntryResult> verify_catalog(const std::string& dir, const VerifyOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail(ErrorCode::parse_error, "catalog directory '" + dir + "' not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.extension() != ".json") continue;
    if (p.stem().string().ends_with(".expected")) continue;
    files.push_back(p);
  }
  std::sort(files.begin(), files.end());

  std::vector<EntryResult> results;
  for (const fs::path& p : files) {
    io::GroupDocument doc = io::load_group_file(p.string());
    if (doc.name.empty()) doc.name = p.stem().string();
    if (!options.filter.empty() && doc.name.find(options.filter) == std::string::npos) continue;
    json expected = json::object();
    fs::path exp_path = p.parent_path() / (p.stem().string() + ".expected.json");
    if (fs::exists(exp_path)) {
      std::ifstream in(exp_path);
      try {
        in >> expected;
      } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, "bad JSON in '" + exp_path.string() + "': " + e.what());
      }
    }
    results.push_back(run_entry(doc, expected, options));
  }
  return results;
}

io::json results_to_json(const std::string& dir, const std::vector<EntryResult>& results) {
  json j;
  j["schema"] = "arithinv/1";
  j["command"] = "verify";
  j["catalog"] = dir;
  json arr = json::array();
  for (const EntryResult& r : results) {
    json checks = json::array();
    for (const CheckRow& row : r.checks)
      checks.push_back(json{{"check", row.check}, {"pass", row.pass}, {"detail", row.detail}});
    arr.push_back(json{{"entry", r.entry}, {"pass", r.pass}, {"checks", checks}});
  }
  j["results"] = arr;
  j["all_pass"] = all_pass(results);
  return j;
}

bool all_pass(const std::vector<EntryResult>& results) {
  if (results.empty()) return false;
  for (const EntryResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace arithinv::catalog
