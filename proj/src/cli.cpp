#include "arithinv/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arithinv/catalog.hpp"
#include "arithinv/io.hpp"

namespace arithinv::cli {

namespace {

using io::json;

struct RunConfig {
  std::string input_path;
  std::string format = "text";
  int cap = kDefaultClosureCap;
  unsigned long seed = 0;
  int degree = 0;
  int bound = -1;
  int extra_sweep = 0;
  int truncate = 10;
  int max_degree = -1;
  long lift_prime = 0;
  std::vector<long> primes;
  std::string hsop_file;
  std::string catalog_dir = "catalog";
  std::string filter;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse_error:
      return 2;
    case ErrorCode::cap_exceeded:
    case ErrorCode::not_invertible_over_ring:
      return 3;
    case ErrorCode::search_budget_exceeded:
    case ErrorCode::residue_field_too_small:
      return 5;
    default:
      return 1;
  }
}

MatrixGroup load_group(const RunConfig& cfg) {
  if (cfg.input_path.empty()) fail(ErrorCode::parse_error, "--input is required");
  return io::group_from_document(io::load_group_file(cfg.input_path), cfg.cap);
}

void emit(const RunConfig& cfg, const json& report, std::ostream& out,
          const std::string& text) {
  if (cfg.format == "json")
    out << io::dump_report(report);
  else
    out << text;
}

std::vector<mpz_class> to_mpz(const std::vector<long>& primes) {
  std::vector<mpz_class> out;
  for (long p : primes) out.emplace_back(p);
  return out;
}

int cmd_closure(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  bool ok = audit_closure(g);
  std::ostringstream text;
  text << "group: " << (g.name().empty() ? "(unnamed)" : g.name()) << "\n"
       << "ring: " << g.ring().name() << "\n"
       << "n: " << g.dimension() << "\n"
       << "order: " << g.order() << "\n"
       << "closure audit: " << (ok ? "passed" : "failed") << "\n";
  emit(cfg, io::closure_report(g, ok), out, text.str());
  return ok ? 0 : 1;
}

int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  InvariantBasis basis = invariant_basis(g, cfg.degree);
  std::ostringstream text;
  text << "degree " << basis.degree << " invariants over " << g.ring().name() << ": dimension "
       << basis.dimension() << "\n";
  for (const Polynomial& p : basis.polynomials) text << "  " << p.to_string() << "\n";
  emit(cfg, io::invariants_report(g, basis), out, text.str());
  return 0;
}

int cmd_generators(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  GeneratorSet gens = algebra_generators(g, cfg.bound, cfg.extra_sweep);
  std::ostringstream text;
  text << "beta=" << gens.beta << " <= bound=" << gens.bound << "\n";
  for (const auto& [d, p] : gens.generators)
    text << "  degree " << d << ": " << p.to_string() << "\n";
  text << "sweep clean through degree " << gens.sweep_clean_through << "\n";
  if (gens.generator_at_bound)
    text << "warning: a generator appeared at the bound degree; the bound may be tight\n";
  emit(cfg, io::generators_report(g, gens), out, text.str());
  return gens.generator_at_bound ? 4 : 0;
}

int cmd_hsop(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  Hsop h;
  std::vector<HsopCertificate> certs;

  if (cfg.lift_prime > 0) {
    LiftedHsop lifted = lift_hsop_over_Z(g, mpz_class(cfg.lift_prime), cfg.seed);
    h = std::move(lifted.hsop);
    certs.push_back(lifted.q_certificate);
    certs.push_back(lifted.fp_certificate);
  } else {
    h = dade_hsop(g, cfg.seed);
    MatrixGroup gf = g.ring().kind() == RingKind::integers
                         ? change_ring(g, RingDescriptor::rationals())
                         : g;
    std::vector<Polynomial> fs;
    for (const Polynomial& p : h.polys) fs.push_back(p.to_ring(gf.ring()));
    certs.push_back(verify_hsop(gf, fs, gf.ring()));
    if (!cfg.primes.empty()) {
      if (g.ring().kind() != RingKind::integers)
        fail(ErrorCode::invalid_argument, "--primes applies to Z groups only");
      for (long p : cfg.primes) {
        MatrixGroup gp = reduce_mod_p(g, mpz_class(p));
        std::vector<Polynomial> fp;
        for (const Polynomial& q : h.polys) fp.push_back(q.to_ring(gp.ring()));
        certs.push_back(verify_hsop(gp, fp, gp.ring()));
      }
    }
  }

  bool all_hsop = true;
  for (const HsopCertificate& c : certs) all_hsop = all_hsop && c.verdict == HsopVerdict::hsop;

  std::ostringstream text;
  text << "hsop degrees:";
  for (int d : h.degrees) text << " " << d;
  text << "\n";
  for (const Polynomial& p : h.polys) text << "  " << p.to_string() << "\n";
  for (const HsopCertificate& c : certs) {
    text << "certificate over " << c.field.name() << ": "
         << (c.verdict == HsopVerdict::hsop ? "Hsop" : "NotHsop")
         << (c.regular_sequence ? ", regular sequence" : "") << "; quotient dims";
    for (int d : c.quotient_dims) text << " " << d;
    text << "\n";
  }
  text << "certified at " << io::certification_scope(certs) << "\n";
  emit(cfg, io::hsop_report(g, h, certs), out, text.str());
  return all_hsop ? 0 : 1;
}

int cmd_secondary(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  if (cfg.hsop_file.empty()) fail(ErrorCode::parse_error, "--hsop-file is required");
  std::ifstream in(cfg.hsop_file);
  if (!in) fail(ErrorCode::parse_error, "cannot open '" + cfg.hsop_file + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("bad JSON hsop file: ") + e.what());
  }
  if (!doc.contains("polynomials") || !doc["polynomials"].is_array())
    fail(ErrorCode::parse_error, "hsop file needs a \"polynomials\" array");

  Hsop h;
  h.provenance = HsopProvenance::user_supplied;
  for (const json& item : doc["polynomials"]) {
    Polynomial p = Polynomial::parse(g.ring(), g.dimension(), item.get<std::string>());
    h.degrees.push_back(p.degree());
    h.polys.push_back(std::move(p));
  }

  MatrixGroup gf = g.ring().kind() == RingKind::integers
                       ? change_ring(g, RingDescriptor::rationals())
                       : g;
  std::vector<Polynomial> fs;
  for (const Polynomial& p : h.polys) fs.push_back(p.to_ring(gf.ring()));
  HsopCertificate cert = verify_hsop(gf, fs, gf.ring());
  SecondaryGenerators sec = secondary_generators(g, h, cert);

  std::ostringstream text;
  text << "secondary generators over hsop of degrees";
  for (int d : sec.hsop_degrees) text << " " << d;
  text << " (bound " << sec.degree_bound << ")\n";
  for (const auto& [d, p] : sec.gens) text << "  degree " << d << ": " << p.to_string() << "\n";
  emit(cfg, io::secondary_report(g, sec), out, text.str());
  return 0;
}

int cmd_molien(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  MatrixGroup gf = g.ring().kind() == RingKind::integers
                       ? change_ring(g, RingDescriptor::rationals())
                       : g;
  MolienSeries series = molien_series(gf, cfg.truncate);
  std::string semantics = gf.ring().kind() == RingKind::prime_field
                              ? "dimensions mod " + gf.ring().modulus().get_str()
                              : "exact dimensions";
  std::ostringstream text;
  text << "Molien coefficients (degrees 0.." << series.truncation << "; " << semantics << "):";
  for (long c : series.coefficients) text << " " << c;
  text << "\n";
  emit(cfg, io::molien_report(g, series, semantics), out, text.str());
  return 0;
}

int cmd_flatness(const RunConfig& cfg, std::ostream& out) {
  MatrixGroup g = load_group(cfg);
  int max_degree = cfg.max_degree >= 0 ? cfg.max_degree : 2 * g.order();
  FlatnessReport report = flatness_check(g, max_degree, to_mpz(cfg.primes));
  std::ostringstream text;
  text << "flat base change Z -> Q holds through degree " << max_degree << "\n";
  for (const FlatnessDegreeRow& row : report.rows) {
    text << "  degree " << row.degree << ": lattice rank " << row.lattice_rank;
    for (const FlatnessPrimeRow& pr : row.primes) {
      text << ", mod " << pr.p.get_str() << " dim " << pr.dimension;
      if (!pr.matches_lattice_rank) text << " (non-flat discrepancy)";
    }
    text << "\n";
  }
  emit(cfg, io::flatness_report_json(g, report), out, text.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  catalog::VerifyOptions options;
  options.filter = cfg.filter;
  options.seed = cfg.seed;
  options.cap = cfg.cap;
  std::vector<catalog::EntryResult> results = catalog::verify_catalog(cfg.catalog_dir, options);
  bool ok = catalog::all_pass(results);

  std::ostringstream text;
  for (const catalog::EntryResult& r : results) {
    for (const catalog::CheckRow& row : r.checks) {
      text << (row.pass ? "pass" : "FAIL") << "  " << r.entry << "  " << row.check;
      if (!row.detail.empty()) text << "  " << row.detail;
      text << "\n";
    }
  }
  text << (ok ? "all catalog entries passed" : "catalog verification FAILED") << "\n";
  emit(cfg, catalog::results_to_json(cfg.catalog_dir, results), out, text.str());
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"exact rings of invariants of finite matrix groups over Z, Q, and F_p"};
  app.name("arithinv");

  app.add_option("--input", cfg.input_path, "group document (JSON)");
  app.add_option("--format", cfg.format, "text|json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cap", cfg.cap, "closure cap")->check(CLI::PositiveNumber);

  CLI::App* closure = app.add_subcommand("closure", "close the group and audit it");
  CLI::App* invariants = app.add_subcommand("invariants", "basis of the degree-d invariants");
  invariants->add_option("--degree", cfg.degree, "degree")->required()->check(CLI::NonNegativeNumber);
  CLI::App* generators = app.add_subcommand("generators", "minimal algebra generators");
  generators->add_option("--bound", cfg.bound, "degree bound (default max(|G|, n(|G|-1)))");
  generators->add_option("--extra-sweep", cfg.extra_sweep, "extra degrees past the bound")
      ->check(CLI::NonNegativeNumber);
  CLI::App* hsop = app.add_subcommand("hsop", "Dade hsop with certificates");
  hsop->add_option("--primes", cfg.primes, "also certify mod these primes (Z groups)")
      ->delimiter(',');
  hsop->add_option("--seed", cfg.seed, "sampler seed");
  hsop->add_option("--lift", cfg.lift_prime,
                   "pick forms admissible mod this prime (certifies over Z_(p))");
  CLI::App* secondary = app.add_subcommand("secondary", "module generators over an hsop");
  secondary->add_option("--hsop-file", cfg.hsop_file, "hsop report or {\"polynomials\": [...]}")
      ->required();
  CLI::App* molien = app.add_subcommand("molien", "Molien series coefficients");
  molien->add_option("--truncate", cfg.truncate, "last degree")->check(CLI::NonNegativeNumber);
  CLI::App* flatness = app.add_subcommand("flatness", "flat base change report");
  flatness->add_option("--max-degree", cfg.max_degree, "last degree (default 2|G|)");
  flatness->add_option("--primes", cfg.primes, "report mod-p dimensions")->delimiter(',');
  CLI::App* verify = app.add_subcommand("verify", "run the bundled catalog end to end");
  verify->add_option("--filter", cfg.filter, "only entries whose name contains this");
  verify->add_option("--catalog", cfg.catalog_dir, "catalog directory");
  verify->add_option("--seed", cfg.seed, "sampler seed");

  app.require_subcommand(1);
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (long p : cfg.primes)
      RingDescriptor::prime_field(mpz_class(p));  // validates primality
    if (closure->parsed()) return cmd_closure(cfg, out);
    if (invariants->parsed()) return cmd_invariants(cfg, out);
    if (generators->parsed()) return cmd_generators(cfg, out);
    if (hsop->parsed()) return cmd_hsop(cfg, out);
    if (secondary->parsed()) return cmd_secondary(cfg, out);
    if (molien->parsed()) return cmd_molien(cfg, out);
    if (flatness->parsed()) return cmd_flatness(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace arithinv::cli
