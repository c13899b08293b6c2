#include "arithinv/io.hpp"

#include <fstream>

namespace arithinv::io {

namespace {

const char* kSchema = "arithinv/1";

mpq_class entry_from_json(const RingDescriptor& ring, const json& v) {
  if (v.is_number_integer()) return normalize_value(ring, mpq_class(v.get<long>()));
  if (v.is_string()) return parse_value(ring, v.get<std::string>());
  fail(ErrorCode::parse_error, "matrix entries must be integers or \"a/b\" strings");
}

}  // namespace

json ring_to_json(const RingDescriptor& ring) {
  switch (ring.kind()) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::prime_field: return json{{"Fp", ring.modulus().get_si()}};
  }
  fail(ErrorCode::invalid_argument, "bad ring");
}

RingDescriptor ring_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Z") return RingDescriptor::integers();
    if (s == "Q") return RingDescriptor::rationals();
    fail(ErrorCode::parse_error, "unknown ring '" + s + "'");
  }
  if (j.is_object() && j.contains("Fp")) {
    if (!j["Fp"].is_number_integer()) fail(ErrorCode::parse_error, "Fp modulus must be an integer");
    return RingDescriptor::prime_field(mpz_class(j["Fp"].get<long>()));
  }
  fail(ErrorCode::parse_error, "ring must be \"Z\", \"Q\", or {\"Fp\": p}");
}

GroupDocument parse_group_document(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::parse_error, "group document must be a JSON object");
  if (!doc.contains("ring") || !doc.contains("n") || !doc.contains("generators"))
    fail(ErrorCode::parse_error, "group document needs ring, n, and generators");
  GroupDocument out;
  out.ring = ring_from_json(doc["ring"]);
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1)
    fail(ErrorCode::parse_error, "n must be a positive integer");
  out.n = doc["n"].get<int>();
  if (doc.contains("name")) out.name = doc["name"].get<std::string>();

  if (!doc["generators"].is_array()) fail(ErrorCode::parse_error, "generators must be an array");
  for (const json& gj : doc["generators"]) {
    if (!gj.is_array() || static_cast<int>(gj.size()) != out.n)
      fail(ErrorCode::parse_error, "generator must be an n x n array");
    ExactMatrix m(out.ring, out.n, out.n);
    for (int r = 0; r < out.n; ++r) {
      if (!gj[r].is_array() || static_cast<int>(gj[r].size()) != out.n)
        fail(ErrorCode::parse_error, "generator row has wrong length");
      for (int c = 0; c < out.n; ++c) m.set(r, c, entry_from_json(out.ring, gj[r][c]));
    }
    out.generators.push_back(std::move(m));
  }
  return out;
}

GroupDocument load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, "bad JSON in '" + path + "': " + e.what());
  }
  return parse_group_document(doc);
}

MatrixGroup group_from_document(const GroupDocument& doc, int cap) {
  MatrixGroup g = close_group(doc.ring, doc.n, doc.generators, cap);
  g.set_name(doc.name);
  return g;
}

namespace {

json base_report(const MatrixGroup& g, const char* command) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  if (!g.name().empty()) j["name"] = g.name();
  j["ring"] = ring_to_json(g.ring());
  j["n"] = g.dimension();
  j["order"] = g.order();
  return j;
}

json polynomials_to_json(const std::vector<Polynomial>& polys) {
  json arr = json::array();
  for (const Polynomial& p : polys) arr.push_back(p.to_string());
  return arr;
}

json degree_polynomials_to_json(const std::vector<std::pair<int, Polynomial>>& items) {
  json arr = json::array();
  for (const auto& [d, p] : items) arr.push_back(json{{"degree", d}, {"polynomial", p.to_string()}});
  return arr;
}

}  // namespace

json closure_report(const MatrixGroup& g, bool audit_ok) {
  json j = base_report(g, "closure");
  j["closure_audit"] = audit_ok ? "passed" : "failed";
  j["generator_count"] = static_cast<int>(g.generator_indices().size());
  return j;
}

json invariants_report(const MatrixGroup& g, const InvariantBasis& basis) {
  json j = base_report(g, "invariants");
  j["degree"] = basis.degree;
  j["dimension"] = basis.dimension();
  j["basis"] = polynomials_to_json(basis.polynomials);
  j["basis_kind"] =
      g.ring().kind() == RingKind::integers ? "saturated lattice basis" : "vector space basis";
  return j;
}

json generators_report(const MatrixGroup& g, const GeneratorSet& gens) {
  json j = base_report(g, "generators");
  j["bound"] = gens.bound;
  j["extra_sweep"] = gens.extra_sweep;
  j["beta"] = gens.beta;
  j["degrees"] = gens.degrees();
  j["generators"] = degree_polynomials_to_json(gens.generators);
  j["sweep_clean_through"] = gens.sweep_clean_through;
  j["generator_at_bound"] = gens.generator_at_bound;
  j["minimality"] = g.ring().kind() == RingKind::integers
                        ? "degreewise over Q, possibly redundant over Z"
                        : "degreewise minimal";
  return j;
}

json certificate_to_json(const HsopCertificate& cert) {
  json j;
  j["field"] = cert.field.name();
  j["quotient_dims"] = cert.quotient_dims;
  j["verdict"] = cert.verdict == HsopVerdict::hsop ? "Hsop" : "NotHsop";
  j["regular_sequence"] = cert.regular_sequence;
  return j;
}

std::string certification_scope(const std::vector<HsopCertificate>& certs) {
  std::string out = "{";
  bool first = true;
  for (const HsopCertificate& c : certs) {
    if (c.verdict != HsopVerdict::hsop) continue;
    if (!first) out += ", ";
    first = false;
    std::string name = c.field.name();
    out += name == "Q" || name == "Z" ? name : name.substr(1);  // "F7" -> "7"
  }
  return out + "}";
}

json hsop_report(const MatrixGroup& g, const Hsop& h, const std::vector<HsopCertificate>& certs) {
  json j = base_report(g, "hsop");
  j["provenance"] =
      h.provenance == HsopProvenance::dade_linear_forms ? "dade_linear_forms" : "user_supplied";
  if (!h.linear_forms.empty()) j["linear_forms"] = polynomials_to_json(h.linear_forms);
  j["degrees"] = h.degrees;
  j["polynomials"] = polynomials_to_json(h.polys);
  json arr = json::array();
  for (const HsopCertificate& c : certs) arr.push_back(certificate_to_json(c));
  j["certificates"] = arr;
  j["certification_scope"] = certification_scope(certs);
  return j;
}

json secondary_report(const MatrixGroup& g, const SecondaryGenerators& s) {
  json j = base_report(g, "secondary");
  j["hsop_degrees"] = s.hsop_degrees;
  j["degree_bound"] = s.degree_bound;
  j["max_degree"] = s.max_degree;
  j["degrees"] = s.degrees();
  j["generators"] = degree_polynomials_to_json(s.gens);
  return j;
}

json molien_report(const MatrixGroup& g, const MolienSeries& series, const std::string& semantics) {
  json j = base_report(g, "molien");
  j["truncation"] = series.truncation;
  j["coefficients"] = series.coefficients;
  j["semantics"] = semantics;
  return j;
}

json flatness_report_json(const MatrixGroup& g, const FlatnessReport& report) {
  json j = base_report(g, "flatness");
  j["max_degree"] = report.max_degree;
  json primes = json::array();
  for (const mpz_class& p : report.primes) primes.push_back(p.get_si());
  j["primes"] = primes;
  json rows = json::array();
  for (const FlatnessDegreeRow& row : report.rows) {
    json r;
    r["degree"] = row.degree;
    r["lattice_rank"] = row.lattice_rank;
    r["q_dimension"] = row.q_dimension;
    r["q_spans"] = row.q_spans;
    json pr = json::array();
    for (const FlatnessPrimeRow& pp : row.primes)
      pr.push_back(json{{"p", pp.p.get_si()},
                        {"dimension", pp.dimension},
                        {"matches_lattice_rank", pp.matches_lattice_rank}});
    r["primes"] = pr;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace arithinv::io
