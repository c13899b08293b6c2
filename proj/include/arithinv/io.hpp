#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arithinv/group.hpp"
#include "arithinv/invariants.hpp"

namespace arithinv::io {

using json = nlohmann::json;

/// Parsed form of the group input document:
/// {"ring": "Z" | "Q" | {"Fp": p}, "n": int, "generators": [...], "name": string?}
/// Matrix entries are integers or strings "a/b".
struct GroupDocument {
  std::string name;
  RingDescriptor ring = RingDescriptor::integers();
  int n = 0;
  std::vector<ExactMatrix> generators;
};

GroupDocument parse_group_document(const json& doc);
GroupDocument load_group_file(const std::string& path);
MatrixGroup group_from_document(const GroupDocument& doc, int cap = kDefaultClosureCap);

json ring_to_json(const RingDescriptor& ring);
RingDescriptor ring_from_json(const json& j);

// Report documents; every builder stamps "schema": "arithinv/1".
json closure_report(const MatrixGroup& g, bool audit_ok);
json invariants_report(const MatrixGroup& g, const InvariantBasis& basis);
json generators_report(const MatrixGroup& g, const GeneratorSet& gens);
json hsop_report(const MatrixGroup& g, const Hsop& h, const std::vector<HsopCertificate>& certs);
json secondary_report(const MatrixGroup& g, const SecondaryGenerators& s);
json molien_report(const MatrixGroup& g, const MolienSeries& series, const std::string& semantics);
json flatness_report_json(const MatrixGroup& g, const FlatnessReport& report);
json certificate_to_json(const HsopCertificate& cert);

/// "{Q, 7}" style scope label over the fields whose verdict is Hsop.
std::string certification_scope(const std::vector<HsopCertificate>& certs);

/// Canonical serialization used everywhere: sorted keys, 2-space indent,
/// trailing newline. Parsing and re-dumping a report is byte-identical.
std::string dump_report(const json& j);

}  // namespace arithinv::io
