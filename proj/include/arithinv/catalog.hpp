#pragma once

#include <string>
#include <vector>

#include "arithinv/io.hpp"

namespace arithinv::catalog {

struct CheckRow {
  std::string check;
  bool pass = false;
  std::string detail;
};

struct EntryResult {
  std::string entry;
  bool pass = false;
  std::vector<CheckRow> checks;
};

struct VerifyOptions {
  std::string filter;            // substring on the entry name; empty = all
  unsigned long seed = 0;
  int cap = kDefaultClosureCap;
  std::vector<mpz_class> certification_primes = {2, 3};  // flatness / Z reports
};

/// Runs one catalog entry end to end against its expectation fixture:
/// closure audit, claimed invariants, generator degrees and bounds, Molien
/// agreement, the Dade hsop with certificate, secondary generators, flat
/// base change, and the CM probe.
EntryResult run_entry(const io::GroupDocument& doc, const io::json& expected,
                      const VerifyOptions& options);

/// Loads every "<name>.json" in `dir` (expectations live alongside in
/// "<name>.expected.json") and runs them in filename order.
std::vector<EntryResult> verify_catalog(const std::string& dir, const VerifyOptions& options);

io::json results_to_json(const std::string& dir, const std::vector<EntryResult>& results);
bool all_pass(const std::vector<EntryResult>& results);

}  // namespace arithinv::catalog
