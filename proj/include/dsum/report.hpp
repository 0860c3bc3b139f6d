#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dsum/decomposition.hpp"
#include "dsum/factor.hpp"

namespace dsum {

using Json = nlohmann::ordered_json;

/// "q" or "fp:<p>".
std::string field_name(std::uint64_t modulus);
/// Inverse of field_name; throws FieldMismatch for anything else, including
/// fp:<p> with p not prime.
std::uint64_t parse_field(const std::string& text);

/// Rows are the basis vectors (the columns of the LinearChange), each entry
/// a rational string.
Json basis_to_json(const LinearChange& basis);
Json factors_to_json(const FactorList& fl);
Json witness_to_json(const SplitWitness& w);
Json maximally_fine_to_json(const MaximallyFine& mf);

/// The report serialization; timings_ms is null unless `timings` is set.
Json report_to_json(const DecompositionReport& rep, bool timings = false);

struct VerifyOutcome {
  bool pass = false;
  std::vector<std::string> messages;
};

/// Checks a witness {"input" or "f", "n"?, "field"?, "basis", "f1", "f2"}:
/// invertible basis, f1 and f2 on disjoint variables, and
/// substitute_linear(f, basis) = f1 + f2. A full report is accepted too, in
/// which case every entry of "splits" is checked against "input". Schema
/// problems throw Error(SchemaError) naming the field.
VerifyOutcome verify_witness(const Json& doc);

}  // namespace dsum
