#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "pds/construction.hpp"

namespace pds {

/// Self-contained JSON export ("schema": 1): field spec, group descriptor,
/// family, construction provenance (r / basis dlogs when present), claimed
/// parameters and the sorted canonical indices. Bit-reproducible for a fixed
/// (p, s, m, modulus, r, R).
std::string pds_to_json(const PdsSet& set);

/// Plain text export: the sorted canonical indices, one per line.
std::string pds_to_text(const PdsSet& set);

/// A set loaded from JSON together with the field table that backs it.
struct LoadedPds {
    std::unique_ptr<FieldTable> table;
    std::unique_ptr<PdsSet> set;  // references *table
};

/// Rebuild a set from its JSON export. Malformed documents (bad schema,
/// unknown group kind, out-of-range or duplicate indices) raise
/// invalid_argument; mathematically wrong sets load fine — judging them is
/// the verifier's job.
LoadedPds pds_from_json(const std::string& text, std::int64_t size_cap = kDefaultSizeCap);

}  // namespace pds
