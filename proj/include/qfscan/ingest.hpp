#pragma once

#include <string>
#include <vector>

#include "qfscan/types.hpp"

namespace qfscan::ingest {

// externally tabulated invariants (quartic extensions for the elliptic checks,
// or any degree > 2 field)
struct IngestedField {
    std::string label;
    int degree = 0;
    i64 disc = 0;
    int r1 = 0, r2 = 0;
    i64 h = 0;
    double R = 0.0;
    int w = 2;
    std::string source;
};

struct IngestResult {
    std::vector<IngestedField> fields;
    std::vector<std::string> rejects;  // human-readable reasons, one per rejected record
};

// JSON-lines, one object per field; malformed line -> Error with line number;
// invariant violation -> rejected-record entry, parsing continues
IngestResult ingest_field_table(const std::string& path);

const IngestedField* find_by_disc(const std::vector<IngestedField>& fields, i64 disc);

}  // namespace qfscan::ingest
