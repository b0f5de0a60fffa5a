#pragma once

#include <optional>
#include <string>

#include "sdr/family.hpp"

namespace sdr {

// One family per document: {"sets": [[label, ...], ...]} with optional
// "t" and "valuation" metadata.
struct FamilyDocument {
    SetFamily family;
    std::optional<int> t;
    std::optional<Valuation> valuation;
};

// Dense indices are assigned in first-occurrence order of labels. Numeric
// labels are read as their decimal string form. Throws std::invalid_argument
// on malformed documents, duplicate labels inside one member, or empty
// members.
FamilyDocument parse_family(const std::string& text);

// Labels in first-occurrence order, members in input order; parse then
// serialize is byte-identical on serialized output.
std::string serialize_family(const FamilyDocument& doc);

}  // namespace sdr
