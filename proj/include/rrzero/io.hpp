#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "rrzero/embedding.hpp"
#include "rrzero/hirsch.hpp"
#include "rrzero/obstruction.hpp"

namespace rrzero {

// All emitted JSON keeps insertion order so reports are byte-stable.
using json = nlohmann::ordered_json;

// A parsed description file: the group tree plus any analysis payloads the
// document carries (element for oscillation runs, a normal series, ...).
struct ParsedDescription {
    DescPtr description;
    std::optional<std::vector<AbelianElement>> beta_diagonal;  // over the abelian atom
    std::optional<LatticeAlgebraMatrix> matrix;                // general oscillation input
    std::optional<NormalSeries> series;
    json echo;  // document echo for reports
};

// Strict, versioned parsing: unknown fields are rejected and every
// diagnostic carries the JSON path of the offending field.
ParsedDescription parse_description_json(const json& doc, const std::string& origin);
ParsedDescription parse_description_file(const std::string& path);

json tags_to_json(const PropertyTagSet& tags);
json certificate_to_json(const Verdict& verdict);
json estimate_to_json(const OscillationEstimate& est);
json bracket_to_json(const DistanceBracket& bracket);
json audit_to_json(const AuditReport& report);
json gridspec_to_json(const GridSpec& spec);

// Canonical serialization of algebra elements: terms as sorted
// (element, coefficient) pairs with exact rational coefficients, matching
// the input format of analysis.oscillation.matrix.
json algebra_element_to_json(const LatticeAlgebraElement& x);
json algebra_matrix_to_json(const LatticeAlgebraMatrix& m);

// Command-line entry point (also used in-process by tests). Exit codes:
// 0 completed (any verdict), 2 unsupported or malformed input, 1 internal
// error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rrzero
