#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rrzero/description.hpp"
#include "rrzero/oscillation.hpp"

namespace rrzero {

enum class TriState { Unknown, True, False };

struct TagState {
    TriState value = TriState::Unknown;
    std::string provenance;  // "declared[: why]" or "derived:<rule>"
};

// Three-state property flags with provenance. Setting a flag to the
// opposite of an established value raises an inconsistent-tags error
// carrying both provenances.
class PropertyTagSet {
  public:
    TriState get(Tag t) const { return states_[static_cast<int>(t)].value; }
    const TagState& state(Tag t) const { return states_[static_cast<int>(t)]; }
    bool is(Tag t, bool v) const {
        return get(t) == (v ? TriState::True : TriState::False);
    }
    void set(Tag t, bool value, const std::string& provenance);

    std::string summary() const;

  private:
    std::array<TagState, kTagCount> states_;
};

// Structural facts plus closure rules, run to a fixed point. Structural
// rules look one level into the tree (children derived recursively);
// declared tags enter with provenance "declared".
PropertyTagSet derive_tags(const GroupDescription& d);

struct RuleStep {
    std::string rule_id;
    std::string paper_anchor;
    std::vector<std::string> premises;
    std::string conclusion;
};

enum class VerdictKind { NotRealRankZero, StronglyNotFS, NoObstructionFound, LocallyFiniteAF };
enum class Confidence { SymbolicExact, NumericCertified, NumericSampled };

const char* verdict_name(VerdictKind v);
const char* confidence_name(Confidence c);

struct StageOmega {
    int stage = 0;
    int embedding_index = 0;  // size of the matrix algebra at this stage
    double exact = 0;
    std::optional<double> sampled;
};

struct OmegaEvidence {
    double exact = 0;
    std::optional<double> sampled;
    GridSpec grid;
    std::vector<StageOmega> stages;
};

struct WitnessInfo {
    std::vector<long long> vector;  // in the base lattice
    std::string route;              // translation-center | declared | base-lattice
};

struct Verdict {
    VerdictKind kind = VerdictKind::NoObstructionFound;
    Confidence confidence = Confidence::SymbolicExact;
    std::vector<RuleStep> trace;
    std::optional<OmegaEvidence> omega;
    std::optional<WitnessInfo> witness;
    std::string note;
};

// Strongly-not-(FS) derivation rules, applied deepest-first:
//   R1 countable abelian and not locally finite
//   R2 extension of periodic by non-trivial torsion-free amenable
//   R3 increasing union of strongly not (FS) stages
//   R4 nilpotent and not periodic (split off the torsion subgroup, then R2)
//   R5 union of nilpotent stages that is not locally finite
// Returns NoObstructionFound when nothing fires.
Verdict strongly_not_fs_derive(const GroupDescription& d, const PropertyTagSet& tags);

struct AnalyzeConfig {
    GridSpec grid;
    bool run_sampled_check = true;  // cross-check the exact omega by sampling
    Exec exec = Exec::Parallel;
};

// Full pipeline: locally-finite short-circuit, symbolic rules, then the
// numeric oscillation certificate over every declared finite stage of a
// realized semidirect tower. NoObstructionFound is explicitly inconclusive.
Verdict rr0_obstruction_analyze(const GroupDescription& d, const AnalyzeConfig& config);

// Maximal normal locally finite subgroup; supported for abelian atoms only,
// where it is the torsion subgroup.
struct MaxLocallyFiniteNormal {
    FGAbelianGroup lambda;
    FGAbelianGroup quotient;
};
MaxLocallyFiniteNormal lambda_max_locally_finite(const GroupDescription& d);

}  // namespace rrzero
