#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rrzero/group.hpp"

namespace rrzero {

// Group properties tracked by the tag engine. Values are three-state
// (true/false/unknown) with provenance; see obstruction.hpp.
enum class Tag {
    LocallyFinite,
    Periodic,
    TorsionFree,
    Abelian,
    Nilpotent,
    Solvable,
    VirtuallySolvable,
    ElementaryAmenable,
    Amenable,
    FiniteHirsch,
    StronglyNotFS,
};
inline constexpr int kTagCount = 11;

const char* tag_name(Tag t);
std::optional<Tag> tag_from_name(const std::string& name);

struct DeclaredTag {
    Tag tag;
    bool value;
    std::string justification;
};

struct GroupDescription;
using DescPtr = std::shared_ptr<const GroupDescription>;

// 1 -> normal -> G -> quotient -> 1. When `realization` is present the
// extension is concretely a semidirect product and must match the declared
// children (free lattice normal subgroup, finite table quotient).
struct ExtensionNode {
    DescPtr normal;
    DescPtr quotient;
    std::optional<SemidirectProductGroup> realization;
};

// A declared finite prefix of an increasing nested family. `stage_tags`
// are asserted to hold for every stage of the family, declared prefix or
// not; `hirsch_unbounded` declares that stage Hirsch lengths grow without
// bound (the sup axiom is not computable from a finite prefix alone).
struct UnionNode {
    std::vector<DescPtr> stages;
    std::vector<DeclaredTag> stage_tags;
    bool hirsch_unbounded = false;
};

struct GroupDescription {
    std::string label;
    std::variant<FGAbelianGroup, FiniteGroupTable, SemidirectProductGroup, ExtensionNode, UnionNode>
        node;
    std::vector<DeclaredTag> declared;
    // Declared non-torsion witness in the base lattice of a semidirect
    // description (image data for a surjection onto a non-locally-finite
    // abelian group, supplied by the user rather than searched for).
    std::optional<std::vector<long long>> declared_witness;

    const FGAbelianGroup* as_abelian() const { return std::get_if<FGAbelianGroup>(&node); }
    const FiniteGroupTable* as_finite() const { return std::get_if<FiniteGroupTable>(&node); }
    const SemidirectProductGroup* as_semidirect() const {
        return std::get_if<SemidirectProductGroup>(&node);
    }
    const ExtensionNode* as_extension() const { return std::get_if<ExtensionNode>(&node); }
    const UnionNode* as_union() const { return std::get_if<UnionNode>(&node); }

    std::string display_label() const;
};

DescPtr make_description(std::string label,
                         std::variant<FGAbelianGroup, FiniteGroupTable, SemidirectProductGroup,
                                      ExtensionNode, UnionNode> node,
                         std::vector<DeclaredTag> declared = {});

// Throws InputError when an extension's realization disagrees with its
// declared normal subgroup / quotient.
void validate_description(const GroupDescription& d);

// True when the description provably contains a non-identity element.
bool provably_nontrivial(const GroupDescription& d);

}  // namespace rrzero
