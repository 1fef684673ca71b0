#include "rrzero/description.hpp"

namespace rrzero {

namespace {
constexpr const char* kTagNames[kTagCount] = {
    "locally-finite", "periodic",           "torsion-free", "abelian",
    "nilpotent",      "solvable",           "virtually-solvable",
    "elementary-amenable", "amenable",      "finite-hirsch", "strongly-not-FS",
};
}

const char* tag_name(Tag t) { return kTagNames[static_cast<int>(t)]; }

std::optional<Tag> tag_from_name(const std::string& name) {
    for (int i = 0; i < kTagCount; ++i)
        if (name == kTagNames[i]) return static_cast<Tag>(i);
    return std::nullopt;
}

std::string GroupDescription::display_label() const {
    if (!label.empty()) return label;
    if (auto* a = as_abelian()) return a->str();
    if (as_finite()) return "finite group";
    if (as_semidirect()) return "semidirect product";
    if (as_extension()) return "extension";
    return "increasing union";
}

DescPtr make_description(std::string label,
                         std::variant<FGAbelianGroup, FiniteGroupTable, SemidirectProductGroup,
                                      ExtensionNode, UnionNode> node,
                         std::vector<DeclaredTag> declared) {
    auto d = std::make_shared<GroupDescription>();
    d->label = std::move(label);
    d->node = std::move(node);
    d->declared = std::move(declared);
    validate_description(*d);
    return d;
}

void validate_description(const GroupDescription& d) {
    if (const ExtensionNode* ext = d.as_extension()) {
        if (!ext->normal || !ext->quotient) throw InputError("extension node missing a child");
        validate_description(*ext->normal);
        validate_description(*ext->quotient);
        if (ext->realization) {
            const SemidirectProductGroup& g = *ext->realization;
            const FGAbelianGroup* n = ext->normal->as_abelian();
            if (!n || !n->is_torsion_free() || n->free_rank() != g.rank())
                throw InputError(
                    "realization base lattice does not match the declared normal subgroup");
            const FiniteGroupTable* q = ext->quotient->as_finite();
            if (!q || !(*q == g.acting()))
                throw InputError("realization acting group does not match the declared quotient");
        }
    } else if (const UnionNode* u = d.as_union()) {
        if (u->stages.empty()) throw InputError("increasing union declares no stages");
        for (const DescPtr& s : u->stages) {
            if (!s) throw InputError("null union stage");
            validate_description(*s);
        }
    }
}

bool provably_nontrivial(const GroupDescription& d) {
    if (const FGAbelianGroup* a = d.as_abelian()) return !a->is_trivial();
    if (const FiniteGroupTable* f = d.as_finite()) return f->order() > 1;
    if (const SemidirectProductGroup* s = d.as_semidirect())
        return s->rank() > 0 || s->acting().order() > 1;
    if (const ExtensionNode* e = d.as_extension())
        return provably_nontrivial(*e->normal) || provably_nontrivial(*e->quotient);
    if (const UnionNode* u = d.as_union())
        for (const DescPtr& s : u->stages)
            if (provably_nontrivial(*s)) return true;
    return false;
}

}  // namespace rrzero
