#include "rrzero/hirsch.hpp"

namespace rrzero {

namespace {

void check_declared_elementary_amenable(const GroupDescription& d) {
    for (const DeclaredTag& t : d.declared)
        if (t.tag == Tag::ElementaryAmenable && !t.value)
            throw UnsupportedError("Hirsch length is defined for elementary amenable groups; '" +
                                   d.display_label() + "' is declared otherwise");
}

}  // namespace

HirschLength hirsch_length(const GroupDescription& d) {
    check_declared_elementary_amenable(d);
    if (const FGAbelianGroup* a = d.as_abelian()) return HirschLength::finite(a->free_rank());
    if (d.as_finite()) return HirschLength::finite(0);
    if (const SemidirectProductGroup* s = d.as_semidirect())
        return HirschLength::finite(s->rank());  // lattice extension by a finite group
    if (const ExtensionNode* e = d.as_extension())
        return hirsch_length(*e->normal) + hirsch_length(*e->quotient);
    const UnionNode* u = d.as_union();
    if (!u || u->stages.empty())
        throw UnsupportedError("unsupported description for Hirsch length: " + d.display_label());
    if (u->hirsch_unbounded) return HirschLength::infinite();
    HirschLength sup = HirschLength::finite(0);
    for (const DescPtr& stage : u->stages) {
        HirschLength h = hirsch_length(*stage);
        if (sup < h) sup = h;
    }
    return sup;
}

NormalSeries normalize_normal_series(const NormalSeries& s) {
    NormalSeries out;
    for (QuotientLabel l : s.labels) {
        if (l == QuotientLabel::LocallyFinite && !out.labels.empty() &&
            out.labels.back() == QuotientLabel::LocallyFinite)
            continue;  // merge the adjacent pair
        out.labels.push_back(l);
    }
    return out;
}

const char* quotient_label_name(QuotientLabel l) {
    return l == QuotientLabel::LocallyFinite ? "LF" : "Ab";
}

}  // namespace rrzero
