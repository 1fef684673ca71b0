#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "rrzero/description.hpp"
#include "rrzero/group.hpp"

namespace rrzero::testing {

inline DescPtr abelian(const std::string& label, int rank, std::vector<long long> torsion = {}) {
    return make_description(label, FGAbelianGroup::make(rank, torsion));
}

inline DescPtr finite_cyclic(const std::string& label, int n) {
    return make_description(label, FiniteGroupTable::cyclic(n));
}

inline DescPtr dinf_description() { return make_description("Dinf", infinite_dihedral()); }

inline DescPtr z2_minus_description() {
    return make_description("Z2xZ2-flip", lattice_semidirect_minus_identity(2));
}

// Q as a declared increasing union of copies of Z (the stages of the
// multiply-by-n! inclusions).
inline DescPtr rationals_description() {
    UnionNode u;
    u.stages = {abelian("Z", 1), abelian("Z", 1), abelian("Z", 1)};
    return make_description("Q", std::move(u));
}

// Z/2 wr Z: extension of the infinite direct sum of Z/2 (a union of finite
// stages) by Z.
inline DescPtr lamplighter_description() {
    UnionNode sum;
    sum.stages = {abelian("Z/2", 0, {2}), abelian("(Z/2)^2", 0, {2, 2}),
                  abelian("(Z/2)^3", 0, {2, 2, 2})};
    ExtensionNode ext;
    ext.normal = make_description("sum of Z/2", std::move(sum));
    ext.quotient = abelian("Z", 1);
    return make_description("lamplighter", std::move(ext));
}

inline DescPtr sum_z2_description() {
    UnionNode sum;
    sum.stages = {abelian("Z/2", 0, {2}), abelian("(Z/2)^2", 0, {2, 2})};
    return make_description("sum of Z/2", std::move(sum));
}

// Increasing union of unitriangular integer matrix groups: each stage is an
// extension declared nilpotent (stage n+1 has a normal lattice with stage n
// as quotient).
inline DescPtr triangular_union_description() {
    ExtensionNode u3;
    u3.normal = abelian("center Z", 1);
    u3.quotient = abelian("Z^2", 2);
    DescPtr stage1 = make_description("U3(Z)", std::move(u3),
                                      {{Tag::Nilpotent, true, "unitriangular matrices"}});
    ExtensionNode u4;
    u4.normal = abelian("Z^3", 3);
    u4.quotient = stage1;
    DescPtr stage2 = make_description("U4(Z)", std::move(u4),
                                      {{Tag::Nilpotent, true, "unitriangular matrices"}});
    UnionNode u;
    u.stages = {stage1, stage2};
    return make_description("union of unitriangular groups", std::move(u));
}

// Z wr Z: extension of the infinite direct sum of Z (declared unbounded
// Hirsch data) by Z.
inline DescPtr z_wr_z_description() {
    UnionNode sum;
    sum.stages = {abelian("Z", 1), abelian("Z^2", 2), abelian("Z^3", 3)};
    sum.hirsch_unbounded = true;
    ExtensionNode ext;
    ext.normal = make_description("sum of Z", std::move(sum));
    ext.quotient = abelian("Z", 1);
    return make_description("Z wr Z", std::move(ext));
}

inline std::string samples_dir() {
    if (const char* env = std::getenv("RRZERO_SAMPLES")) return env;
    return "samples";
}

}  // namespace rrzero::testing
