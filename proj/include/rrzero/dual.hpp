#pragma once

#include <vector>

#include "rrzero/algebra.hpp"
#include "rrzero/linalg.hpp"

namespace rrzero {

// A character of Z^r (+) torsion: a point of one torus component of the
// dual, tagged with the torsion character that indexes the component.
struct Character {
    std::vector<double> theta;             // in [0, 1)^r
    std::vector<long long> torsion_char;   // t_i in [0, n_i)
};

// The Pontryagin dual of a f.g. abelian group: a disjoint union of r-tori,
// one per torsion character tuple.
class DualDescription {
  public:
    explicit DualDescription(FGAbelianGroup base);

    const FGAbelianGroup& base() const { return base_; }
    int torus_dim() const { return base_.free_rank(); }

    // prod n_i; throws on overflow past 2^62 (caps apply well before that).
    long long component_count() const { return component_count_; }
    std::vector<long long> component_tuple(long long index) const;

    Character character(long long component_index, std::vector<double> theta) const;
    Character trivial_character() const;

  private:
    FGAbelianGroup base_;
    long long component_count_;
};

// chi(x) = exp(2 pi i (theta . free + sum t_j c_j / n_j)).
cdouble character_value(const FGAbelianGroup& base, const Character& chi, const AbelianElement& x);

// Entrywise evaluation sum lambda_g chi(g); a unital *-homomorphism at
// every character.
cdouble evaluate_fiber(const LatticeAlgebraElement& x, const Character& chi);
CMatrix evaluate_fiber(const LatticeAlgebraMatrix& m, const Character& chi);

}  // namespace rrzero
