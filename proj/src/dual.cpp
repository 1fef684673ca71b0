#include "rrzero/dual.hpp"

#include <cmath>
#include <numbers>

namespace rrzero {

DualDescription::DualDescription(FGAbelianGroup base) : base_(std::move(base)) {
    __int128 count = 1;
    for (long long n : base_.torsion_factors()) {
        count *= n;
        if (count > (static_cast<__int128>(1) << 62))
            throw UnsupportedError("dual has too many connected components to index");
    }
    component_count_ = static_cast<long long>(count);
}

std::vector<long long> DualDescription::component_tuple(long long index) const {
    if (index < 0 || index >= component_count_) throw InputError("component index out of range");
    const auto& factors = base_.torsion_factors();
    std::vector<long long> t(factors.size());
    for (size_t i = factors.size(); i-- > 0;) {
        t[i] = index % factors[i];
        index /= factors[i];
    }
    return t;
}

Character DualDescription::character(long long component_index, std::vector<double> theta) const {
    if (static_cast<int>(theta.size()) != torus_dim())
        throw InputError("character point has wrong torus dimension");
    return {std::move(theta), component_tuple(component_index)};
}

Character DualDescription::trivial_character() const {
    return {std::vector<double>(torus_dim(), 0.0),
            std::vector<long long>(base_.torsion_factors().size(), 0)};
}

cdouble character_value(const FGAbelianGroup& base, const Character& chi, const AbelianElement& x) {
    base.check_shape(x);
    if (static_cast<int>(chi.theta.size()) != base.free_rank() ||
        chi.torsion_char.size() != base.torsion_factors().size())
        throw InputError("character has wrong shape for " + base.str());
    double arg = 0.0;
    for (size_t i = 0; i < chi.theta.size(); ++i)
        arg += chi.theta[i] * static_cast<double>(x.free_part[i]);
    for (size_t i = 0; i < chi.torsion_char.size(); ++i)
        arg += static_cast<double>(chi.torsion_char[i]) * static_cast<double>(x.torsion_part[i]) /
               static_cast<double>(base.torsion_factors()[i]);
    arg -= std::floor(arg);
    return std::polar(1.0, 2.0 * std::numbers::pi * arg);
}

cdouble evaluate_fiber(const LatticeAlgebraElement& x, const Character& chi) {
    const FGAbelianGroup& base = x.context().group();
    cdouble acc = 0.0;
    for (const auto& [g, c] : x.terms()) acc += c.to_complex() * character_value(base, chi, g);
    return acc;
}

CMatrix evaluate_fiber(const LatticeAlgebraMatrix& m, const Character& chi) {
    CMatrix f(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) f.at(i, j) = evaluate_fiber(m.at(i, j), chi);
    return f;
}

}  // namespace rrzero
