#pragma once

#include <string>
#include <vector>

#include "rrzero/description.hpp"

namespace rrzero {

// Value of the Hirsch length: a non-negative integer or a genuine infinity,
// never a sentinel integer.
struct HirschLength {
    bool is_infinite = false;
    long long value = 0;

    static HirschLength infinite() { return {true, 0}; }
    static HirschLength finite(long long v) { return {false, v}; }

    friend HirschLength operator+(const HirschLength& a, const HirschLength& b) {
        if (a.is_infinite || b.is_infinite) return infinite();
        return finite(a.value + b.value);
    }
    friend bool operator==(const HirschLength&, const HirschLength&) = default;
    friend bool operator<(const HirschLength& a, const HirschLength& b) {
        if (a.is_infinite) return false;
        if (b.is_infinite) return true;
        return a.value < b.value;
    }

    std::string str() const { return is_infinite ? "infinity" : std::to_string(value); }
};

// Axioms: h(Z) = 1, h(finite) = 0, additive over extensions, sup over
// increasing unions (declared prefix, plus the declared unbounded flag).
HirschLength hirsch_length(const GroupDescription& d);

enum class QuotientLabel { LocallyFinite, Abelian };

struct NormalSeries {
    std::vector<QuotientLabel> labels;
    friend bool operator==(const NormalSeries&, const NormalSeries&) = default;
};

// Collapses adjacent locally-finite quotients (extensions of locally finite
// by locally finite are locally finite) until none remain. Idempotent.
NormalSeries normalize_normal_series(const NormalSeries& s);

const char* quotient_label_name(QuotientLabel l);

}  // namespace rrzero
