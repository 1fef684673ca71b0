#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rrzero/group.hpp"
#include "rrzero/rational.hpp"

namespace rrzero {

// Group contexts for the formal-sum algebra below. Each exposes the element
// type, the group operations, and equality of the underlying group (mixing
// operands from different groups is an error).

class AbelianOps {
  public:
    using Element = AbelianElement;
    explicit AbelianOps(FGAbelianGroup g) : g_(std::move(g)) {}
    const FGAbelianGroup& group() const { return g_; }
    Element multiply(const Element& a, const Element& b) const { return g_.add(a, b); }
    Element inverse(const Element& a) const { return g_.inverse(a); }
    Element identity() const { return g_.identity(); }
    bool same_context(const AbelianOps& o) const { return g_ == o.g_; }
    static std::string format(const Element& e) { return e.str(); }

  private:
    FGAbelianGroup g_;
};

class SemidirectOps {
  public:
    using Element = SemidirectElement;
    explicit SemidirectOps(SemidirectProductGroup g) : g_(std::move(g)) {}
    const SemidirectProductGroup& group() const { return g_; }
    Element multiply(const Element& a, const Element& b) const { return g_.multiply(a, b); }
    Element inverse(const Element& a) const { return g_.inverse(a); }
    Element identity() const { return g_.identity(); }
    bool same_context(const SemidirectOps& o) const { return g_ == o.g_; }
    static std::string format(const Element& e) { return e.str(); }

  private:
    SemidirectProductGroup g_;
};

class FiniteOps {
  public:
    using Element = int;
    explicit FiniteOps(FiniteGroupTable t) : t_(std::move(t)) {}
    const FiniteGroupTable& group() const { return t_; }
    Element multiply(Element a, Element b) const { return t_.mul(a, b); }
    Element inverse(Element a) const { return t_.inverse(a); }
    Element identity() const { return t_.identity(); }
    bool same_context(const FiniteOps& o) const { return t_ == o.t_; }
    static std::string format(Element e) { return "g" + std::to_string(e); }

  private:
    FiniteGroupTable t_;
};

// Finite formal sum over a group with exact complex-rational coefficients.
// Zero coefficients are never stored; iteration order is the canonical
// element order, which makes serialization deterministic.
template <class Ops>
class AlgebraElement {
  public:
    using Element = typename Ops::Element;
    using Terms = std::map<Element, ComplexRational>;

    explicit AlgebraElement(Ops ops) : ops_(std::move(ops)) {}

    static AlgebraElement zero(const Ops& ops) { return AlgebraElement(ops); }
    static AlgebraElement one(const Ops& ops) {
        return monomial(ops, ops.identity(), ComplexRational(Rational(1)));
    }
    static AlgebraElement monomial(const Ops& ops, const Element& g, const ComplexRational& c) {
        AlgebraElement x(ops);
        x.add_term(g, c);
        return x;
    }

    const Ops& context() const { return ops_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }

    ComplexRational coefficient(const Element& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? ComplexRational() : it->second;
    }

    void add_term(const Element& g, const ComplexRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(g, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        a.require_same(b);
        AlgebraElement r = a;
        for (const auto& [g, c] : b.terms_) r.add_term(g, c);
        return r;
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        a.require_same(b);
        AlgebraElement r = a;
        for (const auto& [g, c] : b.terms_) r.add_term(g, -c);
        return r;
    }

    // Convolution product: (sum l_g g)(sum m_h h) = sum l_g m_h (gh).
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        a.require_same(b);
        AlgebraElement r(a.ops_);
        for (const auto& [g, cg] : a.terms_)
            for (const auto& [h, ch] : b.terms_) r.add_term(a.ops_.multiply(g, h), cg * ch);
        return r;
    }

    AlgebraElement scaled(const ComplexRational& s) const {
        AlgebraElement r(ops_);
        if (s.is_zero()) return r;
        for (const auto& [g, c] : terms_) r.add_term(g, c * s);
        return r;
    }
    AlgebraElement operator-() const { return scaled(ComplexRational(Rational(-1))); }

    // adjoint: l_g g -> conj(l_g) g^{-1}
    AlgebraElement adjoint() const {
        AlgebraElement r(ops_);
        for (const auto& [g, c] : terms_) r.add_term(ops_.inverse(g), c.conj());
        return r;
    }

    bool is_selfadjoint() const { return *this == adjoint(); }

    // Coefficient of the identity element.
    ComplexRational canonical_trace() const { return coefficient(ops_.identity()); }

    // l1 norm of the coefficients; an upper bound for the C*-norm.
    double l1_norm() const {
        double s = 0;
        for (const auto& [g, c] : terms_) s += c.abs();
        return s;
    }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        a.require_same(b);
        return a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [g, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << Ops::format(g);
        }
        return os.str();
    }

  private:
    void require_same(const AlgebraElement& o) const {
        if (!ops_.same_context(o.ops_)) throw InputError("mixed-group operands");
    }

    Ops ops_;
    Terms terms_;
};

// beta(g) = 1 - (g + g^{-1})/2; for an order-2 element the two halves merge.
template <class Ops>
AlgebraElement<Ops> beta(const Ops& ops, const typename Ops::Element& g) {
    AlgebraElement<Ops> x = AlgebraElement<Ops>::one(ops);
    const ComplexRational minus_half{Rational(-1, 2)};
    x.add_term(g, minus_half);
    x.add_term(ops.inverse(g), minus_half);
    return x;
}

// (g + g^{-1})/2, the real part of a group unitary.
template <class Ops>
AlgebraElement<Ops> real_part_of(const Ops& ops, const typename Ops::Element& g) {
    AlgebraElement<Ops> x = AlgebraElement<Ops>::zero(ops);
    const ComplexRational half{Rational(1, 2)};
    x.add_term(g, half);
    x.add_term(ops.inverse(g), half);
    return x;
}

// Conditional expectation onto a subgroup: restrict the support through a
// membership test and re-express surviving elements in the subgroup.
template <class OpsIn, class OpsOut, class Pred, class Project>
AlgebraElement<OpsOut> conditional_expectation(const AlgebraElement<OpsIn>& x, const OpsOut& out,
                                               Pred in_subgroup, Project project) {
    AlgebraElement<OpsOut> r = AlgebraElement<OpsOut>::zero(out);
    for (const auto& [g, c] : x.terms())
        if (in_subgroup(g)) r.add_term(project(g), c);
    return r;
}

// Expectation from C[Z^r x| H] onto C[Z^r].
inline AlgebraElement<AbelianOps> expectation_to_lattice(
    const AlgebraElement<SemidirectOps>& x) {
    const SemidirectProductGroup& g = x.context().group();
    AbelianOps out(g.base_lattice());
    const int e = g.acting().identity();
    return conditional_expectation(
        x, out, [&](const SemidirectElement& s) { return s.h == e; },
        [&](const SemidirectElement& s) { return AbelianElement{s.vec, {}}; });
}

// Square matrices over a group algebra.
template <class Ops>
class AlgebraMatrix {
  public:
    using Entry = AlgebraElement<Ops>;

    AlgebraMatrix(const Ops& ops, int size)
        : ops_(ops), size_(size), entries_(static_cast<size_t>(size) * size, Entry::zero(ops)) {}

    static AlgebraMatrix identity(const Ops& ops, int size) {
        AlgebraMatrix m(ops, size);
        for (int i = 0; i < size; ++i) m.at(i, i) = Entry::one(ops);
        return m;
    }
    static AlgebraMatrix diagonal(const Ops& ops, const std::vector<Entry>& diag) {
        AlgebraMatrix m(ops, static_cast<int>(diag.size()));
        for (size_t i = 0; i < diag.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = diag[i];
        return m;
    }

    int size() const { return size_; }
    const Ops& context() const { return ops_; }

    Entry& at(int i, int j) { return entries_[static_cast<size_t>(i) * size_ + j]; }
    const Entry& at(int i, int j) const { return entries_[static_cast<size_t>(i) * size_ + j]; }

    friend AlgebraMatrix operator+(const AlgebraMatrix& a, const AlgebraMatrix& b) {
        a.require_same(b);
        AlgebraMatrix r = a;
        for (int i = 0; i < a.size_; ++i)
            for (int j = 0; j < a.size_; ++j) r.at(i, j) = r.at(i, j) + b.at(i, j);
        return r;
    }
    friend AlgebraMatrix operator-(const AlgebraMatrix& a, const AlgebraMatrix& b) {
        a.require_same(b);
        AlgebraMatrix r = a;
        for (int i = 0; i < a.size_; ++i)
            for (int j = 0; j < a.size_; ++j) r.at(i, j) = r.at(i, j) - b.at(i, j);
        return r;
    }
    friend AlgebraMatrix operator*(const AlgebraMatrix& a, const AlgebraMatrix& b) {
        a.require_same(b);
        AlgebraMatrix r(a.ops_, a.size_);
        for (int i = 0; i < a.size_; ++i)
            for (int k = 0; k < a.size_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < a.size_; ++j)
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    AlgebraMatrix adjoint() const {
        AlgebraMatrix r(ops_, size_);
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j) r.at(i, j) = at(j, i).adjoint();
        return r;
    }

    bool is_selfadjoint() const { return *this == adjoint(); }

    // Scalar shift m - lambda * I.
    AlgebraMatrix shifted(const ComplexRational& lambda) const {
        AlgebraMatrix r = *this;
        for (int i = 0; i < size_; ++i)
            r.at(i, i).add_term(ops_.identity(), -lambda);
        return r;
    }

    // Normalized trace tensored with the canonical trace: (1/k) sum tau(m_ii).
    ComplexRational normalized_trace() const {
        ComplexRational s;
        for (int i = 0; i < size_; ++i) s += at(i, i).canonical_trace();
        Rational inv(1, size_);
        return {s.re * inv, s.im * inv};
    }

    friend bool operator==(const AlgebraMatrix& a, const AlgebraMatrix& b) {
        a.require_same(b);
        if (a.size_ != b.size_) return false;
        return a.entries_ == b.entries_;
    }

  private:
    void require_same(const AlgebraMatrix& o) const {
        if (!ops_.same_context(o.ops_)) throw InputError("mixed-group operands");
        if (size_ != o.size_) throw InputError("matrix size mismatch");
    }

    Ops ops_;
    int size_;
    std::vector<Entry> entries_;
};

using LatticeAlgebraElement = AlgebraElement<AbelianOps>;
using LatticeAlgebraMatrix = AlgebraMatrix<AbelianOps>;

}  // namespace rrzero
