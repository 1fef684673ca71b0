#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrzero/errors.hpp"

namespace rrzero {

// ---------------------------------------------------------------------------
// Small dense integer matrices (actions of finite groups on lattices).
// ---------------------------------------------------------------------------
struct IntMatrix {
    int n = 0;
    std::vector<long long> a;  // row-major n*n

    IntMatrix() = default;
    explicit IntMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0) {}

    static IntMatrix identity(int size);

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    std::vector<long long> apply(const std::vector<long long>& v) const;

    // Fraction-free determinant (Bareiss); inputs here are tiny.
    long long det() const;

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) = default;
};

// Z-basis of {v in Z^n : M v = 0} for an integer matrix given as rows.
// Computed by unimodular row reduction of [M^T | I]; output vectors are
// sign-normalized (first nonzero positive) and sorted lexicographically.
std::vector<std::vector<long long>> integer_kernel_basis(
    const std::vector<std::vector<long long>>& rows, int n);

// ---------------------------------------------------------------------------
// Finitely generated abelian groups in invariant-factor form.
// ---------------------------------------------------------------------------
struct AbelianElement {
    std::vector<long long> free_part;
    std::vector<long long> torsion_part;  // 0 <= c_i < n_i

    friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
    friend std::strong_ordering operator<=>(const AbelianElement&, const AbelianElement&) = default;

    std::string str() const;
};

class FGAbelianGroup;

// Coordinate change produced when an arbitrary direct-sum presentation is
// normalized to invariant factors. Maps element coordinates written against
// the input cyclic orders onto the canonical ones (a group isomorphism).
class AbelianCoordinateMap {
  public:
    AbelianElement map_element(const std::vector<long long>& free_part,
                               const std::vector<long long>& input_residues) const;

  private:
    friend class FGAbelianGroup;
    struct Piece {
        int input_index;
        long long prime_power;
        int slot;
    };
    std::vector<Piece> pieces_;
    std::vector<long long> invariant_factors_;
    int input_count_ = 0;
};

class FGAbelianGroup {
  public:
    FGAbelianGroup() = default;

    // orders need not form a chain; they are normalized. Every order must be >= 2.
    static FGAbelianGroup make(int free_rank, const std::vector<long long>& cyclic_orders);
    static FGAbelianGroup make_with_map(int free_rank, const std::vector<long long>& cyclic_orders,
                                        AbelianCoordinateMap* map_out);
    static FGAbelianGroup free_lattice(int rank) { return make(rank, {}); }

    int free_rank() const { return free_rank_; }
    const std::vector<long long>& torsion_factors() const { return torsion_factors_; }
    int torsion_rank() const { return static_cast<int>(torsion_factors_.size()); }

    bool is_trivial() const { return free_rank_ == 0 && torsion_factors_.empty(); }
    // Locally finite iff there is no free part.
    bool is_locally_finite() const { return free_rank_ == 0; }
    bool is_torsion_free() const { return torsion_factors_.empty(); }

    AbelianElement identity() const;
    AbelianElement element(std::vector<long long> free_part, std::vector<long long> torsion_part) const;
    AbelianElement add(const AbelianElement& x, const AbelianElement& y) const;
    AbelianElement inverse(const AbelianElement& x) const;
    AbelianElement reduce(AbelianElement x) const;
    void check_shape(const AbelianElement& x) const;

    bool is_torsion(const AbelianElement& x) const;

    // (T(G), G/T(G)) in that order.
    std::pair<FGAbelianGroup, FGAbelianGroup> torsion_subgroup_and_free_quotient() const;
    // Projection G -> G/T(G): drops torsion coordinates.
    AbelianElement project_to_free_quotient(const AbelianElement& x) const;

    friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

    std::string str() const;

  private:
    int free_rank_ = 0;
    std::vector<long long> torsion_factors_;
};

// ---------------------------------------------------------------------------
// Finite groups as multiplication tables. Element 0 is the identity.
// ---------------------------------------------------------------------------
class FiniteGroupTable {
  public:
    FiniteGroupTable() = default;

    static FiniteGroupTable cyclic(int n);
    // Validates: identity at index 0, Latin square, associativity, inverses.
    static FiniteGroupTable from_table(const std::vector<std::vector<int>>& table);

    int order() const { return order_; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inverse_[a]; }
    int identity() const { return 0; }
    bool commutative() const;

    friend bool operator==(const FiniteGroupTable&, const FiniteGroupTable&) = default;

  private:
    void validate() const;

    int order_ = 0;
    std::vector<int> mul_;
    std::vector<int> inverse_;
};

// ---------------------------------------------------------------------------
// Semidirect products Z^r x| H with H finite acting by GL(r, Z) matrices.
// ---------------------------------------------------------------------------
struct SemidirectElement {
    std::vector<long long> vec;
    int h = 0;

    friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
    // Canonical element order: finite part first, then the lattice vector.
    friend std::strong_ordering operator<=>(const SemidirectElement& x, const SemidirectElement& y) {
        if (auto c = x.h <=> y.h; c != 0) return c;
        return x.vec <=> y.vec;
    }

    std::string str() const;
};

class SemidirectProductGroup {
  public:
    SemidirectProductGroup() = default;
    // action[i] is the matrix of the i-th element of `acting`; must be a
    // homomorphism into GL(r, Z) (validated).
    SemidirectProductGroup(int rank, FiniteGroupTable acting, std::vector<IntMatrix> action);

    int rank() const { return rank_; }
    const FiniteGroupTable& acting() const { return acting_; }
    const IntMatrix& action_of(int h) const { return action_[h]; }
    FGAbelianGroup base_lattice() const { return FGAbelianGroup::free_lattice(rank_); }

    SemidirectElement identity() const;
    SemidirectElement lattice_element(std::vector<long long> v) const;
    SemidirectElement multiply(const SemidirectElement& x, const SemidirectElement& y) const;
    SemidirectElement inverse(const SemidirectElement& x) const;
    SemidirectElement conjugate(const SemidirectElement& g, const SemidirectElement& x) const;
    void check_shape(const SemidirectElement& x) const;

    bool is_torsion(const SemidirectElement& x) const;

    friend bool operator==(const SemidirectProductGroup&, const SemidirectProductGroup&) = default;

  private:
    int rank_ = 0;
    FiniteGroupTable acting_;
    std::vector<IntMatrix> action_;
};

// The sublattice {v in Z^r : action(h) v = v for all h}; every (v, e) with v
// in it is central in the semidirect product.
struct TranslationCenter {
    FGAbelianGroup sublattice;                     // Z^rank-of-kernel
    std::vector<std::vector<long long>> basis;     // vectors in the ambient Z^r
};

TranslationCenter translation_center(const SemidirectProductGroup& g);

// Stock constructions used across tests and sample inputs.
SemidirectProductGroup infinite_dihedral();                       // Z x| Z/2, flip acts by -1
SemidirectProductGroup lattice_semidirect_minus_identity(int r);  // Z^r x| Z/2 via -I

}  // namespace rrzero
