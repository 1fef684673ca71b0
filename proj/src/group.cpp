#include "rrzero/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace rrzero {

namespace {

long long checked_ll(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
    return static_cast<long long>(v);
}

long long floor_mod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

// --------------------------------------------------------------------------
// IntMatrix
// --------------------------------------------------------------------------

IntMatrix IntMatrix::identity(int size) {
    IntMatrix m(size);
    for (int i = 0; i < size; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.n != y.n) throw InputError("integer matrix size mismatch");
    IntMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < x.n; ++j) {
                __int128 acc = static_cast<__int128>(r.at(i, j)) +
                               static_cast<__int128>(x.at(i, k)) * y.at(k, j);
                r.at(i, j) = checked_ll(acc, "integer matrix product overflow");
            }
        }
    return r;
}

std::vector<long long> IntMatrix::apply(const std::vector<long long>& v) const {
    if (static_cast<int>(v.size()) != n) throw InputError("matrix/vector dimension mismatch");
    std::vector<long long> r(n, 0);
    for (int i = 0; i < n; ++i) {
        __int128 acc = 0;
        for (int j = 0; j < n; ++j) acc += static_cast<__int128>(at(i, j)) * v[j];
        r[i] = checked_ll(acc, "matrix apply overflow");
    }
    return r;
}

long long IntMatrix::det() const {
    // Bareiss fraction-free elimination.
    if (n == 0) return 1;
    std::vector<__int128> m(a.begin(), a.end());
    auto idx = [&](int i, int j) -> __int128& { return m[static_cast<size_t>(i) * n + j]; };
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (idx(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (idx(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(idx(k, j), idx(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                idx(i, j) = (idx(i, j) * idx(k, k) - idx(i, k) * idx(k, j)) / prev;
        prev = idx(k, k);
    }
    return checked_ll(sign * idx(n - 1, n - 1), "determinant overflow");
}

std::vector<std::vector<long long>> integer_kernel_basis(
    const std::vector<std::vector<long long>>& rows, int n) {
    const int m = static_cast<int>(rows.size());
    // W = [M^T | I_n], reduced by unimodular row operations over the left block.
    std::vector<std::vector<__int128>> w(n, std::vector<__int128>(m + n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (static_cast<int>(rows[j].size()) != n)
                throw InputError("kernel: ragged input rows");
            w[i][j] = rows[j][i];
        }
        w[i][m + i] = 1;
    }
    int pivot_row = 0;
    for (int col = 0; col < m && pivot_row < n; ++col) {
        // Euclidean elimination: shrink until at most one nonzero below pivot_row.
        while (true) {
            int best = -1;
            for (int i = pivot_row; i < n; ++i) {
                if (w[i][col] == 0) continue;
                if (best < 0) {
                    best = i;
                    continue;
                }
                __int128 bi = w[i][col] < 0 ? -w[i][col] : w[i][col];
                __int128 bb = w[best][col] < 0 ? -w[best][col] : w[best][col];
                if (bi < bb) best = i;
            }
            if (best < 0) break;  // column already zero below pivot
            bool others = false;
            for (int i = pivot_row; i < n; ++i) {
                if (i == best || w[i][col] == 0) continue;
                others = true;
                __int128 q = w[i][col] / w[best][col];
                for (int j = 0; j < m + n; ++j) w[i][j] -= q * w[best][j];
            }
            if (!others) {
                std::swap(w[pivot_row], w[best]);
                ++pivot_row;
                break;
            }
        }
    }
    std::vector<std::vector<long long>> basis;
    for (int i = pivot_row; i < n; ++i) {
        bool zero = true;
        for (int j = 0; j < m; ++j)
            if (w[i][j] != 0) zero = false;
        if (!zero) continue;
        std::vector<long long> v(n);
        for (int j = 0; j < n; ++j) v[j] = checked_ll(w[i][m + j], "kernel basis overflow");
        // sign-normalize on the first nonzero coordinate
        for (long long c : v) {
            if (c == 0) continue;
            if (c < 0)
                for (auto& x : v) x = -x;
            break;
        }
        basis.push_back(std::move(v));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

// --------------------------------------------------------------------------
// FGAbelianGroup
// --------------------------------------------------------------------------

std::string AbelianElement::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < free_part.size(); ++i) os << (i ? "," : "") << free_part[i];
    os << "|";
    for (size_t i = 0; i < torsion_part.size(); ++i) os << (i ? "," : "") << torsion_part[i];
    os << ")";
    return os.str();
}

AbelianElement AbelianCoordinateMap::map_element(const std::vector<long long>& free_part,
                                                 const std::vector<long long>& input_residues) const {
    if (static_cast<int>(input_residues.size()) != input_count_)
        throw InputError("coordinate map: wrong number of torsion residues");
    AbelianElement out;
    out.free_part = free_part;
    out.torsion_part.assign(invariant_factors_.size(), 0);
    // CRT per slot over the coprime prime-power pieces routed into it.
    for (size_t s = 0; s < invariant_factors_.size(); ++s) {
        __int128 x = 0;
        __int128 mod = 1;
        for (const Piece& p : pieces_) {
            if (p.slot != static_cast<int>(s)) continue;
            long long pe = p.prime_power;
            long long r = floor_mod(input_residues[p.input_index], pe);
            // solve x' = x (mod mod), x' = r (mod pe)
            __int128 inv = 0;  // mod^{-1} mod pe (coprime by construction)
            {
                long long a = static_cast<long long>(mod % pe), b = pe, x0 = 1, x1 = 0;
                while (b != 0) {
                    long long q = a / b;
                    long long a2 = b, b2 = a - q * b;
                    long long y0 = x1, y1 = x0 - q * x1;
                    a = a2;
                    b = b2;
                    x0 = y0;
                    x1 = y1;
                }
                inv = floor_mod(x0, pe);
            }
            __int128 t = ((r - x % pe) % pe + pe) % pe;
            t = (t * inv) % pe;
            x = x + mod * t;
            mod *= pe;
        }
        out.torsion_part[s] = static_cast<long long>(x % invariant_factors_[s]);
    }
    return out;
}

FGAbelianGroup FGAbelianGroup::make(int free_rank, const std::vector<long long>& cyclic_orders) {
    return make_with_map(free_rank, cyclic_orders, nullptr);
}

FGAbelianGroup FGAbelianGroup::make_with_map(int free_rank,
                                             const std::vector<long long>& cyclic_orders,
                                             AbelianCoordinateMap* map_out) {
    if (free_rank < 0) throw InputError("negative free rank");
    for (long long n : cyclic_orders)
        if (n < 2) throw InputError("torsion order must be >= 2, got " + std::to_string(n));

    // prime -> list of (exponent, input index), one entry per input factor
    std::map<long long, std::vector<std::pair<int, int>>> by_prime;
    for (int i = 0; i < static_cast<int>(cyclic_orders.size()); ++i) {
        long long n = cyclic_orders[i];
        for (long long p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            by_prime[p].push_back({e, i});
        }
        if (n > 1) by_prime[n].push_back({1, i});
    }
    size_t slots = 0;
    for (auto& [p, v] : by_prime) {
        // largest exponent goes to the last (largest) invariant factor
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        slots = std::max(slots, v.size());
    }
    std::vector<long long> factors(slots, 1);  // factors[0] = largest, reversed below
    AbelianCoordinateMap map;
    map.input_count_ = static_cast<int>(cyclic_orders.size());
    for (auto& [p, v] : by_prime) {
        for (size_t rank = 0; rank < v.size(); ++rank) {
            long long pe = 1;
            for (int e = 0; e < v[rank].first; ++e)
                pe = checked_ll(static_cast<__int128>(pe) * p, "invariant factor overflow");
            factors[rank] =
                checked_ll(static_cast<__int128>(factors[rank]) * pe, "invariant factor overflow");
            map.pieces_.push_back({v[rank].second, pe, static_cast<int>(slots - 1 - rank)});
        }
    }
    std::reverse(factors.begin(), factors.end());  // ascending chain n_1 | ... | n_k
    map.invariant_factors_ = factors;

    FGAbelianGroup g;
    g.free_rank_ = free_rank;
    g.torsion_factors_ = std::move(factors);
    if (map_out) *map_out = std::move(map);
    return g;
}

AbelianElement FGAbelianGroup::identity() const {
    AbelianElement e;
    e.free_part.assign(free_rank_, 0);
    e.torsion_part.assign(torsion_factors_.size(), 0);
    return e;
}

AbelianElement FGAbelianGroup::element(std::vector<long long> free_part,
                                       std::vector<long long> torsion_part) const {
    AbelianElement x{std::move(free_part), std::move(torsion_part)};
    check_shape(x);
    return reduce(std::move(x));
}

void FGAbelianGroup::check_shape(const AbelianElement& x) const {
    if (static_cast<int>(x.free_part.size()) != free_rank_ ||
        x.torsion_part.size() != torsion_factors_.size())
        throw InputError("abelian element has wrong shape for " + str());
}

AbelianElement FGAbelianGroup::reduce(AbelianElement x) const {
    for (size_t i = 0; i < torsion_factors_.size(); ++i)
        x.torsion_part[i] = floor_mod(x.torsion_part[i], torsion_factors_[i]);
    return x;
}

AbelianElement FGAbelianGroup::add(const AbelianElement& x, const AbelianElement& y) const {
    check_shape(x);
    check_shape(y);
    AbelianElement r = x;
    for (int i = 0; i < free_rank_; ++i)
        r.free_part[i] = checked_ll(static_cast<__int128>(x.free_part[i]) + y.free_part[i],
                                    "lattice coordinate overflow");
    for (size_t i = 0; i < torsion_factors_.size(); ++i)
        r.torsion_part[i] = floor_mod(x.torsion_part[i] + y.torsion_part[i], torsion_factors_[i]);
    return r;
}

AbelianElement FGAbelianGroup::inverse(const AbelianElement& x) const {
    check_shape(x);
    AbelianElement r = x;
    for (auto& c : r.free_part) c = -c;
    for (size_t i = 0; i < torsion_factors_.size(); ++i)
        r.torsion_part[i] = floor_mod(-x.torsion_part[i], torsion_factors_[i]);
    return r;
}

bool FGAbelianGroup::is_torsion(const AbelianElement& x) const {
    check_shape(x);
    return std::all_of(x.free_part.begin(), x.free_part.end(), [](long long c) { return c == 0; });
}

std::pair<FGAbelianGroup, FGAbelianGroup> FGAbelianGroup::torsion_subgroup_and_free_quotient() const {
    FGAbelianGroup torsion;
    torsion.free_rank_ = 0;
    torsion.torsion_factors_ = torsion_factors_;
    FGAbelianGroup free;
    free.free_rank_ = free_rank_;
    return {torsion, free};
}

AbelianElement FGAbelianGroup::project_to_free_quotient(const AbelianElement& x) const {
    check_shape(x);
    return AbelianElement{x.free_part, {}};
}

std::string FGAbelianGroup::str() const {
    std::ostringstream os;
    os << "Z^" << free_rank_;
    for (long long n : torsion_factors_) os << " + Z/" << n;
    return os.str();
}

// --------------------------------------------------------------------------
// FiniteGroupTable
// --------------------------------------------------------------------------

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
    if (n < 1) throw InputError("cyclic group order must be >= 1");
    FiniteGroupTable t;
    t.order_ = n;
    t.mul_.resize(static_cast<size_t>(n) * n);
    t.inverse_.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) t.mul_[static_cast<size_t>(a) * n + b] = (a + b) % n;
        t.inverse_[a] = (n - a) % n;
    }
    return t;
}

FiniteGroupTable FiniteGroupTable::from_table(const std::vector<std::vector<int>>& table) {
    FiniteGroupTable t;
    t.order_ = static_cast<int>(table.size());
    if (t.order_ < 1) throw InputError("empty multiplication table");
    t.mul_.reserve(static_cast<size_t>(t.order_) * t.order_);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != t.order_)
            throw InputError("multiplication table is not square");
        for (int v : row) {
            if (v < 0 || v >= t.order_) throw InputError("multiplication table entry out of range");
            t.mul_.push_back(v);
        }
    }
    t.inverse_.assign(t.order_, -1);
    for (int a = 0; a < t.order_; ++a)
        for (int b = 0; b < t.order_; ++b)
            if (t.mul(a, b) == 0) t.inverse_[a] = b;
    t.validate();
    return t;
}

void FiniteGroupTable::validate() const {
    const int n = order_;
    for (int a = 0; a < n; ++a)
        if (mul(0, a) != a || mul(a, 0) != a)
            throw InputError("element 0 is not a two-sided identity");
    for (int a = 0; a < n; ++a) {
        std::vector<bool> row(n, false), col(n, false);
        for (int b = 0; b < n; ++b) {
            if (row[mul(a, b)] || col[mul(b, a)])
                throw InputError("multiplication table is not a Latin square");
            row[mul(a, b)] = col[mul(b, a)] = true;
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw InputError("multiplication table is not associative");
    for (int a = 0; a < n; ++a)
        if (inverse_[a] < 0 || mul(a, inverse_[a]) != 0 || mul(inverse_[a], a) != 0)
            throw InputError("multiplication table has a non-invertible element");
}

bool FiniteGroupTable::commutative() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

// --------------------------------------------------------------------------
// SemidirectProductGroup
// --------------------------------------------------------------------------

std::string SemidirectElement::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < vec.size(); ++i) os << (i ? "," : "") << vec[i];
    os << ";h" << h << ")";
    return os.str();
}

SemidirectProductGroup::SemidirectProductGroup(int rank, FiniteGroupTable acting,
                                               std::vector<IntMatrix> action)
    : rank_(rank), acting_(std::move(acting)), action_(std::move(action)) {
    if (rank_ < 0) throw InputError("negative lattice rank");
    if (static_cast<int>(action_.size()) != acting_.order())
        throw InputError("need one action matrix per acting-group element");
    for (const IntMatrix& m : action_) {
        if (m.n != rank_) throw InputError("action matrix has wrong size");
        long long d = m.det();
        if (d != 1 && d != -1) throw InputError("action matrix is not invertible over Z");
    }
    if (!(action_[acting_.identity()] == IntMatrix::identity(rank_)))
        throw InputError("identity must act trivially");
    for (int a = 0; a < acting_.order(); ++a)
        for (int b = 0; b < acting_.order(); ++b)
            if (!(action_[acting_.mul(a, b)] == action_[a] * action_[b]))
                throw InputError("action is not a homomorphism");
}

SemidirectElement SemidirectProductGroup::identity() const {
    return {std::vector<long long>(rank_, 0), acting_.identity()};
}

SemidirectElement SemidirectProductGroup::lattice_element(std::vector<long long> v) const {
    if (static_cast<int>(v.size()) != rank_) throw InputError("lattice vector has wrong size");
    return {std::move(v), acting_.identity()};
}

void SemidirectProductGroup::check_shape(const SemidirectElement& x) const {
    if (static_cast<int>(x.vec.size()) != rank_ || x.h < 0 || x.h >= acting_.order())
        throw InputError("semidirect element has wrong shape");
}

SemidirectElement SemidirectProductGroup::multiply(const SemidirectElement& x,
                                                   const SemidirectElement& y) const {
    check_shape(x);
    check_shape(y);
    std::vector<long long> moved = action_[x.h].apply(y.vec);
    std::vector<long long> v(rank_);
    for (int i = 0; i < rank_; ++i)
        v[i] = checked_ll(static_cast<__int128>(x.vec[i]) + moved[i], "lattice overflow");
    return {std::move(v), acting_.mul(x.h, y.h)};
}

SemidirectElement SemidirectProductGroup::inverse(const SemidirectElement& x) const {
    check_shape(x);
    int hi = acting_.inverse(x.h);
    std::vector<long long> v = action_[hi].apply(x.vec);
    for (auto& c : v) c = -c;
    return {std::move(v), hi};
}

SemidirectElement SemidirectProductGroup::conjugate(const SemidirectElement& g,
                                                    const SemidirectElement& x) const {
    return multiply(multiply(g, x), inverse(g));
}

bool SemidirectProductGroup::is_torsion(const SemidirectElement& x) const {
    check_shape(x);
    // x^{|H| * k} lands in the lattice; x has finite order iff x^{|H|} does,
    // and a lattice element has finite order iff it is zero.
    SemidirectElement p = identity();
    for (int i = 0; i < acting_.order(); ++i) p = multiply(p, x);
    return std::all_of(p.vec.begin(), p.vec.end(), [](long long c) { return c == 0; });
}

TranslationCenter translation_center(const SemidirectProductGroup& g) {
    std::vector<std::vector<long long>> rows;
    for (int h = 0; h < g.acting().order(); ++h) {
        if (h == g.acting().identity()) continue;
        const IntMatrix& m = g.action_of(h);
        for (int i = 0; i < g.rank(); ++i) {
            std::vector<long long> row(g.rank());
            for (int j = 0; j < g.rank(); ++j) row[j] = m.at(i, j) - (i == j ? 1 : 0);
            rows.push_back(std::move(row));
        }
    }
    TranslationCenter c;
    c.basis = integer_kernel_basis(rows, g.rank());
    c.sublattice = FGAbelianGroup::free_lattice(static_cast<int>(c.basis.size()));
    return c;
}

SemidirectProductGroup infinite_dihedral() {
    IntMatrix flip(1);
    flip.at(0, 0) = -1;
    return SemidirectProductGroup(1, FiniteGroupTable::cyclic(2),
                                  {IntMatrix::identity(1), flip});
}

SemidirectProductGroup lattice_semidirect_minus_identity(int r) {
    IntMatrix neg(r);
    for (int i = 0; i < r; ++i) neg.at(i, i) = -1;
    return SemidirectProductGroup(r, FiniteGroupTable::cyclic(2),
                                  {IntMatrix::identity(r), neg});
}

}  // namespace rrzero
