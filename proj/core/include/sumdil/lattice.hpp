#pragma once

#include "sumdil/matrix.hpp"
#include "sumdil/rational.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sumdil {

using IVec = std::vector<std::int64_t>;

inline constexpr std::int64_t default_index_cap = 1'000'000;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
IVec add(const IVec& a, const IVec& b);
IVec sub(const IVec& a, const IVec& b);
IVec neg(const IVec& a);
IVec apply(const IntMatrix& m, const IVec& v);
IntVec to_intvec(const IVec& v);
IVec to_ivec(const IntVec& v);

struct IVecHash {
    std::size_t operator()(const IVec& v) const noexcept;
};

// Full-rank sublattice of Z^d with a lower-triangular column HNF basis:
// column j is zero above row j, diag > 0, entry (i, j) for j < i lies in [0, diag_i).
class IntegerLattice {
public:
    IntegerLattice() = default;
    static IntegerLattice hnf(const std::vector<IntVec>& columns, std::size_t dim);
    static IntegerLattice hnf(const std::vector<IVec>& columns, std::size_t dim);
    static IntegerLattice hnf(const IntMatrix& columns);
    static IntegerLattice identity(std::size_t dim);
    static IntegerLattice scaled(std::size_t dim, std::int64_t m);

    std::size_t dim() const { return d_; }
    std::int64_t entry(std::size_t i, std::size_t j) const { return b_[i * d_ + j]; }
    std::int64_t diag(std::size_t i) const { return entry(i, i); }
    IVec column(std::size_t j) const;
    IntMatrix basis() const;
    // [Z^d : L]
    Int index() const;

    bool member(const IVec& v) const;
    // Canonical representative of v + L inside the box prod [0, diag_i).
    IVec reduce(IVec v) const;
    // Coefficients c with v = basis * c (requires membership).
    IVec coordinates(IVec v) const;
    bool contains(const IntegerLattice& sub) const;

    friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) { return a.d_ == b.d_ && a.b_ == b.b_; }
    friend bool operator!=(const IntegerLattice& a, const IntegerLattice& b) { return !(a == b); }
    friend bool operator<(const IntegerLattice& a, const IntegerLattice& b) { return a.b_ < b.b_; }

private:
    std::size_t d_ = 0;
    std::vector<std::int64_t> b_;   // row-major d x d
};

// c + L
struct AffineLattice {
    IntegerLattice lattice;
    IVec shift;

    static AffineLattice linear(IntegerLattice l)
    {
        IVec z(l.dim(), 0);
        return {std::move(l), std::move(z)};
    }
    bool member(const IVec& v) const { return lattice.member(sub(v, shift)); }
};

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);
// Image T L of a lattice under a nonsingular integer matrix.
IntegerLattice lattice_image(const IntMatrix& t, const IntegerLattice& l);
bool lattice_member(const IVec& v, const IntegerLattice& l);

// Representatives of sup/sub, reduced modulo sub, in lexicographic order.
std::vector<IVec> coset_reps(const IntegerLattice& sup, const IntegerLattice& sub,
                             std::int64_t cap = default_index_cap);
// Calls f on each representative without materializing the list.
void for_each_coset_rep(const IntegerLattice& sup, const IntegerLattice& sub,
                        const std::function<void(const IVec&)>& f, std::int64_t cap = default_index_cap);
Int relative_index(const IntegerLattice& sup, const IntegerLattice& sub);

// {u in Q^d : r . u in Z for every r}, returned as (1/den) * lattice. The rows must span Q^d.
struct ScaledLattice {
    IntegerLattice lattice;
    Int den;
};
ScaledLattice dual_of_span(const std::vector<RatVec>& rows, std::size_t dim);

struct SmithDecomposition {
    IntMatrix U, V;
    IntVec diag;
};
// U * m * V = diag(d_1, ..., d_r, 0, ...), d_i | d_{i+1}.
SmithDecomposition smith(const IntMatrix& m);

} // namespace sumdil
