#pragma once

#include "sumdil/lattice.hpp"
#include "sumdil/numfield.hpp"
#include "sumdil/sumset.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sumdil {

// A subset of Z^d invariant under a full-rank period lattice, stored as residues in the HNF box of the period.
class PeriodicSet {
public:
    PeriodicSet() = default;
    PeriodicSet(IntegerLattice period, const std::vector<IVec>& points);
    static PeriodicSet full(std::size_t dim) { return PeriodicSet(IntegerLattice::identity(dim), {IVec(dim, 0)}); }
    static PeriodicSet empty(std::size_t dim) { return PeriodicSet(IntegerLattice::identity(dim), {}); }

    std::size_t dim() const { return period_.dim(); }
    const IntegerLattice& period() const { return period_; }
    const std::vector<IVec>& residues() const { return res_; }
    bool is_empty() const { return res_.empty(); }
    bool contains(const IVec& v) const;
    // |A mod P| / [Z^d : P]
    Rat density() const;

    PeriodicSet translate(const IVec& v) const;
    PeriodicSet image(const IntMatrix& t) const;
    // Same set described with the smaller period P ∩ q.
    PeriodicSet refine(const IntegerLattice& q, std::int64_t cap = default_index_cap) const;
    // Same set described with its full group of translational symmetries.
    PeriodicSet minimal() const;
    bool subset_of(const PeriodicSet& other) const;

    // Set equality (independent of the period used to describe it).
    friend bool operator==(const PeriodicSet& a, const PeriodicSet& b);
    friend bool operator!=(const PeriodicSet& a, const PeriodicSet& b) { return !(a == b); }

private:
    IntegerLattice period_;
    std::vector<IVec> res_;
};

class Flag {
public:
    explicit Flag(std::vector<IntegerLattice> chain);

    std::size_t k() const { return l_.size(); }
    std::size_t dim() const { return l_.front().dim(); }
    // 1-based, as L_1 ... L_k.
    const IntegerLattice& at(std::size_t l) const { return l_.at(l - 1); }
    const std::vector<IntegerLattice>& lattices() const { return l_; }
    // [L_l : L_{l-1}] for l = 2..k
    std::int64_t step(std::size_t l) const { return m_.at(l - 2); }
    const std::vector<std::int64_t>& steps() const { return m_; }
    Flag drop_last() const;

    friend bool operator==(const Flag& a, const Flag& b) { return a.l_ == b.l_; }

private:
    std::vector<IntegerLattice> l_;
    std::vector<std::int64_t> m_;
};

// Compressed union of boxes [0, h(c)] x cell(c) over cells (i_2, ..., i_k) of widths 1/m_l.
// Heights are row-major with i_2 slowest.
struct StaircaseBody {
    std::vector<std::int64_t> dims;   // m_2 .. m_k
    std::vector<Rat> heights;

    std::size_t k() const { return dims.size() + 1; }
    std::size_t cells() const { return heights.size(); }
    std::size_t index(const std::vector<std::int64_t>& cell) const;
    std::vector<std::int64_t> cell(std::size_t index) const;
    bool compressed() const;
    // Membership of (r, m_2 / dims_0, ..., m_k / dims_{k-2}) with r > 0 and 1 <= m_l <= dims.
    bool contains(const Rat& r, const std::vector<std::int64_t>& m) const;
    bool contains(const RatVec& point) const;
    friend bool operator==(const StaircaseBody& a, const StaircaseBody& b)
    {
        return a.dims == b.dims && a.heights == b.heights;
    }
};

// Density of A ∩ M inside M for the affine lattice M.
Rat density(const PeriodicSet& a, const AffineLattice& m, std::int64_t cap = default_index_cap);
Rat density(const PeriodicSet& a, const IntegerLattice& m, std::int64_t cap = default_index_cap);

StaircaseBody lattice_density(const PeriodicSet& a, const Flag& f, std::int64_t cap = default_index_cap);
Rat volume(const StaircaseBody& s);
// |pi_l| for l in 1..k; the projection itself is [0, value].
Rat projection(const StaircaseBody& s, std::size_t l);
// Same quantity from A and the flag without building the body.
Rat projection_direct(const PeriodicSet& a, const Flag& f, std::size_t l, std::int64_t cap = default_index_cap);
// Decides membership of (r, m_2/[L_2:L_1], ..., m_k/[L_k:L_{k-1}]) by searching for nested coset witnesses.
bool ld_contains(const PeriodicSet& a, const Flag& f, const Rat& r, const std::vector<std::int64_t>& m,
                 std::int64_t cap = default_index_cap);

// sum_i T_i A_i, described by its minimal period.
PeriodicSet periodic_sumset(const std::vector<PeriodicSet>& sets, const std::vector<IntMatrix>& mats,
                            std::int64_t cap = default_index_cap);

// corner + [0, side)^d
struct AxisBox {
    IVec corner;
    std::int64_t side = 1;
    bool contains(const IVec& v) const;
    Int volume() const;
};

// LD((A ∩ S) + P; F). Without a tiling lattice P = side Z^d is used; a given P must have every HNF diagonal equal
// to side (such lattices tile the box) and lie in L_1.
StaircaseBody local_ld(const PointSet& a, const AxisBox& s, const Flag& f, const IntegerLattice* tiling = nullptr,
                       std::int64_t cap = default_index_cap);
StaircaseBody local_ld(const PeriodicSet& a, const AxisBox& s, const Flag& f, const IntegerLattice* tiling = nullptr,
                       std::int64_t cap = default_index_cap);

// Ideal-derived flags in D-coordinates and O-coordinates for a vector n of k non-negative integers.
struct IdealFlags {
    std::vector<FractionalIdealLattice> a;   // a_0 .. a_k
    std::vector<FractionalIdealLattice> b;   // b_1 .. b_k
    std::vector<FractionalIdealLattice> c;   // c_{n,0} .. c_{n,k}
    Flag f;
    Flag g;
};
IdealFlags flags_from_ideals(const DilateSystem& sys, const IntegralBasis& basis, const std::vector<unsigned>& n);

// Flags indexed by n in N^k, each with k + 1 lattices.
using FlagFamily = std::function<Flag(const std::vector<unsigned>&)>;
FlagFamily ideal_flag_family(const DilateSystem& sys, const IntegralBasis& basis);

struct RegularityParams {
    std::int64_t n_side = 0;            // N, A ⊆ [0, N)^d
    std::int64_t m = 2;                 // M
    Rat delta = Rat(1, 10);
    std::size_t l = 1;                  // 1..k
    std::vector<unsigned> tail;         // n_{l+1} .. n_k
    std::size_t k = 1;
    std::int64_t max_level = 64;
};

struct RegularDecomposition {
    std::size_t r = 0;
    std::int64_t side = 0;              // N / M^r
    std::vector<IVec> cubes;            // corners of the retained cubes
    PointSet kept;                      // A'
    std::vector<Rat> energy;            // D_0 .. D_{r+1}
};

bool is_regular(const PointSet& a, const AxisBox& cube, const FlagFamily& fam, const RegularityParams& p,
                unsigned level);
RegularDecomposition regular_decomposition(const PointSet& a, const FlagFamily& fam, const RegularityParams& p);
// Re-checks |A'| >= (1 - delta)|A| and regularity of every cube.
bool check_decomposition(const PointSet& a, const FlagFamily& fam, const RegularityParams& p,
                         const RegularDecomposition& out);

} // namespace sumdil
