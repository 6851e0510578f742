#pragma once

#include "sumdil/dilate_const.hpp"
#include "sumdil/lattice.hpp"
#include "sumdil/numfield.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace sumdil {

inline constexpr std::uint64_t default_point_cap = 100'000'000;

// Finite set of integer vectors, kept sorted lexicographically without duplicates.
class PointSet {
public:
    explicit PointSet(std::size_t dim = 1) : dim_(dim) {}
    PointSet(std::size_t dim, const std::vector<IVec>& points);
    // Takes flat coordinates (size multiple of dim) and canonicalizes them.
    static PointSet from_flat(std::size_t dim, std::vector<std::int64_t> flat);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ ? flat_.size() / dim_ : 0; }
    bool empty() const { return flat_.empty(); }
    std::span<const std::int64_t> operator[](std::size_t i) const { return {flat_.data() + i * dim_, dim_}; }
    IVec point(std::size_t i) const;
    std::vector<IVec> points() const;
    const std::vector<std::int64_t>& flat() const { return flat_; }
    bool contains(const IVec& p) const;

    PointSet translate(const IVec& v) const;
    PointSet image(const IntMatrix& m) const;

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.dim_ == b.dim_ && a.flat_ == b.flat_; }
    friend bool operator!=(const PointSet& a, const PointSet& b) { return !(a == b); }

private:
    std::size_t dim_;
    std::vector<std::int64_t> flat_;
};

// One vector per line, whitespace separated; '#' starts a comment.
PointSet read_points(std::istream& in);
void write_points(std::ostream& out, const PointSet& s);

struct SumsetOptions {
    std::uint64_t cap = default_point_cap;
    unsigned threads = 1;
};

// { L_0 a_0 + ... + L_k a_k : a_l in A_l }
PointSet linear_sumset(const std::vector<PointSet>& sets, const std::vector<IntMatrix>& mats,
                       const SumsetOptions& opt = {});
// L_0 A + ... + L_k A
PointSet linear_sumset(const PointSet& a, const std::vector<IntMatrix>& mats, const SumsetOptions& opt = {});

// Integer matrices of x -> lambda_l x from D-coordinates to O-coordinates (l = 0 is the identity map).
std::vector<IntMatrix> dilate_matrices(const DilateSystem& sys, const IntegralBasis& basis);

// Coordinates of A in the denominator ideal, after rescaling by the smallest integer that puts A inside it.
struct IdealCoordinates {
    PointSet points;
    Int scale = 1;
};
IdealCoordinates ideal_points(const std::vector<FieldElement>& a, const DilateSystem& sys,
                              const IntegralBasis& basis);

// |A + lambda_1 A + ... + lambda_k A|
std::size_t field_sumset(const std::vector<FieldElement>& a, const DilateSystem& sys, const IntegralBasis& basis,
                         const SumsetOptions& opt = {});

struct ExtremalSet {
    PointSet points;          // D-coordinates
    std::size_t ambiguous = 0;   // boundary points decided by the midpoint rule
};

// Points x of D with |sigma_i(x)| <= n t_i for each real embedding and each conjugate pair.
// One radius per constraint, constraints in root order (a pair counts at its first root); default all 1.
ExtremalSet extremal_set(const DilateSystem& sys, const IntegralBasis& basis, std::int64_t n,
                         const std::vector<double>& radii = {});

struct RatioReport {
    std::int64_t n = 0;
    std::size_t size_a = 0;
    std::size_t size_sum = 0;
    Rat ratio;
    Interval h_reference;
    Rat margin;   // |sum| - ceil(h_lo |A|)
};

std::vector<RatioReport> ratio_experiment(const DilateSystem& sys, const IntegralBasis& basis,
                                          const std::vector<std::int64_t>& schedule,
                                          const std::vector<double>& radii = {}, const SumsetOptions& opt = {});

struct LowerWitness {
    PointSet a;
    Rat ratio;
};
LowerWitness h_lower_witness(const DilateSystem& sys, const IntegralBasis& basis, std::int64_t n);

} // namespace sumdil
