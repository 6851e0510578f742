#pragma once

#include "sumdil/rational.hpp"
#include "sumdil/sumset.hpp"

#include <cstdint>
#include <vector>

namespace sumdil {

inline constexpr std::uint64_t default_voxel_cap = 50'000'000;

// Union of closed cells [v h, (v + 1) h] over the occupied indices v.
class VoxelSet {
public:
    VoxelSet(std::size_t dim, Rat h);
    VoxelSet(PointSet cells, Rat h);

    // Cells covering the closed box [lo, hi]; lo and hi are snapped outward to the grid.
    static VoxelSet box(const std::vector<double>& lo, const std::vector<double>& hi, Rat h);
    // Cells whose centre lies in the closed ball of the given radius in the plane of axes (0, 1); d = 2.
    static VoxelSet disk(double cx, double cy, double radius, Rat h);
    VoxelSet unite(const VoxelSet& other) const;

    std::size_t dim() const { return cells_.dim(); }
    const Rat& resolution() const { return h_; }
    double h() const { return h_.get_d(); }
    const PointSet& cells() const { return cells_; }
    std::size_t count() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool contains(const IVec& v) const { return cells_.contains(v); }
    Rat measure() const;
    // lower and upper cell indices per axis (inclusive); empty set gives an empty vector
    std::vector<std::pair<std::int64_t, std::int64_t>> bounds() const;
    // Cells with at least one face neighbour missing.
    std::size_t boundary_cells() const;
    // Number of exposed faces.
    std::size_t exposed_faces() const;

    friend bool operator==(const VoxelSet& a, const VoxelSet& b) { return a.h_ == b.h_ && a.cells_ == b.cells_; }

private:
    PointSet cells_;
    Rat h_;
};

// Dense real matrix, row-major.
struct RealMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    static RealMatrix identity(std::size_t n);
    static RealMatrix diagonal(const std::vector<double>& d);
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    bool is_diagonal() const;
};

// Outward rasterization of M A: every cell whose interior meets the image of a cell of A.
VoxelSet map_voxels(const VoxelSet& a, const RealMatrix& m, std::uint64_t cap = default_voxel_cap);
// Exact Minkowski sum of two cell unions.
VoxelSet minkowski(const VoxelSet& a, const VoxelSet& b, std::uint64_t cap = default_voxel_cap);
// Superset of M_1 A_1 + ... + M_k A_k.
VoxelSet voxel_sum(const std::vector<VoxelSet>& sets, const std::vector<RealMatrix>& maps,
                   std::uint64_t cap = default_voxel_cap);

// Each line along the axis becomes the run [-ceil(c/2), floor(c/2) - 1] of the same count c.
VoxelSet steiner_1d(const VoxelSet& a, std::size_t axis);
// Each 2-d slice in the plane of the two axes becomes the first c cells of the fill order:
// increasing (2x+1)^2 + (2y+1)^2, then x, then y.
VoxelSet ball_rearrange_2d(const VoxelSet& a, std::size_t axis0, std::size_t axis1);
// The fill order used above, first n cells.
std::vector<std::pair<std::int64_t, std::int64_t>> disk_fill_order(std::size_t n);

// Coordinate blocks of dimension 1 or 2, consecutive from axis 0; map l acts on block j by scale[l] * rotation(angle[l]).
struct EigenBlock {
    int dim = 1;
    std::vector<double> scale;
    std::vector<double> angle;   // for 1-d blocks 0 or pi
};

struct EigenStructure {
    std::vector<EigenBlock> blocks;
    std::size_t dim() const;
    std::size_t maps() const;
    void validate() const;
};

std::vector<RealMatrix> maps_from_structure(const EigenStructure& e);

struct CtsReport {
    double measure_a = 0;
    double measured = 0;
    double bound = 0;
    double budget = 0;
    std::size_t cells = 0;
    bool pass = false;
};

// Compares mu(M_1 A + ... + M_k A) with prod_j (sum_l r_lj)^{d_j} mu(A).
CtsReport verify_cts_bound(const VoxelSet& a, const EigenStructure& e, const std::vector<RealMatrix>& maps,
                           std::uint64_t cap = default_voxel_cap);
CtsReport verify_cts_bound(const VoxelSet& a, const EigenStructure& e, std::uint64_t cap = default_voxel_cap);

} // namespace sumdil
