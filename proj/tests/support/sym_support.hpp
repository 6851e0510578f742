#pragma once

// Random voxel shapes for the continuous verifier, shared by unit and acceptance tests.

#include "sumdil/symmetrize.hpp"

#include <random>

namespace symsupport {

using namespace sumdil;
using Rng = std::mt19937_64;

// Union of up to four boxes inside [-1, 1]^2 with corners on the grid.
inline VoxelSet random_boxes(Rng& g, Rat h)
{
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double hd = h.get_d();
    VoxelSet out(2, h);
    int n = count(g);
    for (int i = 0; i < n; ++i) {
        std::vector<double> lo(2), hi(2);
        for (int j = 0; j < 2; ++j) {
            double a = coord(g), b = coord(g);
            lo[j] = std::floor(std::min(a, b) / hd) * hd;
            hi[j] = std::max(lo[j] + hd, std::ceil(std::max(a, b) / hd) * hd);
        }
        out = out.unite(VoxelSet::box(lo, hi, h));
    }
    return out;
}

// Two 1-d blocks, k maps with positive real scales; signs flipped at random.
inline EigenStructure random_diagonal(Rng& g)
{
    std::uniform_int_distribution<int> maps(2, 3);
    std::uniform_real_distribution<double> scale(0.25, 2.5);
    std::bernoulli_distribution flip(0.3);
    int k = maps(g);
    EigenStructure e;
    for (int j = 0; j < 2; ++j) {
        EigenBlock b;
        b.dim = 1;
        for (int l = 0; l < k; ++l) {
            b.scale.push_back(l == 0 ? 1.0 : scale(g));
            b.angle.push_back(flip(g) ? 3.141592653589793 : 0.0);
        }
        e.blocks.push_back(b);
    }
    return e;
}

inline CtsReport random_diagonal_case(Rng& g)
{
    Rat h(1, 48);
    VoxelSet a = random_boxes(g, h);
    return verify_cts_bound(a, random_diagonal(g));
}

} // namespace symsupport
