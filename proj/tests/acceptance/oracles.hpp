#pragma once

// Independent reference computations for the acceptance run.

#include "sumdil/interval.hpp"
#include "sumdil/lattice_density.hpp"
#include "sumdil/numfield.hpp"
#include "sumdil/sumset.hpp"

#include <set>

namespace oracle {

using namespace sumdil;

// Nested loops over all tuples.
std::set<IVec> naive_sumset(const PointSet& a, const std::vector<IntMatrix>& mats);

// Closed forms evaluated with directed rounding at 256 bits; true iff [lo, hi] ⊆ h.
bool encloses_three_plus_two_sqrt2(const Interval& h);
bool encloses_one_plus_cbrt2_cubed(const Interval& h);

// [O : D] by counting x in O / nO with x lambda_l integral for all l, n a common denominator.
Int denominator_index(const DilateSystem& sys, const IntegralBasis& basis);

// sum_i c_i A_i modulo m, for A_i given by residues mod m.
std::set<std::int64_t> scaled_residue_sum(std::int64_t m, const std::vector<std::vector<std::int64_t>>& sets,
                                          const std::vector<std::int64_t>& coeffs);

// Second projection of the local density on [corner, corner + side) for a 1-d flag L_1 ⊆ L_2:
// residues mod L_1 of the points in L_2, over [L_2 : L_1].
Rat local_second_projection(const std::vector<std::int64_t>& pts, const Flag& f);

// |X + sqrt2 X| for X in coordinates of the basis (1, sqrt 2).
std::size_t sqrt2_sumset_size(const PointSet& x);

} // namespace oracle
