#pragma once

#include "sumdil/interval.hpp"
#include "sumdil/numfield.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sumdil {

// A complex number known to lie in an axis-parallel box.
struct CertifiedComplex {
    ComplexInterval box;

    double re() const { return box.re.mid_d(); }
    double im() const { return box.im.mid_d(); }
    // Radius of a disk about (re, im) containing the box.
    double radius() const;
    bool is_real() const { return box.im.is_point() && mpfr_zero_p(box.im.lo()); }
};

struct EmbeddingData {
    IntVec poly;                          // primitive integer defining polynomial
    mpfr_prec_t precision = 64;
    std::vector<CertifiedComplex> roots;
    std::vector<int> pairing;             // index of the complex conjugate root
    std::vector<bool> real_mask;

    int d() const { return static_cast<int>(roots.size()); }
    double max_radius() const;
    // Midpoints as decimal strings, for caching.
    std::vector<std::pair<std::string, std::string>> centers() const;
};

// Roots of f with disjoint certified disks of radius <= target_radius.
// Precision starts at 64 bits and doubles up to max_precision.
EmbeddingData certified_roots(const UPoly& f, double target_radius, mpfr_prec_t max_precision = 4096);

// Re-certifies previously computed centers at a fixed precision. Throws if certification fails.
EmbeddingData certify_centers(const UPoly& f, const std::vector<std::pair<std::string, std::string>>& centers,
                              mpfr_prec_t precision);

std::vector<CertifiedComplex> embed(const FieldElement& x, const EmbeddingData& e);

// prod_i (1 + sum_l |sigma_i(lambda_l)|)
Interval archimedean_product(const DilateSystem& sys, const EmbeddingData& e);

// Chooses precision until the product interval has width <= width.
Interval archimedean_product(const DilateSystem& sys, double width, mpfr_prec_t max_precision = 4096);

} // namespace sumdil
