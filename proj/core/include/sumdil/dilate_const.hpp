#pragma once

#include "sumdil/embeddings.hpp"
#include "sumdil/numfield.hpp"

#include <optional>
#include <string>

namespace sumdil {

struct HResult {
    Int ideal_norm_factor = 1;
    Interval archimedean;
    Interval h;
    std::optional<Rat> exact_rational;   // only for d = 1
};

// N(D) * prod_i (1 + sum_l |sigma_i(lambda_l)|), with h.width() <= width.
HResult h_constant(const DilateSystem& sys, double width = 1e-9);
// Same, using precomputed embeddings (no width control).
HResult h_constant(const DilateSystem& sys, const EmbeddingData& e);

std::string to_string(const HResult& h, int digits = 15);

} // namespace sumdil
