#pragma once

#include "sumdil/dilate_const.hpp"
#include "sumdil/matrix.hpp"
#include "sumdil/multipoly.hpp"
#include "sumdil/numfield.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumdil {

struct MatrixFamily {
    std::size_t d = 0;
    std::vector<IntMatrix> mats;   // L_0 .. L_k

    explicit MatrixFamily(std::vector<IntMatrix> m);
    std::size_t k() const { return mats.size() - 1; }
};

enum class Verdict { yes, no, inconclusive };
std::string to_string(Verdict v);

// det(x0 L_0 + ... + xk L_k)
MultiPoly det_form(const MatrixFamily& fam);

struct PreCommutingReport {
    bool value = false;
    std::optional<RatMatrix> p;   // a P with P L_l pairwise commuting
    std::string method;
};

// Throws a refusal when every member is singular and the solution space is too large to decide.
PreCommutingReport pre_commuting_report(const MatrixFamily& fam, std::uint64_t seed = 1);
bool pre_commuting(const MatrixFamily& fam, std::uint64_t seed = 1);

struct IrreducibilityReport {
    Verdict verdict = Verdict::inconclusive;
    std::string method;
    std::int64_t prime = 0;
    // Column bases of U, V with L_i U contained in V, when reducible.
    std::optional<RatMatrix> u, v;
};

IrreducibilityReport irreducible(const MatrixFamily& fam, std::uint64_t seed = 1);

struct Recovery {
    DilateSystem system;
    RatMatrix phi;   // column j = Phi(theta^j)

    RatVec apply(const FieldElement& x) const;
    FieldElement preimage(const RatVec& u) const;
};

// Requires pre-commuting, irreducible, L_0 invertible.
Recovery recover_dilates(const MatrixFamily& fam, std::uint64_t seed = 1);

struct CoprimeReport {
    Verdict verdict = Verdict::inconclusive;
    std::string method;
    Int certificate_gcd = 0;
    int blowup = 0;
    std::optional<IntMatrix> witness;   // basis of X with covol(sum L_i X) > covol(X)
};

CoprimeReport coprime_report(const MatrixFamily& fam, std::uint64_t seed = 1);
// Lattice certificates only, without the denominator-norm route.
CoprimeReport coprime_by_certificates(const MatrixFamily& fam, std::uint64_t seed = 1);
// Refuses when undecided.
bool coprime(const MatrixFamily& fam, std::uint64_t seed = 1);

// |det L_0| * prod_i (1 + sum_l |sigma_i(lambda_l)|) of the recovered system.
HResult h_matrices(const MatrixFamily& fam, double width = 1e-9, std::uint64_t seed = 1);

struct AnalysisReport {
    std::optional<bool> pre_commuting;   // empty when unsupported
    std::string pre_commuting_method;
    IrreducibilityReport irreducible;
    std::optional<CoprimeReport> coprime;
    std::optional<Recovery> recovered;
    MultiPoly g;
    std::optional<HResult> h;
    std::string h_note;
};

AnalysisReport analyze(const MatrixFamily& fam, double width = 1e-9, std::uint64_t seed = 1);

} // namespace sumdil
