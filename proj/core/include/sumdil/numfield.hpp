#pragma once

#include "sumdil/lattice.hpp"
#include "sumdil/matrix.hpp"
#include "sumdil/multipoly.hpp"
#include "sumdil/upoly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sumdil {

// Element of Q[y]/(f) in the power basis 1, theta, ..., theta^{d-1}.
struct FieldElement {
    RatVec coeffs;

    UPoly as_poly() const { return UPoly(coeffs); }
    bool is_zero() const;
    bool is_rational() const;
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.coeffs == b.coeffs; }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.coeffs < b.coeffs; }
};

class NumberField {
public:
    // f must be irreducible over Q; it is stored as a primitive integer polynomial.
    explicit NumberField(const UPoly& f);
    static NumberField rationals() { return NumberField(UPoly(RatVec{0, 1})); }

    int degree() const { return d_; }
    const UPoly& poly() const { return f_; }
    const IntVec& int_poly() const { return fint_; }
    bool monic() const { return fint_.back() == 1; }

    FieldElement element(const UPoly& p) const;
    FieldElement parse(const std::string& text) const;
    FieldElement from_rat(const Rat& r) const;
    FieldElement one() const { return from_rat(1); }
    FieldElement zero() const { return from_rat(0); }
    FieldElement theta() const { return element(UPoly::x()); }

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement scale(const Rat& s, const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, int e) const;

    // Matrix of multiplication by a in the power basis (columns = images of theta^j).
    RatMatrix mult_matrix(const FieldElement& a) const;
    Rat norm(const FieldElement& a) const;
    UPoly charpoly(const FieldElement& a) const;

    std::string to_string(const FieldElement& a) const { return a.as_poly().to_string("t"); }
    friend bool operator==(const NumberField& a, const NumberField& b) { return a.fint_ == b.fint_; }
    friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

private:
    void check(const FieldElement& a) const;
    UPoly f_;
    IntVec fint_;
    int d_ = 0;
};

FieldElement elem_mul(const FieldElement& a, const FieldElement& b, const NumberField& k);

struct DilateSystem {
    NumberField field;
    std::vector<FieldElement> dilates;   // lambda_1..lambda_k; lambda_0 = 1 is implicit

    DilateSystem(NumberField f, std::vector<FieldElement> lambdas);
    std::size_t k() const { return dilates.size(); }
    int d() const { return field.degree(); }
    // lambda_0 = 1 followed by the dilates.
    std::vector<FieldElement> all() const;
};

DilateSystem make_system(const std::string& field_poly, const std::vector<std::string>& dilates);

// True when a generic integer combination of the dilates has a squarefree characteristic polynomial.
bool dilates_generate_field(const DilateSystem& sys, std::uint64_t seed = 1, int retries = 3);

// N(x0 + x1 lambda_1 + ... + xk lambda_k) over variables x0..xk.
MultiPoly norm_form(const DilateSystem& sys);
Int denominator_norm(const DilateSystem& sys);

enum class BasisProvenance { catalog, monogenic, user };

class IntegralBasis {
public:
    // Elements must form a Z-basis of the ring of integers (asserted by the caller).
    // If 1 is not the first element a basis starting with 1 is derived.
    IntegralBasis(NumberField field, std::vector<FieldElement> elements, BasisProvenance prov = BasisProvenance::user);

    const NumberField& field() const { return field_; }
    const std::vector<FieldElement>& elements() const { return e_; }
    BasisProvenance provenance() const { return prov_; }
    int degree() const { return field_.degree(); }

    // Coordinates of x in this basis (rational in general).
    RatVec coords(const FieldElement& x) const;
    FieldElement from_coords(const RatVec& c) const;
    bool is_integral(const FieldElement& x) const;
    // Multiplication by x in basis coordinates.
    RatMatrix mult_matrix(const FieldElement& x) const;

private:
    NumberField field_;
    std::vector<FieldElement> e_;
    BasisProvenance prov_;
    RatMatrix to_power_;     // columns: power-basis coordinates of e_i
    RatMatrix from_power_;
};

IntegralBasis quadratic_basis(std::int64_t m);
IntegralBasis monogenic_basis(const NumberField& k);

// (1/den) * lattice, lattice in integral-basis coordinates, den minimal.
struct FractionalIdealLattice {
    IntegerLattice lattice;
    Int den = 1;

    friend bool operator==(const FractionalIdealLattice& a, const FractionalIdealLattice& b)
    {
        return a.den == b.den && a.lattice == b.lattice;
    }
    friend bool operator!=(const FractionalIdealLattice& a, const FractionalIdealLattice& b) { return !(a == b); }
    bool integral() const { return den == 1; }
    // [O_K : I] for integral I; in general index/den^d.
    Rat norm() const;
};

FractionalIdealLattice normalize(const IntegerLattice& l, const Int& den);
FractionalIdealLattice unit_ideal(const IntegralBasis& basis);
FractionalIdealLattice ideal_from_generators(const std::vector<FieldElement>& gens, const IntegralBasis& basis);
FractionalIdealLattice principal_ideal(const FieldElement& x, const IntegralBasis& basis);
FractionalIdealLattice ideal_product(const FractionalIdealLattice& a, const FractionalIdealLattice& b,
                                     const IntegralBasis& basis);
FractionalIdealLattice ideal_inverse(const FractionalIdealLattice& a, const IntegralBasis& basis);
FractionalIdealLattice ideal_intersect(const FractionalIdealLattice& a, const FractionalIdealLattice& b);
FractionalIdealLattice ideal_power(const FractionalIdealLattice& a, unsigned e, const IntegralBasis& basis);
bool ideal_contains(const FractionalIdealLattice& outer, const FractionalIdealLattice& inner);
bool ideal_member(const FieldElement& x, const FractionalIdealLattice& a, const IntegralBasis& basis);
// Z-basis of the ideal as field elements.
std::vector<FieldElement> ideal_basis(const FractionalIdealLattice& a, const IntegralBasis& basis);
// Lattice coordinates of x in the ideal's HNF basis; throws when x is not in the ideal.
IVec ideal_coordinates(const FieldElement& x, const FractionalIdealLattice& a, const IntegralBasis& basis);
FieldElement ideal_element(const IVec& coords, const FractionalIdealLattice& a, const IntegralBasis& basis);
// Closed under multiplication by every basis element.
bool is_ideal(const FractionalIdealLattice& a, const IntegralBasis& basis);

FractionalIdealLattice denominator_ideal(const DilateSystem& sys, const IntegralBasis& basis);

// Integer matrix of multiplication by lambda from `from`-coordinates to `to`-coordinates.
IntMatrix mult_matrix(const FieldElement& lambda, const FractionalIdealLattice& from, const FractionalIdealLattice& to,
                      const IntegralBasis& basis);

} // namespace sumdil
