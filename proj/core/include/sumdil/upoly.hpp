#pragma once

#include "sumdil/matrix.hpp"
#include "sumdil/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sumdil {

// Univariate polynomial over Q, coefficients stored low degree first.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(RatVec coeffs);
    explicit UPoly(const IntVec& coeffs);
    static UPoly constant(const Rat& c) { return UPoly(RatVec{c}); }
    static UPoly monomial(const Rat& c, std::size_t deg);
    static UPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const RatVec& coeffs() const { return c_; }
    Rat lc() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const;
    RatMatrix eval(const RatMatrix& m) const;
    UPoly derivative() const;
    UPoly monic() const;
    UPoly compose(const UPoly& inner) const;

    // Primitive integer polynomial with positive leading coefficient, proportional to *this.
    IntVec primitive_int() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const Rat& s, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    RatVec c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0,0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// Returns (g, s, t) with s a + t b = g monic.
struct ExtGcd {
    UPoly g, s, t;
};
ExtGcd ext_gcd(const UPoly& a, const UPoly& b);
bool is_squarefree(const UPoly& f);
UPoly pow_mod(const UPoly& base, unsigned e, const UPoly& mod);

// Parses an expression like "t^2-2", "1/2*t", "3t^3 + t - 5/7".
UPoly parse_upoly(const std::string& text, char var = 't');

// Characteristic polynomial det(xI - m).
UPoly charpoly(const RatMatrix& m);
UPoly minpoly(const RatMatrix& m);

} // namespace sumdil
