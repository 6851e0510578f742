#pragma once

#include "sumdil/rational.hpp"
#include "sumdil/upoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace sumdil {

using Exponent = std::vector<int>;

// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class MultiPoly {
public:
    using Terms = std::map<Exponent, Rat, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    static MultiPoly constant(std::vector<std::string> vars, const Rat& c);
    static MultiPoly variable(std::vector<std::string> vars, std::size_t i);
    // Embeds p(var_i) into the given variable set.
    static MultiPoly from_upoly(std::vector<std::string> vars, std::size_t i, const UPoly& p);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const Rat& c);

    int total_degree() const;
    int degree_in(std::size_t var) const;
    // Coefficients of var^0, var^1, ... (each still over the full variable list).
    std::vector<MultiPoly> coefficients_in(std::size_t var) const;
    // Removes a variable that does not occur.
    MultiPoly drop_var(std::size_t var) const;

    Rat eval(const std::vector<Rat>& point) const;
    bool is_homogeneous() const;

    // lcm of coefficient denominators.
    Int denominator_lcm() const;
    // gcd of numerators after clearing denominators (integer content, >= 0).
    Int integer_content() const;

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Rat& s, const MultiPoly& a);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned e) const;
    std::string to_string() const;

private:
    void check_vars(const MultiPoly& o) const;
    std::vector<std::string> vars_;
    Terms terms_;
};

// Exact division; throws if b does not divide a.
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b);

// Determinant of a square matrix of polynomials (fraction-free elimination).
MultiPoly det(std::vector<std::vector<MultiPoly>> m);

// Resultant with respect to variable `var` (determinant of the Sylvester matrix).
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var);

} // namespace sumdil
