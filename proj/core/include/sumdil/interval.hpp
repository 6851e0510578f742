#pragma once

#include "sumdil/rational.hpp"

#include <mpfr.h>

#include <string>

namespace sumdil {

// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Rat& r, mpfr_prec_t prec);
    Interval(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
    static Interval point(const mpfr_t x, mpfr_prec_t prec);
    static Interval from_string(const std::string& lo, const std::string& hi, mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    mpfr_prec_t precision() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const;
    Rat lo_rat() const;
    Rat hi_rat() const;
    // Upper bound on hi - lo.
    double width() const;
    bool contains(const Rat& r) const;
    bool contains_zero() const;
    bool positive() const { return mpfr_sgn(lo_) > 0; }
    bool overlaps(const Interval& o) const;
    std::string lo_str(int digits = 20) const;
    std::string hi_str(int digits = 20) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }

    // Degenerate interval at the (rounded) midpoint.
    Interval midpoint() const;
    bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
    Interval square() const;
    Interval sqrt() const;
    Interval abs() const;
    // Convex hull with o.
    Interval hull(const Interval& o) const;
    // [lo - r, hi + r]
    Interval widen(const mpfr_t r) const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

class ComplexInterval {
public:
    explicit ComplexInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    Interval re, im;

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    // Enclosure of |z|.
    Interval abs() const
    {
        if (im.is_point() && mpfr_zero_p(im.lo()))
            return re.abs();
        return (re.square() + im.square()).sqrt();
    }
    ComplexInterval conj() const { return {re, -im}; }
};

} // namespace sumdil
