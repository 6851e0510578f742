#include "sumdil/interval.hpp"

#include "sumdil/error.hpp"

#include <algorithm>
#include <vector>

namespace sumdil {

Interval::Interval(mpfr_prec_t prec) : prec_(prec)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rat& r, mpfr_prec_t prec) : Interval(prec)
{
    mpfr_set_q(lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, r.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rat& lo, const Rat& hi, mpfr_prec_t prec) : Interval(prec)
{
    if (lo > hi)
        fail_internal("interval with lo > hi");
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::point(const mpfr_t x, mpfr_prec_t prec)
{
    Interval r(prec);
    mpfr_set(r.lo_, x, MPFR_RNDD);
    mpfr_set(r.hi_, x, MPFR_RNDU);
    return r;
}

Interval Interval::midpoint() const
{
    Interval r(prec_);
    mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
    return r;
}

Interval Interval::from_string(const std::string& lo, const std::string& hi, mpfr_prec_t prec)
{
    Interval r(prec);
    if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0 && mpfr_nan_p(r.lo_))
        fail_input("bad number '" + lo + "'");
    mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU);
    if (mpfr_cmp(r.lo_, r.hi_) > 0)
        fail_input("interval with lo > hi");
    return r;
}

Interval::Interval(const Interval& o) : prec_(o.prec_)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o) {}

Interval& Interval::operator=(const Interval& o)
{
    if (this == &o)
        return *this;
    if (prec_ != o.prec_) {
        prec_ = o.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept
{
    if (this != &o && prec_ == o.prec_) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    return *this = static_cast<const Interval&>(o);
}

Interval::~Interval()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

double Interval::mid_d() const
{
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double r = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return r;
}

namespace {
Rat exact(const mpfr_t x)
{
    if (!mpfr_number_p(x))
        fail_internal("non-finite interval endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    Rat r(q);
    mpq_clear(q);
    return r;
}
} // namespace

Rat Interval::lo_rat() const { return exact(lo_); }
Rat Interval::hi_rat() const { return exact(hi_); }

double Interval::width() const
{
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
}

bool Interval::contains(const Rat& r) const
{
    return mpfr_cmp_q(lo_, r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, r.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::overlaps(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0; }

namespace {
std::string render(const mpfr_t x, int digits, mpfr_rnd_t rnd)
{
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, rnd, x);
    return std::string(buf.data());
}

mpfr_prec_t joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }
} // namespace

std::string Interval::lo_str(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_str(int digits) const { return render(hi_, digits, MPFR_RNDU); }

Interval operator+(const Interval& a, const Interval& b)
{
    Interval r(joint(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b)
{
    Interval r(joint(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a)
{
    Interval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b)
{
    mpfr_prec_t p = joint(a, b);
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    bool first = true;
    for (const mpfr_t* x : {&a.lo_, &a.hi_})
        for (const mpfr_t* y : {&b.lo_, &b.hi_}) {
            mpfr_mul(t, *x, *y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0)
                mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, *x, *y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0)
                mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero())
        fail_internal("interval division by an interval containing zero");
    mpfr_prec_t p = joint(a, b);
    Interval inv(p);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Interval Interval::square() const
{
    Interval a = abs();
    Interval r(prec_);
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const
{
    if (mpfr_sgn(hi_) < 0)
        fail_internal("square root of a negative interval");
    Interval r(prec_);
    if (mpfr_sgn(lo_) <= 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const
{
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0)
        return *this;
    if (mpfr_sgn(hi_) <= 0)
        return -*this;
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(hi_, r.hi_) > 0)
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& o) const
{
    Interval r(joint(*this, o));
    mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::widen(const mpfr_t rad) const
{
    Interval r(prec_);
    mpfr_sub(r.lo_, lo_, rad, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, rad, MPFR_RNDU);
    return r;
}

} // namespace sumdil
