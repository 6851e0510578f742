#include "sumdil/embeddings.hpp"

#include "sumdil/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>

namespace sumdil {

double CertifiedComplex::radius() const
{
    double w = std::max(box.re.width(), box.im.width()) / 2;
    if (w == 0)
        return 0;
    return std::nextafter(std::sqrt(box.re.width() * box.re.width() + box.im.width() * box.im.width()) / 2,
                          INFINITY);
}

double EmbeddingData::max_radius() const
{
    double r = 0;
    for (const auto& z : roots)
        r = std::max(r, z.radius());
    return r;
}

std::vector<std::pair<std::string, std::string>> EmbeddingData::centers() const
{
    std::vector<std::pair<std::string, std::string>> out;
    int digits = static_cast<int>(precision * 0.30103) + 3;
    for (const auto& z : roots)
        out.emplace_back(z.box.re.midpoint().lo_str(digits), z.box.im.midpoint().lo_str(digits));
    return out;
}

namespace {

using CI = ComplexInterval;

struct Poly {
    std::vector<Interval> c;   // low first
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

Poly to_intervals(const IntVec& f, mpfr_prec_t prec)
{
    Poly p;
    for (const auto& a : f)
        p.c.emplace_back(Rat(a), prec);
    return p;
}

Poly derivative(const Poly& p, mpfr_prec_t prec)
{
    Poly q;
    for (std::size_t i = 1; i < p.c.size(); ++i)
        q.c.push_back(p.c[i] * Interval(Rat(static_cast<long>(i)), prec));
    return q;
}

CI horner(const Poly& p, const CI& z)
{
    mpfr_prec_t prec = z.re.precision();
    CI acc{Interval(prec), Interval(prec)};
    for (std::size_t i = p.c.size(); i-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + p.c[i];
    }
    return acc;
}

CI divide(const CI& a, const CI& b)
{
    Interval den = b.re.square() + b.im.square();
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

CI mid(const CI& z) { return {z.re.midpoint(), z.im.midpoint()}; }

bool zero_in(const CI& z) { return z.re.contains_zero() && z.im.contains_zero(); }

CI point(double re, double im, mpfr_prec_t prec)
{
    mpfr_t x;
    mpfr_init2(x, 64);
    mpfr_set_d(x, re, MPFR_RNDN);
    Interval r = Interval::point(x, prec);
    mpfr_set_d(x, im, MPFR_RNDN);
    Interval i = Interval::point(x, prec);
    mpfr_clear(x);
    return {r, i};
}

// Upper bound of |z| as a double.
double mag(const CI& z) { return z.abs().hi_d(); }

std::vector<std::complex<double>> seeds(const IntVec& f)
{
    int d = static_cast<int>(f.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    double lc = f.back().get_d();
    for (int i = 1; i < d; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        comp(i, d - 1) = -f[static_cast<std::size_t>(i)].get_d() / lc;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < d; ++i)
        out.push_back(es.eigenvalues()[i]);
    return out;
}

void newton(const Poly& p, const Poly& dp, CI& z, mpfr_prec_t prec)
{
    double tol = std::ldexp(1.0, -static_cast<int>(prec) + 4);
    for (int it = 0; it < 200; ++it) {
        CI fz = horner(p, z);
        CI dz = horner(dp, z);
        if (zero_in(dz))
            return;
        CI step = mid(divide(mid(fz), mid(dz)));
        z = mid(z - step);
        double s = mag(step);
        if (!(s > tol * std::max(1.0, mag(z))))
            return;
    }
}

void durand_kerner(const Poly& p, std::vector<CI>& z, mpfr_prec_t prec)
{
    int d = p.degree();
    // Cauchy bound for the starting circle.
    double bound = 1;
    double lc = std::fabs(p.c.back().mid_d());
    for (int i = 0; i < d; ++i)
        bound = std::max(bound, 1 + std::fabs(p.c[static_cast<std::size_t>(i)].mid_d()) / lc);
    z.clear();
    std::complex<double> w(0.4, 0.9);
    std::complex<double> cur(1, 0);
    for (int i = 0; i < d; ++i) {
        cur *= w;
        z.push_back(point(bound * cur.real(), bound * cur.imag(), prec));
    }
    double tol = std::ldexp(1.0, -static_cast<int>(prec) + 4);
    for (int it = 0; it < 2000; ++it) {
        double biggest = 0;
        for (int i = 0; i < d; ++i) {
            CI den{p.c.back(), Interval(prec)};
            for (int j = 0; j < d; ++j)
                if (j != i)
                    den = mid(den * (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]));
            if (zero_in(den))
                continue;
            CI step = mid(divide(mid(horner(p, z[static_cast<std::size_t>(i)])), den));
            z[static_cast<std::size_t>(i)] = mid(z[static_cast<std::size_t>(i)] - step);
            biggest = std::max(biggest, mag(step) / std::max(1.0, mag(z[static_cast<std::size_t>(i)])));
        }
        if (biggest <= tol)
            break;
    }
}

// Disk radii and pairing for given centers; nullopt when certification fails at this precision.
std::optional<EmbeddingData> certify(const IntVec& f, const std::vector<CI>& centers, mpfr_prec_t prec)
{
    Poly p = to_intervals(f, prec);
    Poly dp = derivative(p, prec);
    int d = p.degree();
    Interval dd(Rat(d), prec);
    std::vector<Interval> rad;
    for (const auto& c : centers) {
        CI fz = horner(p, c);
        Interval der = horner(dp, c).abs();
        if (!der.positive())
            return std::nullopt;
        rad.push_back(dd * fz.abs() / der);
    }
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            Interval dist = (centers[i] - centers[j]).abs();
            Interval sum = rad[i] + rad[j];
            if (mpfr_cmp(dist.lo(), sum.hi()) <= 0)
                return std::nullopt;
        }
    EmbeddingData e;
    e.poly = f;
    e.precision = prec;
    e.pairing.assign(centers.size(), -1);
    e.real_mask.assign(centers.size(), false);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        CI conj = centers[i].conj();
        int found = -1;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            Interval dist = (conj - centers[j]).abs();
            Interval sum = rad[i] + rad[j];
            if (mpfr_cmp(dist.lo(), sum.hi()) <= 0) {
                if (found >= 0)
                    return std::nullopt;
                found = static_cast<int>(j);
            }
        }
        if (found < 0)
            return std::nullopt;
        e.pairing[i] = found;
    }
    for (std::size_t i = 0; i < centers.size(); ++i)
        if (e.pairing[static_cast<std::size_t>(e.pairing[i])] != static_cast<int>(i))
            return std::nullopt;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const mpfr_t& r = rad[i].hi();
        CertifiedComplex z{CI{centers[i].re.widen(r), centers[i].im.widen(r)}};
        if (e.pairing[i] == static_cast<int>(i)) {
            e.real_mask[i] = true;
            z.box.im = Interval(prec);
        }
        e.roots.push_back(std::move(z));
    }
    return e;
}

IntVec checked_poly(const UPoly& f)
{
    if (f.degree() < 1)
        fail_input("polynomial must have positive degree");
    if (gcd(f, f.derivative()).degree() > 0)
        fail_input("repeated roots");
    return f.primitive_int();
}

EmbeddingData linear_roots(const IntVec& f, mpfr_prec_t prec)
{
    Rat root(-f[0], f[1]);
    root.canonicalize();
    EmbeddingData e;
    e.poly = f;
    e.precision = prec;
    e.roots.push_back(CertifiedComplex{CI{Interval(root, prec), Interval(prec)}});
    e.pairing = {0};
    e.real_mask = {true};
    return e;
}

std::vector<CI> seed_points(const IntVec& g)
{
    std::vector<CI> z;
    for (const auto& c : seeds(g))
        z.push_back(point(c.real(), c.imag(), 64));
    return z;
}

// Refines z in place at prec and tries to certify.
std::optional<EmbeddingData> attempt(const IntVec& g, std::vector<CI>& z, mpfr_prec_t prec)
{
    Poly p = to_intervals(g, prec);
    Poly dp = derivative(p, prec);
    std::vector<CI> cur;
    for (const auto& c : z)
        cur.push_back(CI{Interval::point(c.re.lo(), prec), Interval::point(c.im.lo(), prec)});
    for (auto& c : cur)
        newton(p, dp, c, prec);
    auto e = certify(g, cur, prec);
    if (!e) {
        durand_kerner(p, cur, prec);
        for (auto& c : cur)
            newton(p, dp, c, prec);
        e = certify(g, cur, prec);
    }
    z = std::move(cur);
    return e;
}

} // namespace

EmbeddingData certified_roots(const UPoly& f, double target_radius, mpfr_prec_t max_precision)
{
    if (!(target_radius > 0))
        fail_input("target radius must be positive");
    IntVec g = checked_poly(f);
    if (g.size() == 2)
        return linear_roots(g, 64);
    auto z = seed_points(g);
    double achieved = INFINITY;
    for (mpfr_prec_t prec = 64; prec <= max_precision; prec *= 2) {
        auto e = attempt(g, z, prec);
        if (e) {
            achieved = e->max_radius();
            if (achieved <= target_radius)
                return *e;
        }
    }
    std::ostringstream msg;
    msg << "could not certify roots to radius " << target_radius << " within " << max_precision
        << " bits (achieved radius " << achieved << ")";
    fail_refusal(msg.str());
}

EmbeddingData certify_centers(const UPoly& f, const std::vector<std::pair<std::string, std::string>>& centers,
                              mpfr_prec_t precision)
{
    IntVec g = checked_poly(f);
    if (centers.size() + 1 != g.size())
        fail_input("wrong number of cached roots");
    if (g.size() == 2)
        return linear_roots(g, precision);
    std::vector<CI> cs;
    for (const auto& [re, im] : centers)
        cs.push_back(CI{Interval::from_string(re, re, precision).midpoint(),
                        Interval::from_string(im, im, precision).midpoint()});
    auto e = certify(g, cs, precision);
    if (!e)
        fail_refusal("cached roots do not certify");
    return *e;
}

std::vector<CertifiedComplex> embed(const FieldElement& x, const EmbeddingData& e)
{
    if (static_cast<int>(x.coeffs.size()) > e.d())
        fail_input("element does not belong to the embedded field");
    std::vector<CertifiedComplex> out;
    for (const auto& r : e.roots) {
        mpfr_prec_t prec = e.precision;
        CI acc{Interval(prec), Interval(prec)};
        for (std::size_t i = x.coeffs.size(); i-- > 0;) {
            acc = acc * r.box;
            acc.re = acc.re + Interval(x.coeffs[i], prec);
        }
        if (r.is_real())
            acc.im = Interval(prec);
        out.push_back(CertifiedComplex{std::move(acc)});
    }
    return out;
}

Interval archimedean_product(const DilateSystem& sys, const EmbeddingData& e)
{
    if (sys.field.int_poly() != e.poly)
        fail_input("embedding data belongs to a different field");
    mpfr_prec_t prec = e.precision;
    std::vector<std::vector<CertifiedComplex>> images;
    for (const auto& l : sys.dilates)
        images.push_back(embed(l, e));
    Interval prod(Rat(1), prec);
    for (int i = 0; i < e.d(); ++i) {
        Interval factor(Rat(1), prec);
        for (const auto& im : images)
            factor = factor + im[static_cast<std::size_t>(i)].box.abs();
        prod = prod * factor;
    }
    return prod;
}

Interval archimedean_product(const DilateSystem& sys, double width, mpfr_prec_t max_precision)
{
    if (!(width > 0))
        fail_input("width must be positive");
    IntVec g = checked_poly(sys.field.poly());
    auto z = seed_points(g);
    double achieved = INFINITY;
    for (mpfr_prec_t prec = 64; prec <= max_precision; prec *= 2) {
        auto e = g.size() == 2 ? std::optional(linear_roots(g, prec)) : attempt(g, z, prec);
        if (!e)
            continue;
        Interval h = archimedean_product(sys, *e);
        achieved = h.width();
        if (achieved <= width)
            return h;
    }
    std::ostringstream msg;
    msg << "archimedean product width " << achieved << " exceeds " << width << " at " << max_precision
        << " bits; smaller input radius required";
    fail_refusal(msg.str());
}

} // namespace sumdil
