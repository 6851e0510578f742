#include "sumdil/numfield.hpp"

#include "sumdil/error.hpp"
#include "sumdil/factor.hpp"

#include <random>

namespace sumdil {

bool FieldElement::is_zero() const
{
    for (const auto& c : coeffs)
        if (c != 0)
            return false;
    return true;
}

bool FieldElement::is_rational() const
{
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
            return false;
    return true;
}

NumberField::NumberField(const UPoly& f)
{
    if (f.degree() < 1)
        fail_input("defining polynomial must have positive degree");
    fint_ = f.primitive_int();
    f_ = UPoly(fint_);
    d_ = f_.degree();
    auto cert = certify_irreducible(f_, 10);
    if (cert.verdict == Irreducibility::reducible)
        fail_input("defining polynomial " + f_.to_string() + " is reducible");
    if (cert.verdict == Irreducibility::unknown)
        fail_refusal("could not certify irreducibility of " + f_.to_string());
}

void NumberField::check(const FieldElement& a) const
{
    if (a.coeffs.size() != static_cast<std::size_t>(d_))
        fail_input("field element has wrong length");
}

FieldElement NumberField::element(const UPoly& p) const
{
    UPoly r = p % f_;
    RatVec c = r.coeffs();
    c.resize(static_cast<std::size_t>(d_), Rat(0));
    return {c};
}

FieldElement NumberField::parse(const std::string& text) const { return element(parse_upoly(text, 't')); }

FieldElement NumberField::from_rat(const Rat& r) const { return element(UPoly::constant(r)); }

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const
{
    check(a);
    check(b);
    FieldElement r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] += b.coeffs[i];
    return r;
}

FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const
{
    return add(a, scale(-1, b));
}

FieldElement NumberField::scale(const Rat& s, const FieldElement& a) const
{
    check(a);
    FieldElement r = a;
    for (auto& c : r.coeffs)
        c *= s;
    return r;
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const
{
    check(a);
    check(b);
    return element(a.as_poly() * b.as_poly());
}

FieldElement NumberField::inv(const FieldElement& a) const
{
    check(a);
    if (a.is_zero())
        fail_input("inverse of zero");
    auto eg = ext_gcd(a.as_poly(), f_);
    if (eg.g.degree() != 0)
        fail_internal("element not invertible: defining polynomial is reducible");
    return element(eg.s);
}

FieldElement NumberField::pow(const FieldElement& a, int e) const
{
    FieldElement base = e < 0 ? inv(a) : a;
    FieldElement r = one();
    for (int i = 0; i < std::abs(e); ++i)
        r = mul(r, base);
    return r;
}

RatMatrix NumberField::mult_matrix(const FieldElement& a) const
{
    check(a);
    auto d = static_cast<std::size_t>(d_);
    RatMatrix m(d, d);
    UPoly p = a.as_poly();
    for (std::size_t j = 0; j < d; ++j) {
        FieldElement col = element(p * UPoly::monomial(1, j));
        m.set_column(j, col.coeffs);
    }
    return m;
}

Rat NumberField::norm(const FieldElement& a) const { return det(mult_matrix(a)); }

UPoly NumberField::charpoly(const FieldElement& a) const { return sumdil::charpoly(mult_matrix(a)); }

FieldElement elem_mul(const FieldElement& a, const FieldElement& b, const NumberField& k) { return k.mul(a, b); }

DilateSystem::DilateSystem(NumberField f, std::vector<FieldElement> lambdas) : field(std::move(f)), dilates(std::move(lambdas))
{
    if (dilates.empty())
        fail_input("at least one dilate is required");
    for (const auto& l : dilates) {
        if (l.coeffs.size() != static_cast<std::size_t>(field.degree()))
            fail_input("dilate has wrong length");
        if (l.is_zero())
            fail_input("dilates must be nonzero");
    }
}

std::vector<FieldElement> DilateSystem::all() const
{
    std::vector<FieldElement> v{field.one()};
    v.insert(v.end(), dilates.begin(), dilates.end());
    return v;
}

DilateSystem make_system(const std::string& field_poly, const std::vector<std::string>& dilates)
{
    NumberField k(parse_upoly(field_poly, 't'));
    std::vector<FieldElement> ls;
    for (const auto& s : dilates)
        ls.push_back(k.parse(s));
    return DilateSystem(k, ls);
}

bool dilates_generate_field(const DilateSystem& sys, std::uint64_t seed, int retries)
{
    if (sys.d() == 1)
        return true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int t = 0; t < retries; ++t) {
        FieldElement a = sys.field.zero();
        for (const auto& l : sys.dilates)
            a = sys.field.add(a, sys.field.scale(coef(rng), l));
        if (is_squarefree(sys.field.charpoly(a)))
            return true;
    }
    return false;
}

MultiPoly norm_form(const DilateSystem& sys)
{
    std::size_t k = sys.k();
    std::vector<std::string> xs;
    for (std::size_t l = 0; l <= k; ++l)
        xs.push_back("x" + std::to_string(l));
    if (sys.d() == 1) {
        MultiPoly p = MultiPoly::variable(xs, 0);
        for (std::size_t l = 0; l < k; ++l)
            p = p + sys.dilates[l].coeffs[0] * MultiPoly::variable(xs, l + 1);
        return p;
    }
    std::vector<std::string> vars{"y"};
    vars.insert(vars.end(), xs.begin(), xs.end());
    MultiPoly lin = MultiPoly::variable(vars, 1);
    for (std::size_t l = 0; l < k; ++l)
        lin = lin + MultiPoly::variable(vars, l + 2) * MultiPoly::from_upoly(vars, 0, sys.dilates[l].as_poly());
    MultiPoly f = MultiPoly::from_upoly(vars, 0, sys.field.poly());
    MultiPoly res = resultant(f, lin, 0);
    Rat lc = sys.field.poly().lc();
    Rat scale = 1;
    for (int i = 0; i < lin.degree_in(0); ++i)
        scale *= lc;
    return (1 / scale) * res;
}

Int denominator_norm(const DilateSystem& sys) { return norm_form(sys).denominator_lcm(); }

namespace {

// Unimodular integer matrix whose first column is the primitive vector c.
IntMatrix unimodular_completion(const IntVec& c)
{
    IntMatrix col(c.size(), 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        col(i, 0) = c[i];
    auto s = smith(col);
    if (abs(s.diag[0]) != 1)
        fail_input("basis does not contain 1 as a primitive element");
    auto uinv = inverse(to_rat(s.U));
    IntMatrix u = to_int_matrix(*uinv);
    // U c V = (1, 0, ...)  =>  c = U^{-1} (V^{-1}, 0, ...)
    Int v = s.V(0, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        u(i, 0) *= v;
    return u;
}

} // namespace

IntegralBasis::IntegralBasis(NumberField field, std::vector<FieldElement> elements, BasisProvenance prov)
    : field_(std::move(field)), e_(std::move(elements)), prov_(prov)
{
    auto d = static_cast<std::size_t>(field_.degree());
    if (e_.size() != d)
        fail_input("integral basis must have d elements");
    to_power_ = RatMatrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        if (e_[j].coeffs.size() != d)
            fail_input("basis element has wrong length");
        to_power_.set_column(j, e_[j].coeffs);
    }
    auto inv = inverse(to_power_);
    if (!inv)
        fail_input("integral basis is linearly dependent");
    from_power_ = *inv;
    if (e_[0] != field_.one()) {
        RatVec c = coords(field_.one());
        IntVec ci;
        for (const auto& x : c) {
            if (x.get_den() != 1)
                fail_input("1 is not in the span of the basis");
            ci.push_back(x.get_num());
        }
        IntMatrix u = unimodular_completion(ci);
        std::vector<FieldElement> ne;
        for (std::size_t j = 0; j < d; ++j) {
            FieldElement x = field_.zero();
            for (std::size_t i = 0; i < d; ++i)
                x = field_.add(x, field_.scale(Rat(u(i, j)), e_[i]));
            ne.push_back(x);
        }
        e_ = ne;
        for (std::size_t j = 0; j < d; ++j)
            to_power_.set_column(j, e_[j].coeffs);
        from_power_ = *inverse(to_power_);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            if (!is_integral(field_.mul(e_[i], e_[j])))
                fail_input("basis not multiplicatively closed");
}

RatVec IntegralBasis::coords(const FieldElement& x) const { return from_power_ * x.coeffs; }

FieldElement IntegralBasis::from_coords(const RatVec& c) const { return {to_power_ * c}; }

bool IntegralBasis::is_integral(const FieldElement& x) const
{
    for (const auto& c : coords(x))
        if (c.get_den() != 1)
            return false;
    return true;
}

RatMatrix IntegralBasis::mult_matrix(const FieldElement& x) const
{
    return from_power_ * field_.mult_matrix(x) * to_power_;
}

IntegralBasis quadratic_basis(std::int64_t m)
{
    if (m == 0 || m == 1)
        fail_input("quadratic field needs m != 0, 1");
    for (std::int64_t p = 2; p * p <= std::abs(m); ++p)
        if (m % (p * p) == 0)
            fail_input("m = " + std::to_string(m) + " is not squarefree");
    RatVec f{Rat(to_int(-m)), 0, 1};
    NumberField k{UPoly(f)};
    FieldElement second = k.theta();
    if (((m % 4) + 4) % 4 == 1)
        second = k.scale(Rat(1, 2), k.add(k.one(), k.theta()));
    return IntegralBasis(k, {k.one(), second}, BasisProvenance::catalog);
}

IntegralBasis monogenic_basis(const NumberField& k)
{
    if (!k.monic())
        fail_input("monogenic basis requires a monic defining polynomial");
    std::vector<FieldElement> e;
    for (int j = 0; j < k.degree(); ++j)
        e.push_back(k.element(UPoly::monomial(1, static_cast<std::size_t>(j))));
    return IntegralBasis(k, e, BasisProvenance::monogenic);
}

Rat FractionalIdealLattice::norm() const
{
    Int dd = 1;
    for (std::size_t i = 0; i < lattice.dim(); ++i)
        dd *= den;
    return Rat(lattice.index()) / Rat(dd);
}

namespace {

IntegerLattice scale_lattice(const IntegerLattice& l, const Int& s)
{
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < l.dim(); ++j) {
        IntVec c;
        for (auto x : l.column(j))
            c.push_back(to_int(x) * s);
        cols.push_back(std::move(c));
    }
    return IntegerLattice::hnf(cols, l.dim());
}

FractionalIdealLattice lattice_from_coord_vectors(const std::vector<RatVec>& vecs, std::size_t d)
{
    Int den = 1;
    for (const auto& v : vecs)
        for (const auto& x : v)
            den = lcm(den, x.get_den());
    std::vector<IntVec> cols;
    for (const auto& v : vecs) {
        IntVec c;
        for (const auto& x : v) {
            Rat s = x * den;
            c.push_back(s.get_num());
        }
        cols.push_back(std::move(c));
    }
    return normalize(IntegerLattice::hnf(cols, d), den);
}

FractionalIdealLattice lattice_from_elements(const std::vector<FieldElement>& elems, const IntegralBasis& basis)
{
    std::vector<RatVec> vecs;
    for (const auto& x : elems)
        vecs.push_back(basis.coords(x));
    return lattice_from_coord_vectors(vecs, static_cast<std::size_t>(basis.degree()));
}

} // namespace

FractionalIdealLattice normalize(const IntegerLattice& l, const Int& den)
{
    if (den <= 0)
        fail_input("ideal denominator must be positive");
    Int g = den;
    for (std::size_t i = 0; i < l.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            g = gcd(g, to_int(l.entry(i, j)));
    if (g == 1)
        return {l, den};
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < l.dim(); ++j) {
        IntVec c;
        for (auto x : l.column(j))
            c.push_back(to_int(x) / g);
        cols.push_back(std::move(c));
    }
    return {IntegerLattice::hnf(cols, l.dim()), den / g};
}

FractionalIdealLattice unit_ideal(const IntegralBasis& basis)
{
    return {IntegerLattice::identity(static_cast<std::size_t>(basis.degree())), 1};
}

FractionalIdealLattice ideal_from_generators(const std::vector<FieldElement>& gens, const IntegralBasis& basis)
{
    std::vector<FieldElement> all;
    for (const auto& g : gens) {
        if (g.is_zero())
            continue;
        for (const auto& e : basis.elements())
            all.push_back(basis.field().mul(g, e));
    }
    if (all.empty())
        fail_input("zero ideal");
    return lattice_from_elements(all, basis);
}

FractionalIdealLattice principal_ideal(const FieldElement& x, const IntegralBasis& basis)
{
    return ideal_from_generators({x}, basis);
}

std::vector<FieldElement> ideal_basis(const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    std::vector<FieldElement> out;
    for (std::size_t j = 0; j < a.lattice.dim(); ++j) {
        RatVec c;
        for (auto x : a.lattice.column(j))
            c.push_back(Rat(to_int(x)) / Rat(a.den));
        out.push_back(basis.from_coords(c));
    }
    return out;
}

FractionalIdealLattice ideal_product(const FractionalIdealLattice& a, const FractionalIdealLattice& b,
                                     const IntegralBasis& basis)
{
    auto ba = ideal_basis(a, basis), bb = ideal_basis(b, basis);
    std::vector<FieldElement> prods;
    for (const auto& x : ba)
        for (const auto& y : bb)
            prods.push_back(basis.field().mul(x, y));
    return lattice_from_elements(prods, basis);
}

FractionalIdealLattice ideal_inverse(const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    std::vector<RatVec> rows;
    for (const auto& b : ideal_basis(a, basis)) {
        if (b.is_zero())
            fail_input("zero ideal");
        RatMatrix t = basis.mult_matrix(b);
        for (std::size_t i = 0; i < t.rows(); ++i)
            rows.push_back(t.row(i));
    }
    ScaledLattice s = dual_of_span(rows, static_cast<std::size_t>(basis.degree()));
    return normalize(s.lattice, s.den);
}

FractionalIdealLattice ideal_intersect(const FractionalIdealLattice& a, const FractionalIdealLattice& b)
{
    Int den = lcm(a.den, b.den);
    IntegerLattice la = scale_lattice(a.lattice, den / a.den);
    IntegerLattice lb = scale_lattice(b.lattice, den / b.den);
    return normalize(lattice_intersect(la, lb), den);
}

FractionalIdealLattice ideal_power(const FractionalIdealLattice& a, unsigned e, const IntegralBasis& basis)
{
    FractionalIdealLattice r = unit_ideal(basis);
    for (unsigned i = 0; i < e; ++i)
        r = ideal_product(r, a, basis);
    return r;
}

bool ideal_contains(const FractionalIdealLattice& outer, const FractionalIdealLattice& inner)
{
    Int den = lcm(outer.den, inner.den);
    return scale_lattice(outer.lattice, den / outer.den).contains(scale_lattice(inner.lattice, den / inner.den));
}

namespace {

std::optional<IVec> scaled_coords(const FieldElement& x, const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    IVec v;
    for (const auto& c : basis.coords(x)) {
        Rat s = c * a.den;
        if (s.get_den() != 1)
            return std::nullopt;
        v.push_back(to_i64(s.get_num()));
    }
    return v;
}

} // namespace

bool ideal_member(const FieldElement& x, const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    auto v = scaled_coords(x, a, basis);
    return v && a.lattice.member(*v);
}

IVec ideal_coordinates(const FieldElement& x, const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    auto v = scaled_coords(x, a, basis);
    if (!v || !a.lattice.member(*v))
        fail_input("element is not in the ideal");
    return a.lattice.coordinates(*v);
}

FieldElement ideal_element(const IVec& coords, const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    auto b = ideal_basis(a, basis);
    const NumberField& k = basis.field();
    FieldElement x = k.zero();
    for (std::size_t j = 0; j < coords.size(); ++j)
        if (coords[j] != 0)
            x = k.add(x, k.scale(Rat(to_int(coords[j])), b[j]));
    return x;
}

bool is_ideal(const FractionalIdealLattice& a, const IntegralBasis& basis)
{
    for (const auto& e : basis.elements())
        for (const auto& b : ideal_basis(a, basis))
            if (!ideal_member(basis.field().mul(e, b), a, basis))
                return false;
    return true;
}

FractionalIdealLattice denominator_ideal(const DilateSystem& sys, const IntegralBasis& basis)
{
    if (sys.field != basis.field())
        fail_input("integral basis belongs to a different field");
    auto d = static_cast<std::size_t>(sys.d());
    std::vector<RatVec> rows;
    RatMatrix id = RatMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        rows.push_back(id.row(i));
    for (const auto& l : sys.dilates) {
        RatMatrix t = basis.mult_matrix(l);
        for (std::size_t i = 0; i < d; ++i)
            rows.push_back(t.row(i));
    }
    ScaledLattice s = dual_of_span(rows, d);
    FractionalIdealLattice D = normalize(s.lattice, s.den);
    if (!D.integral())
        fail_internal("denominator ideal is not integral");
    if (!is_ideal(D, basis))
        fail_input("basis not multiplicatively closed");
    return D;
}

IntMatrix mult_matrix(const FieldElement& lambda, const FractionalIdealLattice& from, const FractionalIdealLattice& to,
                      const IntegralBasis& basis)
{
    RatMatrix t = basis.mult_matrix(lambda);
    RatMatrix lf = (Rat(1) / Rat(from.den)) * to_rat(from.lattice.basis());
    RatMatrix lt_inv = Rat(to.den) * *inverse(to_rat(to.lattice.basis()));
    RatMatrix m = lt_inv * t * lf;
    if (!is_integral(m))
        fail_input("dilate does not map lattice into target");
    IntMatrix mi = to_int_matrix(m);
    Rat expected = abs(basis.field().norm(lambda)) * from.norm() / to.norm();
    if (Rat(abs(det(mi))) != expected)
        fail_internal("multiplication matrix determinant mismatch");
    return mi;
}

} // namespace sumdil
