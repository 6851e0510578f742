#include <doctest.h>

#include "sumdil/numfield.hpp"

#include <random>

using namespace sumdil;

namespace {

MultiPoly form2(const Rat& a, const Rat& b)
{
    MultiPoly p({"x0", "x1"});
    p.add_term({2, 0}, a);
    p.add_term({0, 2}, b);
    return p;
}

// Random dilate (a + b t)/c over t^2 - m, nonzero.
FieldElement random_dilate(const NumberField& k, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
    for (;;) {
        FieldElement x{{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))}};
        for (auto& c : x.coeffs)
            c.canonicalize();
        if (!x.is_zero())
            return x;
    }
}

} // namespace

TEST_CASE("element multiplication")
{
    NumberField k(parse_upoly("t^2-2"));
    CHECK(elem_mul(k.theta(), k.theta(), k) == k.from_rat(2));
    FieldElement x = k.parse("3/4 - 5t");
    CHECK(elem_mul(k.one(), x, k) == x);
    CHECK(k.mul(k.parse("1+t"), k.parse("1-t")) == k.from_rat(-1));
    CHECK(k.mul(x, k.inv(x)) == k.one());

    NumberField nm(parse_upoly("2t^2-1"));
    CHECK(nm.mul(nm.theta(), nm.theta()) == nm.from_rat(Rat(1, 2)));
    CHECK_THROWS_AS(NumberField(parse_upoly("t^2-4")), Error);
}

TEST_CASE("norm forms")
{
    CHECK(norm_form(make_system("t^2-2", {"t"})) == form2(1, -2));
    CHECK(norm_form(make_system("2t^2-1", {"t"})) == form2(1, Rat(-1, 2)));
    MultiPoly lin({"x0", "x1"});
    lin.add_term({1, 0}, 1);
    lin.add_term({0, 1}, Rat(3, 2));
    CHECK(norm_form(make_system("t", {"3/2"})) == lin);
}

TEST_CASE("denominator norms")
{
    CHECK(denominator_norm(make_system("t^2-2", {"t"})) == 1);
    CHECK(denominator_norm(make_system("2t^2-1", {"t"})) == 2);
    CHECK(denominator_norm(make_system("t", {"3/2"})) == 2);
    CHECK(denominator_norm(make_system("t^2-2", {"1/2*t"})) == 2);
}

TEST_CASE("quadratic catalog")
{
    auto b2 = quadratic_basis(2);
    CHECK(b2.elements()[1] == b2.field().theta());
    auto b5 = quadratic_basis(5);
    CHECK(b5.elements()[1] == b5.field().parse("1/2 + 1/2*t"));
    auto bm1 = quadratic_basis(-1);
    CHECK(bm1.elements()[1] == bm1.field().theta());
    CHECK_THROWS_AS(quadratic_basis(8), Error);
    CHECK_THROWS_AS(quadratic_basis(1), Error);
}

TEST_CASE("basis without leading 1 is rewritten")
{
    NumberField k(parse_upoly("t^2-2"));
    IntegralBasis b(k, {k.theta(), k.parse("1+t")});
    CHECK(b.elements()[0] == k.one());
    CHECK(b.is_integral(k.theta()));
    CHECK_FALSE(b.is_integral(k.parse("1/2*t")));
    CHECK_THROWS_AS(IntegralBasis(k, {k.from_rat(2), k.theta()}), Error);
    CHECK_THROWS_AS(IntegralBasis(k, {k.one(), k.parse("1/2*t")}), Error);
}

TEST_CASE("denominator ideal examples")
{
    auto b = quadratic_basis(2);
    const auto& k = b.field();
    auto D1 = denominator_ideal(DilateSystem(k, {k.theta()}), b);
    CHECK(D1 == unit_ideal(b));
    auto D2 = denominator_ideal(DilateSystem(k, {k.inv(k.theta())}), b);
    CHECK(D2.lattice.index() == 2);
    CHECK(D2 == principal_ideal(k.theta(), b));
    CHECK(ideal_member(k.parse("2+t"), D2, b));
    CHECK_FALSE(ideal_member(k.parse("1+t"), D2, b));

    NumberField q = NumberField::rationals();
    IntegralBasis bq = monogenic_basis(q);
    auto D3 = denominator_ideal(DilateSystem(q, {q.from_rat(Rat(3, 2))}), bq);
    CHECK(D3.lattice == IntegerLattice::scaled(1, 2));
}

TEST_CASE("denominator ideal index equals denominator norm")
{
    std::mt19937_64 rng(1);
    for (std::int64_t m : {2, 3, 5, -1, -3, 6, 7, -5, 13}) {
        auto b = quadratic_basis(m);
        const auto& k = b.field();
        for (int t = 0; t < 10; ++t) {
            std::vector<FieldElement> ls{random_dilate(k, rng)};
            if (t % 2)
                ls.push_back(random_dilate(k, rng));
            DilateSystem sys(k, ls);
            auto D = denominator_ideal(sys, b);
            CHECK(D.lattice.index() == denominator_norm(sys));
            CHECK(is_ideal(D, b));
            for (const auto& x : ideal_basis(D, b))
                for (const auto& l : ls)
                    CHECK(b.is_integral(k.mul(x, l)));
        }
    }
}

TEST_CASE("ideal arithmetic")
{
    auto b = quadratic_basis(2);
    const auto& k = b.field();
    auto r2 = principal_ideal(k.theta(), b);
    CHECK(ideal_product(r2, r2, b) == principal_ideal(k.from_rat(2), b));
    CHECK(ideal_product(unit_ideal(b), unit_ideal(b), b) == unit_ideal(b));
    CHECK(ideal_inverse(r2, b) == principal_ideal(k.inv(k.theta()), b));

    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        auto I = ideal_from_generators({random_dilate(k, rng), random_dilate(k, rng)}, b);
        CHECK(is_ideal(I, b));
        CHECK(ideal_product(I, ideal_inverse(I, b), b) == unit_ideal(b));
    }
    for (std::int64_t m : {-5, 10, -6}) {   // non-principal ideals exist here
        auto bm = quadratic_basis(m);
        const auto& km = bm.field();
        for (int t = 0; t < 10; ++t) {
            auto I = ideal_from_generators({random_dilate(km, rng), random_dilate(km, rng)}, bm);
            CHECK(ideal_product(I, ideal_inverse(I, bm), bm) == unit_ideal(bm));
            auto J = ideal_intersect(I, unit_ideal(bm));
            CHECK(ideal_contains(I, J));
            CHECK(ideal_contains(unit_ideal(bm), J));
        }
    }
}

TEST_CASE("multiplication matrices")
{
    auto b = quadratic_basis(2);
    const auto& k = b.field();
    auto O = unit_ideal(b);
    CHECK(mult_matrix(k.theta(), O, O, b) == IntMatrix{{0, 2}, {1, 0}});
    CHECK(mult_matrix(k.one(), O, O, b) == IntMatrix::identity(2));
    auto r2 = principal_ideal(k.theta(), b);
    IntMatrix m = mult_matrix(k.inv(k.theta()), r2, O, b);
    CHECK(abs(det(m)) == 1);
    CHECK_THROWS_AS(mult_matrix(k.inv(k.theta()), O, O, b), Error);

    // functoriality: (lambda mu) = lambda o mu across O -> r2 -> O... chained lattices
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        FieldElement lam = random_dilate(k, rng), mu = random_dilate(k, rng);
        auto A = principal_ideal(k.one(), b);
        auto B = ideal_product(principal_ideal(mu, b), A, b);
        auto C = ideal_product(principal_ideal(lam, b), B, b);
        IntMatrix m1 = mult_matrix(mu, A, B, b);
        IntMatrix m2 = mult_matrix(lam, B, C, b);
        CHECK(mult_matrix(k.mul(lam, mu), A, C, b) == m2 * m1);
    }
}

TEST_CASE("norm form evaluates the field norm")
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> c(-5, 5);
    for (const char* f : {"t^2-2", "t^3-2", "2t^2-1", "t^3-t-1", "t^2+t+1"}) {
        NumberField k(parse_upoly(f));
        std::vector<FieldElement> pows;
        for (int j = 1; j < k.degree(); ++j)
            pows.push_back(k.pow(k.theta(), j));
        MultiPoly F = norm_form(DilateSystem(k, pows));
        CHECK(F.is_homogeneous());
        CHECK(F.total_degree() == k.degree());
        for (int t = 0; t < 20; ++t) {
            FieldElement a{RatVec(static_cast<std::size_t>(k.degree()))}, bb = a;
            for (auto& x : a.coeffs)
                x = c(rng);
            for (auto& x : bb.coeffs)
                x = c(rng);
            CHECK(F.eval(a.coeffs) == k.norm(a));
            CHECK(k.norm(k.mul(a, bb)) == k.norm(a) * k.norm(bb));
            CHECK(F.eval(k.mul(a, bb).coeffs) == F.eval(a.coeffs) * F.eval(bb.coeffs));
        }
    }
}

TEST_CASE("generation check")
{
    CHECK(dilates_generate_field(make_system("t^2-2", {"t"})));
    CHECK_FALSE(dilates_generate_field(make_system("t^2-2", {"3"})));
    CHECK_FALSE(dilates_generate_field(make_system("t^4-2", {"t^2"})));
    CHECK(dilates_generate_field(make_system("t^4-2", {"t^2", "t^3"})));
}
