#include <doctest.h>

#include "sumdil/error.hpp"
#include "sumdil/matrix_analysis.hpp"

#include <cmath>
#include <random>

using namespace sumdil;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<std::vector<Int>> r;
    for (const auto& row : rows) {
        std::vector<Int> v;
        for (long x : row)
            v.emplace_back(x);
        r.push_back(v);
    }
    return IntMatrix::from_rows(r);
}

IntMatrix companion(const IntVec& monic)
{
    std::size_t d = monic.size() - 1;
    IntMatrix c(d, d);
    for (std::size_t j = 0; j + 1 < d; ++j)
        c(j + 1, j) = 1;
    for (std::size_t i = 0; i < d; ++i)
        c(i, d - 1) = -monic[i];
    return c;
}

IntVec ivec(std::initializer_list<long> xs)
{
    IntVec v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

MatrixFamily sec11()
{
    return MatrixFamily({mat({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}), mat({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
                         mat({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}})});
}

IntMatrix random_unimodular(std::size_t d, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, static_cast<int>(d) - 1), co(-2, 2);
    IntMatrix u = IntMatrix::identity(d);
    for (int step = 0; step < 8; ++step) {
        auto i = static_cast<std::size_t>(pick(rng));
        auto j = static_cast<std::size_t>(pick(rng));
        if (i == j)
            continue;
        IntMatrix e = IntMatrix::identity(d);
        e(i, j) = co(rng);
        u = u * e;
    }
    return u;
}

// Integer matrix evaluation of the pencil at x.
Int pencil_det(const MatrixFamily& fam, const std::vector<long>& x)
{
    IntMatrix s(fam.d, fam.d);
    for (std::size_t l = 0; l < fam.mats.size(); ++l)
        s = s + Int(x[l]) * fam.mats[l];
    return det(s);
}

bool contains_3p2sqrt2(const Interval& h)
{
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, h.lo());
    Rat lo(q);
    mpfr_get_q(q, h.hi());
    Rat hi(q);
    mpq_clear(q);
    Rat a = lo - 3, b = hi - 3;
    return (a < 0 || a * a <= 8) && b >= 0 && b * b >= 8;
}

} // namespace

TEST_CASE("determinant forms")
{
    MatrixFamily f({IntMatrix::identity(2), mat({{0, 2}, {1, 0}})});
    MultiPoly g = det_form(f);
    MultiPoly want({"x0", "x1"});
    want.add_term({2, 0}, 1);
    want.add_term({0, 2}, -2);
    CHECK(g == want);

    MatrixFamily z({IntMatrix::identity(3), IntMatrix(3, 3)});
    MultiPoly cube({"x0", "x1"});
    cube.add_term({3, 0}, 1);
    CHECK(det_form(z) == cube);

    auto s = sec11();
    MultiPoly g11 = det_form(s);
    CHECK(g11.eval({1, 1, 1}) == Rat(pencil_det(s, {1, 1, 1})));
    CHECK((g11.is_zero() || g11.is_homogeneous()));
}

TEST_CASE("determinant form agrees with pointwise determinants")
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> co(-3, 3);
    for (std::size_t d : {2u, 3u, 5u, 6u}) {
        std::vector<IntMatrix> ms;
        for (int l = 0; l < 3; ++l) {
            IntMatrix m(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    m(i, j) = co(rng);
            ms.push_back(m);
        }
        MatrixFamily fam(ms);
        MultiPoly g = det_form(fam);
        for (int t = 0; t < 10; ++t) {
            std::vector<long> x{co(rng), co(rng), co(rng)};
            CHECK(g.eval({x[0], x[1], x[2]}) == Rat(pencil_det(fam, x)));
        }
    }
}

TEST_CASE("pre-commuting")
{
    CHECK_FALSE(pre_commuting(sec11()));
    CHECK(pre_commuting(MatrixFamily({IntMatrix::identity(2), mat({{3, 7}, {-1, 4}})})));
    CHECK(pre_commuting(MatrixFamily({mat({{1, 0}, {0, 2}}), mat({{3, 0}, {0, 4}})})));
    CHECK_FALSE(pre_commuting(MatrixFamily({IntMatrix::identity(2), mat({{1, 1}, {0, 1}}), mat({{1, 0}, {1, 1}})})));
    // Singular members with a common rescaling.
    CHECK(pre_commuting(MatrixFamily({mat({{1, 0}, {0, 0}}), mat({{2, 0}, {0, 0}})})));
}

TEST_CASE("pre-commuting is invariant under left multiplication")
{
    std::mt19937_64 rng(4);
    auto c = companion(ivec({-2, 0, 0, 1}));
    for (int t = 0; t < 10; ++t) {
        IntMatrix u = random_unimodular(3, rng);
        CHECK(pre_commuting(MatrixFamily({u, u * c, u * c * c})));
    }
}

TEST_CASE("irreducibility")
{
    auto r = irreducible(MatrixFamily({IntMatrix::identity(2), mat({{0, 2}, {1, 0}})}));
    CHECK(r.verdict == Verdict::yes);

    auto diag = irreducible(MatrixFamily({IntMatrix::identity(2), mat({{1, 0}, {0, 2}})}));
    REQUIRE(diag.verdict == Verdict::no);
    REQUIRE(diag.u);
    CHECK(diag.u->cols() == 1);
    RatVec u = diag.u->column(0);
    CHECK(((u[0] == 0) != (u[1] == 0)));

    auto s = irreducible(sec11());
    CHECK(s.verdict == Verdict::yes);
    CHECK(s.prime > 0);

    auto ker = irreducible(MatrixFamily({mat({{1, 0}, {0, 0}}), mat({{2, 0}, {0, 0}})}));
    CHECK(ker.verdict == Verdict::no);

    auto block = irreducible(MatrixFamily({IntMatrix::identity(3), mat({{0, 2, 0}, {1, 0, 0}, {0, 0, 5}})}));
    CHECK(block.verdict == Verdict::no);
}

TEST_CASE("recovery")
{
    auto rec = recover_dilates(MatrixFamily({IntMatrix::identity(2), mat({{0, 2}, {1, 0}})}));
    CHECK(rec.system.d() == 2);
    CHECK(rec.system.field.norm(rec.system.dilates[0]) == -2);
    CHECK(rec.system.field.charpoly(rec.system.dilates[0]) == parse_upoly("t^2-2", 't'));

    auto one = recover_dilates(MatrixFamily({mat({{1}}), mat({{3}})}));
    CHECK(one.system.d() == 1);
    CHECK(one.system.dilates[0].coeffs[0] == 3);
}

TEST_CASE("recovery identity and determinant form")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> co(-20, 20), den(1, 9);
    std::vector<IntVec> polys{ivec({-2, 0, 1}), ivec({1, 1, 1}), ivec({-2, 0, 0, 1}), ivec({-1, -1, 0, 1}),
                              ivec({1, 0, 0, 0, 1})};
    for (const auto& f : polys) {
        IntMatrix c = companion(f);
        std::size_t d = c.rows();
        IntMatrix a = random_unimodular(d, rng) * (Int(2) * IntMatrix::identity(d) + c);
        MatrixFamily fam({a, a * c, a * c * c + a});
        auto rec = recover_dilates(fam);
        const auto& k = rec.system.field;
        RatMatrix l0inv = *inverse(to_rat(fam.mats[0]));
        for (int t = 0; t < 100; ++t) {
            RatVec u(d);
            for (auto& x : u)
                x = make_rat(co(rng), den(rng));
            FieldElement x = rec.preimage(u);
            for (std::size_t l = 1; l < fam.mats.size(); ++l)
                CHECK(l0inv * to_rat(fam.mats[l]) * u == rec.apply(k.mul(rec.system.dilates[l - 1], x)));
        }
        MultiPoly nf = norm_form(rec.system);
        CHECK(det_form(fam) == Rat(det(fam.mats[0])) * nf);
    }
}

TEST_CASE("coprimality")
{
    IntMatrix c = mat({{0, 2}, {1, 0}});
    CHECK(coprime(MatrixFamily({IntMatrix::identity(2), c})));
    CHECK_FALSE(coprime(MatrixFamily({Int(2) * IntMatrix::identity(2), Int(2) * c})));
    auto s = coprime_report(sec11());
    CHECK(s.verdict == Verdict::yes);
    CHECK(s.certificate_gcd == 1);
    // L_0 = 2I, L_1 = companion of t^2 - 2: lambda = theta/2, D = 2 < 4 = det.
    CHECK_FALSE(coprime(MatrixFamily({Int(2) * IntMatrix::identity(2), c})));
    // lambda = 1/2 with L_0 = 2: coprime.
    CHECK(coprime(MatrixFamily({mat({{2}}), mat({{1}})})));
    CHECK_FALSE(coprime(MatrixFamily({mat({{4}}), mat({{2}})})));
}

TEST_CASE("coprimality is invariant under unimodular change of basis")
{
    std::mt19937_64 rng(12);
    std::vector<MatrixFamily> fams{
        MatrixFamily({IntMatrix::identity(2), mat({{0, 2}, {1, 0}})}),
        MatrixFamily({Int(2) * IntMatrix::identity(2), mat({{0, 2}, {1, 0}})}),
        MatrixFamily({mat({{2, 1}, {0, 1}}), mat({{1, 3}, {1, 1}})}),
        sec11()};
    for (const auto& fam : fams) {
        auto base = coprime_report(fam).verdict;
        REQUIRE(base != Verdict::inconclusive);
        for (int t = 0; t < 5; ++t) {
            IntMatrix u = random_unimodular(fam.d, rng), v = random_unimodular(fam.d, rng);
            std::vector<IntMatrix> ms;
            for (const auto& l : fam.mats)
                ms.push_back(u * l * v);
            CHECK(coprime_report(MatrixFamily(ms)).verdict == base);
        }
    }
}

TEST_CASE("lattice certificates agree with the denominator norm")
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> co(-4, 4);
    int decided = 0, yes = 0, no = 0;
    for (int t = 0; t < 60; ++t) {
        IntMatrix a(2, 2), b(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                a(i, j) = co(rng);
                b(i, j) = co(rng);
            }
        if (det(a) == 0)
            continue;
        MatrixFamily fam({a, b});
        if (irreducible(fam).verdict != Verdict::yes)
            continue;
        auto norm_route = coprime_report(fam);
        auto lattice_route = coprime_by_certificates(fam);
        REQUIRE(norm_route.verdict != Verdict::inconclusive);
        if (lattice_route.verdict == Verdict::inconclusive)
            continue;
        CHECK(norm_route.verdict == lattice_route.verdict);
        ++decided;
        (norm_route.verdict == Verdict::yes ? yes : no)++;
    }
    CHECK(decided >= 10);
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("H for matrix families")
{
    auto h = h_matrices(MatrixFamily({IntMatrix::identity(2), mat({{0, 2}, {1, 0}})}));
    CHECK(contains_3p2sqrt2(h.h));
    CHECK(h.h.width() < 1e-9);

    auto rational = h_matrices(MatrixFamily({mat({{1}}), mat({{2}})}));
    REQUIRE(rational.exact_rational);
    CHECK(*rational.exact_rational == 3);

    CHECK_THROWS_AS(h_matrices(sec11()), Error);
}

TEST_CASE("H of companion families matches the dilate constant")
{
    for (const char* f : {"t^2-2", "t^2-3", "t^2+1", "t^2+t-1", "t^3-2", "t^3-t-1"}) {
        UPoly p = parse_upoly(f, 't');
        IntVec coeffs = p.primitive_int();
        MatrixFamily fam({IntMatrix::identity(coeffs.size() - 1), companion(coeffs)});
        auto hm = h_matrices(fam);
        auto hc = h_constant(make_system(f, {"t"}));
        CHECK(hm.h.overlaps(hc.h));
        CHECK(coprime(fam));
    }
}

TEST_CASE("analysis report")
{
    auto r = analyze(sec11());
    REQUIRE(r.pre_commuting);
    CHECK_FALSE(*r.pre_commuting);
    CHECK(r.irreducible.verdict == Verdict::yes);
    REQUIRE(r.coprime);
    CHECK(r.coprime->verdict == Verdict::yes);
    CHECK_FALSE(r.h);
    CHECK_FALSE(r.recovered);

    auto q = analyze(MatrixFamily({IntMatrix::identity(2), mat({{0, 2}, {1, 0}})}));
    CHECK(q.recovered);
    CHECK(q.h);
}
