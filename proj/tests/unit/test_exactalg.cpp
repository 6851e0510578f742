#include <doctest.h>

#include "sumdil/factor.hpp"
#include "sumdil/lattice.hpp"
#include "sumdil/multipoly.hpp"
#include "sumdil/upoly.hpp"

#include <random>
#include <set>

using namespace sumdil;

namespace {

const std::vector<std::string> yx = {"y", "x0", "x1"};

MultiPoly poly_y(const UPoly& u) { return MultiPoly::from_upoly(yx, 0, u); }

MultiPoly linear_form(const UPoly& g)
{
    return MultiPoly::variable(yx, 1) + MultiPoly::variable(yx, 2) * poly_y(g);
}

MultiPoly parse_form(std::initializer_list<std::pair<Exponent, Rat>> terms)
{
    MultiPoly p({"x0", "x1"});
    for (const auto& [e, c] : terms)
        p.add_term(e, c);
    return p;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n)
{
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), mult(-3, 3);
    for (int s = 0; s < 8; ++s) {
        std::size_t i = static_cast<std::size_t>(pick(rng)), j = static_cast<std::size_t>(pick(rng));
        if (i == j)
            continue;
        Int m = mult(rng);
        for (std::size_t k = 0; k < n; ++k)
            u(k, j) += m * u(k, i);
    }
    return u;
}

} // namespace

TEST_CASE("resultant examples")
{
    std::vector<std::string> y = {"y"};
    MultiPoly f = MultiPoly::from_upoly(y, 0, parse_upoly("t-1"));
    MultiPoly g = MultiPoly::from_upoly(y, 0, parse_upoly("t+1"));
    MultiPoly r = resultant(f, g, 0);
    CHECK(r.total_degree() == 0);
    CHECK(r.coeff({}) == 2);

    MultiPoly r2 = resultant(poly_y(parse_upoly("t^2-2")), linear_form(parse_upoly("t")), 0);
    CHECK(r2 == parse_form({{{2, 0}, 1}, {{0, 2}, -2}}));
    MultiPoly r3 = resultant(poly_y(parse_upoly("t^2+1")), linear_form(parse_upoly("t")), 0);
    CHECK(r3 == parse_form({{{2, 0}, 1}, {{0, 2}, 1}}));

    CHECK_THROWS_AS(resultant(MultiPoly(yx), linear_form(parse_upoly("t")), 0), Error);
}

TEST_CASE("resultant is multiplicative in the second argument")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-4, 4);
    std::vector<std::string> y = {"y"};
    auto rnd = [&](int deg) {
        RatVec v;
        for (int i = 0; i < deg; ++i)
            v.emplace_back(c(rng));
        v.emplace_back(c(rng) == 0 ? 1 : 2);
        return MultiPoly::from_upoly(y, 0, UPoly(v));
    };
    for (int t = 0; t < 40; ++t) {
        MultiPoly f = rnd(1 + t % 3), g = rnd(t % 3), h = rnd(1 + t % 2);
        CHECK(resultant(f, g * h, 0) == resultant(f, g, 0) * resultant(f, h, 0));
    }
}

TEST_CASE("hnf examples")
{
    auto a = IntegerLattice::hnf(std::vector<IVec>{{2, 0}, {0, 3}}, 2);
    CHECK(a.diag(0) == 2);
    CHECK(a.diag(1) == 3);
    CHECK(a.index() == 6);
    auto b = IntegerLattice::hnf(std::vector<IVec>{{1, 1}, {1, -1}}, 2);
    CHECK(b.column(0) == IVec{1, 1});
    CHECK(b.column(1) == IVec{0, 2});
    CHECK(b.index() == 2);
    CHECK(IntegerLattice::hnf(std::vector<IVec>{{1, 0}, {0, 1}}, 2) == IntegerLattice::identity(2));
    CHECK_THROWS_AS(IntegerLattice::hnf(std::vector<IVec>{{1, 2}, {2, 4}}, 2), Error);
}

TEST_CASE("hnf is invariant under unimodular column transforms")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-9, 9);
    int checked = 0;
    while (checked < 500) {
        IntMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) = c(rng);
        if (det(m) == 0)
            continue;
        auto h1 = IntegerLattice::hnf(m);
        auto h2 = IntegerLattice::hnf(m * random_unimodular(rng, 3));
        CHECK(h1 == h2);
        CHECK(h1.index() == abs(det(m)));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                CHECK(h1.entry(j, i) == 0);
                CHECK(h1.entry(i, j) >= 0);
                CHECK(h1.entry(i, j) < h1.diag(i));
            }
        ++checked;
    }
}

TEST_CASE("intersection examples and membership oracle")
{
    CHECK(lattice_intersect(IntegerLattice::scaled(1, 2), IntegerLattice::scaled(1, 3)) == IntegerLattice::scaled(1, 6));
    CHECK(lattice_intersect(IntegerLattice::scaled(1, 2), IntegerLattice::scaled(1, 2)) == IntegerLattice::scaled(1, 2));
    auto a = IntegerLattice::hnf(std::vector<IVec>{{2, 0}, {0, 1}}, 2);
    auto b = IntegerLattice::hnf(std::vector<IVec>{{1, 0}, {0, 3}}, 2);
    CHECK(lattice_intersect(a, b) == IntegerLattice::hnf(std::vector<IVec>{{2, 0}, {0, 3}}, 2));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int t = 0; t < 60; ++t) {
        std::vector<IVec> ga, gb;
        for (int k = 0; k < 2; ++k) {
            ga.push_back({c(rng), c(rng)});
            gb.push_back({c(rng), c(rng)});
        }
        if (ga[0][0] * ga[1][1] - ga[0][1] * ga[1][0] == 0 || gb[0][0] * gb[1][1] - gb[0][1] * gb[1][0] == 0)
            continue;
        auto la = IntegerLattice::hnf(ga, 2), lb = IntegerLattice::hnf(gb, 2);
        auto li = lattice_intersect(la, lb);
        CHECK(li.index() <= la.index() * lb.index());
        for (std::int64_t x = -12; x <= 12; ++x)
            for (std::int64_t y = -12; y <= 12; ++y) {
                IVec v{x, y};
                CHECK(li.member(v) == (la.member(v) && lb.member(v)));
            }
    }
}

TEST_CASE("membership examples")
{
    CHECK(lattice_member({4}, IntegerLattice::scaled(1, 2)));
    CHECK_FALSE(lattice_member({3}, IntegerLattice::scaled(1, 2)));
    CHECK(lattice_member({2, 2}, IntegerLattice::hnf(std::vector<IVec>{{1, 1}, {0, 2}}, 2)));
}

TEST_CASE("coset representatives")
{
    CHECK(coset_reps(IntegerLattice::identity(1), IntegerLattice::scaled(1, 3)) == std::vector<IVec>{{0}, {1}, {2}});
    CHECK(coset_reps(IntegerLattice::identity(2), IntegerLattice::hnf(std::vector<IVec>{{1, 1}, {0, 2}}, 2)) ==
          std::vector<IVec>{{0, 0}, {0, 1}});
    CHECK(coset_reps(IntegerLattice::scaled(1, 2), IntegerLattice::scaled(1, 6)) == std::vector<IVec>{{0}, {2}, {4}});
    CHECK_THROWS_AS(coset_reps(IntegerLattice::scaled(1, 2), IntegerLattice::scaled(1, 3)), Error);
    CHECK_THROWS_AS(coset_reps(IntegerLattice::identity(1), IntegerLattice::scaled(1, 100), 10), Error);
}

TEST_CASE("coset count equals product of Smith invariants")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-5, 5);
    int done = 0;
    while (done < 100) {
        IntMatrix ms(2, 2), mq(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                ms(i, j) = c(rng);
                mq(i, j) = c(rng);
            }
        if (det(ms) == 0 || det(mq) == 0)
            continue;
        auto sup = IntegerLattice::hnf(ms);
        auto sub = IntegerLattice::hnf(ms * mq);
        auto reps = coset_reps(sup, sub);
        auto snf = smith(mq);
        Int prod = 1;
        for (const auto& d : snf.diag)
            prod *= d;
        CHECK(Int(static_cast<long>(reps.size())) == prod);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            CHECK(sup.member(reps[i]));
            for (std::size_t j = 0; j < i; ++j)
                CHECK_FALSE(sub.member(sumdil::sub(reps[i], reps[j])));
        }
        ++done;
    }
}

TEST_CASE("smith decomposition")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-20, 20);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) = c(rng) * (t % 3 + 1);
        auto s = smith(m);
        IntMatrix d = s.U * m * s.V;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(d(i, j) == (i == j ? s.diag[i] : Int(0)));
        CHECK(abs(det(s.U)) == 1);
        CHECK(abs(det(s.V)) == 1);
        for (std::size_t i = 0; i + 1 < 3; ++i)
            if (s.diag[i] != 0)
                CHECK(s.diag[i + 1] % s.diag[i] == 0);
    }
}

TEST_CASE("integer content is multiplicative")
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> c(-30, 30), deg(0, 4);
    auto content = [](const UPoly& p) {
        Int g = 0;
        for (const auto& x : p.coeffs())
            g = gcd(g, x.get_num());
        return g;
    };
    for (int t = 0; t < 1000; ++t) {
        RatVec a, b;
        for (int i = 0, n = deg(rng); i <= n; ++i)
            a.emplace_back(c(rng));
        for (int i = 0, n = deg(rng); i <= n; ++i)
            b.emplace_back(c(rng));
        UPoly f(a), g(b);
        if (f.is_zero() || g.is_zero())
            continue;
        CHECK(content(f * g) == content(f) * content(g));
    }
}

TEST_CASE("polynomial parsing and printing")
{
    CHECK(parse_upoly("t^2-2") == UPoly(RatVec{-2, 0, 1}));
    CHECK(parse_upoly("1/2*t") == UPoly(RatVec{0, Rat(1, 2)}));
    CHECK(parse_upoly("3t^3 + t - 5/7") == UPoly(RatVec{Rat(-5, 7), 1, 0, 3}));
    CHECK(parse_upoly("(t+1)^2") == UPoly(RatVec{1, 2, 1}));
    CHECK(parse_upoly("-t") == UPoly(RatVec{0, -1}));
    CHECK(parse_upoly("t^2-2").to_string() == "t^2 - 2");
    CHECK_THROWS_AS(parse_upoly("t^"), Error);
    CHECK_THROWS_AS(parse_upoly("x+1"), Error);
}

TEST_CASE("characteristic polynomial agrees with determinant evaluation")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int t = 0; t < 30; ++t) {
        RatMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                m(i, j) = c(rng);
        UPoly chi = charpoly(m);
        for (int x = -3; x <= 3; ++x) {
            RatMatrix s = Rat(x) * RatMatrix::identity(4) - m;
            CHECK(chi.eval(x) == det(s));
        }
        CHECK(chi.eval(m).is_zero());
        CHECK(divmod(chi, minpoly(m)).second.is_zero());
    }
}

TEST_CASE("factorization over Z")
{
    auto irr = [](const char* s) { return certify_irreducible(parse_upoly(s)).verdict; };
    CHECK(irr("t^2-2") == Irreducibility::irreducible);
    CHECK(irr("t^4+1") == Irreducibility::irreducible);
    CHECK(irr("t^3-2") == Irreducibility::irreducible);
    CHECK(irr("t^2-4") == Irreducibility::reducible);
    CHECK(irr("(t^2-2)*(t^2-3)") == Irreducibility::reducible);
    CHECK(irr("(t-1)^2") == Irreducibility::reducible);

    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int t = 0; t < 40; ++t) {
        UPoly f(RatVec{c(rng) == 0 ? 1 : c(rng), c(rng), 3});
        UPoly g(RatVec{c(rng) | 1, c(rng), c(rng), 1});
        UPoly p = f * g;
        if (!is_squarefree(p))
            continue;
        auto factors = factor_squarefree_z(p.primitive_int());
        UPoly prod = UPoly::constant(1);
        for (const auto& fac : factors) {
            prod = prod * UPoly(fac);
            CHECK(certify_irreducible(UPoly(fac)).verdict != Irreducibility::reducible);
        }
        CHECK(prod.primitive_int() == p.primitive_int());
        CHECK(factors.size() >= 2);
    }
}
