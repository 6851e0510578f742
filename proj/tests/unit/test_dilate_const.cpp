#include <doctest.h>

#include "sumdil/dilate_const.hpp"
#include "sumdil/error.hpp"

#include <cmath>
#include <random>

using namespace sumdil;

namespace {

bool overlap_within(const Interval& a, const Interval& b) { return a.overlaps(b); }

// 3 + 2 sqrt 2 lies in h iff lo <= it <= hi; checked with exact squares.
bool contains_3p2sqrt2(const Interval& h)
{
    // h.lo - 3 <= 2 sqrt2 <=> (lo-3) < 0 or (lo-3)^2 <= 8; same for hi.
    Rat lo, hi;
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, h.lo());
    lo = Rat(q);
    mpfr_get_q(q, h.hi());
    hi = Rat(q);
    mpq_clear(q);
    Rat a = lo - 3, b = hi - 3;
    bool lower_ok = a < 0 || a * a <= 8;
    bool upper_ok = b >= 0 && b * b >= 8;
    return lower_ok && upper_ok;
}

} // namespace

TEST_CASE("rational dilates")
{
    auto h = h_constant(make_system("t-1", {"3/2"}));
    REQUIRE(h.exact_rational);
    CHECK(*h.exact_rational == 5);
    CHECK(h.ideal_norm_factor == 2);

    auto two = h_constant(make_system("t-1", {"1/2", "3/2"}));
    REQUIRE(two.exact_rational);
    CHECK(*two.exact_rational == 6);
}

TEST_CASE("quadratic examples")
{
    auto s = h_constant(make_system("t^2-2", {"t"}));
    CHECK(s.ideal_norm_factor == 1);
    CHECK(contains_3p2sqrt2(s.h));
    CHECK(s.h.width() <= 1e-9);
    CHECK(!s.exact_rational);

    auto inv = h_constant(make_system("t^2-2", {"t/2"}));
    CHECK(inv.ideal_norm_factor == 2);
    CHECK(contains_3p2sqrt2(inv.h));
    CHECK(inv.h.width() <= 1e-9);
}

TEST_CASE("proper subfield is rejected")
{
    CHECK_THROWS_WITH_AS(h_constant(make_system("t^2-2", {"3"})), "dilates generate proper subfield", Error);
    CHECK_THROWS_AS(h_constant(make_system("t^4-2", {"t^2"})), Error);
}

TEST_CASE("rational consistency")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 40);
    for (int i = 0; i < 50; ++i) {
        Rat l(num(rng), den(rng));
        l.canonicalize();
        if (l == 0)
            continue;
        auto h = h_constant(make_system("t-1", {l.get_str()}));
        REQUIRE(h.exact_rational);
        CHECK(*h.exact_rational == abs(l.get_num()) + l.get_den());
    }
}

TEST_CASE("inversion and sign symmetry")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> co(-5, 5), dd(1, 4);
    const char* fields[] = {"t^2-2", "t^2-3", "t^2+1", "t^2-5", "t^3-2", "t^3-t-1"};
    for (const char* f : fields) {
        NumberField k(parse_upoly(f, 't'));
        for (int trial = 0; trial < 4; ++trial) {
            FieldElement x = k.zero();
            for (int j = 0; j < k.degree(); ++j)
                x = k.add(x, k.scale(make_rat(co(rng), dd(rng)), k.pow(k.theta(), j)));
            DilateSystem sys(k, {x});
            if (x.is_rational() || !dilates_generate_field(sys))
                continue;
            auto h = h_constant(sys);
            auto hinv = h_constant(DilateSystem(k, {k.inv(x)}));
            auto hneg = h_constant(DilateSystem(k, {k.scale(-1, x)}));
            CHECK(overlap_within(h.h, hinv.h));
            CHECK(overlap_within(h.h, hneg.h));
        }
    }
}

TEST_CASE("cube root of two")
{
    auto h = h_constant(make_system("t^3-2", {"t"}), 1e-12);
    CHECK(h.ideal_norm_factor == 1);
    CHECK(std::fabs(h.h.mid_d() - std::pow(1 + std::cbrt(2.0), 3)) < 1e-10);
}
