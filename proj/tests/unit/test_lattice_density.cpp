#include <doctest.h>

#include "ld_support.hpp"
#include "sumdil/error.hpp"
#include "sumdil/lattice_density.hpp"

#include <random>
#include <set>

using namespace sumdil;
using ldsupport::Rng;

namespace {

IntegerLattice z(std::int64_t m) { return IntegerLattice::scaled(1, m); }

PeriodicSet per1(std::int64_t period, std::initializer_list<std::int64_t> rs)
{
    std::vector<IVec> pts;
    for (auto r : rs)
        pts.push_back({r});
    return PeriodicSet(z(period), pts);
}

Flag flag1(std::initializer_list<std::int64_t> ms)
{
    std::vector<IntegerLattice> chain;
    for (auto m : ms)
        chain.push_back(z(m));
    return Flag(chain);
}

IntMatrix scalar(long v)
{
    IntMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

// 12Z ∪ (12Z+1) ∪ (6Z+3)
PeriodicSet example_set() { return per1(12, {0, 1, 3, 9}); }

template <class F>
void repeat(int n, std::uint64_t seed, F f)
{
    Rng g(seed);
    for (int i = 0; i < n; ++i) {
        INFO("instance " << i);
        CHECK(f(g));
    }
}

} // namespace

TEST_CASE("densities of periodic sets in affine lattices")
{
    auto a = per1(6, {0, 3});
    CHECK(density(a, z(1)) == Rat(1, 3));
    CHECK(density(a, z(2)) == Rat(1, 3));
    CHECK(density(a, AffineLattice{z(2), {1}}) == Rat(1, 3));
    CHECK(density(a, z(3)) == Rat(1, 1));
    auto full = PeriodicSet::full(2);
    CHECK(density(full, IntegerLattice::scaled(2, 5)) == 1);
    CHECK(a.density() == Rat(1, 3));
    CHECK_THROWS_AS(density(a, z(7), 3), Error);
}

TEST_CASE("periodic set normalisation")
{
    auto a = per1(6, {0, 3, 9, -3});
    CHECK(a.residues().size() == 2);
    CHECK(a.contains({15}));
    CHECK_FALSE(a.contains({4}));
    auto m = a.minimal();
    CHECK(m.period() == z(3));
    CHECK(m.residues().size() == 1);
    CHECK(a == m);
    CHECK(a.refine(z(4)).period() == z(12));
    CHECK(a.refine(z(4)) == a);
    CHECK(per1(6, {0}).subset_of(a));
    CHECK_FALSE(per1(6, {1}).subset_of(a));
}

TEST_CASE("worked example with a two-step flag")
{
    auto s = lattice_density(example_set(), flag1({3, 1}));
    CHECK(s.dims == std::vector<std::int64_t>{3});
    CHECK(s.heights == std::vector<Rat>{Rat(3, 4), Rat(1, 4), Rat(0)});
    CHECK(volume(s) == Rat(1, 3));
    CHECK(volume(s) == density(example_set(), z(1)));
    CHECK(projection(s, 1) == Rat(3, 4));
    CHECK(projection(s, 2) == Rat(2, 3));
    CHECK(s.compressed());

    CHECK(ld_contains(example_set(), flag1({3, 1}), Rat(3, 4), {1}));
    CHECK_FALSE(ld_contains(example_set(), flag1({3, 1}), Rat(3, 4), {2}));
    CHECK(ld_contains(example_set(), flag1({3, 1}), Rat(1, 4), {2}));
    CHECK(s.contains(RatVec{Rat(3, 4), Rat(1, 3)}));
    CHECK_FALSE(s.contains(RatVec{Rat(3, 4), Rat(2, 3)}));
}

TEST_CASE("trivial bodies")
{
    Rng g(3);
    for (int i = 0; i < 10; ++i) {
        auto f = ldsupport::random_flag(g, 2, 3, 40);
        auto s = lattice_density(PeriodicSet::full(2), f);
        for (const auto& h : s.heights)
            CHECK(h == 1);
        for (std::size_t l = 1; l <= f.k(); ++l)
            CHECK(projection(s, l) == 1);
        CHECK(volume(s) == 1);
        auto e = lattice_density(PeriodicSet::empty(2), f);
        CHECK(volume(e) == 0);
        CHECK(projection(e, 1) == 0);
    }
    CHECK(ld_contains(PeriodicSet::full(1), flag1({1}), 1, {}));
    CHECK(ld_contains(PeriodicSet::full(1), flag1({2, 1}), 1, {2}));
}

TEST_CASE("three-step flag keeps the volume")
{
    auto a = per1(6, {0, 3});
    auto f = flag1({6, 2, 1});
    auto s = lattice_density(a, f);
    CHECK(s.dims == std::vector<std::int64_t>{3, 2});
    CHECK(volume(s) == Rat(1, 3));
    CHECK(s.compressed());
    // A ∩ 2Z = 6Z, A ∩ (2Z+1) = 6Z+3: both classes carry one of three 6Z-cosets
    CHECK(s.heights == std::vector<Rat>{1, 1, 0, 0, 0, 0});
    for (std::size_t l = 1; l <= 3; ++l)
        CHECK(projection_direct(a, f, l) == projection(s, l));
}

TEST_CASE("direct projections by coset counting")
{
    auto a = example_set();
    auto f = flag1({3, 1});
    CHECK(projection_direct(a, f, 1) == Rat(3, 4));
    CHECK(projection_direct(a, f, 2) == Rat(2, 3));
    CHECK(projection_direct(PeriodicSet::full(1), f, 2) == 1);
}

TEST_CASE("periodic sumsets of the introductory example")
{
    auto a1 = per1(6, {0, 3});
    auto a2 = per1(6, {0, 4});
    auto s = periodic_sumset({a1, a2}, {scalar(2), scalar(3)});
    CHECK(s == PeriodicSet(z(6), {{0}}));
    CHECK(s.density() == Rat(1, 6));
    CHECK(s.period() == z(6));
    auto t = periodic_sumset({a2, a1}, {scalar(2), scalar(3)});
    CHECK(t == per1(6, {0, 2, 3, 5}));
    CHECK(t.density() == Rat(2, 3));
    // adding the zero coset of a finer period changes nothing
    CHECK(periodic_sumset({a1, per1(12, {0})}, {scalar(1), scalar(1)}) == per1(12, {0, 3, 6, 9}));
    CHECK(periodic_sumset({a1, PeriodicSet(z(6), {{0}})}, {scalar(1), scalar(1)}) == a1);
    CHECK_THROWS_AS(periodic_sumset({a1}, {scalar(0)}), Error);
}

TEST_CASE("periodic sumset agrees with a window count")
{
    Rng g(17);
    for (int it = 0; it < 40; ++it) {
        auto a = ldsupport::random_periodic(g, 1, 12);
        auto b = ldsupport::random_periodic(g, 1, 12);
        long s = ldsupport::uni(g, 1, 3), t = ldsupport::uni(g, -3, 3);
        if (t == 0)
            t = 1;
        auto sum = periodic_sumset({a, b}, {scalar(s), scalar(t)});
        // window of both periods' multiples; sums of window elements cover the middle
        std::int64_t w = 12 * 12 * 6;
        std::vector<std::int64_t> xa, xb;
        for (std::int64_t x = -w; x <= w; ++x) {
            if (a.contains({x}))
                xa.push_back(x);
            if (b.contains({x}))
                xb.push_back(x);
        }
        std::set<std::int64_t> direct;
        for (auto x : xa)
            for (auto y : xb)
                direct.insert(s * x + t * y);
        for (std::int64_t v = -w / 2; v <= w / 2; ++v)
            CHECK(sum.contains({v}) == (direct.count(v) > 0));
    }
}

TEST_CASE("local densities")
{
    auto f = flag1({3, 1});
    PointSet a(1, {{0}, {3}});
    auto loc = local_ld(a, AxisBox{{0}, 6}, f);
    CHECK(loc == lattice_density(per1(6, {0, 3}), f));
    CHECK(volume(local_ld(PointSet(1), AxisBox{{0}, 6}, f)) == 0);
    CHECK_THROWS_AS(local_ld(a, AxisBox{{0}, 4}, f), Error);
    // shrinking to T = [0, 3) ⊇ A ∩ S stretches heights by |T|/|S|
    PointSet b(1, {{0}, {1}});
    auto big = local_ld(b, AxisBox{{0}, 6}, f), small = local_ld(b, AxisBox{{0}, 3}, f);
    for (std::size_t i = 0; i < big.cells(); ++i)
        CHECK(big.heights[i] == small.heights[i] * Rat(1, 2));

    auto per = local_ld(per1(6, {0, 3}), AxisBox{{0}, 6}, f);
    CHECK(per == loc);
}

TEST_CASE("flags from ideals")
{
    auto basis = quadratic_basis(2);
    auto sys = make_system("t^2-2", {"t/2"});
    auto fl = flags_from_ideals(sys, basis, {1});
    auto o = unit_ideal(basis);
    auto root2 = principal_ideal(sys.field.theta(), basis);
    auto two = principal_ideal(sys.field.from_rat(2), basis);
    CHECK(fl.a[1] == root2);
    CHECK(fl.b[0] == root2);
    CHECK(fl.c[0] == root2);
    CHECK(fl.c[1] == o);
    // F = (2O ⊆ sqrt2 O) in sqrt2 O coordinates, G = (sqrt2 O ⊆ O) in O coordinates
    CHECK(fl.f.at(1).index() == 2);
    CHECK(fl.f.at(2) == IntegerLattice::identity(2));
    CHECK(fl.g.at(1).index() == 2);
    CHECK(fl.g.at(2) == IntegerLattice::identity(2));
    auto f0 = flags_from_ideals(sys, basis, {0});
    CHECK(f0.f.at(1) == f0.f.at(2));
    (void)two;

    auto integral = flags_from_ideals(make_system("t^2-2", {"t", "3"}), basis, {2, 1});
    for (const auto& b : integral.b)
        CHECK(b == o);
    CHECK(integral.f.at(1) == integral.f.at(3));
    CHECK(integral.g.at(1) == integral.g.at(3));

    auto q = make_system("t", {"3/2"});
    auto qb = monogenic_basis(q.field);
    for (unsigned n = 0; n < 4; ++n) {
        auto r = flags_from_ideals(q, qb, {n});
        CHECK(r.a[1].lattice == z(2));
        CHECK(r.b[0].lattice == z(2));
        CHECK(r.c[0].lattice == z(1L << n));
        CHECK(r.f.at(1) == z(1L << n));
        CHECK(r.g.at(1) == z(1L << n));
    }
}

TEST_CASE("property: volume identity")
{
    repeat(200, 101, ldsupport::check_volume);
}

TEST_CASE("property: translation invariance")
{
    repeat(200, 102, ldsupport::check_translation);
}

TEST_CASE("property: monotonicity")
{
    repeat(200, 103, ldsupport::check_monotone);
}

TEST_CASE("property: witness search agrees with the staircase")
{
    repeat(200, 104, ldsupport::check_oracle);
}

TEST_CASE("property: max of points lands in the sumset body")
{
    repeat(200, 105, ldsupport::check_sumset_max);
}

TEST_CASE("property: projection comparison across refined flags")
{
    repeat(200, 106, ldsupport::check_projection_compare);
}

TEST_CASE("property: local scaling and local volume")
{
    repeat(200, 107, ldsupport::check_local_scaling);
    repeat(200, 108, ldsupport::check_local_volume);
}

TEST_CASE("property: compression steps preserve mass")
{
    Rng g(109);
    for (int i = 0; i < 100; ++i) {
        auto [a, f] = ldsupport::random_instance(g);
        if (f.k() < 2)
            continue;
        auto s = lattice_density(a, f);
        auto lower = f.drop_last();
        Rat stacked = 0;
        for (const auto& r : coset_reps(f.at(f.k()), f.at(f.k() - 1)))
            stacked += volume(lattice_density(a.translate(r), lower));
        CHECK(volume(s) * Rat(static_cast<long>(f.step(f.k()))) == stacked);
        CHECK(s.compressed());
    }
}

TEST_CASE("property: flag stability over Z[sqrt2]")
{
    ldsupport::FlagStability fs;
    Rng g(110);
    for (int i = 0; i < 50; ++i)
        CHECK(fs.check(g));
}

TEST_CASE("regular decomposition")
{
    auto q = make_system("t", {"3/2"});
    auto fam = ideal_flag_family(q, monogenic_basis(q.field));
    RegularityParams p;
    p.n_side = 1 << 12;
    p.m = 2;
    p.delta = Rat(1, 5);

    std::vector<IVec> all;
    for (std::int64_t x = 0; x < p.n_side; ++x)
        all.push_back({x});
    PointSet full(1, all);
    auto out = regular_decomposition(full, fam, p);
    CHECK(out.r == 0);
    CHECK(out.kept == full);
    CHECK(check_decomposition(full, fam, p, out));

    Rng g(111);
    std::bernoulli_distribution coin(0.5);
    for (int it = 0; it < 5; ++it) {
        std::vector<IVec> pts;
        for (std::int64_t x = 0; x < p.n_side; ++x)
            if (coin(g))
                pts.push_back({x});
        PointSet a(1, pts);
        auto d = regular_decomposition(a, fam, p);
        CHECK(check_decomposition(a, fam, p, d));
        for (std::size_t i = 0; i + 1 < d.energy.size(); ++i)
            CHECK(d.energy[i] >= d.energy[i + 1]);
    }

    // concentrated on one small cube
    std::vector<IVec> pts;
    for (std::int64_t x = 256; x < 512; x += 3)
        pts.push_back({x});
    PointSet lump(1, pts);
    auto d = regular_decomposition(lump, fam, p);
    CHECK(Rat(static_cast<unsigned long>(d.kept.size())) >= Rat(4, 5) * Rat(static_cast<unsigned long>(lump.size())));
    CHECK(check_decomposition(lump, fam, p, d));

    RegularityParams bad = p;
    bad.n_side = 3;
    CHECK_THROWS_AS(regular_decomposition(PointSet(1, {{0}}), fam, bad), Error);
}
