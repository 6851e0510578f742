#include <doctest.h>

#include "sumdil/error.hpp"
#include "sumdil/sumset.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

using namespace sumdil;

namespace {

IntMatrix scalar(long v)
{
    IntMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

PointSet line(std::initializer_list<std::int64_t> xs)
{
    std::vector<IVec> p;
    for (auto x : xs)
        p.push_back({x});
    return PointSet(1, p);
}

// Nested loops over all tuples, set of results.
std::set<IVec> naive(const std::vector<std::vector<IVec>>& sets, const std::vector<IntMatrix>& mats)
{
    std::set<IVec> acc{IVec(mats[0].rows(), 0)};
    for (std::size_t l = 0; l < sets.size(); ++l) {
        std::set<IVec> next;
        for (const auto& s : acc)
            for (const auto& a : sets[l]) {
                IVec v = s;
                for (std::size_t i = 0; i < v.size(); ++i)
                    for (std::size_t j = 0; j < a.size(); ++j)
                        v[i] += mats[l](i, j).get_si() * a[j];
                next.insert(v);
            }
        acc = std::move(next);
    }
    return acc;
}

// a + b sqrt2 <= r exactly.
bool le_sqrt2(long a, long b, long r)
{
    long s = r - a;   // need b sqrt2 <= s
    if (b <= 0)
        return s >= 0 || 2 * b * b >= s * s;
    return s >= 0 && 2 * b * b <= s * s;
}

bool in_box_sqrt2(long a, long b, long r)
{
    return le_sqrt2(a, b, r) && le_sqrt2(-a, -b, r) && le_sqrt2(a, -b, r) && le_sqrt2(-a, b, r);
}

} // namespace

TEST_CASE("small linear sumsets")
{
    auto s = linear_sumset(line({0, 1, 2}), {scalar(1), scalar(2)});
    CHECK(s == line({0, 1, 2, 3, 4, 5, 6}));
    CHECK(linear_sumset(line({0}), {scalar(5), scalar(-7), scalar(3)}).size() == 1);

    std::vector<PointSet> sets{line({0, 3, 6, 9}), line({0, 4, 6, 10})};
    auto t = linear_sumset(sets, {scalar(2), scalar(3)});
    auto oracle = naive({{{0}, {3}, {6}, {9}}, {{0}, {4}, {6}, {10}}}, {scalar(2), scalar(3)});
    CHECK(t.size() == oracle.size());
    for (const auto& p : oracle)
        CHECK(t.contains(p));
}

TEST_CASE("oracle equivalence on random instances")
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> dim(1, 3), kk(1, 2), sz(1, 60), co(-4, 4), pt(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = static_cast<std::size_t>(dim(rng));
        std::size_t k = static_cast<std::size_t>(kk(rng));
        std::vector<std::vector<IVec>> raw;
        std::vector<PointSet> sets;
        std::vector<IntMatrix> mats;
        for (std::size_t l = 0; l <= k; ++l) {
            std::vector<IVec> a;
            int n = sz(rng);
            for (int i = 0; i < n; ++i) {
                IVec p(d);
                for (auto& x : p)
                    x = pt(rng);
                a.push_back(p);
            }
            raw.push_back(a);
            sets.emplace_back(d, a);
            IntMatrix m(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    m(i, j) = co(rng);
            mats.push_back(m);
        }
        auto fast = linear_sumset(sets, mats);
        auto slow = naive(raw, mats);
        CHECK(fast.points() == std::vector<IVec>(slow.begin(), slow.end()));
    }
}

TEST_CASE("thread count does not change the result")
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pt(-500, 500);
    std::vector<IVec> a;
    for (int i = 0; i < 400; ++i)
        a.push_back({pt(rng), pt(rng)});
    PointSet s(2, a);
    std::vector<IntMatrix> mats{IntMatrix::identity(2), IntMatrix::from_rows({{Int(0), Int(2)}, {Int(1), Int(0)}})};
    auto one = linear_sumset(s, mats, {default_point_cap, 1});
    auto four = linear_sumset(s, mats, {default_point_cap, 4});
    CHECK(one == four);
}

TEST_CASE("memory cap refuses before enumeration")
{
    std::vector<IVec> a;
    for (int i = 0; i < 1000; ++i)
        a.push_back({i});
    PointSet s(1, a);
    SumsetOptions opt;
    opt.cap = 500000;
    CHECK_THROWS_AS(linear_sumset(s, {scalar(1), scalar(2)}, opt), Error);
}

TEST_CASE("translation and dilation invariance")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> pt(-20, 20), uu(1, 5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<IVec> a;
        for (int i = 0; i < 40; ++i)
            a.push_back({pt(rng), pt(rng)});
        PointSet s(2, a);
        std::vector<IntMatrix> mats{IntMatrix::identity(2), IntMatrix::from_rows({{Int(1), Int(2)}, {Int(1), Int(0)}})};
        std::size_t base = linear_sumset(s, mats).size();
        CHECK(linear_sumset(s.translate({pt(rng), pt(rng)}), mats).size() == base);
        long u = uu(rng) * (trial % 2 ? -1 : 1);
        CHECK(linear_sumset(s.image(Int(u) * IntMatrix::identity(2)), mats).size() == base);
    }
}

TEST_CASE("point file round trip")
{
    std::istringstream in("# header\n1 2\n-3 4\n\n1 2\n");
    auto s = read_points(in);
    CHECK(s.size() == 2);
    std::ostringstream out;
    write_points(out, s);
    CHECK(out.str() == "-3 4\n1 2\n");
    std::istringstream bad("1 2\n3\n");
    CHECK_THROWS_AS(read_points(bad), Error);
}

TEST_CASE("field sumsets")
{
    auto basis = quadratic_basis(2);
    auto sys = make_system("t^2-2", {"t"});
    const auto& k = sys.field;
    CHECK(field_sumset({k.zero(), k.one()}, sys, basis) == 4);
    CHECK(field_sumset({k.zero()}, sys, basis) == 1);

    auto q = make_system("t-1", {"3/2"});
    auto qb = monogenic_basis(q.field);
    std::vector<FieldElement> a;
    for (int i = 0; i < 4; ++i)
        a.push_back(q.field.from_rat(i));
    std::set<int> oracle;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            oracle.insert(2 * x + 3 * y);
    CHECK(field_sumset(a, q, qb) == oracle.size());
}

TEST_CASE("field sumsets match direct element arithmetic")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> co(-6, 6), den(1, 3);
    for (const char* f : {"t^2-2", "t^2+1", "t^2-5"}) {
        NumberField k(parse_upoly(f, 't'));
        std::int64_t m = f[3] == '+' ? -1 : std::stoi(std::string(f + 4));
        auto basis = quadratic_basis(m);
        for (int trial = 0; trial < 10; ++trial) {
            FieldElement l1 = k.element(UPoly(RatVec{make_rat(co(rng), den(rng)), make_rat(co(rng) | 1, den(rng))}));
            FieldElement l2 = k.element(UPoly(RatVec{make_rat(co(rng), den(rng)), make_rat(co(rng), den(rng))}));
            DilateSystem sys(k, {l1, l2});
            std::vector<FieldElement> a;
            for (int i = 0; i < 12; ++i)
                a.push_back(k.element(UPoly(RatVec{Rat(co(rng)), Rat(co(rng))})));
            std::set<FieldElement> direct;
            for (const auto& x : a)
                for (const auto& y : a)
                    for (const auto& z : a)
                        direct.insert(k.add(x, k.add(k.mul(l1, y), k.mul(l2, z))));
            CHECK(field_sumset(a, sys, basis) == direct.size());
        }
    }
}

TEST_CASE("extremal sets")
{
    auto basis = quadratic_basis(2);
    auto sys = make_system("t^2-2", {"t"});
    auto e = extremal_set(sys, basis, 10);
    std::size_t oracle = 0;
    for (long a = -30; a <= 30; ++a)
        for (long b = -30; b <= 30; ++b)
            if (in_box_sqrt2(a, b, 10)) {
                ++oracle;
                CHECK(e.points.contains({a, b}));
            }
    CHECK(e.points.size() == oracle);
    CHECK(e.ambiguous == 0);
    CHECK(std::fabs(static_cast<double>(oracle) - 400 / (2 * std::sqrt(2.0))) < 25);

    CHECK(extremal_set(sys, basis, 0).points.size() == 1);

    auto q = make_system("t-1", {"3/2"});
    auto qe = extremal_set(q, monogenic_basis(q.field), 10);
    CHECK(qe.points.size() == 11);
}

TEST_CASE("extremal sets in imaginary and cubic fields")
{
    auto basis = quadratic_basis(-1);
    auto sys = make_system("t^2+1", {"t"});
    auto e = extremal_set(sys, basis, 5);
    std::size_t oracle = 0;
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b)
            oracle += a * a + b * b <= 25;
    CHECK(e.points.size() == oracle);

    NumberField k(parse_upoly("t^3-2", 't'));
    auto cube = DilateSystem(k, {k.theta()});
    auto ce = extremal_set(cube, monogenic_basis(k), 6);
    CHECK(ce.points.size() > 0);
    CHECK(ce.ambiguous * 100 <= ce.points.size());
}

TEST_CASE("ratio experiments")
{
    auto q = make_system("t-1", {"3/2"});
    auto qr = ratio_experiment(q, monogenic_basis(q.field), {10, 40, 160});
    for (std::size_t i = 1; i < qr.size(); ++i)
        CHECK(abs(qr[i].ratio - 5) <= abs(qr[i - 1].ratio - 5));
    CHECK(abs(qr.back().ratio - 5) < Rat(1, 10));

    auto one = make_system("t-1", {"1"});
    auto o = ratio_experiment(one, monogenic_basis(one.field), {50});
    CHECK(abs(o[0].ratio - 2) < Rat(1, 20));

    auto basis = quadratic_basis(2);
    auto sys = make_system("t^2-2", {"t"});
    auto r = ratio_experiment(sys, basis, {10, 20, 40});
    double h = 3 + 2 * std::sqrt(2.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        double ratio = r[i].ratio.get_d();
        if (i > 0)
            CHECK(std::fabs(ratio - h) <= std::fabs(r[i - 1].ratio.get_d() - h));
        double a = static_cast<double>(r[i].size_a);
        CHECK(static_cast<double>(r[i].size_sum) >= h * a - 3 * h * std::sqrt(a));
    }
    CHECK(std::fabs(r.back().ratio.get_d() - h) < 0.1 * h);
}

TEST_CASE("lower witness")
{
    auto sys = make_system("t^2-2", {"t/2"});
    auto w = h_lower_witness(sys, quadratic_basis(2), 12);
    CHECK(w.a.size() > 0);
    CHECK(w.ratio > 5);
}
