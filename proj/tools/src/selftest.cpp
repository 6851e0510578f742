#include "commands.hpp"

#include "sumdil/dilate_const.hpp"
#include "sumdil/error.hpp"
#include "sumdil/sumset.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace sumdil::cli {

namespace {

using Rng = std::mt19937_64;

std::int64_t uni(Rng& g, std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(g); }

IntMatrix scalar(long v)
{
    IntMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

PeriodicSet per1(std::int64_t p, std::initializer_list<std::int64_t> rs)
{
    std::vector<IVec> pts;
    for (auto r : rs)
        pts.push_back({r});
    return PeriodicSet(IntegerLattice::scaled(1, p), pts);
}

bool rational_constants(Rng& g)
{
    for (int i = 0; i < 20; ++i) {
        long p = static_cast<long>(uni(g, -30, 30)), q = static_cast<long>(uni(g, 1, 30));
        if (p == 0 || gcd(Int(p), Int(q)) != 1)
            continue;
        auto h = h_constant(make_system("t", {std::to_string(p) + "/" + std::to_string(q)}));
        if (!h.exact_rational || *h.exact_rational != std::abs(p) + q)
            return false;
    }
    return true;
}

// H(sqrt 2) = 3 + 2 sqrt 2, so ((H - 3) / 2)^2 must contain 2.
bool surd_constant(Rng&)
{
    auto h = h_constant(make_system("t^2-2", {"t"}), 1e-12).h;
    Interval three(Rat(3), h.precision()), two(Rat(2), h.precision());
    return h.width() < 1e-9 && ((h - three) / two).square().contains(Rat(2));
}

bool denominator_norms(Rng& g)
{
    for (std::int64_t m : {2, -1, 5, 3}) {
        for (int i = 0; i < 3; ++i) {
            std::string lam = "(" + std::to_string(uni(g, -6, 6)) + "+" + std::to_string(uni(g, 1, 6)) + "*t)/" +
                              std::to_string(uni(g, 1, 6));
            auto sys = make_system("t^2" + std::string(m < 0 ? "+" : "-") + std::to_string(std::abs(m)), {lam});
            if (Rat(denominator_norm(sys)) != denominator_ideal(sys, quadratic_basis(m)).norm())
                return false;
        }
    }
    return true;
}

bool periodic_example(Rng&)
{
    auto a1 = per1(6, {0, 3}), a2 = per1(6, {0, 4});
    auto s = periodic_sumset({a1, a2}, {scalar(2), scalar(3)});
    auto t = periodic_sumset({a2, a1}, {scalar(2), scalar(3)});
    return s == per1(6, {0}) && s.density() == Rat(1, 6) && t == per1(6, {0, 2, 3, 5}) && t.density() == Rat(2, 3);
}

bool density_example(Rng&)
{
    auto a = per1(12, {0, 1, 3, 9});
    Flag f({IntegerLattice::scaled(1, 3), IntegerLattice::scaled(1, 1)});
    auto s = lattice_density(a, f);
    return s.heights == std::vector<Rat>{Rat(3, 4), Rat(1, 4), Rat(0)} && volume(s) == Rat(1, 3) &&
           projection(s, 1) == Rat(3, 4) && projection(s, 2) == Rat(2, 3);
}

// One-dimensional flags m_1 m_2 .. Z ⊆ .. ⊆ m_k Z.
Flag random_flag1(Rng& g)
{
    std::size_t k = static_cast<std::size_t>(uni(g, 1, 3));
    std::vector<std::int64_t> steps;
    for (std::size_t i = 0; i < k; ++i)
        steps.push_back(uni(g, 1, 4));
    std::vector<IntegerLattice> chain;
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t m = 1;
        for (std::size_t j = i; j < k; ++j)
            m *= steps[j];
        chain.push_back(IntegerLattice::scaled(1, m));
    }
    return Flag(chain);
}

PeriodicSet random_per1(Rng& g)
{
    std::int64_t p = uni(g, 1, 24);
    std::vector<IVec> pts;
    for (std::int64_t r = 0; r < p; ++r)
        if (uni(g, 0, 1))
            pts.push_back({r});
    return PeriodicSet(IntegerLattice::scaled(1, p), pts);
}

bool density_properties(Rng& g)
{
    for (int i = 0; i < 40; ++i) {
        PeriodicSet a = random_per1(g);
        Flag f = random_flag1(g);
        auto s = lattice_density(a, f);
        const auto& top = f.at(f.k());
        if (!s.compressed() || volume(s) != density(a, top))
            return false;
        IVec shift = top.column(0);
        shift[0] *= uni(g, -3, 3);
        if (!(lattice_density(a.translate(shift), f) == s))
            return false;
        for (std::size_t c = 0; c < s.cells(); ++c) {
            auto cell = s.cell(c);
            for (auto& x : cell)
                ++x;
            if (s.heights[c] > 0 && !ld_contains(a, f, s.heights[c], cell))
                return false;
            if (s.heights[c] < 1 && ld_contains(a, f, s.heights[c] + Rat(1, 1000), cell))
                return false;
        }
        for (std::size_t l = 1; l <= f.k(); ++l)
            if (projection(s, l) != projection_direct(a, f, l))
                return false;
    }
    return true;
}

bool sumset_oracle(Rng& g)
{
    for (int i = 0; i < 20; ++i) {
        std::vector<IVec> pts;
        for (int j = 0, n = static_cast<int>(uni(g, 1, 12)); j < n; ++j)
            pts.push_back({uni(g, -9, 9), uni(g, -9, 9)});
        PointSet a(2, pts);
        std::vector<IntMatrix> mats;
        for (int l = 0, k = static_cast<int>(uni(g, 2, 3)); l < k; ++l) {
            IntMatrix m(2, 2);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c)
                    m(r, c) = static_cast<long>(uni(g, -3, 3));
            mats.push_back(m);
        }
        std::set<IVec> want{IVec(2, 0)};
        for (const auto& m : mats) {
            std::set<IVec> next;
            for (const auto& s : want)
                for (const auto& p : a.points())
                    next.insert(add(s, sumdil::apply(m, p)));
            want = std::move(next);
        }
        if (linear_sumset(a, mats) != PointSet(2, std::vector<IVec>(want.begin(), want.end())))
            return false;
    }
    return true;
}

bool matrix_family(Rng&)
{
    IntMatrix a{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, b{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}, c{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}};
    MatrixFamily fam({a, b, c});
    IntMatrix comp{{0, 2}, {1, 0}};
    MatrixFamily two({Int(2) * IntMatrix::identity(2), Int(2) * comp});
    return !pre_commuting(fam) && irreducible(fam).verdict == Verdict::yes && coprime(fam) &&
           coprime(MatrixFamily({IntMatrix::identity(2), comp})) && !coprime(two);
}

bool continuous_bound(Rng& g)
{
    VoxelSet unit = VoxelSet::box({0.0}, {1.0}, Rat(1, 64));
    auto rep = verify_cts_bound(unit, EigenStructure{{EigenBlock{1, {1.0, 2.0}, {0.0, 0.0}}}});
    if (!rep.pass || std::abs(rep.measured - 3.0) > 1e-12)
        return false;
    std::uniform_real_distribution<double> sc(0.3, 2.0);
    for (int i = 0; i < 5; ++i) {
        VoxelSet a = VoxelSet::box({-0.5, -0.25}, {sc(g) - 0.5, sc(g) - 0.25}, Rat(1, 32))
                         .unite(VoxelSet::box({0.0, 0.0}, {sc(g), 0.5}, Rat(1, 32)));
        EigenStructure e{{EigenBlock{1, {1.0, sc(g)}, {0.0, 0.0}}, EigenBlock{1, {1.0, sc(g)}, {0.0, 3.141592653589793}}}};
        if (!verify_cts_bound(a, e).pass)
            return false;
    }
    return true;
}

bool symmetrization_measure(Rng& g)
{
    for (int i = 0; i < 10; ++i) {
        std::vector<IVec> pts;
        for (int j = 0; j < 40; ++j)
            pts.push_back({uni(g, -6, 6), uni(g, -6, 6), uni(g, -2, 2)});
        VoxelSet a(PointSet(3, pts), Rat(1, 8));
        if (steiner_1d(a, 0).measure() != a.measure() || ball_rearrange_2d(a, 0, 1).measure() != a.measure())
            return false;
    }
    return true;
}

bool regularity(Rng& g)
{
    auto q = make_system("t", {"3/2"});
    auto fam = ideal_flag_family(q, monogenic_basis(q.field));
    RegularityParams p;
    p.n_side = 1024;
    p.delta = Rat(1, 5);
    std::vector<IVec> pts;
    for (std::int64_t x = 0; x < p.n_side; ++x)
        if (uni(g, 0, 2) > 0)
            pts.push_back({x});
    PointSet a(1, pts);
    return check_decomposition(a, fam, p, regular_decomposition(a, fam, p));
}

} // namespace

Report cmd_selftest(unsigned, std::uint64_t seed)
{
    const std::vector<std::pair<std::string, std::function<bool(Rng&)>>> checks{
        {"rational constants", rational_constants},
        {"surd constant interval", surd_constant},
        {"denominator norm vs ideal index", denominator_norms},
        {"periodic sumset example", periodic_example},
        {"lattice density example", density_example},
        {"lattice density properties", density_properties},
        {"sumset vs nested loops", sumset_oracle},
        {"matrix family verdicts", matrix_family},
        {"continuous bound", continuous_bound},
        {"symmetrization measure", symmetrization_measure},
        {"regular decomposition", regularity},
    };
    Report r{"selftest"};
    r.columns = {"check", "result", "detail"};
    std::size_t failed = 0;
    for (const auto& [name, fn] : checks) {
        Rng g(seed);
        bool ok = false;
        std::string detail;
        try {
            ok = fn(g);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        failed += ok ? 0 : 1;
        r.rows.push_back({{"check", name}, {"result", ok ? "PASS" : "FAIL"}, {"detail", detail}});
    }
    r.summary["checks"] = checks.size();
    r.summary["failed"] = failed;
    r.exit_code = failed ? 1 : 0;
    return r;
}

} // namespace sumdil::cli
