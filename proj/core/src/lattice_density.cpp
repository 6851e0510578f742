#include "sumdil/lattice_density.hpp"

#include "sumdil/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sumdil {

namespace {

std::int64_t rel_index(const IntegerLattice& sup, const IntegerLattice& sub, std::int64_t cap)
{
    Int n = relative_index(sup, sub);
    if (n > cap)
        fail_refusal("relative index " + n.get_str() + " exceeds cap " + std::to_string(cap));
    return to_i64(n);
}

void sort_unique(std::vector<IVec>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

PeriodicSet::PeriodicSet(IntegerLattice period, const std::vector<IVec>& points) : period_(std::move(period))
{
    if (period_.dim() == 0)
        fail_input("periodic set needs a period lattice");
    res_.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != period_.dim())
            fail_input("residue dimension mismatch");
        res_.push_back(period_.reduce(p));
    }
    sort_unique(res_);
}

bool PeriodicSet::contains(const IVec& v) const
{
    return std::binary_search(res_.begin(), res_.end(), period_.reduce(v));
}

Rat PeriodicSet::density() const
{
    return make_rat(Int(static_cast<unsigned long>(res_.size())), period_.index());
}

PeriodicSet PeriodicSet::translate(const IVec& v) const
{
    std::vector<IVec> pts;
    pts.reserve(res_.size());
    for (const auto& r : res_)
        pts.push_back(add(r, v));
    return PeriodicSet(period_, pts);
}

PeriodicSet PeriodicSet::image(const IntMatrix& t) const
{
    if (!t.square() || t.rows() != dim())
        fail_input("map dimension mismatch");
    if (det(t) == 0)
        fail_input("map must be nonsingular");
    std::vector<IVec> pts;
    pts.reserve(res_.size());
    for (const auto& r : res_)
        pts.push_back(sumdil::apply(t, r));
    return PeriodicSet(lattice_image(t, period_), pts);
}

PeriodicSet PeriodicSet::refine(const IntegerLattice& q, std::int64_t cap) const
{
    IntegerLattice sub = lattice_intersect(period_, q);
    if (sub == period_)
        return *this;
    std::int64_t m = rel_index(period_, sub, cap);
    if (static_cast<std::int64_t>(res_.size()) > cap / m)
        fail_refusal("refined residue count exceeds cap");
    auto reps = coset_reps(period_, sub, cap);
    std::vector<IVec> pts;
    pts.reserve(res_.size() * reps.size());
    for (const auto& r : res_)
        for (const auto& c : reps)
            pts.push_back(add(r, c));
    return PeriodicSet(sub, pts);
}

PeriodicSet PeriodicSet::minimal() const
{
    std::size_t d = dim();
    if (res_.empty())
        return PeriodicSet::empty(d);
    std::vector<IVec> gens;
    for (std::size_t j = 0; j < d; ++j)
        gens.push_back(period_.column(j));
    for (const auto& r : res_) {
        IVec v = sub(r, res_[0]);
        if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; }))
            continue;
        bool sym = std::all_of(res_.begin(), res_.end(), [&](const IVec& s) { return contains(add(s, v)); });
        if (sym)
            gens.push_back(v);
    }
    return PeriodicSet(IntegerLattice::hnf(gens, d), res_);
}

bool PeriodicSet::subset_of(const PeriodicSet& other) const
{
    if (other.dim() != dim())
        fail_input("dimension mismatch");
    IntegerLattice sub = lattice_intersect(period_, other.period_);
    auto reps = coset_reps(period_, sub);
    for (const auto& r : res_)
        for (const auto& c : reps)
            if (!other.contains(add(r, c)))
                return false;
    return true;
}

bool operator==(const PeriodicSet& a, const PeriodicSet& b)
{
    if (a.dim() != b.dim())
        return false;
    PeriodicSet x = a.minimal(), y = b.minimal();
    return x.period_ == y.period_ && x.res_ == y.res_;
}

Flag::Flag(std::vector<IntegerLattice> chain) : l_(std::move(chain))
{
    if (l_.empty())
        fail_input("flag needs at least one lattice");
    for (std::size_t i = 0; i + 1 < l_.size(); ++i) {
        if (l_[i].dim() != l_[i + 1].dim())
            fail_input("flag dimension mismatch");
        if (!l_[i + 1].contains(l_[i]))
            fail_input("flag lattices must be nested");
        m_.push_back(to_i64(relative_index(l_[i + 1], l_[i])));
    }
}

Flag Flag::drop_last() const
{
    if (l_.size() < 2)
        fail_input("cannot shorten a one-step flag");
    return Flag(std::vector<IntegerLattice>(l_.begin(), l_.end() - 1));
}

std::size_t StaircaseBody::index(const std::vector<std::int64_t>& c) const
{
    if (c.size() != dims.size())
        fail_input("cell arity mismatch");
    std::size_t idx = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        if (c[a] < 0 || c[a] >= dims[a])
            fail_input("cell out of range");
        idx = idx * static_cast<std::size_t>(dims[a]) + static_cast<std::size_t>(c[a]);
    }
    return idx;
}

std::vector<std::int64_t> StaircaseBody::cell(std::size_t idx) const
{
    std::vector<std::int64_t> c(dims.size());
    for (std::size_t a = dims.size(); a-- > 0;) {
        c[a] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(dims[a]));
        idx /= static_cast<std::size_t>(dims[a]);
    }
    return c;
}

bool StaircaseBody::compressed() const
{
    std::size_t stride = 1;
    for (std::size_t a = dims.size(); a-- > 0;) {
        std::size_t m = static_cast<std::size_t>(dims[a]);
        for (std::size_t i = 0; i < heights.size(); ++i) {
            std::size_t pos = (i / stride) % m;
            if (pos + 1 < m && heights[i + stride] > heights[i])
                return false;
        }
        stride *= m;
    }
    for (const auto& h : heights)
        if (h < 0 || h > 1)
            return false;
    return true;
}

bool StaircaseBody::contains(const Rat& r, const std::vector<std::int64_t>& m) const
{
    if (r <= 0 || m.size() != dims.size())
        fail_input("point off the canonical grid");
    std::vector<std::int64_t> c(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (m[a] < 1 || m[a] > dims[a])
            fail_input("point off the canonical grid");
        c[a] = m[a] - 1;
    }
    return heights[index(c)] >= r;
}

bool StaircaseBody::contains(const RatVec& point) const
{
    if (point.size() != k())
        fail_input("point arity mismatch");
    std::vector<std::int64_t> m;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        Rat t = point[a + 1] * Rat(static_cast<long>(dims[a]));
        if (t.get_den() != 1)
            fail_input("point off the canonical grid");
        m.push_back(to_i64(t.get_num()));
    }
    return contains(point[0], m);
}

Rat density(const PeriodicSet& a, const AffineLattice& m, std::int64_t cap)
{
    if (m.lattice.dim() != a.dim() || m.shift.size() != a.dim())
        fail_input("dimension mismatch");
    IntegerLattice q = lattice_intersect(a.period(), m.lattice);
    std::int64_t n = rel_index(m.lattice, q, cap);
    std::int64_t hit = 0;
    for_each_coset_rep(
        m.lattice, q, [&](const IVec& x) { hit += a.contains(add(m.shift, x)) ? 1 : 0; }, cap);
    return make_rat(Int(static_cast<long>(hit)), Int(static_cast<long>(n)));
}

Rat density(const PeriodicSet& a, const IntegerLattice& m, std::int64_t cap)
{
    return density(a, AffineLattice::linear(m), cap);
}

StaircaseBody lattice_density(const PeriodicSet& a, const Flag& f, std::int64_t cap)
{
    if (f.dim() != a.dim())
        fail_input("flag dimension mismatch");
    std::size_t k = f.k();
    StaircaseBody out;
    out.dims = f.steps();
    std::int64_t cells = 1;
    for (auto m : out.dims) {
        if (cells > cap / m)
            fail_refusal("lattice density grid exceeds cap");
        cells *= m;
    }

    const IntegerLattice& l1 = f.at(1);
    IntegerLattice q1 = lattice_intersect(a.period(), l1);
    std::int64_t n1 = rel_index(l1, q1, cap);
    if (cells > cap / n1)
        fail_refusal("lattice density work exceeds cap");
    auto base = coset_reps(l1, q1, cap);
    std::vector<std::vector<IVec>> reps(k + 1);
    for (std::size_t t = 2; t <= k; ++t)
        reps[t] = coset_reps(f.at(t), f.at(t - 1), cap);

    // rho_{L_1}(A + b): points x of L_1 with x - b in A
    auto leaf = [&](const IVec& b) {
        long hit = 0;
        for (const auto& x : base)
            hit += a.contains(sub(x, b)) ? 1 : 0;
        return make_rat(Int(hit), Int(static_cast<long>(n1)));
    };

    std::function<std::vector<Rat>(std::size_t, const IVec&)> rec = [&](std::size_t t, const IVec& b) {
        if (t == 1)
            return std::vector<Rat>{leaf(b)};
        std::size_t m = reps[t].size();
        std::vector<Rat> stacked;
        for (std::size_t j = 0; j < m; ++j) {
            auto dj = rec(t - 1, add(b, reps[t][j]));
            if (stacked.empty())
                stacked.resize(dj.size() * m);
            for (std::size_t c = 0; c < dj.size(); ++c)
                stacked[c * m + j] = std::move(dj[c]);
        }
        // compress along axis t: each column sorted non-increasingly
        for (std::size_t c = 0; c < stacked.size(); c += m)
            std::sort(stacked.begin() + static_cast<std::ptrdiff_t>(c),
                      stacked.begin() + static_cast<std::ptrdiff_t>(c + m), std::greater<Rat>());
        return stacked;
    };
    out.heights = rec(k, IVec(a.dim(), 0));
    return out;
}

Rat volume(const StaircaseBody& s)
{
    Rat total = 0;
    for (const auto& h : s.heights)
        total += h;
    Int cells = 1;
    for (auto m : s.dims)
        cells *= static_cast<long>(m);
    return total / Rat(cells);
}

Rat projection(const StaircaseBody& s, std::size_t l)
{
    if (l < 1 || l > s.k())
        fail_input("projection axis out of range");
    if (l == 1)
        return *std::max_element(s.heights.begin(), s.heights.end());
    std::size_t axis = l - 2;
    std::vector<std::int64_t> c(s.dims.size(), 0);
    std::int64_t count = 0;
    for (std::int64_t t = 0; t < s.dims[axis]; ++t) {
        c[axis] = t;
        if (s.heights[s.index(c)] > 0)
            ++count;
    }
    return make_rat(Int(static_cast<long>(count)), Int(static_cast<long>(s.dims[axis])));
}

Rat projection_direct(const PeriodicSet& a, const Flag& f, std::size_t l, std::int64_t cap)
{
    std::size_t k = f.k();
    if (l < 1 || l > k)
        fail_input("projection axis out of range");
    if (l == 1) {
        Rat best = 0;
        for (const auto& b : coset_reps(f.at(k), f.at(1), cap))
            best = std::max(best, density(a.translate(b), f.at(1), cap));
        return best;
    }
    const IntegerLattice& lo = f.at(l - 1);
    const IntegerLattice& hi = f.at(l);
    IntegerLattice q = lattice_intersect(a.period(), lo);
    rel_index(f.at(k), q, cap);
    std::map<IVec, std::set<IVec>> groups;
    for_each_coset_rep(
        f.at(k), q,
        [&](const IVec& x) {
            if (a.contains(x))
                groups[hi.reduce(x)].insert(lo.reduce(x));
        },
        cap);
    std::size_t best = 0;
    for (const auto& [key, s] : groups)
        best = std::max(best, s.size());
    return make_rat(Int(static_cast<unsigned long>(best)), Int(static_cast<long>(f.step(l))));
}

bool ld_contains(const PeriodicSet& a, const Flag& f, const Rat& r, const std::vector<std::int64_t>& m,
                 std::int64_t cap)
{
    std::size_t k = f.k();
    if (r <= 0 || m.size() + 1 != k)
        fail_input("point off the canonical grid");
    for (std::size_t t = 2; t <= k; ++t)
        if (m[t - 2] < 1 || m[t - 2] > f.step(t))
            fail_input("point off the canonical grid");
    Int work = relative_index(f.at(k), f.at(1)) * relative_index(f.at(1), lattice_intersect(a.period(), f.at(1)));
    if (work > cap)
        fail_refusal("witness search exceeds cap");

    std::vector<std::vector<IVec>> reps(k + 1);
    for (std::size_t t = 2; t <= k; ++t)
        reps[t] = coset_reps(f.at(t), f.at(t - 1), cap);

    // good(t, b): b can head a level-t witness tree, i.e. enough children in b + L_t pairwise apart mod L_{t-1}
    std::function<bool(std::size_t, const IVec&)> good = [&](std::size_t t, const IVec& b) {
        if (t == 1)
            return density(a.translate(b), f.at(1), cap) >= r;
        std::int64_t need = m[t - 2], have = 0;
        for (const auto& c : reps[t])
            if (good(t - 1, add(b, c)) && ++have >= need)
                return true;
        return false;
    };
    return good(k, IVec(a.dim(), 0));
}

PeriodicSet periodic_sumset(const std::vector<PeriodicSet>& sets, const std::vector<IntMatrix>& mats, std::int64_t cap)
{
    if (sets.empty() || sets.size() != mats.size())
        fail_input("need one map per periodic set");
    std::size_t d = sets[0].dim();
    std::vector<PeriodicSet> imgs;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].dim() != d)
            fail_input("dimension mismatch");
        imgs.push_back(sets[i].image(mats[i]));
    }
    IntegerLattice period = imgs[0].period();
    for (std::size_t i = 1; i < imgs.size(); ++i)
        period = lattice_sum(period, imgs[i].period());
    std::vector<IVec> acc{IVec(d, 0)};
    for (const auto& s : imgs) {
        if (s.is_empty())
            return PeriodicSet::empty(d);
        if (static_cast<std::int64_t>(acc.size()) > cap / static_cast<std::int64_t>(s.residues().size()))
            fail_refusal("periodic sumset exceeds cap");
        std::vector<IVec> next;
        next.reserve(acc.size() * s.residues().size());
        for (const auto& x : acc)
            for (const auto& y : s.residues())
                next.push_back(period.reduce(add(x, y)));
        sort_unique(next);
        acc = std::move(next);
    }
    return PeriodicSet(period, acc).minimal();
}

bool AxisBox::contains(const IVec& v) const
{
    for (std::size_t i = 0; i < corner.size(); ++i)
        if (v[i] < corner[i] || v[i] >= corner[i] + side)
            return false;
    return true;
}

Int AxisBox::volume() const
{
    Int v = 1;
    for (std::size_t i = 0; i < corner.size(); ++i)
        v *= static_cast<long>(side);
    return v;
}

namespace {

IntegerLattice tiling_lattice(const AxisBox& s, const Flag& f, const IntegerLattice* tiling)
{
    std::size_t d = f.dim();
    if (s.corner.size() != d || s.side <= 0)
        fail_input("box dimension mismatch");
    IntegerLattice p = tiling ? *tiling : IntegerLattice::scaled(d, s.side);
    if (p.dim() != d)
        fail_input("tiling lattice dimension mismatch");
    for (std::size_t i = 0; i < d; ++i)
        if (p.diag(i) != s.side)
            fail_input("box is not tiled by the given lattice");
    if (!f.at(1).contains(p))
        fail_input("box is not tileable inside L_1");
    return p;
}

} // namespace

StaircaseBody local_ld(const PointSet& a, const AxisBox& s, const Flag& f, const IntegerLattice* tiling,
                       std::int64_t cap)
{
    IntegerLattice p = tiling_lattice(s, f, tiling);
    if (a.dim() != f.dim())
        fail_input("dimension mismatch");
    std::vector<IVec> inside;
    for (std::size_t i = 0; i < a.size(); ++i) {
        IVec v = a.point(i);
        if (s.contains(v))
            inside.push_back(std::move(v));
    }
    return lattice_density(PeriodicSet(p, inside), f, cap);
}

StaircaseBody local_ld(const PeriodicSet& a, const AxisBox& s, const Flag& f, const IntegerLattice* tiling,
                       std::int64_t cap)
{
    IntegerLattice p = tiling_lattice(s, f, tiling);
    if (s.volume() > cap)
        fail_refusal("box exceeds cap");
    std::size_t d = f.dim();
    std::vector<IVec> inside;
    IVec off(d, 0);
    for (;;) {
        IVec v = add(s.corner, off);
        if (a.contains(v))
            inside.push_back(v);
        std::size_t i = 0;
        while (i < d && ++off[i] == s.side) {
            off[i] = 0;
            ++i;
        }
        if (i == d)
            break;
    }
    return lattice_density(PeriodicSet(p, inside), f, cap);
}

namespace {

IntegerLattice ideal_in_coords(const FractionalIdealLattice& j, const FractionalIdealLattice& frame,
                               const IntegralBasis& basis)
{
    std::vector<IVec> cols;
    for (const auto& e : ideal_basis(j, basis))
        cols.push_back(ideal_coordinates(e, frame, basis));
    return IntegerLattice::hnf(cols, static_cast<std::size_t>(basis.degree()));
}

} // namespace

IdealFlags flags_from_ideals(const DilateSystem& sys, const IntegralBasis& basis, const std::vector<unsigned>& n)
{
    std::size_t k = sys.k();
    if (n.size() != k)
        fail_input("need one exponent per dilate");
    if (basis.field() != sys.field)
        fail_input("basis belongs to a different field");
    const NumberField& kf = sys.field;
    FractionalIdealLattice o = unit_ideal(basis);

    std::vector<FractionalIdealLattice> a{o}, b;
    for (std::size_t l = 0; l < k; ++l) {
        if (sys.dilates[l].is_zero())
            fail_input("dilates must be nonzero");
        auto inv = principal_ideal(kf.inv(sys.dilates[l]), basis);
        a.push_back(ideal_intersect(a.back(), inv));
        auto bl = ideal_product(a.back(), ideal_inverse(a[l], basis), basis);
        if (!bl.integral() || !ideal_contains(o, bl))
            fail_internal("quotient ideal is not integral");
        if (ideal_product(bl, a[l], basis) != a.back())
            fail_internal("ideal factorisation mismatch");
        b.push_back(std::move(bl));
    }
    if (a.back() != denominator_ideal(sys, basis))
        fail_internal("iterated intersection differs from the denominator ideal");

    // c_{n,l} = b_{l+1}^{n_{l+1}} ... b_k^{n_k}
    std::vector<FractionalIdealLattice> c(k + 1, o);
    for (std::size_t l = k; l-- > 0;)
        c[l] = ideal_product(c[l + 1], ideal_power(b[l], n[l], basis), basis);

    const FractionalIdealLattice& dd = a.back();
    std::vector<IntegerLattice> fl, gl;
    for (std::size_t l = 0; l <= k; ++l) {
        fl.push_back(ideal_in_coords(ideal_product(dd, c[l], basis), dd, basis));
        gl.push_back(ideal_in_coords(c[l], o, basis));
    }
    return IdealFlags{std::move(a), std::move(b), std::move(c), Flag(std::move(fl)), Flag(std::move(gl))};
}

FlagFamily ideal_flag_family(const DilateSystem& sys, const IntegralBasis& basis)
{
    auto cache = std::make_shared<std::map<std::vector<unsigned>, Flag>>();
    return [sys, basis, cache](const std::vector<unsigned>& n) {
        auto it = cache->find(n);
        if (it == cache->end())
            it = cache->emplace(n, flags_from_ideals(sys, basis, n).f).first;
        return it->second;
    };
}

namespace {

std::vector<unsigned> level_vector(const RegularityParams& p, unsigned r)
{
    std::vector<unsigned> n(p.k, 0);
    n[p.l - 1] = r;
    for (std::size_t i = 0; i < p.tail.size(); ++i)
        n[p.l + i] = p.tail[i];
    return n;
}

void check_params(const PointSet& a, const RegularityParams& p)
{
    if (p.k < 1 || p.l < 1 || p.l > p.k || p.tail.size() != p.k - p.l)
        fail_input("regularity parameters need 1 <= l <= k and k - l tail entries");
    if (p.m < 1 || p.n_side < 1 || p.delta <= 0 || p.delta >= 1)
        fail_input("regularity parameters out of range");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (auto x : a[i])
            if (x < 0 || x >= p.n_side)
                fail_input("set must lie in [0, N)^d");
}

Rat proj_local(const std::vector<IVec>& pts, std::size_t d, const AxisBox& box, const Flag& f, std::size_t axis)
{
    if (pts.empty())
        return 0;
    return projection(local_ld(PointSet(d, pts), box, f), axis);
}

std::int64_t ipow(std::int64_t b, std::size_t e)
{
    std::int64_t v = 1;
    for (std::size_t i = 0; i < e; ++i)
        v = checked_mul(v, b);
    return v;
}

// Points grouped by the cube of the given side that contains them.
std::map<IVec, std::vector<IVec>> bucket(const PointSet& a, std::int64_t side)
{
    std::map<IVec, std::vector<IVec>> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        IVec v = a.point(i), c(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            c[j] = v[j] / side * side;
        out[c].push_back(std::move(v));
    }
    return out;
}

struct CubeVerdict {
    bool regular = true;
    Rat parent;
    Rat child_sum;
};

CubeVerdict judge(const std::vector<IVec>& pts, std::size_t d, const AxisBox& cube, const Flag& fn, const Flag& fn1,
                  const RegularityParams& p)
{
    CubeVerdict v;
    std::int64_t sub = cube.side / p.m;
    v.parent = proj_local(pts, d, cube, fn, p.l + 1);
    Rat bar = (1 - p.delta) * v.parent;
    auto kids = bucket(PointSet(d, pts), sub);
    std::int64_t count = ipow(p.m, d);
    std::int64_t inhabited = 0;
    for (const auto& [corner, q] : kids) {
        Rat x = proj_local(q, d, AxisBox{corner, sub}, fn1, p.l + 1);
        v.child_sum += x;
        ++inhabited;
        if (x < bar)
            v.regular = false;
    }
    // empty subcubes have projection 0
    if (inhabited < count && bar > 0)
        v.regular = false;
    return v;
}

} // namespace

bool is_regular(const PointSet& a, const AxisBox& cube, const FlagFamily& fam, const RegularityParams& p,
                unsigned level)
{
    check_params(a, p);
    if (cube.side % p.m != 0)
        fail_input("cube side not divisible by M");
    std::vector<IVec> pts;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (cube.contains(a.point(i)))
            pts.push_back(a.point(i));
    return judge(pts, a.dim(), cube, fam(level_vector(p, level)), fam(level_vector(p, level + 1)), p).regular;
}

RegularDecomposition regular_decomposition(const PointSet& a, const FlagFamily& fam, const RegularityParams& p)
{
    check_params(a, p);
    std::size_t d = a.dim();
    Rat need = (1 - p.delta) * Rat(static_cast<unsigned long>(a.size()));
    RegularDecomposition out;
    std::int64_t side = p.n_side;
    for (unsigned r = 0; r <= static_cast<unsigned>(p.max_level); ++r) {
        if (side % p.m != 0)
            fail_refusal("divisibility failure: cube side " + std::to_string(side) + " at level " +
                         std::to_string(r) + " is not divisible by M");
        Flag fn = fam(level_vector(p, r)), fn1 = fam(level_vector(p, r + 1));
        if (!fn.at(1).contains(IntegerLattice::scaled(d, side)) ||
            !fn1.at(1).contains(IntegerLattice::scaled(d, side / p.m)))
            fail_refusal("divisibility failure: cubes at level " + std::to_string(r) + " are not tileable");

        std::int64_t per_axis = p.n_side / side;
        Rat cubes_r = Rat(ipow(per_axis, d));
        Rat dr = 0, dr1 = 0;
        std::vector<IVec> kept_pts;
        std::vector<IVec> regular_cubes;
        auto groups = bucket(a, side);
        // every cube of the grid, empty ones are trivially regular
        IVec idx(d, 0);
        for (;;) {
            IVec corner(d);
            for (std::size_t j = 0; j < d; ++j)
                corner[j] = idx[j] * side;
            auto it = groups.find(corner);
            bool reg = true;
            if (it != groups.end()) {
                auto v = judge(it->second, d, AxisBox{corner, side}, fn, fn1, p);
                dr += v.parent;
                dr1 += v.child_sum;
                reg = v.regular;
                if (reg)
                    kept_pts.insert(kept_pts.end(), it->second.begin(), it->second.end());
            }
            if (reg)
                regular_cubes.push_back(corner);
            std::size_t j = 0;
            while (j < d && ++idx[j] == per_axis) {
                idx[j] = 0;
                ++j;
            }
            if (j == d)
                break;
        }
        out.energy.push_back(dr / cubes_r);
        Rat next = dr1 / (cubes_r * Rat(ipow(p.m, d)));
        if (Rat(static_cast<unsigned long>(kept_pts.size())) >= need) {
            out.energy.push_back(next);
            out.r = r;
            out.side = side;
            std::sort(regular_cubes.begin(), regular_cubes.end());
            out.cubes = std::move(regular_cubes);
            out.kept = PointSet(d, kept_pts);
            return out;
        }
        side /= p.m;
    }
    fail_refusal("no stable level found within the level limit");
}

bool check_decomposition(const PointSet& a, const FlagFamily& fam, const RegularityParams& p,
                         const RegularDecomposition& out)
{
    std::size_t d = a.dim();
    if (Rat(static_cast<unsigned long>(out.kept.size())) < (1 - p.delta) * Rat(static_cast<unsigned long>(a.size())))
        return false;
    std::vector<IVec> expect;
    for (std::size_t i = 0; i < a.size(); ++i) {
        IVec v = a.point(i);
        for (const auto& c : out.cubes)
            if (AxisBox{c, out.side}.contains(v)) {
                expect.push_back(v);
                break;
            }
    }
    if (PointSet(d, expect) != out.kept)
        return false;
    for (const auto& c : out.cubes)
        if (!is_regular(a, AxisBox{c, out.side}, fam, p, static_cast<unsigned>(out.r)))
            return false;
    return true;
}

} // namespace sumdil
