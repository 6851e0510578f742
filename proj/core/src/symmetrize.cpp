#include "sumdil/symmetrize.hpp"

#include "sumdil/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>

namespace sumdil {

namespace {

constexpr double snap_tol = 1e-9;

std::int64_t floor_snap(double x)
{
    double r = std::round(x);
    return static_cast<std::int64_t>(std::abs(x - r) < snap_tol ? r : std::floor(x));
}

std::int64_t ceil_snap(double x)
{
    double r = std::round(x);
    return static_cast<std::int64_t>(std::abs(x - r) < snap_tol ? r : std::ceil(x));
}

using Interval64 = std::pair<std::int64_t, std::int64_t>;

struct Run {
    IVec prefix;
    std::vector<Interval64> spans;   // inclusive, sorted, disjoint, non-adjacent
};

// Lines along the last axis. Cells are lexicographically sorted so each prefix is contiguous.
std::vector<Run> to_runs(const PointSet& s)
{
    std::vector<Run> out;
    std::size_t d = s.dim();
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto c = s[i];
        IVec pre(c.begin(), c.end() - 1);
        std::int64_t x = c[d - 1];
        if (out.empty() || out.back().prefix != pre)
            out.push_back({std::move(pre), {{x, x}}});
        else if (out.back().spans.back().second + 1 == x)
            out.back().spans.back().second = x;
        else
            out.back().spans.push_back({x, x});
    }
    return out;
}

PointSet from_lines(std::size_t d, std::unordered_map<IVec, std::vector<Interval64>, IVecHash>& lines,
                    std::uint64_t cap)
{
    std::uint64_t total = 0;
    for (auto& [key, spans] : lines) {
        std::sort(spans.begin(), spans.end());
        std::vector<Interval64> merged;
        for (const auto& s : spans) {
            if (!merged.empty() && s.first <= merged.back().second + 1)
                merged.back().second = std::max(merged.back().second, s.second);
            else
                merged.push_back(s);
        }
        spans = std::move(merged);
        for (const auto& s : spans)
            total += static_cast<std::uint64_t>(s.second - s.first + 1);
        if (total > cap)
            fail_refusal("voxel count exceeds cap");
    }
    std::vector<std::int64_t> flat;
    flat.reserve(total * d);
    for (const auto& [key, spans] : lines)
        for (const auto& s : spans)
            for (std::int64_t x = s.first; x <= s.second; ++x) {
                flat.insert(flat.end(), key.begin(), key.end());
                flat.push_back(x);
            }
    return PointSet::from_flat(d, std::move(flat));
}

} // namespace

VoxelSet::VoxelSet(std::size_t dim, Rat h) : cells_(dim), h_(std::move(h))
{
    if (dim == 0 || h_ <= 0)
        fail_input("voxel grid needs positive dimension and resolution");
}

VoxelSet::VoxelSet(PointSet cells, Rat h) : cells_(std::move(cells)), h_(std::move(h))
{
    if (cells_.dim() == 0 || h_ <= 0)
        fail_input("voxel grid needs positive dimension and resolution");
}

VoxelSet VoxelSet::box(const std::vector<double>& lo, const std::vector<double>& hi, Rat h)
{
    if (lo.size() != hi.size() || lo.empty())
        fail_input("box corners must have equal dimension");
    std::size_t d = lo.size();
    double hd = h.get_d();
    IVec a(d), b(d);
    for (std::size_t i = 0; i < d; ++i) {
        a[i] = floor_snap(lo[i] / hd);
        b[i] = ceil_snap(hi[i] / hd) - 1;
        if (b[i] < a[i])
            return VoxelSet(d, h);
    }
    std::vector<std::int64_t> flat;
    IVec c = a;
    for (;;) {
        flat.insert(flat.end(), c.begin(), c.end());
        std::size_t i = 0;
        while (i < d && ++c[i] > b[i]) {
            c[i] = a[i];
            ++i;
        }
        if (i == d)
            break;
    }
    return VoxelSet(PointSet::from_flat(d, std::move(flat)), h);
}

VoxelSet VoxelSet::disk(double cx, double cy, double radius, Rat h)
{
    double hd = h.get_d();
    std::vector<std::int64_t> flat;
    auto i0 = static_cast<std::int64_t>(std::floor((cx - radius) / hd)) - 1;
    auto i1 = static_cast<std::int64_t>(std::ceil((cx + radius) / hd)) + 1;
    auto j0 = static_cast<std::int64_t>(std::floor((cy - radius) / hd)) - 1;
    auto j1 = static_cast<std::int64_t>(std::ceil((cy + radius) / hd)) + 1;
    for (auto i = i0; i <= i1; ++i)
        for (auto j = j0; j <= j1; ++j) {
            double x = (static_cast<double>(i) + 0.5) * hd - cx, y = (static_cast<double>(j) + 0.5) * hd - cy;
            if (x * x + y * y <= radius * radius) {
                flat.push_back(i);
                flat.push_back(j);
            }
        }
    return VoxelSet(PointSet::from_flat(2, std::move(flat)), h);
}

VoxelSet VoxelSet::unite(const VoxelSet& other) const
{
    if (other.dim() != dim() || other.h_ != h_)
        fail_input("voxel grids differ");
    auto flat = cells_.flat();
    flat.insert(flat.end(), other.cells_.flat().begin(), other.cells_.flat().end());
    return VoxelSet(PointSet::from_flat(dim(), std::move(flat)), h_);
}

Rat VoxelSet::measure() const
{
    Rat cell = 1;
    for (std::size_t i = 0; i < dim(); ++i)
        cell *= h_;
    return Rat(static_cast<unsigned long>(count())) * cell;
}

std::vector<std::pair<std::int64_t, std::int64_t>> VoxelSet::bounds() const
{
    std::vector<std::pair<std::int64_t, std::int64_t>> b;
    if (empty())
        return b;
    b.assign(dim(), {INT64_MAX, INT64_MIN});
    for (std::size_t i = 0; i < count(); ++i) {
        auto c = cells_[i];
        for (std::size_t j = 0; j < dim(); ++j) {
            b[j].first = std::min(b[j].first, c[j]);
            b[j].second = std::max(b[j].second, c[j]);
        }
    }
    return b;
}

std::size_t VoxelSet::exposed_faces() const
{
    std::size_t faces = 0;
    for (std::size_t i = 0; i < count(); ++i) {
        IVec c = cells_.point(i);
        for (std::size_t j = 0; j < dim(); ++j)
            for (int s : {-1, 1}) {
                c[j] += s;
                faces += contains(c) ? 0 : 1;
                c[j] -= s;
            }
    }
    return faces;
}

std::size_t VoxelSet::boundary_cells() const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < count(); ++i) {
        IVec c = cells_.point(i);
        bool open = false;
        for (std::size_t j = 0; j < dim() && !open; ++j)
            for (int s : {-1, 1}) {
                c[j] += s;
                open = open || !contains(c);
                c[j] -= s;
            }
        n += open ? 1 : 0;
    }
    return n;
}

RealMatrix RealMatrix::identity(std::size_t n)
{
    RealMatrix m{n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::diagonal(const std::vector<double>& d)
{
    RealMatrix m{d.size(), std::vector<double>(d.size() * d.size(), 0.0)};
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

bool RealMatrix::is_diagonal() const
{
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (*this)(i, j) != 0.0)
                return false;
    return true;
}

namespace {

double det_real(const RealMatrix& m)
{
    std::size_t n = m.n;
    std::vector<double> a = m.a;
    double det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[p * n + c]))
                p = r;
        if (a[p * n + c] == 0.0)
            return 0.0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[p * n + j], a[c * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = a[r * n + c] / a[c * n + c];
            for (std::size_t j = c; j < n; ++j)
                a[r * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

bool is_zero_map(const RealMatrix& m)
{
    return std::all_of(m.a.begin(), m.a.end(), [](double x) { return x == 0.0; });
}

// Interiors of the parallelogram p0 + s u + t w (s, t in [0, 1]) and the unit cell at (i, j) overlap.
bool overlaps(const double p0[2], const double u[2], const double w[2], std::int64_t i, std::int64_t j)
{
    double px[4] = {p0[0], p0[0] + u[0], p0[0] + w[0], p0[0] + u[0] + w[0]};
    double py[4] = {p0[1], p0[1] + u[1], p0[1] + w[1], p0[1] + u[1] + w[1]};
    double qx[4] = {double(i), double(i + 1), double(i), double(i + 1)};
    double qy[4] = {double(j), double(j), double(j + 1), double(j + 1)};
    double axes[4][2] = {{1, 0}, {0, 1}, {-u[1], u[0]}, {-w[1], w[0]}};
    for (auto& ax : axes) {
        double norm = std::hypot(ax[0], ax[1]);
        double a0 = INFINITY, a1 = -INFINITY, b0 = INFINITY, b1 = -INFINITY;
        for (int k = 0; k < 4; ++k) {
            double pa = px[k] * ax[0] + py[k] * ax[1], qa = qx[k] * ax[0] + qy[k] * ax[1];
            a0 = std::min(a0, pa);
            a1 = std::max(a1, pa);
            b0 = std::min(b0, qa);
            b1 = std::max(b1, qa);
        }
        if (std::min(a1, b1) - std::max(a0, b0) <= 1e-12 * norm)
            return false;
    }
    return true;
}

} // namespace

VoxelSet map_voxels(const VoxelSet& a, const RealMatrix& m, std::uint64_t cap)
{
    std::size_t d = a.dim();
    if (m.n != d || m.a.size() != d * d)
        fail_input("map dimension mismatch");
    if (std::abs(det_real(m)) < 1e-12)
        fail_input("map must be nonsingular");
    std::vector<std::int64_t> flat;
    auto push = [&](const IVec& c) {
        flat.insert(flat.end(), c.begin(), c.end());
        if (flat.size() / d > cap)
            fail_refusal("voxel image exceeds cap");
    };
    const PointSet& cells = a.cells();

    if (m.is_diagonal()) {
        IVec lo(d), hi(d), c(d);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto v = cells[i];
            for (std::size_t j = 0; j < d; ++j) {
                double s = m(j, j);
                double x0 = s * static_cast<double>(v[j]), x1 = s * static_cast<double>(v[j] + 1);
                lo[j] = floor_snap(std::min(x0, x1));
                hi[j] = ceil_snap(std::max(x0, x1)) - 1;
            }
            c = lo;
            for (;;) {
                push(c);
                std::size_t j = 0;
                while (j < d && ++c[j] > hi[j]) {
                    c[j] = lo[j];
                    ++j;
                }
                if (j == d)
                    break;
            }
        }
        return VoxelSet(PointSet::from_flat(d, std::move(flat)), a.resolution());
    }

    IVec lo(d), hi(d), c(d);
    std::vector<double> corner(d);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto v = cells[i];
        for (std::size_t r = 0; r < d; ++r) {
            double base = 0, mn = 0, mx = 0;
            for (std::size_t j = 0; j < d; ++j) {
                double e = m(r, j);
                base += e * static_cast<double>(v[j]);
                (e < 0 ? mn : mx) += e;
            }
            corner[r] = base;
            lo[r] = floor_snap(base + mn);
            hi[r] = ceil_snap(base + mx) - 1;
        }
        if (d == 2) {
            double p0[2] = {corner[0], corner[1]};
            double u[2] = {m(0, 0), m(1, 0)}, w[2] = {m(0, 1), m(1, 1)};
            for (auto x = lo[0]; x <= hi[0]; ++x)
                for (auto y = lo[1]; y <= hi[1]; ++y)
                    if (overlaps(p0, u, w, x, y))
                        push({x, y});
            continue;
        }
        c = lo;
        for (;;) {
            push(c);
            std::size_t j = 0;
            while (j < d && ++c[j] > hi[j]) {
                c[j] = lo[j];
                ++j;
            }
            if (j == d)
                break;
        }
    }
    return VoxelSet(PointSet::from_flat(d, std::move(flat)), a.resolution());
}

VoxelSet minkowski(const VoxelSet& a, const VoxelSet& b, std::uint64_t cap)
{
    if (a.dim() != b.dim() || a.resolution() != b.resolution())
        fail_input("voxel grids differ");
    std::size_t d = a.dim();
    if (a.empty() || b.empty())
        return VoxelSet(d, a.resolution());
    auto ra = to_runs(a.cells()), rb = to_runs(b.cells());
    std::unordered_map<IVec, std::vector<Interval64>, IVecHash> lines;
    std::size_t corners = std::size_t{1} << (d - 1);
    IVec key(d - 1);
    for (const auto& x : ra)
        for (const auto& y : rb)
            for (std::size_t e = 0; e < corners; ++e) {
                for (std::size_t j = 0; j + 1 < d; ++j)
                    key[j] = x.prefix[j] + y.prefix[j] + static_cast<std::int64_t>((e >> j) & 1);
                auto& out = lines[key];
                for (const auto& s : x.spans)
                    for (const auto& t : y.spans)
                        out.push_back({s.first + t.first, s.second + t.second + 1});
            }
    return VoxelSet(from_lines(d, lines, cap), a.resolution());
}

VoxelSet voxel_sum(const std::vector<VoxelSet>& sets, const std::vector<RealMatrix>& maps, std::uint64_t cap)
{
    if (sets.empty() || sets.size() != maps.size())
        fail_input("need one map per voxel set");
    std::optional<VoxelSet> acc;
    for (std::size_t l = 0; l < sets.size(); ++l) {
        if (sets[l].empty())
            return VoxelSet(sets[0].dim(), sets[0].resolution());
        if (is_zero_map(maps[l]))
            continue;   // adds the single point 0
        VoxelSet img = map_voxels(sets[l], maps[l], cap);
        acc = acc ? minkowski(*acc, img, cap) : std::move(img);
    }
    if (!acc) {
        // every map is zero: the sum is {0}, a null set
        return VoxelSet(sets[0].dim(), sets[0].resolution());
    }
    return *acc;
}

VoxelSet steiner_1d(const VoxelSet& a, std::size_t axis)
{
    std::size_t d = a.dim();
    if (axis >= d)
        fail_input("axis out of range");
    std::map<IVec, std::int64_t> counts;
    for (std::size_t i = 0; i < a.count(); ++i) {
        IVec c = a.cells().point(i);
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(axis));
        ++counts[c];
    }
    std::vector<std::int64_t> flat;
    flat.reserve(a.count() * d);
    for (const auto& [key, n] : counts) {
        std::int64_t lo = -((n + 1) / 2), hi = n / 2 - 1;
        for (auto x = lo; x <= hi; ++x) {
            IVec c = key;
            c.insert(c.begin() + static_cast<std::ptrdiff_t>(axis), x);
            flat.insert(flat.end(), c.begin(), c.end());
        }
    }
    return VoxelSet(PointSet::from_flat(d, std::move(flat)), a.resolution());
}

std::vector<std::pair<std::int64_t, std::int64_t>> disk_fill_order(std::size_t n)
{
    auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n) / 3.0))) + 2;
    struct Cell {
        std::int64_t key, x, y;
    };
    std::vector<Cell> cells;
    for (auto x = -r; x < r; ++x)
        for (auto y = -r; y < r; ++y) {
            std::int64_t key = (2 * x + 1) * (2 * x + 1) + (2 * y + 1) * (2 * y + 1);
            if (key <= 4 * r * r)
                cells.push_back({key, x, y});
        }
    std::sort(cells.begin(), cells.end(), [](const Cell& p, const Cell& q) {
        return std::tie(p.key, p.x, p.y) < std::tie(q.key, q.x, q.y);
    });
    if (cells.size() < n)
        fail_internal("disk fill order too short");
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({cells[i].x, cells[i].y});
    return out;
}

VoxelSet ball_rearrange_2d(const VoxelSet& a, std::size_t axis0, std::size_t axis1)
{
    std::size_t d = a.dim();
    if (axis0 >= d || axis1 >= d || axis0 == axis1)
        fail_input("need two distinct axes");
    auto strip = [&](IVec c) {
        IVec k;
        for (std::size_t j = 0; j < d; ++j)
            if (j != axis0 && j != axis1)
                k.push_back(c[j]);
        return k;
    };
    std::map<IVec, std::size_t> counts;
    std::size_t most = 0;
    for (std::size_t i = 0; i < a.count(); ++i)
        most = std::max(most, ++counts[strip(a.cells().point(i))]);
    auto order = disk_fill_order(most);
    std::vector<std::int64_t> flat;
    flat.reserve(a.count() * d);
    for (const auto& [key, n] : counts)
        for (std::size_t t = 0; t < n; ++t) {
            IVec c(d);
            std::size_t q = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j == axis0)
                    c[j] = order[t].first;
                else if (j == axis1)
                    c[j] = order[t].second;
                else
                    c[j] = key[q++];
            }
            flat.insert(flat.end(), c.begin(), c.end());
        }
    return VoxelSet(PointSet::from_flat(d, std::move(flat)), a.resolution());
}

std::size_t EigenStructure::dim() const
{
    std::size_t d = 0;
    for (const auto& b : blocks)
        d += static_cast<std::size_t>(b.dim);
    return d;
}

std::size_t EigenStructure::maps() const { return blocks.empty() ? 0 : blocks[0].scale.size(); }

void EigenStructure::validate() const
{
    if (blocks.empty())
        fail_input("eigen structure needs at least one block");
    for (const auto& b : blocks) {
        if (b.dim != 1 && b.dim != 2)
            fail_input("blocks have dimension 1 or 2");
        if (b.scale.size() != maps() || b.angle.size() != maps() || maps() == 0)
            fail_input("every block needs one scale and one angle per map");
        for (double r : b.scale)
            if (!(r >= 0))
                fail_input("scales must be non-negative");
    }
}

std::vector<RealMatrix> maps_from_structure(const EigenStructure& e)
{
    e.validate();
    std::size_t d = e.dim();
    std::vector<RealMatrix> out;
    for (std::size_t l = 0; l < e.maps(); ++l) {
        RealMatrix m{d, std::vector<double>(d * d, 0.0)};
        std::size_t o = 0;
        for (const auto& b : e.blocks) {
            double r = b.scale[l], c = std::cos(b.angle[l]), s = std::sin(b.angle[l]);
            if (b.dim == 1) {
                m(o, o) = r * (c < 0 ? -1.0 : 1.0);
            } else {
                m(o, o) = r * c;
                m(o, o + 1) = -r * s;
                m(o + 1, o) = r * s;
                m(o + 1, o + 1) = r * c;
            }
            o += static_cast<std::size_t>(b.dim);
        }
        out.push_back(std::move(m));
    }
    return out;
}

CtsReport verify_cts_bound(const VoxelSet& a, const EigenStructure& e, const std::vector<RealMatrix>& maps,
                           std::uint64_t cap)
{
    auto expect = maps_from_structure(e);
    if (e.dim() != a.dim() || maps.size() != expect.size())
        fail_input("maps do not match the eigen structure");
    for (std::size_t l = 0; l < maps.size(); ++l) {
        if (maps[l].n != a.dim())
            fail_input("map dimension mismatch");
        for (std::size_t i = 0; i < maps[l].a.size(); ++i)
            if (std::abs(maps[l].a[i] - expect[l].a[i]) > 1e-9)
                fail_input("maps are not consistent with the eigen structure");
    }
    CtsReport rep;
    rep.measure_a = a.measure().get_d();
    double factor = 1;
    for (const auto& b : e.blocks) {
        double s = 0;
        for (double r : b.scale)
            s += r;
        factor *= std::pow(s, b.dim);
    }
    rep.bound = factor * rep.measure_a;
    VoxelSet sum = voxel_sum(std::vector<VoxelSet>(maps.size(), a), maps, cap);
    rep.cells = sum.count();
    rep.measured = sum.measure().get_d();
    rep.budget = static_cast<double>(sum.boundary_cells()) * std::pow(a.h(), static_cast<double>(a.dim()));
    rep.pass = rep.measured >= rep.bound - rep.budget;
    return rep;
}

CtsReport verify_cts_bound(const VoxelSet& a, const EigenStructure& e, std::uint64_t cap)
{
    return verify_cts_bound(a, e, maps_from_structure(e), cap);
}

} // namespace sumdil
