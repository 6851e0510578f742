#include "sumdil/sumset.hpp"

#include "sumdil/embeddings.hpp"
#include "sumdil/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace sumdil {

namespace {

bool lex_less(const std::int64_t* a, const std::int64_t* b, std::size_t d)
{
    return std::lexicographical_compare(a, a + d, b, b + d);
}

std::vector<std::int64_t> canonical_sorted(std::size_t d, const std::vector<std::int64_t>& flat)
{
    std::size_t n = flat.size() / d;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return lex_less(&flat[x * d], &flat[y * d], d); });
    std::vector<std::int64_t> out;
    out.reserve(flat.size());
    for (std::size_t t = 0; t < n; ++t) {
        const std::int64_t* p = &flat[idx[t] * d];
        if (!out.empty() && std::equal(p, p + d, out.end() - static_cast<std::ptrdiff_t>(d)))
            continue;
        out.insert(out.end(), p, p + d);
    }
    return out;
}

// Bitmap over the bounding box; output in lexicographic order.
std::optional<std::vector<std::int64_t>> canonical_bitmap(std::size_t d, const std::vector<std::int64_t>& flat)
{
    std::size_t n = flat.size() / d;
    IVec lo(d, INT64_MAX), hi(d, INT64_MIN);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], flat[t * d + i]);
            hi[i] = std::max(hi[i], flat[t * d + i]);
        }
    long double volume = 1;
    for (std::size_t i = 0; i < d; ++i)
        volume *= static_cast<long double>(hi[i]) - static_cast<long double>(lo[i]) + 1;
    long double limit = std::max<long double>(8.0L * static_cast<long double>(n), 1 << 22);
    if (volume > limit || volume > static_cast<long double>(1ULL << 31))
        return std::nullopt;
    std::vector<std::uint64_t> stride(d);
    std::uint64_t s = 1;
    for (std::size_t i = d; i-- > 0;) {
        stride[i] = s;
        s *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
    }
    std::vector<std::uint64_t> bits((s + 63) / 64, 0);
    for (std::size_t t = 0; t < n; ++t) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < d; ++i)
            key += static_cast<std::uint64_t>(flat[t * d + i] - lo[i]) * stride[i];
        bits[key / 64] |= 1ULL << (key % 64);
    }
    std::vector<std::int64_t> out;
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = bits[w];
        while (word) {
            int b = __builtin_ctzll(word);
            word &= word - 1;
            std::uint64_t key = w * 64 + static_cast<std::uint64_t>(b);
            for (std::size_t i = 0; i < d; ++i) {
                out.push_back(lo[i] + static_cast<std::int64_t>(key / stride[i]));
                key %= stride[i];
            }
        }
    }
    return out;
}

std::vector<std::int64_t> canonical(std::size_t d, const std::vector<std::int64_t>& flat)
{
    if (flat.empty())
        return {};
    if (auto b = canonical_bitmap(d, flat))
        return std::move(*b);
    return canonical_sorted(d, flat);
}

void check_cap(long double projected, std::uint64_t cap)
{
    if (projected > static_cast<long double>(cap)) {
        std::ostringstream os;
        os << "projected sumset size " << static_cast<double>(projected) << " exceeds the cap of " << cap << " points";
        fail_refusal(os.str());
    }
}

PointSet pair_sum(const PointSet& s, const PointSet& b, const SumsetOptions& opt)
{
    check_cap(static_cast<long double>(s.size()) * static_cast<long double>(b.size()), opt.cap);
    std::size_t d = s.dim();
    unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(s.size() / 64 + 1)));
    std::vector<std::vector<std::int64_t>> parts(threads);
    auto work = [&](unsigned t) {
        std::size_t begin = s.size() * t / threads, end = s.size() * (t + 1) / threads;
        std::vector<std::int64_t> flat;
        flat.reserve((end - begin) * b.size() * d);
        for (std::size_t i = begin; i < end; ++i) {
            auto x = s[i];
            for (std::size_t j = 0; j < b.size(); ++j) {
                auto y = b[j];
                for (std::size_t c = 0; c < d; ++c)
                    flat.push_back(checked_add(x[c], y[c]));
            }
        }
        parts[t] = canonical(d, flat);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    work(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    if (threads == 1)
        return PointSet::from_flat(d, std::move(parts[0]));
    std::vector<std::int64_t> all;
    for (auto& p : parts)
        all.insert(all.end(), p.begin(), p.end());
    return PointSet::from_flat(d, std::move(all));
}

Rat exact_radius(std::int64_t n, double t) { return Rat(n) * Rat(t); }

} // namespace

PointSet::PointSet(std::size_t dim, const std::vector<IVec>& points) : dim_(dim)
{
    if (dim == 0)
        fail_input("point dimension must be positive");
    std::vector<std::int64_t> flat;
    for (const auto& p : points) {
        if (p.size() != dim)
            fail_input("point of wrong dimension");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    flat_ = canonical(dim, flat);
}

PointSet PointSet::from_flat(std::size_t dim, std::vector<std::int64_t> flat)
{
    if (dim == 0 || flat.size() % dim != 0)
        fail_input("flat coordinates do not match the dimension");
    PointSet s(dim);
    s.flat_ = canonical(dim, flat);
    return s;
}

IVec PointSet::point(std::size_t i) const
{
    auto p = (*this)[i];
    return IVec(p.begin(), p.end());
}

std::vector<IVec> PointSet::points() const
{
    std::vector<IVec> out;
    for (std::size_t i = 0; i < size(); ++i)
        out.push_back(point(i));
    return out;
}

bool PointSet::contains(const IVec& p) const
{
    if (p.size() != dim_)
        return false;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (lex_less(&flat_[mid * dim_], p.data(), dim_))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < size() && std::equal(p.begin(), p.end(), flat_.begin() + static_cast<std::ptrdiff_t>(lo * dim_));
}

PointSet PointSet::translate(const IVec& v) const
{
    if (v.size() != dim_)
        fail_input("translation of wrong dimension");
    std::vector<std::int64_t> flat(flat_);
    for (std::size_t i = 0; i < flat.size(); ++i)
        flat[i] = checked_add(flat[i], v[i % dim_]);
    return from_flat(dim_, std::move(flat));
}

PointSet PointSet::image(const IntMatrix& m) const
{
    if (m.cols() != dim_)
        fail_input("matrix does not act on this point set");
    std::size_t out = m.rows();
    std::vector<std::int64_t> mm;
    for (std::size_t i = 0; i < out; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            mm.push_back(to_i64(m(i, j)));
    std::vector<std::int64_t> flat;
    flat.reserve(size() * out);
    for (std::size_t t = 0; t < size(); ++t) {
        auto p = (*this)[t];
        for (std::size_t i = 0; i < out; ++i) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < dim_; ++j)
                s = checked_add(s, checked_mul(mm[i * dim_ + j], p[j]));
            flat.push_back(s);
        }
    }
    return from_flat(out, std::move(flat));
}

PointSet read_points(std::istream& in)
{
    std::vector<IVec> pts;
    std::string line;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        IVec p;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument(tok);
                p.push_back(v);
            } catch (const std::exception&) {
                fail_input("bad integer '" + tok + "' in point file");
            }
        }
        if (p.empty())
            continue;
        if (dim == 0)
            dim = p.size();
        else if (p.size() != dim)
            fail_input("point file mixes dimensions");
        pts.push_back(std::move(p));
    }
    if (dim == 0)
        fail_input("point file is empty");
    return PointSet(dim, pts);
}

void write_points(std::ostream& out, const PointSet& s)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto p = s[i];
        for (std::size_t c = 0; c < p.size(); ++c)
            out << (c ? " " : "") << p[c];
        out << '\n';
    }
}

PointSet linear_sumset(const std::vector<PointSet>& sets, const std::vector<IntMatrix>& mats, const SumsetOptions& opt)
{
    if (sets.empty() || sets.size() != mats.size())
        fail_input("need one matrix per set");
    std::size_t out = mats[0].rows();
    long double projected = 1;
    for (std::size_t l = 0; l < sets.size(); ++l) {
        if (mats[l].rows() != out || mats[l].cols() != sets[l].dim())
            fail_input("matrix dimensions do not match the sets");
        if (sets[l].empty())
            return PointSet(out);
        projected *= static_cast<long double>(sets[l].size());
    }
    check_cap(projected, opt.cap);
    PointSet acc = sets[0].image(mats[0]);
    for (std::size_t l = 1; l < sets.size(); ++l)
        acc = pair_sum(acc, sets[l].image(mats[l]), opt);
    return acc;
}

PointSet linear_sumset(const PointSet& a, const std::vector<IntMatrix>& mats, const SumsetOptions& opt)
{
    return linear_sumset(std::vector<PointSet>(mats.size(), a), mats, opt);
}

std::vector<IntMatrix> dilate_matrices(const DilateSystem& sys, const IntegralBasis& basis)
{
    auto dd = denominator_ideal(sys, basis);
    auto o = unit_ideal(basis);
    std::vector<IntMatrix> out;
    for (const auto& l : sys.all())
        out.push_back(mult_matrix(l, dd, o, basis));
    return out;
}

IdealCoordinates ideal_points(const std::vector<FieldElement>& a, const DilateSystem& sys, const IntegralBasis& basis)
{
    auto dd = denominator_ideal(sys, basis);
    RatMatrix b = to_rat(dd.lattice.basis());
    if (dd.den != 1)
        b = Rat(1, dd.den) * b;
    RatMatrix binv = *inverse(b);
    std::vector<RatVec> coords;
    Int scale = 1;
    for (const auto& x : a) {
        RatVec c = binv * basis.coords(x);
        for (const auto& v : c)
            scale = lcm(scale, v.get_den());
        coords.push_back(std::move(c));
    }
    std::vector<IVec> pts;
    for (const auto& c : coords) {
        IVec p;
        for (const auto& v : c) {
            Rat s = v * Rat(scale);
            p.push_back(to_i64(s.get_num()));
        }
        pts.push_back(std::move(p));
    }
    return {PointSet(static_cast<std::size_t>(sys.d()), pts), scale};
}

std::size_t field_sumset(const std::vector<FieldElement>& a, const DilateSystem& sys, const IntegralBasis& basis,
                         const SumsetOptions& opt)
{
    if (a.empty())
        return 0;
    auto pts = ideal_points(a, sys, basis);
    return linear_sumset(pts.points, dilate_matrices(sys, basis), opt).size();
}

ExtremalSet extremal_set(const DilateSystem& sys, const IntegralBasis& basis, std::int64_t n,
                         const std::vector<double>& radii)
{
    if (n < 0)
        fail_input("n must be non-negative");
    std::size_t d = static_cast<std::size_t>(sys.d());
    auto dd = denominator_ideal(sys, basis);
    auto beta = ideal_basis(dd, basis);
    const NumberField& k = sys.field;
    ExtremalSet out{PointSet(d), 0};

    if (d == 1) {
        double t = radii.empty() ? 1.0 : radii.at(0);
        if (!(t > 0))
            fail_input("radii must be positive");
        Rat r = exact_radius(n, t);
        Rat b = abs(beta[0].coeffs.empty() ? Rat(0) : beta[0].coeffs[0]);
        Int m = floor_rat(r / b);
        std::vector<IVec> pts;
        for (Int c = -m; c <= m; ++c)
            pts.push_back({to_i64(c)});
        out.points = PointSet(1, pts);
        return out;
    }

    EmbeddingData e = certified_roots(k.poly(), 1e-25);
    // Constraints: real roots and the first member of each pair.
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < d; ++i)
        if (e.real_mask[i] || static_cast<std::size_t>(e.pairing[i]) > i)
            roots.push_back(i);
    std::vector<double> t(roots.size(), 1.0);
    if (!radii.empty()) {
        if (radii.size() != roots.size())
            fail_input("expected " + std::to_string(roots.size()) + " radii");
        t = radii;
    }
    for (double x : t)
        if (!(x > 0) || !std::isfinite(x))
            fail_input("radii must be positive");

    // Embeddings of the basis as doubles with error radius.
    std::vector<std::vector<CertifiedComplex>> emb;
    for (const auto& b : beta)
        emb.push_back(embed(b, e));
    const double u = std::ldexp(1.0, -53);
    std::vector<std::vector<double>> sre(roots.size(), std::vector<double>(d)),
        sim(roots.size(), std::vector<double>(d)), srad(roots.size(), std::vector<double>(d));
    for (std::size_t c = 0; c < roots.size(); ++c)
        for (std::size_t j = 0; j < d; ++j) {
            const auto& z = emb[j][roots[c]];
            sre[c][j] = z.re();
            sim[c][j] = z.im();
            srad[c][j] = z.radius() + 2 * u * (std::fabs(sre[c][j]) + std::fabs(sim[c][j]));
        }

    // Bounding box of coefficient vectors.
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<double> bound_row;
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < roots.size(); ++c) {
        double r = static_cast<double>(n) * t[c];
        for (std::size_t j = 0; j < d; ++j)
            m(row, static_cast<Eigen::Index>(j)) = sre[c][j];
        bound_row.push_back(r);
        ++row;
        if (!e.real_mask[roots[c]]) {
            for (std::size_t j = 0; j < d; ++j)
                m(row, static_cast<Eigen::Index>(j)) = sim[c][j];
            bound_row.push_back(r);
            ++row;
        }
    }
    Eigen::MatrixXd minv = m.inverse();
    std::vector<std::int64_t> box(d);
    long double count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        double b = 0;
        for (std::size_t r = 0; r < d; ++r)
            b += std::fabs(minv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r))) * bound_row[r];
        box[i] = static_cast<std::int64_t>(std::floor(b * (1 + 1e-9) + 1e-6));
        count *= 2.0L * static_cast<long double>(box[i]) + 1;
    }
    check_cap(count, default_point_cap);

    const double gamma = (static_cast<double>(d) + 4) * u * 1.01;
    std::vector<std::int64_t> inside;
    std::vector<IVec> unsure;
    IVec c(d);
    for (std::size_t i = 0; i < d; ++i)
        c[i] = -box[i];
    for (;;) {
        bool ok = true, sure = true;
        for (std::size_t q = 0; q < roots.size() && ok; ++q) {
            double re = 0, im = 0, err = 0, mag = 0;
            for (std::size_t j = 0; j < d; ++j) {
                double cj = static_cast<double>(c[j]);
                re += cj * sre[q][j];
                im += cj * sim[q][j];
                err += std::fabs(cj) * srad[q][j];
                mag += std::fabs(cj) * (std::fabs(sre[q][j]) + std::fabs(sim[q][j]));
            }
            err += gamma * mag;
            double r = static_cast<double>(n) * t[q];
            double v = e.real_mask[roots[q]] ? std::fabs(re) : std::hypot(re, im);
            double slack = err + 4 * u * (v + r);
            if (v + slack <= r)
                continue;
            if (v - slack > r)
                ok = false;
            else
                sure = false;
        }
        if (ok) {
            if (sure)
                inside.insert(inside.end(), c.begin(), c.end());
            else
                unsure.push_back(c);
        }
        std::size_t i = 0;
        while (i < d && c[i] == box[i]) {
            c[i] = -box[i];
            ++i;
        }
        if (i == d)
            break;
        ++c[i];
    }

    // Boundary points: exact check for rational points, then higher precision, then the midpoint rule.
    if (!unsure.empty()) {
        EmbeddingData hp = certified_roots(k.poly(), 1e-150, 4096);
        for (const auto& p : unsure) {
            FieldElement x = k.zero();
            for (std::size_t j = 0; j < d; ++j)
                if (p[j] != 0)
                    x = k.add(x, k.scale(Rat(p[j]), beta[j]));
            auto z = embed(x, hp);
            bool in = true, midpoint_used = false;
            for (std::size_t q = 0; q < roots.size() && in; ++q) {
                Rat r = exact_radius(n, t[q]);
                if (x.is_rational()) {
                    Rat v = x.coeffs.empty() ? Rat(0) : x.coeffs[0];
                    if (e.real_mask[roots[q]]) {
                        in = abs(v) <= r;
                        continue;
                    }
                }
                Interval mod = z[roots[q]].box.abs();
                if (mpfr_cmp_q(mod.hi(), r.get_mpq_t()) <= 0)
                    continue;
                if (mpfr_cmp_q(mod.lo(), r.get_mpq_t()) > 0) {
                    in = false;
                    continue;
                }
                midpoint_used = true;
                in = mod.midpoint().lo_rat() <= r;
            }
            if (midpoint_used)
                ++out.ambiguous;
            if (in)
                inside.insert(inside.end(), p.begin(), p.end());
        }
    }
    out.points = PointSet::from_flat(d, std::move(inside));
    if (out.ambiguous * 100 > std::max<std::size_t>(out.points.size(), 100))
        fail_refusal("too many boundary points undecided at 4096 bits: " + std::to_string(out.ambiguous));
    return out;
}

std::vector<RatioReport> ratio_experiment(const DilateSystem& sys, const IntegralBasis& basis,
                                          const std::vector<std::int64_t>& schedule, const std::vector<double>& radii,
                                          const SumsetOptions& opt)
{
    HResult h = h_constant(sys, 1e-12);
    auto mats = dilate_matrices(sys, basis);
    Rat hlo = h.h.lo_rat();
    std::vector<RatioReport> out;
    for (auto n : schedule) {
        auto a = extremal_set(sys, basis, n, radii);
        auto s = linear_sumset(a.points, mats, opt);
        RatioReport r;
        r.n = n;
        r.size_a = a.points.size();
        r.size_sum = s.size();
        r.ratio = make_rat(Int(static_cast<unsigned long>(r.size_sum)), Int(static_cast<unsigned long>(r.size_a)));
        r.h_reference = h.h;
        r.margin = Rat(static_cast<long>(r.size_sum)) - Rat(ceil_rat(hlo * static_cast<long>(r.size_a)));
        out.push_back(std::move(r));
    }
    return out;
}

LowerWitness h_lower_witness(const DilateSystem& sys, const IntegralBasis& basis, std::int64_t n)
{
    auto a = extremal_set(sys, basis, n);
    auto s = linear_sumset(a.points, dilate_matrices(sys, basis));
    Rat ratio = make_rat(Int(static_cast<unsigned long>(s.size())), Int(static_cast<unsigned long>(a.points.size())));
    return {std::move(a.points), ratio};
}

} // namespace sumdil
