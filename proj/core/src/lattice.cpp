#include "sumdil/lattice.hpp"

#include "sumdil/error.hpp"

#include <algorithm>

namespace sumdil {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        fail_refusal("64-bit overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        fail_refusal("64-bit overflow in lattice arithmetic");
    return r;
}

IVec add(const IVec& a, const IVec& b)
{
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = checked_add(a[i], b[i]);
    return r;
}

IVec sub(const IVec& a, const IVec& b)
{
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (__builtin_sub_overflow(a[i], b[i], &r[i]))
            fail_refusal("64-bit overflow in lattice arithmetic");
    }
    return r;
}

IVec neg(const IVec& a)
{
    IVec z(a.size(), 0);
    return sub(z, a);
}

IVec apply(const IntMatrix& m, const IVec& v)
{
    if (m.cols() != v.size())
        fail_input("matrix-vector dimension mismatch");
    IVec r(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (v[j] != 0)
                acc = checked_add(acc, checked_mul(to_i64(m(i, j)), v[j]));
        r[i] = acc;
    }
    return r;
}

IntVec to_intvec(const IVec& v)
{
    IntVec r;
    r.reserve(v.size());
    for (auto x : v)
        r.push_back(to_int(x));
    return r;
}

IVec to_ivec(const IntVec& v)
{
    IVec r;
    r.reserve(v.size());
    for (const auto& x : v)
        r.push_back(to_i64(x));
    return r;
}

std::size_t IVecHash::operator()(const IVec& v) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

std::int64_t floor_div64(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

IntegerLattice IntegerLattice::hnf(const std::vector<IntVec>& columns, std::size_t dim)
{
    std::vector<IntVec> cols = columns;
    for (const auto& c : cols)
        if (c.size() != dim)
            fail_input("lattice generator has wrong dimension");
    if (cols.size() < dim)
        fail_input("lattice not full rank");
    for (std::size_t i = 0; i < dim; ++i) {
        // bring a nonzero entry into column i
        if (cols[i][i] == 0) {
            for (std::size_t j = i + 1; j < cols.size(); ++j)
                if (cols[j][i] != 0) {
                    std::swap(cols[i], cols[j]);
                    break;
                }
        }
        if (cols[i][i] == 0)
            fail_input("lattice not full rank");
        for (std::size_t j = i + 1; j < cols.size(); ++j) {
            if (cols[j][i] == 0)
                continue;
            Int a = cols[i][i], b = cols[j][i];
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Int ag = a / g, bg = b / g;
            for (std::size_t r = i; r < dim; ++r) {
                Int ci = cols[i][r], cj = cols[j][r];
                cols[i][r] = s * ci + t * cj;
                cols[j][r] = ag * cj - bg * ci;
            }
        }
        if (cols[i][i] < 0)
            for (std::size_t r = i; r < dim; ++r)
                cols[i][r] = -cols[i][r];
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Int q = floor_div(cols[j][i], cols[i][i]);
            if (q != 0)
                for (std::size_t r = i; r < dim; ++r)
                    cols[j][r] -= q * cols[i][r];
        }
    IntegerLattice l;
    l.d_ = dim;
    l.b_.assign(dim * dim, 0);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            l.b_[i * dim + j] = to_i64(cols[j][i]);
    return l;
}

IntegerLattice IntegerLattice::hnf(const std::vector<IVec>& columns, std::size_t dim)
{
    std::vector<IntVec> c;
    c.reserve(columns.size());
    for (const auto& v : columns)
        c.push_back(to_intvec(v));
    return hnf(c, dim);
}

IntegerLattice IntegerLattice::hnf(const IntMatrix& m)
{
    std::vector<IntVec> c;
    for (std::size_t j = 0; j < m.cols(); ++j)
        c.push_back(m.column(j));
    return hnf(c, m.rows());
}

IntegerLattice IntegerLattice::identity(std::size_t dim) { return scaled(dim, 1); }

IntegerLattice IntegerLattice::scaled(std::size_t dim, std::int64_t m)
{
    if (m <= 0)
        fail_input("lattice scale must be positive");
    IntegerLattice l;
    l.d_ = dim;
    l.b_.assign(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
        l.b_[i * dim + i] = m;
    return l;
}

IVec IntegerLattice::column(std::size_t j) const
{
    IVec c(d_);
    for (std::size_t i = 0; i < d_; ++i)
        c[i] = entry(i, j);
    return c;
}

IntMatrix IntegerLattice::basis() const
{
    IntMatrix m(d_, d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
            m(i, j) = to_int(entry(i, j));
    return m;
}

Int IntegerLattice::index() const
{
    Int p = 1;
    for (std::size_t i = 0; i < d_; ++i)
        p *= to_int(diag(i));
    return p;
}

IVec IntegerLattice::reduce(IVec v) const
{
    if (v.size() != d_)
        fail_input("vector dimension does not match lattice");
    for (std::size_t i = 0; i < d_; ++i) {
        std::int64_t q = floor_div64(v[i], diag(i));
        if (q == 0)
            continue;
        for (std::size_t r = i; r < d_; ++r)
            v[r] = checked_add(v[r], -checked_mul(q, entry(r, i)));
    }
    return v;
}

IVec IntegerLattice::coordinates(IVec v) const
{
    if (v.size() != d_)
        fail_input("vector dimension does not match lattice");
    IVec c(d_, 0);
    for (std::size_t i = 0; i < d_; ++i) {
        if (v[i] % diag(i) != 0)
            fail_input("vector is not in the lattice");
        std::int64_t q = v[i] / diag(i);
        c[i] = q;
        if (q == 0)
            continue;
        for (std::size_t r = i; r < d_; ++r)
            v[r] = checked_add(v[r], -checked_mul(q, entry(r, i)));
    }
    return c;
}

bool IntegerLattice::member(const IVec& v) const
{
    IVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

bool IntegerLattice::contains(const IntegerLattice& sub) const
{
    if (sub.d_ != d_)
        return false;
    for (std::size_t j = 0; j < d_; ++j)
        if (!member(sub.column(j)))
            return false;
    return true;
}

bool lattice_member(const IVec& v, const IntegerLattice& l) { return l.member(v); }

ScaledLattice dual_of_span(const std::vector<RatVec>& rows, std::size_t dim)
{
    Int m = 1;
    for (const auto& r : rows) {
        if (r.size() != dim)
            fail_input("row has wrong dimension");
        for (const auto& x : r)
            m = lcm(m, x.get_den());
    }
    std::vector<IntVec> cols;
    for (const auto& r : rows) {
        IntVec c(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            Rat s = r[i] * m;
            c[i] = s.get_num();
        }
        cols.push_back(std::move(c));
    }
    IntegerLattice h = IntegerLattice::hnf(cols, dim);
    auto inv = inverse(to_rat(h.basis()));
    if (!inv)
        fail_internal("singular HNF basis");
    RatMatrix dual = Rat(m) * inv->transpose();
    Int den = 1;
    for (const auto& x : dual.data())
        den = lcm(den, x.get_den());
    std::vector<IntVec> dc;
    for (std::size_t j = 0; j < dim; ++j) {
        IntVec c(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            Rat s = dual(i, j) * den;
            c[i] = s.get_num();
        }
        dc.push_back(std::move(c));
    }
    return {IntegerLattice::hnf(dc, dim), den};
}

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b)
{
    if (a.dim() != b.dim())
        fail_input("lattice dimensions differ");
    std::size_t d = a.dim();
    // (A cap B)* = A* + B*
    std::vector<RatVec> rows;
    for (const IntegerLattice* l : {&a, &b}) {
        auto inv = inverse(to_rat(l->basis()));
        RatMatrix dual = inv->transpose();
        for (std::size_t j = 0; j < d; ++j)
            rows.push_back(dual.column(j));
    }
    ScaledLattice s = dual_of_span(rows, d);
    if (s.den != 1)
        fail_internal("lattice intersection is not integral");
    return s.lattice;
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b)
{
    std::vector<IVec> cols;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        cols.push_back(a.column(j));
        cols.push_back(b.column(j));
    }
    return IntegerLattice::hnf(cols, a.dim());
}

IntegerLattice lattice_image(const IntMatrix& t, const IntegerLattice& l)
{
    IntMatrix img = t * l.basis();
    return IntegerLattice::hnf(img);
}

Int relative_index(const IntegerLattice& sup, const IntegerLattice& sub)
{
    if (!sup.contains(sub))
        fail_input("not a sublattice");
    return sub.index() / sup.index();
}

void for_each_coset_rep(const IntegerLattice& sup, const IntegerLattice& sub,
                        const std::function<void(const IVec&)>& f, std::int64_t cap)
{
    Int n = relative_index(sup, sub);
    if (n > cap)
        fail_refusal("coset enumeration of size " + n.get_str() + " exceeds cap " + std::to_string(cap));
    std::size_t d = sup.dim();
    // sub = sup * M with M lower triangular, positive diagonal; the box prod [0, M_ii) is a transversal.
    IVec box(d);
    for (std::size_t i = 0; i < d; ++i)
        box[i] = sub.diag(i) / sup.diag(i);
    IVec c(d, 0);
    for (;;) {
        IVec x(d, 0);
        for (std::size_t j = 0; j < d; ++j)
            if (c[j] != 0)
                for (std::size_t i = j; i < d; ++i)
                    x[i] = checked_add(x[i], checked_mul(c[j], sup.entry(i, j)));
        f(sub.reduce(std::move(x)));
        std::size_t k = 0;
        while (k < d && ++c[k] == box[k]) {
            c[k] = 0;
            ++k;
        }
        if (k == d)
            break;
    }
}

std::vector<IVec> coset_reps(const IntegerLattice& sup, const IntegerLattice& sub, std::int64_t cap)
{
    std::vector<IVec> out;
    for_each_coset_rep(sup, sub, [&](const IVec& v) { out.push_back(v); }, cap);
    std::sort(out.begin(), out.end());
    return out;
}

SmithDecomposition smith(const IntMatrix& m)
{
    std::size_t r = m.rows(), c = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(r);
    IntMatrix v = IntMatrix::identity(c);
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < c; ++k)
            std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < r; ++k)
            std::swap(u(i, k), u(j, k));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < r; ++k)
            std::swap(a(k, i), a(k, j));
        for (std::size_t k = 0; k < c; ++k)
            std::swap(v(k, i), v(k, j));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& q) {   // row_dst -= q row_src
        for (std::size_t k = 0; k < c; ++k)
            a(dst, k) -= q * a(src, k);
        for (std::size_t k = 0; k < r; ++k)
            u(dst, k) -= q * u(src, k);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t k = 0; k < r; ++k)
            a(k, dst) -= q * a(k, src);
        for (std::size_t k = 0; k < c; ++k)
            v(k, dst) -= q * v(k, src);
    };
    std::size_t t = 0;
    for (; t < std::min(r, c); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (a(i, j) != 0 && (bi == r || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == r)
                goto done;
            if (bi != t)
                swap_rows(t, bi);
            if (bj != t)
                swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0)
                    continue;
                Int q = a(i, t) / a(t, t);
                add_row(i, t, q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0)
                    continue;
                Int q = a(t, j) / a(t, t);
                add_col(j, t, q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < r && divisible; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, Int(-1));
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (a(t, t) < 0) {
            for (std::size_t k = 0; k < c; ++k)
                a(t, k) = -a(t, k);
            for (std::size_t k = 0; k < r; ++k)
                u(t, k) = -u(t, k);
        }
    }
done:
    SmithDecomposition s{u, v, {}};
    for (std::size_t i = 0; i < std::min(r, c); ++i)
        s.diag.push_back(a(i, i));
    return s;
}

} // namespace sumdil
