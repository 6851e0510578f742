#include "sumdil/matrix_analysis.hpp"

#include "sumdil/error.hpp"
#include "sumdil/factor.hpp"
#include "sumdil/lattice.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace sumdil {

MatrixFamily::MatrixFamily(std::vector<IntMatrix> m) : mats(std::move(m))
{
    if (mats.size() < 2)
        fail_input("a matrix family needs at least two matrices");
    d = mats[0].rows();
    if (d == 0)
        fail_input("empty matrix");
    for (const auto& a : mats)
        if (a.rows() != d || a.cols() != d)
            fail_input("family matrices must be square of equal size");
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes:
        return "true";
    case Verdict::no:
        return "false";
    default:
        return "inconclusive";
    }
}

namespace {

std::vector<std::string> x_vars(std::size_t n)
{
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back("x" + std::to_string(i));
    return v;
}

MultiPoly cofactor_det(const std::vector<std::vector<MultiPoly>>& m, const std::vector<std::string>& vars)
{
    std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    MultiPoly acc(vars);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero())
            continue;
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MultiPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    row.push_back(m[i][c]);
            minor.push_back(std::move(row));
        }
        MultiPoly t = m[0][j] * cofactor_det(minor, vars);
        acc = (j % 2 == 0) ? acc + t : acc - t;
    }
    return acc;
}

// Values on the grid {0..d}^(k+1), converted to monomial coefficients axis by axis.
MultiPoly interpolated_det(const MatrixFamily& fam)
{
    std::size_t n = fam.mats.size();
    std::size_t pts = fam.d + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= pts;
    std::vector<Rat> vals(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t r = flat;
        for (std::size_t i = n; i-- > 0;) {
            idx[i] = r % pts;
            r /= pts;
        }
        IntMatrix s(fam.d, fam.d);
        for (std::size_t l = 0; l < n; ++l)
            if (idx[l] != 0)
                s = s + Int(static_cast<long>(idx[l])) * fam.mats[l];
        vals[flat] = Rat(det(s));
    }
    RatMatrix vand(pts, pts);
    for (std::size_t i = 0; i < pts; ++i) {
        Rat p = 1;
        for (std::size_t j = 0; j < pts; ++j) {
            vand(i, j) = p;
            p *= static_cast<long>(i);
        }
    }
    RatMatrix vinv = *inverse(vand);
    std::size_t stride = 1;
    for (std::size_t axis = n; axis-- > 0;) {
        for (std::size_t base = 0; base < total; ++base) {
            if ((base / stride) % pts != 0)
                continue;
            std::vector<Rat> line(pts);
            for (std::size_t t = 0; t < pts; ++t)
                line[t] = vals[base + t * stride];
            for (std::size_t t = 0; t < pts; ++t) {
                Rat s = 0;
                for (std::size_t u = 0; u < pts; ++u)
                    s += vinv(t, u) * line[u];
                vals[base + t * stride] = s;
            }
        }
        stride *= pts;
    }
    MultiPoly g(x_vars(n));
    for (std::size_t flat = 0; flat < total; ++flat) {
        if (vals[flat] == 0)
            continue;
        Exponent e(n);
        std::size_t r = flat;
        for (std::size_t i = n; i-- > 0;) {
            e[i] = static_cast<int>(r % pts);
            r /= pts;
        }
        g.add_term(e, vals[flat]);
    }
    return g;
}

std::optional<std::size_t> first_invertible(const MatrixFamily& fam)
{
    for (std::size_t i = 0; i < fam.mats.size(); ++i)
        if (det(fam.mats[i]) != 0)
            return i;
    return std::nullopt;
}

// L_i^{-1} L_l for l != i.
std::vector<RatMatrix> normalized(const MatrixFamily& fam, std::size_t i)
{
    RatMatrix inv = *inverse(to_rat(fam.mats[i]));
    std::vector<RatMatrix> out;
    for (std::size_t l = 0; l < fam.mats.size(); ++l)
        if (l != i)
            out.push_back(inv * to_rat(fam.mats[l]));
    return out;
}

bool pairwise_commute(const std::vector<RatMatrix>& ms)
{
    for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b)
            if (ms[a] * ms[b] != ms[b] * ms[a])
                return false;
    return true;
}

RatMatrix combination(const std::vector<RatMatrix>& ms, const std::vector<int>& c)
{
    RatMatrix m(ms[0].rows(), ms[0].cols());
    for (std::size_t l = 0; l < ms.size(); ++l)
        if (c[l] != 0)
            m = m + Rat(c[l]) * ms[l];
    return m;
}

std::vector<int> random_coeffs(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> dist(-5, 5);
    for (;;) {
        std::vector<int> c(n);
        bool nonzero = false;
        for (auto& x : c) {
            x = dist(rng);
            nonzero = nonzero || x != 0;
        }
        if (nonzero)
            return c;
    }
}

RatMatrix columns_matrix(const std::vector<RatVec>& cols, std::size_t d)
{
    return RatMatrix::from_columns(cols, d);
}

// Smallest subspace containing vs and invariant under gens.
std::vector<RatVec> spin(std::vector<RatVec> vs, const std::vector<RatMatrix>& gens)
{
    std::vector<RatVec> basis = column_basis(vs);
    for (;;) {
        std::vector<RatVec> all = basis;
        for (const auto& g : gens)
            for (const auto& b : basis)
                all.push_back(g * b);
        std::vector<RatVec> next = column_basis(all);
        if (next.size() == basis.size())
            return basis;
        basis = std::move(next);
    }
}

std::vector<RatVec> standard_vectors(std::size_t count, std::size_t d)
{
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < count; ++i) {
        RatVec e(d, 0);
        e[i] = 1;
        out.push_back(e);
    }
    return out;
}

bool is_witness(const MatrixFamily& fam, const std::vector<RatVec>& u, const std::vector<RatVec>& v)
{
    if (u.empty() || u.size() != v.size() || u.size() >= fam.d)
        return false;
    if (column_basis(u).size() != u.size() || column_basis(v).size() != v.size())
        return false;
    for (const auto& l : fam.mats) {
        RatMatrix lr = to_rat(l);
        for (const auto& x : u) {
            auto t = v;
            t.push_back(lr * x);
            if (column_basis(t).size() != v.size())
                return false;
        }
    }
    return true;
}

IrreducibilityReport reducible(const MatrixFamily& fam, const std::vector<RatVec>& u, const std::vector<RatVec>& v,
                               std::string method)
{
    if (!is_witness(fam, u, v))
        fail_internal("invalid reducibility witness");
    IrreducibilityReport r;
    r.verdict = Verdict::no;
    r.method = std::move(method);
    r.u = columns_matrix(u, fam.d);
    r.v = columns_matrix(v, fam.d);
    return r;
}

// ---- arithmetic mod p ----

std::int64_t mod(const Int& a, std::int64_t p)
{
    Int r = a % Int(static_cast<long>(p));
    if (r < 0)
        r += static_cast<long>(p);
    return r.get_si();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p)
{
    std::int64_t r = 1, e = p - 2, b = a % p;
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::size_t rank_mod(std::vector<std::vector<std::int64_t>> rows, std::int64_t p)
{
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[rank]);
        std::int64_t inv = inv_mod(rows[rank][c], p);
        for (auto& x : rows[rank])
            x = x * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0)
                continue;
            std::int64_t f = rows[r][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[r][j] = ((rows[r][j] - f * rows[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Number of subspaces of dimension m in F_p^d, saturating at cap.
double gaussian_binomial(std::size_t d, std::size_t m, double p)
{
    double num = 1, den = 1;
    for (std::size_t i = 0; i < m; ++i) {
        num *= std::pow(p, static_cast<double>(d - i)) - 1;
        den *= std::pow(p, static_cast<double>(i + 1)) - 1;
    }
    return num / den;
}

// Calls f on an RREF basis of every m-dimensional subspace of F_p^d; stops when f returns false.
bool for_each_subspace(std::size_t d, std::size_t m, std::int64_t p,
                       const std::function<bool(const std::vector<std::vector<std::int64_t>>&)>& f)
{
    std::vector<std::size_t> piv(m);
    for (std::size_t i = 0; i < m; ++i)
        piv[i] = i;
    for (;;) {
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = piv[r] + 1; c < d; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end())
                    free.emplace_back(r, c);
        std::vector<std::int64_t> digits(free.size(), 0);
        for (;;) {
            std::vector<std::vector<std::int64_t>> rows(m, std::vector<std::int64_t>(d, 0));
            for (std::size_t r = 0; r < m; ++r)
                rows[r][piv[r]] = 1;
            for (std::size_t t = 0; t < free.size(); ++t)
                rows[free[t].first][free[t].second] = digits[t];
            if (!f(rows))
                return false;
            std::size_t t = 0;
            while (t < digits.size() && ++digits[t] == p)
                digits[t++] = 0;
            if (t == digits.size())
                break;
        }
        // next pivot combination
        std::size_t i = m;
        while (i > 0 && piv[i - 1] == d - m + i - 1)
            --i;
        if (i == 0)
            return true;
        ++piv[i - 1];
        for (std::size_t j = i; j < m; ++j)
            piv[j] = piv[j - 1] + 1;
    }
}

// True when every proper nonzero subspace U of F_p^d has dim(sum L_i U) > dim U.
bool expands_mod_p(const MatrixFamily& fam, std::int64_t p)
{
    std::size_t d = fam.d;
    std::vector<std::vector<std::vector<std::int64_t>>> lm;
    for (const auto& l : fam.mats) {
        std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                m[i][j] = mod(l(i, j), p);
        lm.push_back(std::move(m));
    }
    for (std::size_t m = 1; m < d; ++m) {
        bool ok = for_each_subspace(d, m, p, [&](const std::vector<std::vector<std::int64_t>>& rows) {
            std::vector<std::vector<std::int64_t>> images;
            for (const auto& l : lm)
                for (const auto& u : rows) {
                    std::vector<std::int64_t> w(d, 0);
                    for (std::size_t i = 0; i < d; ++i) {
                        std::int64_t s = 0;
                        for (std::size_t j = 0; j < d; ++j)
                            s = (s + l[i][j] * u[j]) % p;
                        w[i] = s;
                    }
                    images.push_back(std::move(w));
                }
            return rank_mod(std::move(images), p) > m;
        });
        if (!ok)
            return false;
    }
    return true;
}

std::optional<std::int64_t> subspace_certificate(const MatrixFamily& fam)
{
    const double cap = 4e5;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        double count = 0;
        for (std::size_t m = 1; m < fam.d; ++m)
            count += gaussian_binomial(fam.d, m, static_cast<double>(p));
        if (count > cap)
            break;
        if (expands_mod_p(fam, p))
            return p;
    }
    return std::nullopt;
}

// Invariant subspace from an irreducible factor of the charpoly of m, if proper.
std::optional<std::vector<RatVec>> factor_kernel(const RatMatrix& m, const std::vector<RatMatrix>& gens)
{
    UPoly chi = charpoly(m);
    UPoly rad = chi;
    UPoly g = gcd(chi, chi.derivative());
    if (g.degree() > 0)
        rad = divmod(chi, g).first;
    for (const auto& fz : factor_squarefree_z(rad.primitive_int())) {
        UPoly f(fz);
        auto ker = nullspace(f.eval(m));
        if (ker.empty() || ker.size() == m.rows())
            continue;
        for (const auto& v : ker) {
            auto s = spin({v}, gens);
            if (s.size() < m.rows())
                return s;
        }
    }
    return std::nullopt;
}

} // namespace

MultiPoly det_form(const MatrixFamily& fam)
{
    if (fam.d > 4)
        return interpolated_det(fam);
    auto vars = x_vars(fam.mats.size());
    std::vector<std::vector<MultiPoly>> m(fam.d, std::vector<MultiPoly>(fam.d, MultiPoly(vars)));
    for (std::size_t l = 0; l < fam.mats.size(); ++l)
        for (std::size_t i = 0; i < fam.d; ++i)
            for (std::size_t j = 0; j < fam.d; ++j)
                if (fam.mats[l](i, j) != 0)
                    m[i][j] = m[i][j] + Rat(fam.mats[l](i, j)) * MultiPoly::variable(vars, l);
    return cofactor_det(m, vars);
}

PreCommutingReport pre_commuting_report(const MatrixFamily& fam, std::uint64_t seed)
{
    PreCommutingReport r;
    if (auto i = first_invertible(fam)) {
        auto ms = normalized(fam, *i);
        r.value = pairwise_commute(ms);
        r.method = "inverse of L_" + std::to_string(*i);
        if (r.value)
            r.p = *inverse(to_rat(fam.mats[*i]));
        return r;
    }
    // All members singular: solve L_i P L_j = L_j P L_i for P linearly.
    std::size_t d = fam.d, n = d * d;
    std::vector<RatVec> eqs;
    for (std::size_t i = 0; i < fam.mats.size(); ++i)
        for (std::size_t j = i + 1; j < fam.mats.size(); ++j) {
            const auto& a = fam.mats[i];
            const auto& b = fam.mats[j];
            for (std::size_t row = 0; row < d; ++row)
                for (std::size_t col = 0; col < d; ++col) {
                    RatVec eq(n, 0);
                    for (std::size_t x = 0; x < d; ++x)
                        for (std::size_t y = 0; y < d; ++y)
                            eq[x * d + y] = Rat(a(row, x) * b(y, col) - b(row, x) * a(y, col));
                    eqs.push_back(std::move(eq));
                }
        }
    auto sol = nullspace(RatMatrix::from_rows(eqs));
    r.method = "linear solution space of dimension " + std::to_string(sol.size());
    if (sol.empty())
        return r;
    auto as_matrix = [&](const std::vector<Rat>& t) {
        RatMatrix p(d, d);
        for (std::size_t s = 0; s < sol.size(); ++s)
            for (std::size_t e = 0; e < n; ++e)
                p(e / d, e % d) += t[s] * sol[s][e];
        return p;
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-100, 100);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rat> t(sol.size());
        for (auto& x : t)
            x = dist(rng);
        RatMatrix p = as_matrix(t);
        if (det(p) != 0) {
            r.value = true;
            r.p = p;
            return r;
        }
    }
    if (d > 6 || sol.size() > 12)
        fail_refusal("pre-commuting undecided: all members singular and the solution space is too large");
    std::vector<std::string> vars;
    for (std::size_t s = 0; s < sol.size(); ++s)
        vars.push_back("t" + std::to_string(s));
    std::vector<std::vector<MultiPoly>> m(d, std::vector<MultiPoly>(d, MultiPoly(vars)));
    for (std::size_t s = 0; s < sol.size(); ++s)
        for (std::size_t e = 0; e < n; ++e)
            if (sol[s][e] != 0)
                m[e / d][e % d] = m[e / d][e % d] + sol[s][e] * MultiPoly::variable(vars, s);
    if (det(m).is_zero())
        return r;
    // A nonzero determinant polynomial has a nonzero integer point; widen the search.
    std::uniform_int_distribution<int> wide(-100000, 100000);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Rat> t(sol.size());
        for (auto& x : t)
            x = wide(rng);
        RatMatrix p = as_matrix(t);
        if (det(p) != 0) {
            r.value = true;
            r.p = p;
            return r;
        }
    }
    fail_internal("nonzero determinant polynomial without an invertible sample");
}

bool pre_commuting(const MatrixFamily& fam, std::uint64_t seed) { return pre_commuting_report(fam, seed).value; }

IrreducibilityReport irreducible(const MatrixFamily& fam, std::uint64_t seed)
{
    std::size_t d = fam.d;
    if (d == 1) {
        bool any = std::any_of(fam.mats.begin(), fam.mats.end(), [](const IntMatrix& m) { return !m.is_zero(); });
        IrreducibilityReport r;
        r.verdict = any ? Verdict::yes : Verdict::no;
        r.method = "dimension one";
        if (!any)
            fail_refusal("all matrices are zero");
        return r;
    }
    // Common kernel.
    std::vector<RatVec> stacked;
    for (const auto& l : fam.mats)
        for (std::size_t i = 0; i < d; ++i)
            stacked.push_back(to_rat(l).row(i));
    auto ker = nullspace(RatMatrix::from_rows(stacked));
    if (!ker.empty()) {
        if (ker.size() == d)
            ker.resize(1);
        return reducible(fam, ker, standard_vectors(ker.size(), d), "common kernel");
    }
    // Sum of images.
    std::vector<RatVec> cols;
    for (const auto& l : fam.mats)
        for (std::size_t j = 0; j < d; ++j)
            cols.push_back(to_rat(l).column(j));
    auto img = column_basis(cols);
    if (img.size() < d)
        return reducible(fam, standard_vectors(img.size(), d), img, "image sum is a proper subspace");

    std::mt19937_64 rng(seed);
    if (auto i = first_invertible(fam)) {
        auto ms = normalized(fam, *i);
        RatMatrix li = to_rat(fam.mats[*i]);
        auto witness = [&](const std::vector<RatVec>& u, const std::string& how) {
            std::vector<RatVec> v;
            for (const auto& x : u)
                v.push_back(li * x);
            return reducible(fam, u, v, how);
        };
        if (pairwise_commute(ms)) {
            for (int attempt = 0; attempt < 3; ++attempt) {
                RatMatrix m = combination(ms, random_coeffs(ms.size(), rng));
                auto cert = certify_irreducible(charpoly(m), 6);
                if (cert.verdict == Irreducibility::irreducible) {
                    IrreducibilityReport r;
                    r.verdict = Verdict::yes;
                    r.method = "irreducible characteristic polynomial of a generic combination (" + cert.method + ")";
                    r.prime = cert.prime;
                    return r;
                }
                if (auto u = factor_kernel(m, ms))
                    return witness(*u, "kernel of a characteristic polynomial factor");
            }
        } else {
            for (int attempt = 0; attempt < 6; ++attempt) {
                RatMatrix a = combination(ms, random_coeffs(ms.size(), rng));
                RatMatrix b = combination(ms, random_coeffs(ms.size(), rng));
                RatMatrix m = a + a * b;
                if (auto u = factor_kernel(m, ms))
                    return witness(*u, "spun kernel of an algebra element");
            }
        }
    }
    if (auto p = subspace_certificate(fam)) {
        IrreducibilityReport r;
        r.verdict = Verdict::yes;
        r.prime = *p;
        r.method = "every proper subspace expands modulo " + std::to_string(*p);
        return r;
    }
    IrreducibilityReport r;
    r.method = "no certificate found";
    return r;
}

RatVec Recovery::apply(const FieldElement& x) const
{
    RatVec c = x.coeffs;
    c.resize(phi.cols(), 0);
    return phi * c;
}

FieldElement Recovery::preimage(const RatVec& u) const
{
    auto c = solve(phi, u);
    if (!c)
        fail_internal("coordinate map is singular");
    return system.field.element(UPoly(*c));
}

Recovery recover_dilates(const MatrixFamily& fam, std::uint64_t seed)
{
    if (det(fam.mats[0]) == 0)
        fail_refusal("L_0 is singular; the family is not pre-commuting and irreducible");
    auto ms = normalized(fam, 0);
    if (!pairwise_commute(ms))
        fail_refusal("family is not pre-commuting");
    std::size_t d = fam.d;
    if (d == 1) {
        std::vector<FieldElement> lambdas;
        NumberField q = NumberField::rationals();
        for (const auto& m : ms)
            lambdas.push_back(q.from_rat(m(0, 0)));
        return Recovery{DilateSystem(q, lambdas), RatMatrix::identity(1)};
    }
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 3; ++attempt) {
        RatMatrix m = combination(ms, random_coeffs(ms.size(), rng));
        UPoly chi = charpoly(m);
        if (certify_irreducible(chi, 10).verdict != Irreducibility::irreducible)
            continue;
        NumberField k(chi);
        std::vector<RatMatrix> powers{RatMatrix::identity(d)};
        for (std::size_t j = 1; j < d; ++j)
            powers.push_back(powers.back() * m);
        std::vector<RatVec> basis_cols;
        for (const auto& p : powers)
            basis_cols.push_back(p.data());
        RatMatrix a = RatMatrix::from_columns(basis_cols, d * d);
        std::vector<FieldElement> lambdas;
        for (const auto& ml : ms) {
            auto g = solve(a, ml.data());
            if (!g)
                fail_internal("dilate matrix is not a polynomial in the generic combination");
            lambdas.push_back(k.element(UPoly(*g)));
        }
        for (std::size_t start = 0; start < d; ++start) {
            RatVec v(d, 0);
            v[start] = 1;
            std::vector<RatVec> cols;
            for (const auto& p : powers)
                cols.push_back(p * v);
            RatMatrix phi = RatMatrix::from_columns(cols, d);
            if (det(phi) == 0)
                continue;
            Recovery rec{DilateSystem(k, lambdas), phi};
            for (std::size_t l = 0; l < ms.size(); ++l)
                if (ms[l] * phi != phi * k.mult_matrix(lambdas[l]))
                    fail_internal("recovery identity fails");
            return rec;
        }
        fail_internal("no cyclic vector for an irreducible characteristic polynomial");
    }
    fail_refusal("no generic combination with irreducible characteristic polynomial; family may be reducible");
}

CoprimeReport coprime_by_certificates(const MatrixFamily& fam, std::uint64_t seed)
{
    std::size_t d = fam.d;
    CoprimeReport r;
    std::vector<IntVec> cols;
    for (const auto& l : fam.mats)
        for (std::size_t j = 0; j < d; ++j)
            cols.push_back(l.column(j));
    std::vector<RatVec> rcols;
    for (const auto& c : cols) {
        RatVec v;
        for (const auto& x : c)
            v.emplace_back(x);
        rcols.push_back(std::move(v));
    }
    if (column_basis(rcols).size() < d) {
        r.verdict = Verdict::no;
        r.method = "images do not span";
        r.witness = IntMatrix::identity(d);
        return r;
    }
    IntegerLattice z = IntegerLattice::hnf(cols, d);
    if (z.index() > 1) {
        r.verdict = Verdict::no;
        r.method = "sum of images of Z^d has index " + z.index().get_str();
        r.witness = IntMatrix::identity(d);
        return r;
    }
    // det(sum L_i (x) C_i) is divisible by rho^s for every X; gcd 1 forces rho <= 1.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-2, 2);
    Int g = 0;
    for (int s = 1; s <= 3 && g != 1; ++s) {
        std::size_t n = d * static_cast<std::size_t>(s);
        for (int trial = 0; trial < 40 && g != 1; ++trial) {
            IntMatrix t(n, n);
            for (const auto& l : fam.mats) {
                std::vector<std::vector<int>> c(static_cast<std::size_t>(s), std::vector<int>(static_cast<std::size_t>(s)));
                for (auto& row : c)
                    for (auto& x : row)
                        x = dist(rng);
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        if (l(a, b) == 0)
                            continue;
                        for (std::size_t u = 0; u < static_cast<std::size_t>(s); ++u)
                            for (std::size_t v = 0; v < static_cast<std::size_t>(s); ++v)
                                t(a * static_cast<std::size_t>(s) + u, b * static_cast<std::size_t>(s) + v) +=
                                    l(a, b) * c[u][v];
                    }
            }
            g = gcd(g, abs(det(t)));
            r.blowup = s;
        }
    }
    r.certificate_gcd = g;
    if (g == 1) {
        r.verdict = Verdict::yes;
        r.method = "blow-up determinants with gcd 1 (block size " + std::to_string(r.blowup) + ")";
        return r;
    }
    // Search sublattices between pZ^d and Z^d for a witness.
    if (g != 0) {
        for (std::int64_t p : {2, 3, 5, 7}) {
            if (g % p != 0)
                continue;
            double count = 0;
            for (std::size_t m = 1; m < d; ++m)
                count += gaussian_binomial(d, m, static_cast<double>(p));
            if (count > 4e5)
                continue;
            for (std::size_t m = 1; m < d && !r.witness; ++m)
                for_each_subspace(d, m, p, [&](const std::vector<std::vector<std::int64_t>>& rows) {
                    std::vector<IntVec> xs;
                    for (const auto& row : rows) {
                        IntVec v;
                        for (auto x : row)
                            v.emplace_back(static_cast<long>(x));
                        xs.push_back(v);
                    }
                    for (std::size_t i = 0; i < d; ++i) {
                        IntVec e(d, 0);
                        e[i] = static_cast<long>(p);
                        xs.push_back(e);
                    }
                    IntegerLattice x = IntegerLattice::hnf(xs, d);
                    std::vector<IVec> imgs;
                    for (const auto& l : fam.mats)
                        for (std::size_t j = 0; j < d; ++j)
                            imgs.push_back(sumdil::apply(l, x.column(j)));
                    IntegerLattice zx = IntegerLattice::hnf(imgs, d);
                    if (zx.index() > x.index()) {
                        r.witness = x.basis();
                        return false;
                    }
                    return true;
                });
            if (r.witness) {
                r.verdict = Verdict::no;
                r.method = "sublattice X with covol(sum L_i X) > covol(X)";
                return r;
            }
        }
    }
    r.method = "undecided (certificate gcd " + g.get_str() + ")";
    return r;
}

CoprimeReport coprime_report(const MatrixFamily& fam, std::uint64_t seed)
{
    CoprimeReport r;
    // Pre-commuting and irreducible: compare with the denominator norm.
    if (det(fam.mats[0]) != 0 && pairwise_commute(normalized(fam, 0)) && irreducible(fam, seed).verdict == Verdict::yes) {
        Recovery rec = recover_dilates(fam, seed);
        Int dn = denominator_norm(rec.system);
        Int dl = abs(det(fam.mats[0]));
        r.verdict = dn == dl ? Verdict::yes : Verdict::no;
        r.method = "denominator norm " + dn.get_str() + " vs |det L_0| = " + dl.get_str();
        r.certificate_gcd = dn;
        return r;
    }
    return coprime_by_certificates(fam, seed);
}

bool coprime(const MatrixFamily& fam, std::uint64_t seed)
{
    auto r = coprime_report(fam, seed);
    if (r.verdict == Verdict::inconclusive)
        fail_refusal("coprimality undecided: " + r.method);
    return r.verdict == Verdict::yes;
}

HResult h_matrices(const MatrixFamily& fam, double width, std::uint64_t seed)
{
    auto pc = pre_commuting_report(fam, seed);
    if (!pc.value)
        fail_refusal("H is not defined: the family is not pre-commuting");
    if (irreducible(fam, seed).verdict != Verdict::yes)
        fail_refusal("H is not defined: the family is not certified irreducible");
    Recovery rec = recover_dilates(fam, seed);
    Int dl = abs(det(fam.mats[0]));
    Interval arch = archimedean_product(rec.system, width / (2 * dl.get_d()));
    HResult h;
    h.ideal_norm_factor = dl;
    h.h = Interval(Rat(dl), arch.precision()) * arch;
    if (fam.d == 1) {
        Rat s = 1;
        for (const auto& l : rec.system.dilates)
            s += abs(l.coeffs.empty() ? Rat(0) : l.coeffs[0]);
        h.exact_rational = Rat(dl) * s;
        h.h = Interval(*h.exact_rational, arch.precision());
    }
    h.archimedean = std::move(arch);
    return h;
}

AnalysisReport analyze(const MatrixFamily& fam, double width, std::uint64_t seed)
{
    AnalysisReport r;
    r.g = det_form(fam);
    try {
        auto pc = pre_commuting_report(fam, seed);
        r.pre_commuting = pc.value;
        r.pre_commuting_method = pc.method;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::refusal)
            throw;
        r.pre_commuting_method = e.what();
    }
    r.irreducible = irreducible(fam, seed);
    r.coprime = coprime_report(fam, seed);
    if (r.pre_commuting.value_or(false) && r.irreducible.verdict == Verdict::yes && det(fam.mats[0]) != 0) {
        r.recovered = recover_dilates(fam, seed);
        r.h = h_matrices(fam, width, seed);
    } else {
        r.h_note = "H is defined only for pre-commuting irreducible families";
    }
    return r;
}

} // namespace sumdil
