#include "sumdil/factor.hpp"

#include "sumdil/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sumdil {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t mod_int(const Int& a, std::int64_t p)
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_si();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p)
{
    std::int64_t r = 1, b = mod(a, p), e = p - 2;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void trim(ModPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly mp_sub(const ModPoly& a, const ModPoly& b, std::int64_t p)
{
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = mod(r[i] - b[i], p);
    trim(r);
    return r;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, std::int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

ModPoly mp_scale(const ModPoly& a, std::int64_t s, std::int64_t p)
{
    ModPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * mod(s, p) % p;
    trim(r);
    return r;
}

std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b, std::int64_t p)
{
    if (b.empty())
        fail_internal("division by zero polynomial mod p");
    ModPoly r = a;
    trim(r);
    if (deg(r) < deg(b))
        return {{}, r};
    ModPoly q(static_cast<std::size_t>(deg(r) - deg(b) + 1), 0);
    std::int64_t inv = inv_mod(b.back(), p);
    for (int i = deg(r); i >= deg(b); --i) {
        std::int64_t f = r[static_cast<std::size_t>(i)] * inv % p;
        if (!f)
            continue;
        q[static_cast<std::size_t>(i - deg(b))] = f;
        for (int j = 0; j <= deg(b); ++j) {
            auto idx = static_cast<std::size_t>(i - deg(b) + j);
            r[idx] = mod(r[idx] - f * b[static_cast<std::size_t>(j)], p);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

ModPoly mp_mod(const ModPoly& a, const ModPoly& b, std::int64_t p) { return mp_divmod(a, b, p).second; }

ModPoly mp_monic(const ModPoly& a, std::int64_t p)
{
    if (a.empty())
        return a;
    return mp_scale(a, inv_mod(a.back(), p), p);
}

ModPoly mp_gcd(ModPoly a, ModPoly b, std::int64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = mp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(a, p);
}

// s a + t b = 1 (a, b coprime)
void mp_ext_gcd(const ModPoly& a, const ModPoly& b, std::int64_t p, ModPoly& s, ModPoly& t)
{
    ModPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
        auto [q, r] = mp_divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = mp_sub(s0, mp_mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        ModPoly t2 = mp_sub(t0, mp_mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (deg(r0) != 0)
        fail_internal("Hensel factors are not coprime mod p");
    std::int64_t inv = inv_mod(r0[0], p);
    s = mp_scale(s0, inv, p);
    t = mp_scale(t0, inv, p);
}

ModPoly mp_powmod(ModPoly base, const Int& e, const ModPoly& m, std::int64_t p)
{
    ModPoly r{1};
    r = mp_mod(r, m, p);
    base = mp_mod(base, m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mp_mod(mp_mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mp_mod(mp_mul(r, base, p), m, p);
    }
    return r;
}

ModPoly mp_derivative(const ModPoly& f, std::int64_t p)
{
    ModPoly d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(static_cast<std::int64_t>(i) % p * f[i] % p);
    trim(d);
    return d;
}

struct DegreeBlock {
    int degree;
    ModPoly product;
};

std::vector<DegreeBlock> ddf(ModPoly f, std::int64_t p)
{
    f = mp_monic(f, p);
    std::vector<DegreeBlock> out;
    ModPoly x{0, 1};
    ModPoly h = mp_mod(x, f, p);
    for (int i = 1; deg(f) >= 2 * i; ++i) {
        h = mp_powmod(h, Int(static_cast<long>(p)), f, p);
        ModPoly g = mp_gcd(f, mp_sub(h, x, p), p);
        if (deg(g) > 0) {
            out.push_back({i, g});
            f = mp_divmod(f, g, p).first;
            h = mp_mod(h, f, p);
        }
    }
    if (deg(f) > 0)
        out.push_back({deg(f), f});
    return out;
}

void edf(const ModPoly& g, int d, std::int64_t p, std::mt19937_64& rng, std::vector<ModPoly>& out)
{
    if (deg(g) == d) {
        out.push_back(mp_monic(g, p));
        return;
    }
    Int pd = 1;
    for (int i = 0; i < d; ++i)
        pd *= static_cast<long>(p);
    Int e = (pd - 1) / 2;
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    for (;;) {
        ModPoly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a)
            c = coef(rng);
        trim(a);
        if (deg(a) <= 0)
            continue;
        ModPoly b = mp_sub(mp_powmod(a, e, g, p), ModPoly{1}, p);
        ModPoly h = mp_gcd(g, b, p);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            edf(h, d, p, rng, out);
            edf(mp_divmod(g, h, p).first, d, p, rng, out);
            return;
        }
    }
}

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

} // namespace

ModPoly to_mod(const IntVec& f, std::int64_t p)
{
    ModPoly r;
    for (const auto& c : f)
        r.push_back(mod_int(c, p));
    trim(r);
    return r;
}

bool squarefree_mod_p(const ModPoly& f, std::int64_t p)
{
    return deg(mp_gcd(f, mp_derivative(f, p), p)) == 0;
}

std::vector<int> factor_degrees_mod_p(const ModPoly& f, std::int64_t p)
{
    std::vector<int> degs;
    for (const auto& blk : ddf(f, p))
        for (int k = 0; k < deg(blk.product) / blk.degree; ++k)
            degs.push_back(blk.degree);
    std::sort(degs.begin(), degs.end());
    return degs;
}

std::vector<ModPoly> factor_mod_p(const ModPoly& f, std::int64_t p, std::uint64_t seed)
{
    if (p == 2)
        fail_internal("equal-degree splitting needs an odd prime");
    std::mt19937_64 rng(seed);
    std::vector<ModPoly> out;
    for (const auto& blk : ddf(f, p))
        edf(blk.product, blk.degree, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

IntVec int_mul(const IntVec& a, const IntVec& b)
{
    if (a.empty() || b.empty())
        return {};
    IntVec r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

IntVec symmetric_mod(const IntVec& a, const Int& m)
{
    IntVec r(a.size());
    Int half = m / 2;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int v;
        mpz_fdiv_r(v.get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
        if (v > half)
            v -= m;
        r[i] = v;
    }
    while (!r.empty() && r.back() == 0)
        r.pop_back();
    return r;
}

IntVec from_mod(const ModPoly& f)
{
    IntVec r;
    for (auto c : f)
        r.emplace_back(static_cast<long>(c));
    return r;
}

IntVec primitive(IntVec f)
{
    Int g = 0;
    for (const auto& c : f)
        g = gcd(g, c);
    if (g == 0)
        return f;
    if (f.back() < 0)
        g = -g;
    for (auto& c : f)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return f;
}

// Lift f = g h (mod p), g monic, lc(h) = lc(f), to modulus >= bound.
IntVec hensel_lift_factor(const IntVec& f, ModPoly g0, ModPoly h0, std::int64_t p, const Int& bound)
{
    ModPoly s, t;
    mp_ext_gcd(g0, h0, p, s, t);
    IntVec g = from_mod(g0), h = from_mod(h0);
    h.back() = f.back();
    Int m = static_cast<long>(p);
    while (m < bound) {
        IntVec gh = int_mul(g, h);
        IntVec e(f.size(), Int(0));
        for (std::size_t i = 0; i < f.size(); ++i) {
            Int diff = f[i] - (i < gh.size() ? gh[i] : Int(0));
            mpz_divexact(diff.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            e[i] = diff;
        }
        ModPoly em = to_mod(e, p);
        ModPoly gm = to_mod(g, p), hm = to_mod(h, p);
        ModPoly dg = mp_mod(mp_mul(t, em, p), gm, p);
        ModPoly dh = mp_divmod(mp_sub(em, mp_mul(dg, hm, p), p), gm, p).first;
        for (std::size_t i = 0; i < dg.size(); ++i)
            g[i] += m * Int(static_cast<long>(dg[i]));
        if (h.size() < dh.size())
            h.resize(dh.size(), Int(0));
        for (std::size_t i = 0; i < dh.size(); ++i)
            h[i] += m * Int(static_cast<long>(dh[i]));
        m *= static_cast<long>(p);
    }
    return g;
}

bool divides_z(const IntVec& g, const IntVec& f, IntVec& quotient)
{
    auto [q, r] = divmod(UPoly(f), UPoly(g));
    if (!r.is_zero())
        return false;
    quotient.clear();
    for (const auto& c : q.coeffs()) {
        if (c.get_den() != 1)
            return false;
        quotient.push_back(c.get_num());
    }
    return true;
}

} // namespace

std::vector<IntVec> factor_squarefree_z(const IntVec& f0)
{
    IntVec f = primitive(f0);
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1)
        return {f};
    std::int64_t p = 3;
    for (;; p += 2) {
        if (!is_prime(p) || mod_int(f.back(), p) == 0)
            continue;
        if (squarefree_mod_p(to_mod(f, p), p))
            break;
    }
    std::vector<ModPoly> mods = factor_mod_p(mp_monic(to_mod(f, p), p), p);
    if (mods.size() == 1)
        return {f};
    // coefficient bound for any factor scaled by lc(f)
    Int norm2 = 0;
    for (const auto& c : f)
        norm2 += c * c;
    Int norm = sqrt(norm2) + 1;
    Int bound = 2 * abs(f.back()) * norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
    std::int64_t lcp = mod_int(f.back(), p);
    std::vector<IntVec> lifted;
    Int modulus = static_cast<long>(p);
    while (modulus < bound)
        modulus *= static_cast<long>(p);
    for (std::size_t i = 0; i < mods.size(); ++i) {
        ModPoly h{lcp};
        for (std::size_t j = 0; j < mods.size(); ++j)
            if (j != i)
                h = mp_mul(h, mods[j], p);
        lifted.push_back(hensel_lift_factor(f, mods[i], h, p, bound));
    }
    std::vector<IntVec> result;
    std::vector<std::size_t> alive(lifted.size());
    for (std::size_t i = 0; i < alive.size(); ++i)
        alive[i] = i;
    std::size_t s = 1;
    while (2 * s <= alive.size()) {
        bool found = false;
        std::vector<bool> pick(alive.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
        do {
            IntVec prod{f.back()};
            for (std::size_t i = 0; i < alive.size(); ++i)
                if (pick[i])
                    prod = symmetric_mod(int_mul(prod, lifted[alive[i]]), modulus);
            IntVec g = primitive(prod);
            IntVec q;
            if (g.size() > 1 && divides_z(g, f, q)) {
                result.push_back(g);
                f = primitive(q);
                std::vector<std::size_t> rest;
                for (std::size_t i = 0; i < alive.size(); ++i)
                    if (!pick[i])
                        rest.push_back(alive[i]);
                alive = rest;
                found = true;
                break;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!found)
            ++s;
    }
    if (f.size() > 1)
        result.push_back(f);
    std::sort(result.begin(), result.end(), [](const IntVec& a, const IntVec& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return result;
}

IrreducibilityCertificate certify_irreducible(const UPoly& fq, int max_exact_degree)
{
    IrreducibilityCertificate cert;
    if (fq.degree() <= 0)
        fail_input("irreducibility of a constant");
    IntVec f = fq.primitive_int();
    int n = fq.degree();
    if (n == 1) {
        cert.verdict = Irreducibility::irreducible;
        cert.method = "linear";
        return cert;
    }
    UPoly g = gcd(fq, fq.derivative());
    if (g.degree() > 0) {
        cert.verdict = Irreducibility::reducible;
        cert.method = "repeated factor";
        cert.factors = {g.primitive_int(), divmod(fq, g).first.primitive_int()};
        return cert;
    }
    // intersect achievable factor-degree sums over several primes
    std::set<int> possible;
    for (int k = 1; k < n; ++k)
        possible.insert(k);
    int tried = 0;
    for (std::int64_t p = 2; tried < 40 && p < 1000; ++p) {
        if (!is_prime(p) || mod_int(f.back(), p) == 0)
            continue;
        ModPoly fm = to_mod(f, p);
        if (!squarefree_mod_p(fm, p))
            continue;
        ++tried;
        auto degs = factor_degrees_mod_p(fm, p);
        if (degs.size() == 1) {
            cert.verdict = Irreducibility::irreducible;
            cert.prime = p;
            cert.method = "irreducible mod p";
            return cert;
        }
        std::set<int> sums{0};
        for (int dg : degs) {
            std::set<int> next = sums;
            for (int s : sums)
                next.insert(s + dg);
            sums = next;
        }
        std::set<int> keep;
        for (int k : possible)
            if (sums.count(k))
                keep.insert(k);
        possible = keep;
        if (possible.empty()) {
            cert.verdict = Irreducibility::irreducible;
            cert.prime = p;
            cert.method = "incompatible degree patterns";
            return cert;
        }
    }
    if (n <= max_exact_degree) {
        auto factors = factor_squarefree_z(f);
        if (factors.size() == 1) {
            cert.verdict = Irreducibility::irreducible;
            cert.method = "exact factorization";
        } else {
            cert.verdict = Irreducibility::reducible;
            cert.method = "exact factorization";
            cert.factors = factors;
        }
    }
    return cert;
}

} // namespace sumdil
