#include "sumdil/upoly.hpp"

#include "sumdil/error.hpp"

#include <cctype>
#include <sstream>

namespace sumdil {

UPoly::UPoly(RatVec coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const IntVec& coeffs)
{
    for (const auto& v : coeffs)
        c_.emplace_back(v);
    trim();
}

UPoly UPoly::monomial(const Rat& c, std::size_t deg)
{
    RatVec v(deg + 1, Rat(0));
    v[deg] = c;
    return UPoly(std::move(v));
}

void UPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rat UPoly::eval(const Rat& x) const
{
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

RatMatrix UPoly::eval(const RatMatrix& m) const
{
    RatMatrix acc(m.rows(), m.cols());
    RatMatrix id = RatMatrix::identity(m.rows());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * m + (*it) * id;
    return acc;
}

UPoly UPoly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    RatVec d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const
{
    if (is_zero())
        return {};
    return (1 / lc()) * (*this);
}

UPoly UPoly::compose(const UPoly& inner) const
{
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * inner + constant(*it);
    return acc;
}

IntVec UPoly::primitive_int() const
{
    if (is_zero())
        return {};
    Int den = 1;
    for (const auto& c : c_)
        den = lcm(den, c.get_den());
    IntVec out;
    Int g = 0;
    for (const auto& c : c_) {
        Rat s = c * den;
        out.push_back(s.get_num());
        g = gcd(g, s.get_num());
    }
    if (out.back() < 0)
        g = -g;
    for (auto& v : out)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return out;
}

UPoly operator+(const UPoly& a, const UPoly& b)
{
    RatVec r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        r[i] += b.c_[i];
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a) { return Rat(-1) * a; }
UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    RatVec r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
}

UPoly operator*(const Rat& s, const UPoly& a)
{
    RatVec r = a.c_;
    for (auto& v : r)
        v *= s;
    return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
{
    if (b.is_zero())
        fail_input("polynomial division by zero");
    RatVec r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {UPoly(), a};
    RatVec q(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
    Rat inv = 1 / b.lc();
    for (int i = a.degree(); i >= db; --i) {
        Rat f = r[static_cast<std::size_t>(i)] * inv;
        if (f == 0)
            continue;
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a0, const UPoly& b0)
{
    UPoly a = a0, b = b0;
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

ExtGcd ext_gcd(const UPoly& a, const UPoly& b)
{
    UPoly r0 = a, r1 = b;
    UPoly s0 = UPoly::constant(1), s1;
    UPoly t0, t1 = UPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        UPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Rat inv = 1 / r0.lc();
    return {inv * r0, inv * s0, inv * t0};
}

bool is_squarefree(const UPoly& f)
{
    if (f.degree() <= 0)
        return true;
    return gcd(f, f.derivative()).degree() == 0;
}

UPoly pow_mod(const UPoly& base, unsigned e, const UPoly& mod)
{
    UPoly r = UPoly::constant(1) % mod;
    UPoly b = base % mod;
    while (e) {
        if (e & 1u)
            r = (r * b) % mod;
        e >>= 1u;
        if (e)
            b = (b * b) % mod;
    }
    return r;
}

std::string UPoly::to_string(const std::string& var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rat& c = c_[k];
        if (c == 0)
            continue;
        Rat a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1)
            os << a.get_str() << '*';
        os << var;
        if (k > 1)
            os << '^' << k;
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& s, char var) : s_(s), var_(var) {}

    UPoly parse()
    {
        UPoly p = expr();
        skip();
        if (i_ != s_.size())
            fail_input("unexpected '" + std::string(1, s_[i_]) + "' in polynomial '" + s_ + "'");
        return p;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    UPoly expr()
    {
        UPoly acc;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        UPoly t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }
    UPoly term()
    {
        UPoly acc = power();
        for (;;) {
            skip();
            if (eat('*')) {
                acc = acc * power();
            } else if (eat('/')) {
                UPoly d = power();
                if (d.degree() != 0)
                    fail_input("division by a non-constant in '" + s_ + "'");
                acc = (1 / d.lc()) * acc;
            } else if (i_ < s_.size() && (s_[i_] == var_ || s_[i_] == '(')) {
                acc = acc * power();   // implicit product, e.g. 3t
            } else {
                break;
            }
        }
        return acc;
    }
    UPoly power()
    {
        UPoly base = atom();
        if (eat('^')) {
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (st == i_)
                fail_input("expected exponent in '" + s_ + "'");
            unsigned e = static_cast<unsigned>(std::stoul(s_.substr(st, i_ - st)));
            UPoly r = UPoly::constant(1);
            for (unsigned k = 0; k < e; ++k)
                r = r * base;
            return r;
        }
        return base;
    }
    UPoly atom()
    {
        skip();
        if (i_ >= s_.size())
            fail_input("unexpected end of polynomial '" + s_ + "'");
        if (s_[i_] == '(') {
            ++i_;
            UPoly p = expr();
            if (!eat(')'))
                fail_input("missing ')' in '" + s_ + "'");
            return p;
        }
        if (s_[i_] == var_) {
            ++i_;
            return UPoly::x();
        }
        if (eat('-'))
            return -atom();
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (st == i_)
            fail_input("unexpected '" + std::string(1, s_[i_]) + "' in polynomial '" + s_ + "'");
        return UPoly::constant(Rat(Int(s_.substr(st, i_ - st))));
    }

    const std::string& s_;
    char var_;
    std::size_t i_ = 0;
};

} // namespace

UPoly parse_upoly(const std::string& text, char var) { return PolyParser(text, var).parse(); }

UPoly charpoly(const RatMatrix& m)
{
    // Faddeev-LeVerrier: c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    if (!m.square())
        fail_input("charpoly of non-square matrix");
    std::size_t n = m.rows();
    RatVec c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix mk(n, n);
    RatMatrix id = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk + c[n - k + 1] * id;
        RatMatrix am = m * mk;
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return UPoly(std::move(c));
}

UPoly minpoly(const RatMatrix& m)
{
    std::size_t n = m.rows();
    std::vector<RatVec> powers;
    RatMatrix p = RatMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        powers.push_back(p.data());
        RatMatrix cols = RatMatrix::from_columns(powers, n * n);
        auto ns = nullspace(cols);
        if (!ns.empty())
            return UPoly(ns[0]).monic();
        p = p * m;
    }
    fail_internal("minimal polynomial not found");
}

} // namespace sumdil
