#include "sumdil/multipoly.hpp"

#include "sumdil/error.hpp"

#include <numeric>
#include <sstream>

namespace sumdil {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const
{
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db)
        return da < db;
    return a < b;
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rat& c)
{
    MultiPoly p(std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t i)
{
    MultiPoly p(std::move(vars));
    Exponent e(p.nvars(), 0);
    e.at(i) = 1;
    p.add_term(e, 1);
    return p;
}

MultiPoly MultiPoly::from_upoly(std::vector<std::string> vars, std::size_t i, const UPoly& u)
{
    MultiPoly p(std::move(vars));
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
        Exponent e(p.nvars(), 0);
        e.at(i) = static_cast<int>(k);
        p.add_term(e, u.coeffs()[k]);
    }
    return p;
}

Rat MultiPoly::coeff(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rat& c)
{
    if (e.size() != vars_.size())
        fail_input("exponent length does not match variable count");
    if (c == 0)
        return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int MultiPoly::total_degree() const
{
    if (terms_.empty())
        return -1;
    const auto& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int MultiPoly::degree_in(std::size_t var) const
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e.at(var));
    return d;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const
{
    int d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)), MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        int k = f[var];
        f[var] = 0;
        out[static_cast<std::size_t>(k)].add_term(f, c);
    }
    return out;
}

MultiPoly MultiPoly::drop_var(std::size_t var) const
{
    std::vector<std::string> v = vars_;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(var));
    MultiPoly p(v);
    for (const auto& [e, c] : terms_) {
        if (e[var] != 0)
            fail_input("cannot drop variable " + vars_[var] + ": it occurs");
        Exponent f = e;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(var));
        p.add_term(f, c);
    }
    return p;
}

Rat MultiPoly::eval(const std::vector<Rat>& point) const
{
    if (point.size() != vars_.size())
        fail_input("evaluation point has wrong length");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= point[i];
        acc += t;
    }
    return acc;
}

bool MultiPoly::is_homogeneous() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        if (d >= 0 && s != d)
            return false;
        d = s;
    }
    return true;
}

Int MultiPoly::denominator_lcm() const
{
    Int l = 1;
    for (const auto& [e, c] : terms_)
        l = lcm(l, c.get_den());
    return l;
}

Int MultiPoly::integer_content() const
{
    Int den = denominator_lcm();
    Int g = 0;
    for (const auto& [e, c] : terms_) {
        Rat s = c * den;
        g = gcd(g, s.get_num());
    }
    return g;
}

void MultiPoly::check_vars(const MultiPoly& o) const
{
    if (vars_ != o.vars_)
        fail_input("polynomials over different variable lists");
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b)
{
    a.check_vars(b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_)
        r.add_term(e, c);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + Rat(-1) * b; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    a.check_vars(b);
    MultiPoly r(a.vars_);
    Exponent e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly operator*(const Rat& s, const MultiPoly& a)
{
    MultiPoly r(a.vars_);
    if (s == 0)
        return r;
    for (const auto& [e, c] : a.terms_)
        r.terms_.emplace(e, c * s);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const
{
    MultiPoly r = constant(vars_, 1);
    for (unsigned k = 0; k < e; ++k)
        r = r * *this;
    return r;
}

std::string MultiPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool constant_term = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
        bool printed = false;
        if (a != 1 || constant_term) {
            os << a.get_str();
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (printed)
                os << '*';
            os << vars_[i];
            if (e[i] > 1)
                os << '^' << e[i];
            printed = true;
        }
    }
    return os.str();
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b)
{
    if (b.is_zero())
        fail_input("polynomial division by zero");
    MultiPoly q(a.vars());
    MultiPoly r = a;
    const auto& [lb, cb] = *b.terms().rbegin();
    while (!r.is_zero()) {
        const auto& [lr, cr] = *r.terms().rbegin();
        Exponent e(lr.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = lr[i] - lb[i];
            if (e[i] < 0)
                fail_internal("inexact multivariate division");
        }
        MultiPoly t(a.vars());
        t.add_term(e, cr / cb);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

MultiPoly det(std::vector<std::vector<MultiPoly>> m)
{
    std::size_t n = m.size();
    if (n == 0)
        fail_input("determinant of empty matrix");
    const auto vars = m[0][0].vars();
    MultiPoly prev = MultiPoly::constant(vars, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero())
                ++p;
            if (p == n)
                return MultiPoly(vars);
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = MultiPoly(vars);
        }
        prev = m[k][k];
    }
    MultiPoly d = m[n - 1][n - 1];
    return negate ? Rat(-1) * d : d;
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var)
{
    if (f.is_zero() || g.is_zero())
        fail_input("degenerate resultant operand");
    if (f.vars() != g.vars())
        fail_input("resultant operands over different variables");
    int m = f.degree_in(var);
    int n = g.degree_in(var);
    if (m <= 0)
        fail_input("degenerate resultant operand");
    auto fc = f.coefficients_in(var);
    auto gc = g.coefficients_in(var);
    std::size_t size = static_cast<std::size_t>(m + n);
    MultiPoly zero(f.vars());
    std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size, zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = fc[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = gc[static_cast<std::size_t>(n - j)];
    return det(std::move(s)).drop_var(var);
}

} // namespace sumdil
