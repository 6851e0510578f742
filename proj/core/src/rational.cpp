#include "sumdil/rational.hpp"

#include "sumdil/error.hpp"


namespace sumdil {

Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0)
        fail_input("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t')
            s += c;
    if (s.empty())
        fail_input("empty rational");
    if (s[0] == '+')
        s.erase(0, 1);
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t) {
        Int v;
        if (t.empty() || v.set_str(t, 10) != 0)
            fail_input("bad integer '" + t + "'");
        return v;
    };
    if (slash == std::string::npos)
        return Rat(parse_int(s));
    return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::string to_string(const Int& v) { return v.get_str(); }
std::string to_string(const Rat& v) { return v.get_str(); }

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int floor_rat(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

Int ceil_rat(const Rat& r)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

std::int64_t to_i64(const Int& v)
{
    static_assert(sizeof(long) == sizeof(std::int64_t));
    if (!v.fits_slong_p())
        fail_refusal("integer overflow: " + v.get_str() + " exceeds 64 bits");
    return v.get_si();
}

} // namespace sumdil
