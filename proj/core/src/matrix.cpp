#include "sumdil/matrix.hpp"

#include <sstream>

namespace sumdil {

RatMatrix to_rat(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rat(m(i, j));
    return r;
}

bool is_integral(const RatMatrix& m)
{
    for (const auto& x : m.data())
        if (x.get_den() != 1)
            return false;
    return true;
}

IntMatrix to_int_matrix(const RatMatrix& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1)
                fail_internal("matrix entry is not an integer");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

Int det(const IntMatrix& m0)
{
    if (!m0.square())
        fail_input("determinant of non-square matrix");
    std::size_t n = m0.rows();
    if (n == 0)
        return 1;
    IntMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

RatMatrix rref(const RatMatrix& m0, std::vector<std::size_t>* pivots)
{
    RatMatrix m = m0;
    std::size_t r = 0;
    if (pivots)
        pivots->clear();
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        if (pivots)
            pivots->push_back(c);
        ++r;
    }
    return m;
}

std::size_t rank(const RatMatrix& m)
{
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

Rat det(const RatMatrix& m0)
{
    if (!m0.square())
        fail_input("determinant of non-square matrix");
    RatMatrix m = m0;
    std::size_t n = m.rows();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0)
                continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::optional<RatMatrix> inverse(const RatMatrix& m)
{
    if (!m.square())
        fail_input("inverse of non-square matrix");
    std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref(aug, &piv);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = r(i, n + j);
    return inv;
}

std::vector<RatVec> nullspace(const RatMatrix& m)
{
    std::vector<std::size_t> piv;
    RatMatrix r = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv)
        is_piv[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f])
            continue;
        RatVec v(m.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b)
{
    if (b.size() != m.rows())
        fail_input("solve: dimension mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols())
        return std::nullopt;
    RatVec x(m.cols(), Rat(0));
    for (std::size_t i = 0; i < piv.size(); ++i)
        x[piv[i]] = r(i, m.cols());
    return x;
}

std::vector<RatVec> column_basis(const std::vector<RatVec>& cols)
{
    if (cols.empty())
        return {};
    RatMatrix m = RatMatrix::from_columns(cols, cols[0].size());
    std::vector<std::size_t> piv;
    rref(m, &piv);
    std::vector<RatVec> out;
    for (auto p : piv)
        out.push_back(cols[p]);
    return out;
}

RatMatrix pow(const RatMatrix& m, unsigned e)
{
    RatMatrix r = RatMatrix::identity(m.rows());
    RatMatrix b = m;
    while (e) {
        if (e & 1u)
            r = r * b;
        e >>= 1u;
        if (e)
            b = b * b;
    }
    return r;
}

namespace {
template <class M>
std::string render(const M& m)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}
} // namespace

std::string to_string(const RatMatrix& m) { return render(m); }
std::string to_string(const IntMatrix& m) { return render(m); }

} // namespace sumdil
