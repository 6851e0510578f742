#pragma once

#include "sumdil/error.hpp"
#include "sumdil/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace sumdil {

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_)
                fail_input("ragged matrix literal");
            for (const auto& x : row)
                a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows)
    {
        Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_)
                fail_input("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t nrows)
    {
        Matrix m(nrows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != nrows)
                fail_input("column length mismatch");
            for (std::size_t i = 0; i < nrows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    void set_column(std::size_t j, const std::vector<T>& v)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = v[i];
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (x != 0)
                return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    friend Matrix operator+(Matrix x, const Matrix& y)
    {
        x.check_same(y);
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            x.a_[i] += y.a_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y)
    {
        x.check_same(y);
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            x.a_[i] -= y.a_[i];
        return x;
    }
    friend Matrix operator*(const T& s, Matrix x)
    {
        for (auto& v : x.a_)
            v *= s;
        return x;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.cols_ != y.rows_)
            fail_input("matrix product dimension mismatch");
        Matrix p(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik == 0)
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    p(i, j) += xik * y(k, j);
            }
        return p;
    }
    friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v)
    {
        if (x.cols_ != v.size())
            fail_input("matrix-vector dimension mismatch");
        std::vector<T> out(x.rows_, T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j)
                out[i] += x(i, j) * v[j];
        return out;
    }

    const std::vector<T>& data() const { return a_; }

private:
    void check_same(const Matrix& y) const
    {
        if (rows_ != y.rows_ || cols_ != y.cols_)
            fail_input("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

RatMatrix to_rat(const IntMatrix& m);
// Throws when some entry is not an integer.
IntMatrix to_int_matrix(const RatMatrix& m);
bool is_integral(const RatMatrix& m);

Int det(const IntMatrix& m);   // Bareiss
Rat det(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots = nullptr);
// Basis (as columns) of the right null space.
std::vector<RatVec> nullspace(const RatMatrix& m);
// Some solution of m x = b, if one exists.
std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b);
// Basis of the column span (subset of the given columns, in order).
std::vector<RatVec> column_basis(const std::vector<RatVec>& cols);

RatMatrix pow(const RatMatrix& m, unsigned e);
std::string to_string(const RatMatrix& m);
std::string to_string(const IntMatrix& m);

} // namespace sumdil
