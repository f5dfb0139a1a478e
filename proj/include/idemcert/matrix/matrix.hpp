#ifndef IDEMCERT_MATRIX_MATRIX_HPP
#define IDEMCERT_MATRIX_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <idemcert/ring/certificate.hpp>

namespace idemcert
{

class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over a commutative ring element type T
/// (Poly or EqualityWitness). T must be constructible from an int.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows * cols)
            throw DimensionError("matrix entry count does not match its shape");
    }

    static Matrix from_rows(const std::vector<std::vector<T>> &rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows[0].size() : 0;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw DimensionError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }

    /// I_{k,q,m}: q x m with the identity on the first k diagonal entries.
    static Matrix canonical(std::size_t k, std::size_t q, std::size_t m)
    {
        if (k > q || k > m)
            throw DimensionError("canonical projector: k exceeds a dimension");
        Matrix out(q, m);
        for (std::size_t i = 0; i < k; ++i)
            out(i, i) = T(1);
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    const std::vector<T> &data() const noexcept { return data_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    T &at(std::size_t i, std::size_t j)
    {
        if (i >= rows_ || j >= cols_)
            throw DimensionError("matrix index out of range");
        return (*this)(i, j);
    }
    const T &at(std::size_t i, std::size_t j) const
    {
        if (i >= rows_ || j >= cols_)
            throw DimensionError("matrix index out of range");
        return (*this)(i, j);
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        if (a.cols_ != b.rows_)
            throw DimensionError("matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                T acc(0);
                for (std::size_t k = 0; k < a.cols_; ++k)
                    acc += a(i, k) * b(k, j);
                c(i, j) = std::move(acc);
            }
        return c;
    }

    friend Matrix operator+(const Matrix &a, const Matrix &b) { return zip(a, b, [](const T &x, const T &y) { return x + y; }); }
    friend Matrix operator-(const Matrix &a, const Matrix &b) { return zip(a, b, [](const T &x, const T &y) { return x - y; }); }

    Matrix operator-() const
    {
        Matrix m = *this;
        for (auto &x : m.data_)
            x = -x;
        return m;
    }

    friend Matrix operator*(const T &s, const Matrix &a)
    {
        Matrix m = a;
        for (auto &x : m.data_)
            x = s * x;
        return m;
    }

    Matrix transposed() const
    {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix submatrix(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) const
    {
        Matrix m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                m(i, j) = at(rows[i], cols[j]);
        return m;
    }

    /// Contiguous block [r0, r0+nr) x [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw DimensionError("block out of range");
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix &b)
    {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw DimensionError("set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    /// [[a, b], [c, d]] from four blocks.
    static Matrix blocks(const Matrix &a, const Matrix &b, const Matrix &c, const Matrix &d)
    {
        if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_)
            throw DimensionError("block shapes do not fit");
        Matrix m(a.rows_ + c.rows_, a.cols_ + b.cols_);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols_, b);
        m.set_block(a.rows_, 0, c);
        m.set_block(a.rows_, a.cols_, d);
        return m;
    }

    static Matrix block_diag(const Matrix &a, const Matrix &b)
    {
        return blocks(a, Matrix(a.rows_, b.cols_), Matrix(b.rows_, a.cols_), b);
    }

    Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

    template <typename F>
    auto map(F &&f) const -> Matrix<decltype(f(std::declval<const T &>()))>
    {
        using U = decltype(f(std::declval<const T &>()));
        std::vector<U> out;
        out.reserve(data_.size());
        for (const auto &x : data_)
            out.push_back(f(x));
        return Matrix<U>(rows_, cols_, std::move(out));
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    template <typename F>
    static Matrix zip(const Matrix &a, const Matrix &b, F f)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionError("matrix sum: shapes differ");
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            c.data_[i] = f(a.data_[i], b.data_[i]);
        return c;
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using Mat = Matrix<Poly>;
using WMat = Matrix<EqualityWitness>;

enum class MatOp { Mul, Add, Sub, Identity, BlockDiag };

/// Dispatcher over the basic matrix operations; Identity uses a.rows().
inline Mat mat_arith(MatOp op, const Mat &a, const Mat &b = {})
{
    switch (op) {
    case MatOp::Mul: return a * b;
    case MatOp::Add: return a + b;
    case MatOp::Sub: return a - b;
    case MatOp::Identity: return Mat::identity(a.rows());
    case MatOp::BlockDiag: return Mat::block_diag(a, b);
    }
    throw DimensionError("unknown matrix operation");
}

inline Mat embed(const Mat &m, const ContextPtr &ctx)
{
    return m.map([&](const Poly &p) { return p.embed(ctx); });
}

/// Parses rows of polynomial strings.
inline Mat parse_matrix(const std::vector<std::vector<std::string>> &rows, const ContextPtr &ctx)
{
    std::vector<std::vector<Poly>> out;
    for (const auto &r : rows) {
        out.emplace_back();
        for (const auto &s : r)
            out.back().push_back(Poly::parse(s, ctx));
    }
    return Mat::from_rows(out);
}

/// "[[a, b], [c, d]]" with canonical polynomial strings.
inline std::string to_string(const Mat &m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                s += ", ";
            s += m(i, j).to_string();
        }
        s += "]";
    }
    return s + "]";
}

/// Reflexive witnesses for an exact matrix.
inline WMat lift(const Mat &m)
{
    return m.map([](const Poly &p) { return EqualityWitness(p); });
}

inline Mat lhs_of(const WMat &w)
{
    return w.map([](const EqualityWitness &x) { return x.lhs(); });
}
inline Mat rhs_of(const WMat &w)
{
    return w.map([](const EqualityWitness &x) { return x.rhs(); });
}

inline bool verify_all(const WMat &w, const RingPresentation &pres)
{
    for (const auto &x : w.data())
        if (!x.verify(pres))
            return false;
    return true;
}

/// Entrywise transitivity.
inline WMat chain(const WMat &a, const WMat &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("witness chain: shapes differ");
    std::vector<EqualityWitness> out;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        out.push_back(a.data()[i].then(b.data()[i]));
    return WMat(a.rows(), a.cols(), std::move(out));
}

inline WMat flipped(const WMat &a)
{
    return a.map([](const EqualityWitness &x) { return x.flipped(); });
}

} // namespace idemcert

#endif // IDEMCERT_MATRIX_MATRIX_HPP
