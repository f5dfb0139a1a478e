#ifndef IDEMCERT_MATRIX_DETERMINANT_HPP
#define IDEMCERT_MATRIX_DETERMINANT_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <idemcert/matrix/matrix.hpp>

namespace idemcert
{

/// Berkowitz: coefficients c_0..c_n of det(x I - A) = sum c_k x^(n-k), using
/// only ring operations (valid with zero divisors). c_0 = 1.
template <typename T>
std::vector<T> berkowitz(const Matrix<T> &a)
{
    if (!a.square())
        throw DimensionError("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<T> v{T(1)};
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<T> col(r + 2, T(0));
        col[0] = T(1);
        col[1] = -a(r, r);
        std::vector<T> sk(r);
        for (std::size_t i = 0; i < r; ++i)
            sk[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            T dot(0);
            for (std::size_t i = 0; i < r; ++i)
                dot += a(r, i) * sk[i];
            col[k + 2] = -dot;
            if (k + 1 < r) {
                std::vector<T> next(r, T(0));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j)
                        next[i] += a(i, j) * sk[j];
                sk = std::move(next);
            }
        }
        std::vector<T> nv(r + 2, T(0));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < v.size(); ++j)
                nv[i] += col[i - j] * v[j];
        v = std::move(nv);
    }
    return v;
}

template <typename T>
T det(const Matrix<T> &a)
{
    auto c = berkowitz(a);
    return a.rows() % 2 == 0 ? c.back() : -c.back();
}

/// Sums of diagonal k-minors e_0..e_n, so that det(I + Y A) = sum e_k Y^k.
template <typename T>
std::vector<T> diagonal_minor_sums(const Matrix<T> &a)
{
    auto c = berkowitz(a);
    for (std::size_t k = 1; k < c.size(); k += 2)
        c[k] = -c[k];
    return c;
}

/// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n)
        return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i)
        cur[i] = i;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return out;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
}

inline void check_index_set(const std::vector<std::size_t> &s, std::size_t bound)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= bound)
            throw DimensionError("minor index out of range");
        if (i && s[i] <= s[i - 1])
            throw DimensionError("minor index set must be strictly increasing");
    }
}

template <typename T>
T minor(const Matrix<T> &f, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols)
{
    if (rows.size() != cols.size())
        throw DimensionError("minor index sets differ in size");
    check_index_set(rows, f.rows());
    check_index_set(cols, f.cols());
    if (rows.empty())
        return T(1);
    return det(f.submatrix(rows, cols));
}

template <typename T>
std::vector<std::pair<std::vector<std::size_t>, T>> diagonal_minors(const Matrix<T> &f, std::size_t k)
{
    if (!f.square())
        throw DimensionError("diagonal minors of a non-square matrix");
    if (k > f.rows())
        throw DimensionError("minor order exceeds matrix size");
    std::vector<std::pair<std::vector<std::size_t>, T>> out;
    for (auto &s : subsets(f.rows(), k))
        out.emplace_back(s, minor(f, s, s));
    return out;
}

/// Classical adjugate by cofactors: adj(A) A = A adj(A) = det(A) I.
template <typename T>
Matrix<T> adjugate(const Matrix<T> &a)
{
    if (!a.square())
        throw DimensionError("adjugate of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix<T> out(n, n);
    if (n == 1) {
        out(0, 0) = T(1);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t r = 0; r < n; ++r)
                if (r != j)
                    rows.push_back(r);
            for (std::size_t c = 0; c < n; ++c)
                if (c != i)
                    cols.push_back(c);
            T d = det(a.submatrix(rows, cols));
            out(i, j) = (i + j) % 2 ? -d : d;
        }
    return out;
}

/// det(x I - F) as a polynomial in the entry context extended by x.
inline Poly charpoly_div_free(const Mat &f, const std::string &x)
{
    if (!f.square())
        throw DimensionError("characteristic polynomial of a non-square matrix");
    ContextPtr base;
    for (const auto &p : f.data())
        base = detail::common_context(base, p.context());
    if (base && base->contains(x))
        throw RingError("charpoly variable '" + x + "' already occurs in the entries");
    auto ctx = extend_context(base, {x});
    auto c = berkowitz(f);
    Poly xv = Poly::variable(ctx, x);
    Poly acc = Poly::zero_in(ctx);
    // Horner in descending powers.
    for (const auto &ck : c)
        acc = acc * xv + ck.embed(ctx);
    return acc;
}

/// X^n det(X I_m - F1) == X^m det(X I_n - F2), compared coefficientwise.
inline bool padded_charpoly_identity(const Mat &f1, const Mat &f2)
{
    auto c1 = berkowitz(f1);
    auto c2 = berkowitz(f2);
    const std::size_t m = f1.rows(), n = f2.rows();
    c1.resize(m + n + 1, Poly());
    c2.resize(m + n + 1, Poly());
    for (std::size_t i = 0; i <= m + n; ++i)
        if (c1[i] != c2[i])
            return false;
    return true;
}

/// Sign of the permutation sorting `seq` (distinct entries).
inline int permutation_sign(std::vector<std::size_t> seq)
{
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j])
                sign = -sign;
    return sign;
}

} // namespace idemcert

#endif // IDEMCERT_MATRIX_DETERMINANT_HPP
