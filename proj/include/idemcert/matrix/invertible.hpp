#ifndef IDEMCERT_MATRIX_INVERTIBLE_HPP
#define IDEMCERT_MATRIX_INVERTIBLE_HPP

#include <utility>

#include <idemcert/matrix/transform.hpp>

namespace idemcert
{

/// A matrix with a two-sided inverse, certified entrywise.
struct InvertibleMat
{
    Mat m, inv;
    WMat m_inv; // m * inv = I
    WMat inv_m; // inv * m = I

    static InvertibleMat identity(std::size_t n)
    {
        Mat i = Mat::identity(n);
        return {i, i, lift(i), lift(i)};
    }

    /// Pair whose products are the identity as polynomials.
    static InvertibleMat exact(Mat m, Mat inv)
    {
        Mat a = m * inv, b = inv * m;
        if (a != Mat::identity(m.rows()) || b != Mat::identity(m.cols()))
            throw CertificateError("matrices are not exact inverses");
        return {std::move(m), std::move(inv), lift(a), lift(b)};
    }

    static InvertibleMat permutation(const std::vector<std::size_t> &order)
    {
        // Row i of (P * X) is row order[i] of X.
        const std::size_t n = order.size();
        Mat p(n, n);
        for (std::size_t i = 0; i < n; ++i)
            p(i, order[i]) = Poly(1);
        return exact(p, p.transposed());
    }

    std::size_t size() const { return m.rows(); }

    /// next * this, with inverse this^-1 * next^-1.
    InvertibleMat then(const InvertibleMat &next) const
    {
        InvertibleMat out;
        out.m = next.m * m;
        out.inv = inv * next.inv;
        // N M M^-1 N^-1 = N N^-1 = I
        WMat a = lift(next.m) * m_inv * lift(next.inv);
        out.m_inv = detail::relabel(chain(a, next.m_inv), out.m * out.inv);
        // M^-1 N^-1 N M = M^-1 M = I
        WMat b = lift(inv) * next.inv_m * lift(m);
        out.inv_m = detail::relabel(chain(b, inv_m), out.inv * out.m);
        return out;
    }

    /// diag(I_d, this).
    InvertibleMat shifted(std::size_t d) const
    {
        auto i = Mat::identity(d);
        return {Mat::block_diag(i, m), Mat::block_diag(i, inv), WMat::block_diag(lift(i), m_inv),
                WMat::block_diag(lift(i), inv_m)};
    }

    bool verify(const RingPresentation &pres) const
    {
        auto ok = [&](const WMat &w, const Mat &a, const Mat &b) {
            return lhs_of(w) == a * b && rhs_of(w) == Mat::identity(a.rows()) && verify_all(w, pres);
        };
        return ok(m_inv, m, inv) && ok(inv_m, inv, m);
    }
};

/// Inverse of a ring element: itself when it is +-1, otherwise a fresh
/// parameter with relation name*x - 1 added to the presentation.
struct ElementInverse
{
    RingPresentation pres;
    Poly inverse;
    EqualityWitness witness; // x * inverse = 1
    bool added_param = false;
};

inline ElementInverse invert_element(const RingPresentation &pres, const Poly &x, const std::string &stem)
{
    if (x == Poly(1) || x == Poly(-1))
        return {pres, x, EqualityWitness(x * x, Poly(1), {}), false};
    auto name = pres.fresh_name(stem);
    auto ext = pres.with_inverse(name, x);
    auto w = EqualityWitness::param_inverse(ext, ext.params().size() - 1);
    auto u = ext.var(name);
    return {ext, u, w.with_lhs(x * u), true};
}

/// Witness matrix of given shape: identity entries reflexive.
inline WMat identity_witness(std::size_t n) { return lift(Mat::identity(n)); }

} // namespace idemcert

#endif // IDEMCERT_MATRIX_INVERTIBLE_HPP
