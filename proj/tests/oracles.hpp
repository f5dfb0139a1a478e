// Independent reference computations used to derive expected values.
// Deliberately naive: no shared code paths with the library's algorithms
// beyond Poly addition and scalar handling.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <idemcert/matrix/matrix.hpp>
#include <idemcert/ring/certificate.hpp>

namespace oracle
{

using idemcert::ContextPtr;
using idemcert::Mat;
using idemcert::Poly;
using idemcert::Term;

// Exponent-vector -> coefficient map; multiplication by the schoolbook double loop.
using Dense = std::map<std::vector<std::uint32_t>, mpz_class>;

inline Dense to_dense(const Poly &p, std::size_t n)
{
    Dense d;
    for (const auto &t : p.terms()) {
        auto e = t.exps;
        e.resize(n, 0);
        d[e] += t.coeff;
    }
    return d;
}

inline Poly from_dense(const Dense &d, const ContextPtr &ctx)
{
    std::vector<Term> terms;
    for (const auto &[e, c] : d)
        if (c != 0)
            terms.push_back(Term{e, 0, c});
    return Poly::from_terms(ctx, terms);
}

inline Poly schoolbook_mul(const Poly &a, const Poly &b, const ContextPtr &ctx)
{
    const auto n = ctx->size();
    Dense da = to_dense(a, n), db = to_dense(b, n), out;
    for (const auto &[ea, ca] : da)
        for (const auto &[eb, cb] : db) {
            std::vector<std::uint32_t> e(n);
            for (std::size_t i = 0; i < n; ++i)
                e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    return from_dense(out, ctx);
}

inline Poly schoolbook_pow(const Poly &a, unsigned k, const ContextPtr &ctx)
{
    Poly r = Poly::constant(1, ctx);
    for (unsigned i = 0; i < k; ++i)
        r = schoolbook_mul(r, a, ctx);
    return r;
}

/// Leibniz determinant: sum over all permutations.
inline Poly leibniz_det(const Mat &m, const ContextPtr &ctx)
{
    const auto n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Poly acc = Poly::zero_in(ctx);
    do {
        int sign = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    sign = -sign;
        Poly term = Poly::constant(sign, ctx);
        for (std::size_t i = 0; i < n; ++i)
            term = schoolbook_mul(term, m(i, perm[i]).embed(ctx), ctx);
        acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

/// det(xI - F) by Leibniz, x the last variable of ctx.
inline Poly leibniz_charpoly(const Mat &f, const ContextPtr &ctx, const std::string &x)
{
    Mat m = f;
    Poly xv = Poly::variable(ctx, x);
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            m(i, j) = (i == j ? xv : Poly::zero_in(ctx)) - f(i, j).embed(ctx);
    return leibniz_det(m, ctx);
}

/// Multinomial expansion of (sum of variables)^N as {exponent vector -> coefficient}.
inline Dense multinomial(std::size_t nvars, unsigned total)
{
    Dense out;
    std::vector<std::uint32_t> e(nvars, 0);
    auto fact = [](unsigned k) {
        mpz_class r = 1;
        for (unsigned i = 2; i <= k; ++i)
            r *= i;
        return r;
    };
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == nvars) {
            e[i] = left;
            mpz_class c = fact(total);
            for (auto x : e)
                c /= fact(x);
            out[e] = c;
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, total);
    return out;
}

/// Random polynomial with up to `terms` terms, total degree <= deg, coeffs in [-c, c].
inline Poly random_poly(std::mt19937_64 &rng, const ContextPtr &ctx, unsigned deg, int c, unsigned terms = 4)
{
    std::uniform_int_distribution<int> cd(-c, c);
    std::uniform_int_distribution<unsigned> dd(0, deg);
    std::vector<Term> ts;
    const auto n = ctx->size();
    for (unsigned k = 0; k < terms; ++k) {
        std::vector<std::uint32_t> e(n, 0);
        unsigned budget = dd(rng);
        for (unsigned b = 0; b < budget && n > 0; ++b)
            e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]++;
        ts.push_back(Term{e, 0, mpz_class(cd(rng))});
    }
    return Poly::from_terms(ctx, ts);
}

/// target == sum c_g g, each product formed by the schoolbook loop.
inline bool expand_membership(const idemcert::MembershipCertificate &m, const idemcert::RingPresentation &pres)
{
    using idemcert::RelationRef;
    const auto ctx = pres.context();
    const std::size_t n = ctx->size();
    Dense acc;
    for (const auto &[ref, c] : m.coeffs.terms()) {
        const Poly &g = ref.kind == RelationRef::Kind::Eq0 ? pres.eq0().at(ref.index)
                                                            : pres.params().at(ref.index).relation;
        for (const auto &[e, v] : to_dense(schoolbook_mul(c.embed(ctx), g.embed(ctx), ctx), n))
            acc[e] += v;
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc == to_dense(m.target.embed(ctx), n);
}

} // namespace oracle
