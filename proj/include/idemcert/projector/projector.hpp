#ifndef IDEMCERT_PROJECTOR_PROJECTOR_HPP
#define IDEMCERT_PROJECTOR_PROJECTOR_HPP

#include <string>
#include <vector>

#include <idemcert/matrix/determinant.hpp>
#include <idemcert/ring/search.hpp>

namespace idemcert
{

class NotIdempotentError : public RingError
{
public:
    using RingError::RingError;
};

/// Square matrix over a presented ring with F*F = F certified entrywise.
struct ProjectorMat
{
    Mat f;
    RingPresentation pres;
    WMat idempotence; // lhs (F*F)_ij, rhs F_ij

    std::size_t n() const { return f.rows(); }

    bool verify() const
    {
        return f.square() && lhs_of(idempotence) == f * f && rhs_of(idempotence) == f && verify_all(idempotence, pres);
    }
};

namespace detail
{

// d == c * g for an integer c, read off the leading terms.
inline std::optional<mpz_class> integer_multiple(const Poly &d, const Poly &g)
{
    if (g.is_zero() || d.size() != g.size())
        return std::nullopt;
    const auto &td = d.terms().front(), &tg = g.terms().front();
    if (td.coeff % tg.coeff != 0)
        return std::nullopt;
    mpz_class c = td.coeff / tg.coeff;
    if (d != g * Poly(c))
        return std::nullopt;
    return c;
}

} // namespace detail

/// Certificate for d in the ideal: zero, a scalar multiple of one relation,
/// or a bounded search hit.
inline std::optional<MembershipCertificate> certify_member(const Poly &d, const RingPresentation &pres,
                                                           const SearchBounds &bounds)
{
    if (d.is_zero())
        return MembershipCertificate{d, {}};
    const std::size_t ne = pres.eq0().size();
    auto gens = pres.ideal_generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (auto c = detail::integer_multiple(d, gens[g])) {
            RelationRef ref = g < ne ? RelationRef{RelationRef::Kind::Eq0, g}
                                     : RelationRef{RelationRef::Kind::Param, g - ne};
            return MembershipCertificate{d, CertVec::single(ref, Poly(*c))};
        }
    }
    return search_membership(d, pres, bounds);
}

/// Validates F and certifies F*F = F entry by entry.
inline ProjectorMat make_projector(const Mat &f, const RingPresentation &pres, const SearchBounds &bounds = {})
{
    if (!f.square())
        throw DimensionError("projector must be square");
    Mat ff = f * f;
    WMat w(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) {
            Poly d = ff(i, j) - f(i, j);
            auto cert = certify_member(d, pres, bounds);
            if (!cert || !verify_membership(*cert, pres))
                throw NotIdempotentError("matrix is not idempotent: entry (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ") of F^2 - F is " + d.to_string());
            w(i, j) = EqualityWitness(ff(i, j), f(i, j), cert->coeffs);
        }
    return {f, pres, std::move(w)};
}

/// r_h = sum_{k >= h} C(k, h) (-1)^(k-h) e_k, from the diagonal minor sums
/// e_0..e_n; works for polynomials and for witnesses.
template <typename T>
std::vector<T> rank_coefficients_from_sums(const std::vector<T> &e)
{
    const std::size_t n = e.size() - 1;
    std::vector<T> r(n + 1, T(0));
    for (std::size_t h = 0; h <= n; ++h)
        for (std::size_t k = h; k <= n; ++k) {
            mpz_class c = binomial(k, h);
            if ((k - h) % 2)
                c = -c;
            r[h] += T(Poly(c)) * e[k];
        }
    return r;
}

/// Coefficients r_0..r_n of R(X) = det(I + (X - 1) F).
inline std::vector<Poly> rank_coefficients(const Mat &f) { return rank_coefficients_from_sums(diagonal_minor_sums(f)); }

/// R(X) as a polynomial in the presentation context extended by `x`.
inline Poly rank_polynomial(const ProjectorMat &fp, const std::string &x = "X")
{
    if (fp.pres.has_name(x))
        throw RingError("rank polynomial variable '" + x + "' clashes with the presentation");
    auto ctx = extend_context(fp.pres.context(), {x});
    auto xv = Poly::variable(ctx, x);
    auto r = rank_coefficients(fp.f);
    Poly acc = Poly::zero_in(ctx);
    for (std::size_t k = r.size(); k-- > 0;)
        acc = acc * xv + r[k].embed(ctx);
    return acc;
}

} // namespace idemcert

#endif // IDEMCERT_PROJECTOR_PROJECTOR_HPP
