#ifndef IDEMCERT_GLUE_GLUE_HPP
#define IDEMCERT_GLUE_GLUE_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include <idemcert/matrix/determinant.hpp>
#include <idemcert/ring/comaximal.hpp>

namespace idemcert
{

/// u_i with sum u_i s_i^h = 1 modulo the ideal; `cert` has target
/// sum u_i s_i^h - 1.
struct ComaximalPower
{
    unsigned h = 1;
    std::vector<Poly> u;
    MembershipCertificate cert;

    Poly combination(const std::vector<Poly> &s) const
    {
        Poly acc;
        for (std::size_t i = 0; i < s.size(); ++i)
            acc += u[i] * s[i].pow(h);
        return acc;
    }
};

/// Expands (sum c_i s_i)^N, N = n(h-1)+1. Each multinomial term has some
/// exponent >= h; it goes to the smallest such index.
inline ComaximalPower comaximal_power(const ComaximalityData &data, unsigned h, const RingPresentation &pres)
{
    if (h < 1)
        throw RingError("comaximal_power needs h >= 1");
    const std::size_t n = data.s.size();
    if (n == 0 || data.c.size() != n)
        throw RingError("comaximality data is empty or malformed");
    ComaximalPower out{h, std::vector<Poly>(n), {}};
    if (h == 1) {
        out.u = data.c;
        out.cert = data.cert;
        return out;
    }
    const unsigned total = static_cast<unsigned>(n) * (h - 1) + 1;
    std::vector<Poly> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = data.c[i] * data.s[i];
    // powers of c_i s_i and c_i
    std::vector<std::vector<Poly>> xp(n), cp(n);
    for (std::size_t i = 0; i < n; ++i) {
        xp[i].push_back(Poly(1));
        cp[i].push_back(Poly(1));
        for (unsigned e = 1; e <= total; ++e) {
            xp[i].push_back(xp[i].back() * x[i]);
            cp[i].push_back(cp[i].back() * data.c[i]);
        }
    }
    std::vector<unsigned> a(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            a[i] = left;
            std::size_t owner = n;
            for (std::size_t j = 0; j < n && owner == n; ++j)
                if (a[j] >= h)
                    owner = j;
            // multinomial coefficient
            mpz_class coef = 1;
            unsigned rest = total;
            for (std::size_t j = 0; j < n; ++j) {
                coef *= binomial(rest, a[j]);
                rest -= a[j];
            }
            Poly rest_part(coef);
            for (std::size_t j = 0; j < n; ++j)
                if (j != owner)
                    rest_part *= xp[j][a[j]];
            // c^a s^(a - h) times the other factors
            rest_part *= cp[owner][a[owner]] * data.s[owner].pow(a[owner] - h);
            out.u[owner] += rest_part;
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            a[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, total);
    // sum u_i s_i^h = (sum c s)^N = (1 + w)^N with w = sum c s - 1 certified:
    // (1 + w)^N - 1 = w * sum_{j < N} (1 + w)^j
    Poly one_plus = data.combination(), geo;
    Poly pw(1);
    for (unsigned j = 0; j < total; ++j) {
        geo += pw;
        pw *= one_plus;
    }
    out.cert = MembershipCertificate{out.combination(data.s) - Poly(1), data.cert.coeffs.scaled(geo)};
    if (data.cert.target != one_plus - Poly(1) || !verify_membership(out.cert, pres))
        throw CertificateError("comaximal power identity does not verify");
    return out;
}

/// s^h a = 0 with h local to the element.
struct LocalAnnihilation
{
    Poly s;
    unsigned h = 0;
    MembershipCertificate cert; // target s^h a
};

/// a = sum u_i s_i^H a, each s_i^H a = s_i^(H - h_i) (s_i^h_i a).
inline MembershipCertificate glue_equalities(const Poly &a, const std::vector<LocalAnnihilation> &locals,
                                             const ComaximalityData &data, const RingPresentation &pres)
{
    if (a.is_zero())
        return {a, {}};
    if (locals.size() != data.s.size())
        throw RingError("one local witness per comaximal element is required");
    unsigned hmax = 1;
    for (std::size_t i = 0; i < locals.size(); ++i) {
        const auto &l = locals[i];
        if (l.s != data.s[i] || l.cert.target != l.s.pow(l.h) * a || !verify_membership(l.cert, pres))
            throw CertificateError("local annihilation witness " + std::to_string(i) + " does not verify");
        hmax = std::max(hmax, l.h);
    }
    auto cp = comaximal_power(data, hmax, pres);
    // a = a (sum u s^H) - a (sum u s^H - 1)
    CertVec acc = -cp.cert.coeffs.scaled(a);
    for (std::size_t i = 0; i < locals.size(); ++i)
        acc += locals[i].cert.coeffs.scaled(cp.u[i] * data.s[i].pow(hmax - locals[i].h));
    MembershipCertificate out{a, acc};
    if (!verify_membership(out, pres))
        throw CertificateError("glued equality does not verify");
    return out;
}

/// a b s^p = s^(p + k) locally.
struct LocalInverse
{
    Poly s, b;
    unsigned p = 0, k = 0;
    MembershipCertificate cert; // target a b s^p - s^(p + k)
};

struct GluedInverse
{
    Poly d;
    MembershipCertificate cert; // target a d - 1
};

/// d = sum u_i b_i s_i^(H - k_i) with H = max(p_i + k_i):
/// a d = sum u_i s_i^(H - p_i - k_i) a b_i s_i^p_i = sum u_i s_i^H = 1.
inline GluedInverse glue_inverses(const Poly &a, const std::vector<LocalInverse> &locals,
                                  const ComaximalityData &data, const RingPresentation &pres)
{
    if (locals.size() != data.s.size())
        throw RingError("one local witness per comaximal element is required");
    unsigned hmax = 1;
    for (std::size_t i = 0; i < locals.size(); ++i) {
        const auto &l = locals[i];
        if (l.s != data.s[i] || l.cert.target != a * l.b * l.s.pow(l.p) - l.s.pow(l.p + l.k) ||
            !verify_membership(l.cert, pres))
            throw CertificateError("local inverse witness " + std::to_string(i) + " does not verify");
        hmax = std::max(hmax, l.p + l.k);
    }
    auto cp = comaximal_power(data, hmax, pres);
    GluedInverse out;
    CertVec acc = cp.cert.coeffs;
    for (std::size_t i = 0; i < locals.size(); ++i) {
        const auto &l = locals[i];
        out.d += cp.u[i] * l.b * l.s.pow(hmax - l.k);
        acc += l.cert.coeffs.scaled(cp.u[i] * l.s.pow(hmax - l.p - l.k));
    }
    out.cert = MembershipCertificate{a * out.d - Poly(1), acc};
    if (!verify_membership(out.cert, pres))
        throw CertificateError("glued inverse does not verify");
    return out;
}

/// Local data for a candidate non-zero-divisor: given b and a b = 0, an
/// exponent m_i and a certificate s_i^m_i b = 0.
using LocalRegularity = std::function<LocalAnnihilation(const Poly &b, const MembershipCertificate &ab)>;

/// Reduction b = 0 from a b = 0, glued from the local reductions.
class NonZeroDivisorGluing
{
public:
    NonZeroDivisorGluing(Poly a, std::vector<LocalRegularity> locals, ComaximalityData data, RingPresentation pres)
        : a_(std::move(a)), locals_(std::move(locals)), data_(std::move(data)), pres_(std::move(pres))
    {
        if (locals_.size() != data_.s.size())
            throw RingError("one local reduction per comaximal element is required");
    }

    MembershipCertificate operator()(const Poly &b, const MembershipCertificate &ab) const
    {
        if (ab.target != a_ * b || !verify_membership(ab, pres_))
            throw CertificateError("a b = 0 witness does not verify");
        std::vector<LocalAnnihilation> loc;
        for (const auto &l : locals_)
            loc.push_back(l(b, ab));
        return glue_equalities(b, loc, data_, pres_);
    }

private:
    Poly a_;
    std::vector<LocalRegularity> locals_;
    ComaximalityData data_;
    RingPresentation pres_;
};

inline NonZeroDivisorGluing glue_nonzerodivisor(Poly a, std::vector<LocalRegularity> locals, ComaximalityData data,
                                                RingPresentation pres)
{
    return NonZeroDivisorGluing(std::move(a), std::move(locals), std::move(data), std::move(pres));
}

/// Local regularity when a has a certified inverse a c = 1 + i near s:
/// b = c a b - i b, so s^0 b = 0.
inline LocalRegularity regularity_from_inverse(const Poly &s, const Poly &c, const MembershipCertificate &ac)
{
    return [s, c, ac](const Poly &b, const MembershipCertificate &ab) {
        // b = c (a b) - b (a c - 1)
        CertVec v = ab.coeffs.scaled(c) - ac.coeffs.scaled(b);
        return LocalAnnihilation{s, 0, MembershipCertificate{b, v}};
    };
}

} // namespace idemcert

#endif // IDEMCERT_GLUE_GLUE_HPP
