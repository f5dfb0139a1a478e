#ifndef IDEMCERT_RING_FACT_HPP
#define IDEMCERT_RING_FACT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <idemcert/ring/certificate.hpp>

namespace idemcert
{

enum class FactKind { Eq0, Rnul, Unit };

inline const char *to_string(FactKind k)
{
    switch (k) {
    case FactKind::Eq0: return "Eq0";
    case FactKind::Rnul: return "Rnul";
    case FactKind::Unit: return "Unit";
    }
    return "?";
}

/// Element u of the monoid generated by the preinvertible relations, kept as
/// an exponent per relation so membership in the monoid is syntactic.
struct UnitProduct
{
    std::vector<std::uint32_t> exps;

    static UnitProduct one() { return {}; }
    static UnitProduct generator(std::size_t index, std::uint32_t e = 1)
    {
        UnitProduct u;
        u.exps.assign(index + 1, 0);
        u.exps[index] = e;
        return u;
    }

    std::uint32_t exponent(std::size_t i) const { return i < exps.size() ? exps[i] : 0; }

    friend UnitProduct operator*(const UnitProduct &a, const UnitProduct &b)
    {
        UnitProduct r;
        r.exps.resize(std::max(a.exps.size(), b.exps.size()), 0);
        for (std::size_t i = 0; i < r.exps.size(); ++i)
            r.exps[i] = a.exponent(i) + b.exponent(i);
        return r;
    }

    UnitProduct pow(std::uint32_t e) const
    {
        UnitProduct r = *this;
        for (auto &x : r.exps)
            x *= e;
        return r;
    }

    /// The same product with generator `i` removed, and its exponent.
    std::pair<UnitProduct, std::uint32_t> split(std::size_t i) const
    {
        UnitProduct r = *this;
        std::uint32_t e = 0;
        if (i < r.exps.size()) {
            e = r.exps[i];
            r.exps[i] = 0;
        }
        return {r, e};
    }

    Poly expand(const RingPresentation &pres) const
    {
        Poly acc = Poly::constant(1, pres.context());
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0)
                continue;
            if (i >= pres.unit().size())
                throw RingError("dangling unit reference " + std::to_string(i));
            acc = acc * pres.unit()[i].pow(exps[i]);
        }
        return acc;
    }
};

/// Combination j + i: j over residually-null relations, i over equations.
struct JiPart
{
    std::vector<Poly> rnul;
    CertVec eq0;

    static JiPart of_rnul(std::size_t index, Poly coeff)
    {
        JiPart p;
        p.rnul.resize(index + 1);
        p.rnul[index] = std::move(coeff);
        return p;
    }
    static JiPart of_eq0(CertVec v) { return JiPart{{}, std::move(v)}; }

    Poly j_value(const RingPresentation &pres) const
    {
        Poly acc = Poly::zero_in(pres.context());
        for (std::size_t k = 0; k < rnul.size(); ++k) {
            if (rnul[k].is_zero())
                continue;
            if (k >= pres.rnul().size())
                throw RingError("dangling rnul reference " + std::to_string(k));
            acc += rnul[k] * pres.rnul()[k];
        }
        return acc;
    }
    Poly i_value(const RingPresentation &pres) const { return eq0.value(pres); }

    JiPart scaled(const Poly &c) const
    {
        JiPart out;
        out.rnul.reserve(rnul.size());
        for (const auto &p : rnul)
            out.rnul.push_back(p.is_zero() ? p : p * c);
        out.eq0 = eq0.scaled(c);
        return out;
    }

    friend JiPart operator+(const JiPart &a, const JiPart &b)
    {
        JiPart out;
        out.rnul.resize(std::max(a.rnul.size(), b.rnul.size()));
        for (std::size_t k = 0; k < out.rnul.size(); ++k) {
            Poly x = k < a.rnul.size() ? a.rnul[k] : Poly();
            out.rnul[k] = k < b.rnul.size() ? x + b.rnul[k] : x;
        }
        out.eq0 = a.eq0 + b.eq0;
        return out;
    }
    friend JiPart operator-(const JiPart &a, const JiPart &b) { return a + b.scaled(Poly(-1)); }

    JiPart j_only() const { return JiPart{rnul, {}}; }
    JiPart i_only() const { return JiPart{{}, eq0}; }

    /// Coefficient on residually-null relation k, and the part without it.
    std::pair<Poly, JiPart> split_rnul(std::size_t k) const
    {
        JiPart rest = *this;
        Poly c;
        if (k < rest.rnul.size()) {
            c = rest.rnul[k];
            rest.rnul[k] = Poly();
        }
        return {c, rest};
    }

    std::size_t term_count() const
    {
        std::size_t n = eq0.term_count();
        for (const auto &p : rnul)
            n += p.size();
        return n;
    }
};

/// Certificate for an Eq0, Rnul or Unit fact. With u the unit product,
/// j and i the parts:
///   Eq0:  (u + j) t + i = 0
///   Rnul: u t^n + j + i = 0
///   Unit: u + j + a t + i = 0
struct FactCertificate
{
    FactKind kind = FactKind::Eq0;
    Poly target;
    UnitProduct unit_part;
    Poly unit_value;
    JiPart ji;
    Poly aux;
    std::uint32_t exponent = 0;

    static FactCertificate eq0(Poly t, UnitProduct u, const RingPresentation &pres, JiPart ji)
    {
        FactCertificate f{FactKind::Eq0, std::move(t), std::move(u), {}, std::move(ji), {}, 0};
        f.unit_value = f.unit_part.expand(pres);
        return f;
    }
    static FactCertificate rnul(Poly t, std::uint32_t n, UnitProduct u, const RingPresentation &pres, JiPart ji)
    {
        FactCertificate f{FactKind::Rnul, std::move(t), std::move(u), {}, std::move(ji), {}, n};
        f.unit_value = f.unit_part.expand(pres);
        return f;
    }
    static FactCertificate unit(Poly t, Poly a, UnitProduct u, const RingPresentation &pres, JiPart ji)
    {
        FactCertificate f{FactKind::Unit, std::move(t), std::move(u), {}, std::move(ji), std::move(a), 0};
        f.unit_value = f.unit_part.expand(pres);
        return f;
    }

    /// Eq0 fact from a plain membership certificate (u = 1, j = 0).
    static FactCertificate from_membership(const MembershipCertificate &m, const RingPresentation &pres)
    {
        return eq0(m.target, UnitProduct::one(), pres, JiPart::of_eq0(-m.coeffs));
    }

    /// Left side of the defining identity; zero iff the certificate holds.
    Poly residual(const RingPresentation &pres) const
    {
        Poly u = unit_part.expand(pres);
        if (u != unit_value)
            throw RingError("unit product expansion does not match the recorded value");
        Poly j = ji.j_value(pres);
        Poly i = ji.i_value(pres);
        switch (kind) {
        case FactKind::Eq0: return (u + j) * target + i;
        case FactKind::Rnul: return u * target.pow(exponent) + j + i;
        case FactKind::Unit: return u + j + aux * target + i;
        }
        return Poly(1);
    }
};

/// Pure expansion check of the identity for the fact's kind.
inline bool fact_check(const FactCertificate &cert, const RingPresentation &pres)
{
    return cert.residual(pres).is_zero();
}

/// With no residually-null or preinvertible relations in play (u = 1, j = 0),
/// an Eq0 fact is a plain membership certificate: t + i = 0.
inline std::optional<MembershipCertificate> fact_to_membership(const FactCertificate &f)
{
    if (f.kind != FactKind::Eq0)
        return std::nullopt;
    for (auto e : f.unit_part.exps)
        if (e != 0)
            return std::nullopt;
    for (const auto &c : f.ji.rnul)
        if (!c.is_zero())
            return std::nullopt;
    return MembershipCertificate{f.target, -f.ji.eq0};
}

} // namespace idemcert

#endif // IDEMCERT_RING_FACT_HPP
