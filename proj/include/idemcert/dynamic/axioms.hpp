#ifndef IDEMCERT_DYNAMIC_AXIOMS_HPP
#define IDEMCERT_DYNAMIC_AXIOMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <idemcert/ring/fact.hpp>
#include <idemcert/ring/search.hpp>

namespace idemcert
{

enum class DynTheory { Ring, LocalRing, RingIdealUnits, LocalRingMaxIdeal };

enum class Axiom { A1, A2, A3, AI1, AI2, AI3, AI4, AU1, AU2, AU3, AU4, AU5, AU6 };

inline const char *to_string(Axiom a)
{
    static const char *names[] = {"A1", "A2", "A3", "AI1", "AI2", "AI3", "AI4", "AU1", "AU2", "AU3", "AU4", "AU5", "AU6"};
    return names[static_cast<int>(a)];
}

inline bool theory_admits(DynTheory t, Axiom a)
{
    bool ring_axiom = a == Axiom::A1 || a == Axiom::A2 || a == Axiom::A3;
    return ring_axiom || t == DynTheory::RingIdealUnits || t == DynTheory::LocalRingMaxIdeal;
}

/// Presentation plus the facts proved so far; every stored fact verifies.
class DynState
{
public:
    explicit DynState(RingPresentation pres, DynTheory theory = DynTheory::RingIdealUnits)
        : pres_(std::move(pres)), theory_(theory)
    {
    }

    const RingPresentation &pres() const noexcept { return pres_; }
    DynTheory theory() const noexcept { return theory_; }
    const std::vector<FactCertificate> &proved() const noexcept { return proved_; }

    DynState with_fact(const FactCertificate &f) const
    {
        if (!fact_check(f, pres_))
            throw CertificateError(std::string("refusing to store a non-verifying ") + to_string(f.kind) + " fact");
        DynState s = *this;
        s.proved_.push_back(f);
        return s;
    }

private:
    RingPresentation pres_;
    DynTheory theory_;
    std::vector<FactCertificate> proved_;
};

namespace detail
{

inline void expect(const FactCertificate &f, FactKind k, const RingPresentation &pres, const char *ax)
{
    if (f.kind != k)
        throw RingError(std::string(ax) + ": expected a " + to_string(k) + " fact, got " + to_string(f.kind));
    if (!fact_check(f, pres))
        throw RingError(std::string(ax) + ": input fact does not verify");
}

inline const Poly &operand(const std::vector<Poly> &terms, std::size_t i, const char *ax)
{
    if (i >= terms.size())
        throw RingError(std::string(ax) + ": missing term operand");
    return terms[i];
}

/// (u + w)^m = u^m + w * Q; returns Q = sum_{k=1..m} C(m,k) u^(m-k) w^(k-1).
inline Poly binomial_tail(const Poly &u, const Poly &w, std::uint32_t m)
{
    Poly q;
    Poly wp = Poly(1);
    for (std::uint32_t k = 1; k <= m; ++k) {
        q += binomial(m, k) * u.pow(m - k) * wp;
        wp = wp * w;
    }
    return q;
}

inline FactCertificate checked(FactCertificate f, const RingPresentation &pres, const char *what)
{
    if (!fact_check(f, pres))
        throw CertificateError(std::string(what) + ": constructed certificate does not verify");
    return f;
}

} // namespace detail

/// Applies one axiom of the ring-with-ideal-and-preinvertibles theory to
/// certified inputs, building the conclusion's certificate explicitly.
///
/// Extra term operands: A3 {y}, AI3 {y}, AI4 {x}, AU4 {x, y}, AU5 {y}, AU6 {t2}.
/// AU2 takes inputs (Unit(x), Rnul(y)).
inline FactCertificate axiom_apply(Axiom ax, const std::vector<FactCertificate> &in, const RingPresentation &pres,
                                   const std::vector<Poly> &terms = {})
{
    using detail::expect;
    const char *name = to_string(ax);
    auto need_inputs = [&](std::size_t n) {
        if (in.size() != n)
            throw RingError(std::string(name) + ": expected " + std::to_string(n) + " input facts");
    };
    const auto ctx = pres.context();
    switch (ax) {
    case Axiom::A1: {
        need_inputs(0);
        return FactCertificate::eq0(Poly::zero_in(ctx), UnitProduct::one(), pres, {});
    }
    case Axiom::A2: {
        need_inputs(2);
        expect(in[0], FactKind::Eq0, pres, name);
        expect(in[1], FactKind::Eq0, pres, name);
        const auto &f1 = in[0], &f2 = in[1];
        Poly j1 = f1.ji.j_value(pres), j2 = f2.ji.j_value(pres);
        JiPart j = f2.ji.j_only().scaled(f1.unit_value) + f1.ji.j_only().scaled(f2.unit_value + j2);
        JiPart i = f1.ji.i_only().scaled(f2.unit_value + j2) + f2.ji.i_only().scaled(f1.unit_value + j1);
        return detail::checked(FactCertificate::eq0(f1.target + f2.target, f1.unit_part * f2.unit_part, pres, j + i),
                               pres, name);
    }
    case Axiom::A3: {
        need_inputs(1);
        expect(in[0], FactKind::Eq0, pres, name);
        const Poly &y = detail::operand(terms, 0, name);
        FactCertificate f = in[0];
        f.target = f.target * y;
        f.ji = f.ji.j_only() + f.ji.i_only().scaled(y);
        return detail::checked(f, pres, name);
    }
    case Axiom::AI1: {
        need_inputs(1);
        expect(in[0], FactKind::Eq0, pres, name);
        const auto &f = in[0];
        // (u + j) x + i = 0  ->  u x^1 + (j x) + i = 0
        return detail::checked(
            FactCertificate::rnul(f.target, 1, f.unit_part, pres, f.ji.j_only().scaled(f.target) + f.ji.i_only()), pres,
            name);
    }
    case Axiom::AI2: {
        need_inputs(2);
        expect(in[0], FactKind::Rnul, pres, name);
        expect(in[1], FactKind::Rnul, pres, name);
        const auto &f1 = in[0], &f2 = in[1];
        const std::uint32_t m = f1.exponent, n = f2.exponent, k = m + n;
        const Poly &t1 = f1.target, &t2 = f2.target;
        // (t1 + t2)^(m+n) = a t1^m + b t2^n, split by the t1 exponent.
        Poly a, b;
        for (std::uint32_t e = 0; e <= k; ++e) {
            if (e >= m)
                a += binomial(k, e) * t1.pow(e - m) * t2.pow(k - e);
            else
                b += binomial(k, e) * t1.pow(e) * t2.pow(k - e - n);
        }
        // u1 u2 (t1+t2)^k + u2 a j1 + u1 b j2 + u2 a i1 + u1 b i2 = 0
        JiPart ji = f1.ji.scaled(f2.unit_value * a) + f2.ji.scaled(f1.unit_value * b);
        return detail::checked(FactCertificate::rnul(t1 + t2, k, f1.unit_part * f2.unit_part, pres, ji), pres, name);
    }
    case Axiom::AI3: {
        need_inputs(1);
        expect(in[0], FactKind::Rnul, pres, name);
        const Poly &y = detail::operand(terms, 0, name);
        const auto &f = in[0];
        Poly yn = y.pow(f.exponent);
        return detail::checked(FactCertificate::rnul(f.target * y, f.exponent, f.unit_part, pres, f.ji.scaled(yn)),
                               pres, name);
    }
    case Axiom::AI4: {
        need_inputs(1);
        expect(in[0], FactKind::Rnul, pres, name);
        const Poly &x = detail::operand(terms, 0, name);
        const auto &f = in[0];
        if (x * x != f.target)
            throw RingError("AI4: input target is not the square of the operand");
        return detail::checked(FactCertificate::rnul(x, 2 * f.exponent, f.unit_part, pres, f.ji), pres, name);
    }
    case Axiom::AU1: {
        need_inputs(0);
        return FactCertificate::unit(Poly::constant(1, ctx), Poly(-1), UnitProduct::one(), pres, {});
    }
    case Axiom::AU2: {
        need_inputs(2);
        expect(in[0], FactKind::Unit, pres, name);
        expect(in[1], FactKind::Rnul, pres, name);
        const auto &fu = in[0], &fr = in[1];
        // fr: u1 t1^m + j1 + i1 = 0 ; fu: u2 + j2 + a2 t2 + i2 = 0
        const std::uint32_t m = fr.exponent;
        const Poly &u1 = fr.unit_value, &u2 = fu.unit_value, &a2 = fu.aux;
        const Poly &t1 = fr.target, &t2 = fu.target;
        Poly w = fu.ji.j_value(pres) + fu.ji.i_value(pres);
        Poly y = w + a2 * (t1 + t2);
        Poly q = detail::binomial_tail(u2, y, m);
        Poly a2m = a2.pow(m);
        JiPart ji = fu.ji.scaled(u1 * q) + fr.ji.scaled(a2m);
        return detail::checked(
            FactCertificate::unit(t1 + t2, u1 * q * a2, fr.unit_part * fu.unit_part.pow(m), pres, ji), pres, name);
    }
    case Axiom::AU3: {
        need_inputs(2);
        expect(in[0], FactKind::Unit, pres, name);
        expect(in[1], FactKind::Unit, pres, name);
        const auto &f1 = in[0], &f2 = in[1];
        Poly s2 = f2.unit_value + f2.ji.j_value(pres) + f2.ji.i_value(pres);
        JiPart ji = f2.ji.scaled(f1.unit_value) + f1.ji.scaled(s2);
        return detail::checked(FactCertificate::unit(f1.target * f2.target, -(f1.aux * f2.aux),
                                                     f1.unit_part * f2.unit_part, pres, ji),
                               pres, name);
    }
    case Axiom::AU4: {
        need_inputs(1);
        expect(in[0], FactKind::Unit, pres, name);
        const Poly &x = detail::operand(terms, 0, name), &y = detail::operand(terms, 1, name);
        const auto &f = in[0];
        if (x * y != f.target)
            throw RingError("AU4: input target is not the product of the operands");
        return detail::checked(FactCertificate::unit(x, f.aux * y, f.unit_part, pres, f.ji), pres, name);
    }
    case Axiom::AU5: {
        need_inputs(2);
        expect(in[0], FactKind::Unit, pres, name);
        expect(in[1], FactKind::Eq0, pres, name);
        const Poly &y = detail::operand(terms, 0, name);
        const auto &fu = in[0], &fe = in[1];
        if (fu.target * y != fe.target)
            throw RingError("AU5: Eq0 input is not x*y");
        Poly j1 = fu.ji.j_value(pres);
        Poly m2 = fe.unit_value + fe.ji.j_value(pres);
        JiPart j = fu.ji.j_only().scaled(fe.unit_value) + fe.ji.j_only().scaled(fu.unit_value + j1);
        JiPart i = fu.ji.i_only().scaled(m2 * y) + fe.ji.i_only().scaled(-fu.aux);
        return detail::checked(FactCertificate::eq0(y, fu.unit_part * fe.unit_part, pres, j + i), pres, name);
    }
    case Axiom::AU6: {
        need_inputs(2);
        expect(in[0], FactKind::Unit, pres, name);
        expect(in[1], FactKind::Rnul, pres, name);
        const Poly &t2 = detail::operand(terms, 0, name);
        const auto &fu = in[0], &fr = in[1];
        if (fu.target * t2 != fr.target)
            throw RingError("AU6: Rnul input is not t1*t2");
        const std::uint32_t m = fr.exponent;
        Poly w1 = fu.ji.j_value(pres) + fu.ji.i_value(pres);
        Poly q = detail::binomial_tail(fu.unit_value, w1, m);
        Poly na = (-fu.aux).pow(m);
        JiPart ji = fu.ji.scaled(fr.unit_value * t2.pow(m) * q) + fr.ji.scaled(na);
        return detail::checked(FactCertificate::rnul(t2, m, fu.unit_part.pow(m) * fr.unit_part, pres, ji), pres, name);
    }
    }
    throw RingError("unknown axiom");
}

/// Facts given directly by the presentation.
inline FactCertificate fact_from_unit_relation(const RingPresentation &pres, std::size_t index)
{
    const Poly &x = pres.unit().at(index);
    return detail::checked(FactCertificate::unit(x, Poly(-1), UnitProduct::generator(index), pres, {}), pres,
                           "unit relation");
}

inline FactCertificate fact_from_rnul_relation(const RingPresentation &pres, std::size_t index)
{
    const Poly &x = pres.rnul().at(index);
    return detail::checked(FactCertificate::rnul(x, 1, UnitProduct::one(), pres, JiPart::of_rnul(index, Poly(-1))),
                           pres, "rnul relation");
}

/// Unit(b) from Unit(a) and a certificate for b - a in the ideal.
inline FactCertificate unit_transfer(const FactCertificate &unit_a, const Poly &b, const MembershipCertificate &diff,
                                     const RingPresentation &pres)
{
    if (diff.target != b - unit_a.target)
        throw RingError("unit_transfer: certificate target is not b - a");
    auto eq = FactCertificate::from_membership(diff, pres);
    auto rn = axiom_apply(Axiom::AI1, {eq}, pres);
    return axiom_apply(Axiom::AU2, {unit_a, rn}, pres);
}

/// Derived query: Unit(t) holds iff adding Rnul(t) makes 1 = 0
/// provable; Rnul(t) holds iff adding Unit(t) does. Searches a bounded space
/// of certificates for 1 = 0 and converts a hit back into the fact's shape.
inline std::optional<FactCertificate> derived_fact_query(const RingPresentation &pres, const Poly &t, FactKind wanted,
                                                         SearchBounds bounds = {}, std::uint32_t max_unit_degree = 3)
{
    if (wanted == FactKind::Eq0)
        throw RingError("derived_fact_query answers Unit and Rnul queries");
    RingPresentation ext = wanted == FactKind::Unit ? pres.with_rnul(t) : pres.with_unit(t);
    const std::size_t tr = pres.rnul().size(), tu = pres.unit().size();
    std::vector<Poly> gens = ext.ideal_generators();
    const std::size_t ng = gens.size();
    for (const auto &r : ext.rnul())
        gens.push_back(r);
    // Candidate unit products in increasing total exponent.
    const std::size_t nu = ext.unit().size();
    for (std::uint32_t total = 0; total <= max_unit_degree; ++total) {
        std::vector<UnitProduct> cands;
        std::vector<std::uint32_t> e(nu, 0);
        std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
            if (i == nu) {
                if (left == 0)
                    cands.push_back(UnitProduct{e});
                return;
            }
            for (std::uint32_t k = 0; k <= left; ++k) {
                e[i] = k;
                rec(i + 1, left - k);
            }
            e[i] = 0;
        };
        if (nu == 0 && total == 0)
            cands.push_back(UnitProduct::one());
        else
            rec(0, total);
        for (const auto &u : cands) {
            Poly uv = u.expand(ext);
            auto r = find_combination(-uv, gens, ext.context(), bounds);
            if (!r.coeffs)
                continue;
            const auto &c = *r.coeffs;
            JiPart ji;
            const std::size_t ne = ext.eq0().size();
            for (std::size_t g = 0; g < ng; ++g) {
                if (c[g].is_zero())
                    continue;
                RelationRef ref = g < ne ? RelationRef{RelationRef::Kind::Eq0, g} : RelationRef{RelationRef::Kind::Param, g - ne};
                ji.eq0.slot(ref) = c[g];
            }
            ji.rnul.assign(c.begin() + static_cast<std::ptrdiff_t>(ng), c.end());
            // u + j + i = 0 in the extended presentation.
            if (wanted == FactKind::Unit) {
                auto [a, rest] = ji.split_rnul(tr);
                rest.rnul.resize(std::min(rest.rnul.size(), tr));
                return detail::checked(FactCertificate::unit(t, a, u, pres, rest), pres, "derived Unit");
            }
            auto [base, m] = u.split(tu);
            base.exps.resize(std::min(base.exps.size(), tu));
            return detail::checked(FactCertificate::rnul(t, m, base, pres, ji), pres, "derived Rnul");
        }
    }
    return std::nullopt;
}

} // namespace idemcert

#endif // IDEMCERT_DYNAMIC_AXIOMS_HPP
