#ifndef IDEMCERT_RING_CERTIFICATE_HPP
#define IDEMCERT_RING_CERTIFICATE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <idemcert/ring/poly.hpp>
#include <idemcert/ring/presentation.hpp>

namespace idemcert
{

/// Raised when a certificate turns out not to verify where the construction
/// guarantees it should. Always a bug or corrupted input.
class CertificateError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a configured size bound is exceeded.
class EffortExhausted : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RelationRef
{
    enum class Kind { Eq0, Param };
    Kind kind = Kind::Eq0;
    std::size_t index = 0;

    friend bool operator==(const RelationRef &, const RelationRef &) = default;
};

/// Coefficients of a combination of equations: one slot per eq0 relation and
/// per param relation. Missing trailing slots are zero.
class CertVec
{
public:
    CertVec() = default;

    static CertVec single(RelationRef ref, Poly coeff)
    {
        CertVec v;
        v.slot(ref) = std::move(coeff);
        return v;
    }

    const std::vector<Poly> &eq0() const noexcept { return eq0_; }
    const std::vector<Poly> &param() const noexcept { return param_; }

    Poly get(RelationRef ref) const
    {
        const auto &v = ref.kind == RelationRef::Kind::Eq0 ? eq0_ : param_;
        return ref.index < v.size() ? v[ref.index] : Poly();
    }

    Poly &slot(RelationRef ref)
    {
        auto &v = ref.kind == RelationRef::Kind::Eq0 ? eq0_ : param_;
        if (v.size() <= ref.index)
            v.resize(ref.index + 1);
        return v[ref.index];
    }

    bool empty() const noexcept
    {
        for (const auto &p : eq0_)
            if (!p.is_zero())
                return false;
        for (const auto &p : param_)
            if (!p.is_zero())
                return false;
        return true;
    }

    std::size_t term_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto &p : eq0_)
            n += p.size();
        for (const auto &p : param_)
            n += p.size();
        return n;
    }

    /// Nonzero entries in reference order (eq0 first, then params).
    std::vector<std::pair<RelationRef, Poly>> terms() const
    {
        std::vector<std::pair<RelationRef, Poly>> out;
        for (std::size_t i = 0; i < eq0_.size(); ++i)
            if (!eq0_[i].is_zero())
                out.emplace_back(RelationRef{RelationRef::Kind::Eq0, i}, eq0_[i]);
        for (std::size_t i = 0; i < param_.size(); ++i)
            if (!param_[i].is_zero())
                out.emplace_back(RelationRef{RelationRef::Kind::Param, i}, param_[i]);
        return out;
    }

    friend CertVec operator+(const CertVec &a, const CertVec &b) { return combine(a, b, false); }
    friend CertVec operator-(const CertVec &a, const CertVec &b) { return combine(a, b, true); }
    CertVec &operator+=(const CertVec &b) { return *this = *this + b; }

    CertVec operator-() const { return scaled(Poly(-1)); }

    CertVec scaled(const Poly &c) const
    {
        CertVec out;
        if (c.is_zero())
            return out;
        out.eq0_.reserve(eq0_.size());
        for (const auto &p : eq0_)
            out.eq0_.push_back(p.is_zero() ? p : p * c);
        out.param_.reserve(param_.size());
        for (const auto &p : param_)
            out.param_.push_back(p.is_zero() ? p : p * c);
        return out;
    }

    friend CertVec operator*(const Poly &c, const CertVec &v) { return v.scaled(c); }

    /// Throws if any nonzero slot points outside `pres`.
    void check_refs(const RingPresentation &pres) const
    {
        for (std::size_t i = pres.eq0().size(); i < eq0_.size(); ++i)
            if (!eq0_[i].is_zero())
                throw RingError("dangling eq0 reference " + std::to_string(i));
        for (std::size_t i = pres.params().size(); i < param_.size(); ++i)
            if (!param_[i].is_zero())
                throw RingError("dangling param reference " + std::to_string(i));
    }

    /// Sum of coefficient times relation.
    Poly value(const RingPresentation &pres) const
    {
        check_refs(pres);
        Poly acc = Poly::zero_in(pres.context());
        for (std::size_t i = 0; i < eq0_.size(); ++i)
            if (!eq0_[i].is_zero())
                acc += eq0_[i] * pres.eq0()[i];
        for (std::size_t i = 0; i < param_.size(); ++i)
            if (!param_[i].is_zero())
                acc += param_[i] * pres.params()[i].relation;
        return acc;
    }

    /// Drops the slot of the last param (which must be zero afterwards or is
    /// discarded by the caller on purpose) and restricts coefficients.
    CertVec restricted(const ContextPtr &ctx, std::size_t nparams) const
    {
        CertVec out;
        for (const auto &p : eq0_)
            out.eq0_.push_back(p.restrict_to(ctx));
        for (std::size_t i = 0; i < param_.size() && i < nparams; ++i)
            out.param_.push_back(param_[i].restrict_to(ctx));
        return out;
    }

private:
    static CertVec combine(const CertVec &a, const CertVec &b, bool sub)
    {
        CertVec out;
        auto merge = [sub](const std::vector<Poly> &x, const std::vector<Poly> &y, std::vector<Poly> &o) {
            o.resize(std::max(x.size(), y.size()));
            for (std::size_t i = 0; i < o.size(); ++i) {
                Poly l = i < x.size() ? x[i] : Poly();
                if (i < y.size())
                    o[i] = sub ? l - y[i] : l + y[i];
                else
                    o[i] = std::move(l);
            }
        };
        merge(a.eq0_, b.eq0_, out.eq0_);
        merge(a.param_, b.param_, out.param_);
        return out;
    }

    std::vector<Poly> eq0_, param_;
};

/// Witness that `target` lies in the ideal generated by the equations of a
/// presentation: target = sum coeff * relation.
struct MembershipCertificate
{
    Poly target;
    CertVec coeffs;

    static MembershipCertificate from_terms(Poly target, const std::vector<std::pair<RelationRef, Poly>> &terms)
    {
        MembershipCertificate c{std::move(target), {}};
        for (const auto &[ref, coeff] : terms)
            c.coeffs.slot(ref) += coeff;
        return c;
    }

    std::vector<std::pair<RelationRef, Poly>> terms() const { return coeffs.terms(); }
};

inline bool verify_membership(const MembershipCertificate &cert, const RingPresentation &pres)
{
    return cert.target - cert.coeffs.value(pres) == Poly();
}

/// lhs = rhs in the presented ring, with certificate for lhs - rhs.
class EqualityWitness
{
public:
    EqualityWitness() = default;
    EqualityWitness(Poly lhs, Poly rhs, CertVec cert) : lhs_(std::move(lhs)), rhs_(std::move(rhs)), cert_(std::move(cert))
    {
    }
    // Reflexive witness; lets integer constants and exact polys enter witness arithmetic.
    EqualityWitness(const Poly &p) : lhs_(p), rhs_(p) {}
    EqualityWitness(long c) : lhs_(c), rhs_(c) {}
    EqualityWitness(int c) : lhs_(c), rhs_(c) {}

    static EqualityWitness refl(const Poly &p) { return EqualityWitness(p); }

    /// relation = 0, certified by the relation itself.
    static EqualityWitness relation(const RingPresentation &pres, RelationRef ref)
    {
        const Poly &rel = ref.kind == RelationRef::Kind::Eq0 ? pres.eq0().at(ref.index)
                                                             : pres.params().at(ref.index).relation;
        return EqualityWitness(rel, Poly::zero_in(pres.context()), CertVec::single(ref, Poly(1)));
    }

    /// For param u with relation u*s - 1: u*s = 1.
    static EqualityWitness param_inverse(const RingPresentation &pres, std::size_t param_index)
    {
        const Poly &rel = pres.params().at(param_index).relation;
        return EqualityWitness(rel + Poly(1), Poly::constant(1, pres.context()),
                               CertVec::single(RelationRef{RelationRef::Kind::Param, param_index}, Poly(1)));
    }

    static EqualityWitness from_membership(const MembershipCertificate &m, const Poly &lhs, const Poly &rhs)
    {
        if (lhs - rhs != m.target)
            throw CertificateError("membership target does not match lhs - rhs");
        return EqualityWitness(lhs, rhs, m.coeffs);
    }

    const Poly &lhs() const noexcept { return lhs_; }
    const Poly &rhs() const noexcept { return rhs_; }
    const CertVec &cert() const noexcept { return cert_; }

    bool verify(const RingPresentation &pres) const { return lhs_ - rhs_ - cert_.value(pres) == Poly(); }

    MembershipCertificate membership() const { return {lhs_ - rhs_, cert_}; }

    EqualityWitness operator-() const { return {-lhs_, -rhs_, -cert_}; }

    friend EqualityWitness operator+(const EqualityWitness &a, const EqualityWitness &b)
    {
        return {a.lhs_ + b.lhs_, a.rhs_ + b.rhs_, a.cert_ + b.cert_};
    }
    friend EqualityWitness operator-(const EqualityWitness &a, const EqualityWitness &b)
    {
        return {a.lhs_ - b.lhs_, a.rhs_ - b.rhs_, a.cert_ - b.cert_};
    }
    // a*b = a'*b' with certificate a*cert_b + b'*cert_a.
    friend EqualityWitness operator*(const EqualityWitness &a, const EqualityWitness &b)
    {
        CertVec c;
        if (!b.cert_.empty())
            c = b.cert_.scaled(a.lhs_);
        if (!a.cert_.empty())
            c += a.cert_.scaled(b.rhs_);
        return {a.lhs_ * b.lhs_, a.rhs_ * b.rhs_, std::move(c)};
    }
    EqualityWitness &operator+=(const EqualityWitness &b) { return *this = *this + b; }
    EqualityWitness &operator-=(const EqualityWitness &b) { return *this = *this - b; }
    EqualityWitness &operator*=(const EqualityWitness &b) { return *this = *this * b; }

    EqualityWitness pow(unsigned long e) const
    {
        EqualityWitness r(1);
        for (unsigned long i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

    /// a = b and b = c give a = c.
    EqualityWitness then(const EqualityWitness &next) const
    {
        if (rhs_ != next.lhs_)
            throw CertificateError("witness chain mismatch: " + rhs_.to_string() + " vs " + next.lhs_.to_string());
        return {lhs_, next.rhs_, cert_ + next.cert_};
    }

    EqualityWitness flipped() const { return {rhs_, lhs_, -cert_}; }

    /// Same witness with a different (but identical as polynomial) left side.
    EqualityWitness with_lhs(const Poly &lhs) const
    {
        if (lhs != lhs_)
            throw CertificateError("with_lhs: polynomials differ");
        return {lhs, rhs_, cert_};
    }

    bool is_reflexive() const { return cert_.empty() && lhs_ == rhs_; }

    friend bool operator==(const EqualityWitness &a, const EqualityWitness &b)
    {
        return a.lhs_ == b.lhs_ && a.rhs_ == b.rhs_;
    }

private:
    Poly lhs_, rhs_;
    CertVec cert_;
};

enum class WitnessOp { Add, Mul };

/// Add: certificates concatenate; Mul: bilinear combination a*cert_b + b'*cert_a.
/// Both inputs must verify over `pres`; the output is checked before returning.
inline EqualityWitness witness_compose(WitnessOp op, const EqualityWitness &w1, const EqualityWitness &w2,
                                       const RingPresentation &pres)
{
    if (!w1.verify(pres) || !w2.verify(pres))
        throw RingError("witness_compose: input witness does not verify over the given presentation");
    EqualityWitness out = op == WitnessOp::Add ? w1 + w2 : w1 * w2;
    if (!out.verify(pres))
        throw CertificateError("witness_compose produced a non-verifying witness");
    return out;
}

/// f(lhs_1..lhs_k) = f(rhs_1..rhs_k) where f is a polynomial whose context
/// variables are the k slots.
inline EqualityWitness witness_through_polymap(const Poly &f, const std::vector<EqualityWitness> &args)
{
    if (f.nvars() != args.size() && !(f.is_constant() && f.nvars() <= args.size()))
        throw RingError("witness_through_polymap: arity mismatch");
    std::vector<std::vector<EqualityWitness>> powers(args.size());
    EqualityWitness acc(0);
    for (const auto &t : f.terms()) {
        EqualityWitness m{Poly(t.coeff)};
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            auto e = t.exps[i];
            if (e == 0)
                continue;
            auto &pw = powers[i];
            if (pw.empty())
                pw.emplace_back(1);
            while (pw.size() <= e)
                pw.push_back(pw.back() * args[i]);
            m = m * pw[e];
        }
        acc += m;
    }
    return acc;
}

/// Throws EffortExhausted if the certificate has more than `limit` terms.
inline void check_effort(const CertVec &c, std::size_t limit, const char *what)
{
    if (limit != 0 && c.term_count() > limit)
        throw EffortExhausted(std::string(what) + ": certificate exceeds " + std::to_string(limit) + " terms");
}

} // namespace idemcert

#endif // IDEMCERT_RING_CERTIFICATE_HPP
