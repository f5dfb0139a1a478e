#ifndef IDEMCERT_PROJECTOR_ANALYSIS_HPP
#define IDEMCERT_PROJECTOR_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include <idemcert/dynamic/azumaya.hpp>
#include <idemcert/freeness/freeness.hpp>
#include <idemcert/ring/fact.hpp>

namespace idemcert
{

/// How a certificate was obtained.
enum class CertOrigin { Exact, Relation, Dynamic };

inline const char *to_string(CertOrigin o)
{
    switch (o) {
    case CertOrigin::Exact: return "exact";
    case CertOrigin::Relation: return "relation";
    case CertOrigin::Dynamic: return "dynamic";
    }
    return "?";
}

/// Certificates for elements that vanish in the presented ring. Tries the
/// exact identity, then a multiple of one relation, then the Azumaya
/// pipeline, which is built on first use and shared by later goals.
class CertificateSource
{
public:
    CertificateSource(const ProjectorMat &fp, AzumayaOptions opts = {}) : fp_(fp), opts_(opts) {}

    std::optional<std::pair<MembershipCertificate, CertOrigin>> direct(const Poly &goal) const
    {
        if (goal.is_zero())
            return std::make_pair(MembershipCertificate{goal, {}}, CertOrigin::Exact);
        const std::size_t ne = fp_.pres.eq0().size();
        auto gens = fp_.pres.ideal_generators();
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (auto c = detail::integer_multiple(goal, gens[g])) {
                RelationRef ref = g < ne ? RelationRef{RelationRef::Kind::Eq0, g}
                                         : RelationRef{RelationRef::Kind::Param, g - ne};
                return std::make_pair(MembershipCertificate{goal, CertVec::single(ref, Poly(*c))},
                                      CertOrigin::Relation);
            }
        return std::nullopt;
    }

    std::pair<MembershipCertificate, CertOrigin> prove(const Poly &goal, const LeafGoalFn &leaf_goal)
    {
        if (auto d = direct(goal))
            return *d;
        if (!run_) {
            run_ = azumaya_run(fp_);
            rank_ = leaf_rank_witnesses(fp_, *run_, opts_.effort);
        }
        return {prove_on_leaves(fp_, *run_, rank_, goal, leaf_goal, opts_), CertOrigin::Dynamic};
    }

    const ProjectorMat &projector() const noexcept { return fp_; }
    const AzumayaOptions &options() const noexcept { return opts_; }

private:
    const ProjectorMat &fp_;
    AzumayaOptions opts_;
    std::optional<AzumayaRun> run_;
    std::vector<LeafRankWitness> rank_;
};

struct PairCertificate
{
    std::size_t h = 0, k = 0;
    MembershipCertificate cert; // target r_h r_k
    CertOrigin origin = CertOrigin::Exact;
};

/// r_0..r_n with r_h r_k = 0 for h < k and sum r = 1.
struct IdempotentSystem
{
    std::vector<Poly> r;
    std::vector<PairCertificate> orthogonality;
    MembershipCertificate unit_sum; // target sum r - 1

    bool verify(const RingPresentation &pres) const
    {
        Poly sum;
        for (const auto &x : r)
            sum += x;
        if (unit_sum.target != sum - Poly(1) || !verify_membership(unit_sum, pres))
            return false;
        if (orthogonality.size() != r.size() * (r.size() - 1) / 2)
            return false;
        for (const auto &c : orthogonality)
            if (c.cert.target != r.at(c.h) * r.at(c.k) || !verify_membership(c.cert, pres))
                return false;
        return true;
    }
};

inline IdempotentSystem fundamental_idempotents(const ProjectorMat &fp, CertificateSource &src)
{
    IdempotentSystem ids;
    ids.r = rank_coefficients(fp.f);
    Poly sum;
    for (const auto &x : ids.r)
        sum += x;
    // R(1) = det(I) = 1 as polynomials
    ids.unit_sum = MembershipCertificate{sum - Poly(1), {}};
    for (std::size_t h = 0; h < ids.r.size(); ++h)
        for (std::size_t k = h + 1; k < ids.r.size(); ++k) {
            auto [cert, origin] = src.prove(ids.r[h] * ids.r[k], [h, k](const AzumayaLeaf &, const LeafRankWitness &lw) {
                return lw.r[h] * lw.r[k];
            });
            ids.orthogonality.push_back({h, k, std::move(cert), origin});
        }
    if (!ids.verify(fp.pres))
        throw CertificateError("idempotent system does not verify");
    return ids;
}

inline IdempotentSystem fundamental_idempotents(const ProjectorMat &fp, const AzumayaOptions &opts = {})
{
    CertificateSource src(fp, opts);
    return fundamental_idempotents(fp, src);
}

struct ComaximalEntry
{
    std::size_t k = 0;
    std::vector<std::size_t> index; // rows = cols of the diagonal minor
    Poly t;                         // the minor
    Poly s;                         // r_k * t
};

struct RankSum
{
    std::size_t k = 0;
    MembershipCertificate cert; // target sum_i s_{k,i} - r_k
    CertOrigin origin = CertOrigin::Exact;
};

/// s_{k,i} = r_k t_{k,i} over the ranks with r_k != 0.
struct ComaximalFamily
{
    std::vector<ComaximalEntry> entries;
    std::vector<RankSum> rank_sums;
    MembershipCertificate total; // target sum s - 1

    ComaximalityData data() const
    {
        ComaximalityData d;
        for (const auto &e : entries) {
            d.s.push_back(e.s);
            d.c.push_back(Poly(1));
        }
        d.cert = total;
        return d;
    }

    bool verify(const RingPresentation &pres, const IdempotentSystem &ids) const
    {
        Poly all;
        for (const auto &rs : rank_sums) {
            Poly sum;
            for (const auto &e : entries)
                if (e.k == rs.k)
                    sum += e.s;
            if (rs.cert.target != sum - ids.r.at(rs.k) || !verify_membership(rs.cert, pres))
                return false;
        }
        for (const auto &e : entries) {
            if (e.s != ids.r.at(e.k) * e.t)
                return false;
            all += e.s;
        }
        return total.target == all - Poly(1) && verify_membership(total, pres);
    }
};

inline ComaximalFamily comaximal_family(const ProjectorMat &fp, const IdempotentSystem &ids, CertificateSource &src)
{
    const std::size_t n = fp.n();
    ComaximalFamily fam;
    CertVec total = ids.unit_sum.coeffs;
    for (std::size_t k = 0; k <= n; ++k) {
        if (ids.r[k].is_zero())
            continue;
        Poly sum;
        for (auto &idx : subsets(n, k)) {
            Poly t = minor(fp.f, idx, idx);
            Poly s = ids.r[k] * t;
            sum += s;
            fam.entries.push_back({k, std::move(idx), std::move(t), std::move(s)});
        }
        auto [cert, origin] = src.prove(sum - ids.r[k], [k](const AzumayaLeaf &, const LeafRankWitness &lw) {
            return lw.r[k] * (lw.e[k] - EqualityWitness(1));
        });
        total += cert.coeffs;
        fam.rank_sums.push_back({k, std::move(cert), origin});
    }
    Poly all;
    for (const auto &e : fam.entries)
        all += e.s;
    fam.total = MembershipCertificate{all - Poly(1), total};
    if (!fam.verify(fp.pres, ids))
        throw CertificateError("comaximal family does not verify");
    return fam;
}

struct MinorAnnihilation
{
    std::size_t k = 0;
    std::vector<std::size_t> rows, cols;
    MembershipCertificate cert; // target r_k * minor
    CertOrigin origin = CertOrigin::Exact;
};

/// r_k times every (k+1)-minor of F, rows and columns in lexicographic order.
inline std::vector<MinorAnnihilation> minor_annihilation(const ProjectorMat &fp, const IdempotentSystem &ids,
                                                         std::size_t k, CertificateSource &src)
{
    const std::size_t n = fp.n();
    if (k >= n)
        throw RingError("minor_annihilation needs k < n");
    std::vector<MinorAnnihilation> out;
    for (const auto &rows : subsets(n, k + 1))
        for (const auto &cols : subsets(n, k + 1)) {
            Poly m = minor(fp.f, rows, cols);
            auto [cert, origin] = src.prove(ids.r[k] * m, [&](const AzumayaLeaf &leaf, const LeafRankWitness &lw) {
                EqualityWitness mw = leaf.k == k ? leaf_minor_witness(fp, leaf, rows, cols) : EqualityWitness(m);
                return lw.r[k] * mw;
            });
            if (!verify_membership(cert, fp.pres))
                throw CertificateError("minor certificate does not verify");
            out.push_back({k, rows, cols, std::move(cert), origin});
        }
    return out;
}

enum class Verdict { True, False, Unknown };

inline const char *to_string(Verdict v)
{
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

enum class RankMode { Exact, DynamicNilpotent };

struct ConstantRankResult
{
    Verdict verdict = Verdict::Unknown;
    std::vector<FactCertificate> nilpotence; // Rnul(r_h) for h != k, dynamic mode
    std::optional<std::size_t> refuted;      // an h whose r_h is provably not nilpotent
};

/// Rnul(t) with u = 1, j = 0: t^m + i = 0 for the first m <= max_exp found.
inline std::optional<FactCertificate> nilpotence_fact(const Poly &t, const RingPresentation &pres, unsigned max_exp,
                                                      const SearchBounds &bounds = {})
{
    if (t.is_zero())
        return FactCertificate::rnul(t, 1, UnitProduct::one(), pres, JiPart::of_eq0({}));
    Poly tm = t;
    for (unsigned m = 1; m <= max_exp; ++m, tm *= t)
        if (auto c = certify_member(tm, pres, bounds)) {
            auto f = FactCertificate::rnul(t, m, UnitProduct::one(), pres, JiPart::of_eq0(-c->coeffs));
            if (fact_check(f, pres))
                return f;
        }
    return std::nullopt;
}

/// Exact: det(XI - F) = (X - 1)^k X^(n-k). Dynamic: every r_h with h != k
/// has a certified nilpotence fact; a mod-p point refutes.
inline ConstantRankResult constant_rank_check(const ProjectorMat &fp, std::size_t k, RankMode mode,
                                              unsigned max_exp = 8, const SearchBounds &bounds = {})
{
    const std::size_t n = fp.n();
    if (k > n)
        throw RingError("rank out of range");
    ConstantRankResult res;
    if (mode == RankMode::Exact) {
        auto x = fp.pres.fresh_name("X");
        Poly cp = charpoly_div_free(fp.f, x);
        Poly xv = Poly::variable(cp.context(), x);
        res.verdict = cp == (xv - 1).pow(k) * xv.pow(n - k) ? Verdict::True : Verdict::False;
        return res;
    }
    auto r = rank_coefficients(fp.f);
    const auto gens = fp.pres.ideal_generators();
    const std::size_t nvars = detail::ctx_size(fp.pres.context());
    bool unknown = false;
    for (std::size_t h = 0; h <= n; ++h) {
        if (h == k)
            continue;
        if (auto f = nilpotence_fact(r[h], fp.pres, max_exp, bounds)) {
            res.nilpotence.push_back(std::move(*f));
            continue;
        }
        if (refute_nilpotent(gens, r[h], nvars)) {
            res.refuted = h;
            res.verdict = Verdict::False;
            return res;
        }
        unknown = true;
    }
    res.verdict = unknown ? Verdict::Unknown : Verdict::True;
    return res;
}

/// det(XI - F) = sum_i r_i X^(n-i) (X - 1)^i, a polynomial identity.
inline bool rank_basis_check(const ProjectorMat &fp)
{
    const std::size_t n = fp.n();
    auto x = fp.pres.fresh_name("X");
    Poly cp = charpoly_div_free(fp.f, x);
    Poly xv = Poly::variable(cp.context(), x);
    auto r = rank_coefficients(fp.f);
    Poly acc = Poly::zero_in(cp.context());
    for (std::size_t i = 0; i <= n; ++i)
        acc += r[i] * xv.pow(n - i) * (xv - 1).pow(i);
    return acc == cp;
}

struct LocalizationRank
{
    std::size_t h = 0;
    unsigned m = 0;
    MembershipCertificate cert; // target r_h s^m - s^m
};

/// Smallest m <= max_exp, then smallest h, with r_h s^m = s^m certified.
inline std::optional<LocalizationRank> localization_rank(const ProjectorMat &fp, const IdempotentSystem &ids,
                                                         const Poly &s, unsigned max_exp,
                                                         const SearchBounds &bounds = {})
{
    if (max_exp < 1)
        throw RingError("max exponent must be at least 1");
    Poly sm = s;
    for (unsigned m = 1; m <= max_exp; ++m, sm *= s)
        for (std::size_t h = 0; h < ids.r.size(); ++h)
            if (auto c = certify_member(ids.r[h] * sm - sm, fp.pres, bounds))
                return LocalizationRank{h, m, std::move(*c)};
    return std::nullopt;
}

/// F over A_s, s = r_k t_{k,i} inverted by a fresh sigma, is equivalent to
/// I_{k,n,n}; the pivot t_{k,i} has inverse sigma r_k. `minors` are the
/// certificates r_k t' = 0 for the (k+1)-minors t'.
inline FreenessResult localization_basis(const ProjectorMat &fp, const IdempotentSystem &ids,
                                         const ComaximalEntry &entry, const std::vector<MinorAnnihilation> &minors)
{
    auto name = fp.pres.fresh_name("sigma");
    auto ext = fp.pres.with_inverse(name, entry.s);
    const Poly sigma = ext.var(name);
    const auto inv = EqualityWitness::param_inverse(ext, ext.params().size() - 1); // sigma s = 1
    const Poly delta = sigma * ids.r[entry.k];
    auto pivot = inv.with_lhs(entry.t * delta);
    std::vector<MinorWitness> mws;
    for (const auto &m : minors) {
        if (m.k != entry.k)
            continue;
        Poly t = minor(fp.f, m.rows, m.cols);
        // t = t sigma s = sigma t_{k,i} (r_k t) = 0
        auto w = (EqualityWitness(t) * inv.flipped()).then(
            (EqualityWitness(sigma * entry.t) * EqualityWitness(ids.r[entry.k] * t, Poly(0), m.cert.coeffs))
                .with_lhs(t * sigma * entry.s));
        mws.push_back({m.rows, m.cols, w.with_lhs(t)});
    }
    return freeness_reduce(fp.f, entry.k, entry.index, entry.index, delta, pivot, ext, mws);
}

} // namespace idemcert

#endif // IDEMCERT_PROJECTOR_ANALYSIS_HPP
