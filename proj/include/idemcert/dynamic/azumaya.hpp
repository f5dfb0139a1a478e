#ifndef IDEMCERT_DYNAMIC_AZUMAYA_HPP
#define IDEMCERT_DYNAMIC_AZUMAYA_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <idemcert/dynamic/tree.hpp>
#include <idemcert/freeness/freeness.hpp>
#include <idemcert/ring/comaximal.hpp>

namespace idemcert
{

/// The generic projector over B_n = Z[f11..fnn] / (F^2 - F).
inline ProjectorMat generic_projector(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            names.push_back(n < 10 ? "f" + std::to_string(i) + std::to_string(j)
                                   : "f" + std::to_string(i) + "_" + std::to_string(j));
    RingPresentation base(names, {});
    Mat f(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            f(i, j) = base.var(names[i * n + j]);
    Mat ff = f * f - f;
    std::vector<Poly> rels(ff.data().begin(), ff.data().end());
    RingPresentation pres(names, rels);
    return make_projector(embed(f, pres.context()), pres);
}

/// Leaf of the branching. Along the path, edge e inverts gamma_e / M_e
/// with gamma_e in the root ring and M_e a monomial in gamma_1..gamma_{e-1}
/// (exponents in denom[e]); s_leaf = gamma_1 * ... * gamma_n.
struct AzumayaLeaf
{
    std::size_t node = 0;
    Poly s_leaf;
    std::size_t k = 0; // rank at the leaf
    bool trivial = false;
    ConjugationResult conj;
    std::vector<Poly> gamma;
    std::vector<std::vector<std::uint32_t>> denom;
};

struct AzumayaRun
{
    EvalTree tree;
    std::vector<AzumayaLeaf> leaves;
    ComaximalityData comaximality;
    std::size_t base_params = 0; // parameters of the input presentation
};

/// TreeCollapse folds leaf certificates bottom-up with collapse_al;
/// PathClearing clears each leaf certificate along its path and glues with
/// exact weights. Auto uses TreeCollapse up to n = 2.
enum class GlueStrategy { Auto, TreeCollapse, PathClearing };

struct AzumayaOptions
{
    std::size_t effort = 0; // max certificate terms, 0 = unbounded
    GlueStrategy strategy = GlueStrategy::Auto;
};

namespace detail
{

using ExpVec = std::vector<std::uint32_t>;

/// Clearing along a path: q(u_1..u_d) -> prod gamma^N * q(u_e -> M_e / gamma_e),
/// defined term by term; requires N_e >= deg_{u_e} q.
class PathClearing
{
public:
    PathClearing(const RingPresentation &root, std::vector<Poly> gamma, std::vector<ExpVec> denom)
        : root_(root.context()), gamma_(std::move(gamma)), denom_(std::move(denom)),
          pows_(gamma_.size())
    {
    }

    std::size_t depth() const { return gamma_.size(); }

    /// deg_{u_e} for each path parameter.
    ExpVec degrees(const Poly &q) const
    {
        ExpVec d(depth(), 0);
        const std::size_t r = ctx_size(root_);
        for (const auto &t : q.terms())
            for (std::size_t e = 0; e < depth() && r + e < t.exps.size(); ++e)
                d[e] = std::max(d[e], t.exps[r + e]);
        return d;
    }

    Poly gamma_power(const ExpVec &ex) const
    {
        Poly acc = Poly::constant(1, root_);
        for (std::size_t f = 0; f < ex.size(); ++f)
            if (ex[f])
                acc = acc * pow(f, ex[f]);
        return acc;
    }

    Poly clear(const Poly &q, const ExpVec &n) const
    {
        const std::size_t r = ctx_size(root_);
        std::map<ExpVec, std::vector<Term>> groups;
        for (const auto &t : q.terms()) {
            ExpVec a(depth(), 0);
            for (std::size_t e = 0; e < depth() && r + e < t.exps.size(); ++e)
                a[e] = t.exps[r + e];
            for (std::size_t i = r + depth(); i < t.exps.size(); ++i)
                if (t.exps[i])
                    throw RingError("clearing: polynomial uses parameters beyond the path");
            Term c = t;
            c.exps.resize(r);
            groups[a].push_back(std::move(c));
        }
        Poly acc = Poly::zero_in(root_);
        for (auto &[a, ts] : groups) {
            ExpVec ex(depth(), 0);
            for (std::size_t f = 0; f < depth(); ++f) {
                long v = static_cast<long>(n[f]) - a[f];
                for (std::size_t e = f + 1; e < depth(); ++e)
                    v += static_cast<long>(denom_[e][f]) * a[e];
                if (v < 0)
                    throw RingError("clearing exponent too small");
                ex[f] = static_cast<std::uint32_t>(v);
            }
            acc += Poly::from_terms(root_, std::move(ts)) * gamma_power(ex);
        }
        return acc;
    }

private:
    const Poly &pow(std::size_t f, std::uint32_t e) const
    {
        auto &v = pows_[f];
        if (v.empty())
            v.push_back(Poly::constant(1, root_));
        while (v.size() <= e)
            v.push_back(v.back() * gamma_[f]);
        return v[e];
    }

    ContextPtr root_;
    std::vector<Poly> gamma_;
    std::vector<ExpVec> denom_;
    mutable std::vector<std::vector<Poly>> pows_;
};

/// (x + y)^(a+b-1) = alpha x^a + beta y^b.
inline std::pair<Poly, Poly> binomial_split(const Poly &x, const Poly &y, std::uint32_t a, std::uint32_t b)
{
    const std::uint32_t k = a + b - 1;
    Poly alpha, beta;
    for (std::uint32_t e = 0; e <= k; ++e) {
        if (e >= a)
            alpha += Poly(binomial(k, e)) * x.pow(e - a) * y.pow(k - e);
        else
            beta += Poly(binomial(k, e)) * x.pow(e) * y.pow(k - e - b);
    }
    return {alpha, beta};
}

struct PathState
{
    std::size_t node;
    std::size_t depth;
    InvertibleMat c;
    WMat conj; // lhs C F C^-1, rhs diag(D, Fd)
    Mat fd;
    WMat fd_idem;
    std::vector<int> diag;
    std::vector<Poly> gamma;
    std::vector<ExpVec> denom;
};

inline Mat diag_of(const std::vector<int> &d)
{
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = Poly(d[i]);
    return m;
}

} // namespace detail

/// Exact weights w_L with sum_L w_L prod_e gamma_{L,e}^{k_{L,e}} = 1, built
/// bottom-up from gamma_s + gamma_t = M at every branching.
inline std::vector<Poly> path_weights(const AzumayaRun &run, const std::vector<detail::ExpVec> &k)
{
    using detail::ExpVec;
    std::vector<std::size_t> slot(run.tree.size(), SIZE_MAX);
    for (std::size_t i = 0; i < run.leaves.size(); ++i)
        slot[run.leaves[i].node] = i;
    std::vector<Poly> w(run.leaves.size());
    // returns the leaves below and the exponent vector of the subtree sum
    std::function<std::pair<std::vector<std::size_t>, ExpVec>(std::size_t)> rec =
        [&](std::size_t v) -> std::pair<std::vector<std::size_t>, ExpVec> {
        const auto &nd = run.tree.node(v);
        if (nd.children.empty()) {
            const std::size_t i = slot.at(v);
            w[i] = Poly(1);
            return {{i}, k[i]};
        }
        auto [la, ka] = rec(nd.children[0]);
        auto [lb, kb] = rec(nd.children[1]);
        const std::size_t d = nd.depth;
        const auto &leaf = run.leaves[la.front()];
        const Poly &gs = leaf.gamma[d];
        const Poly &gt = run.leaves[lb.front()].gamma[d];
        const ExpVec &m = leaf.denom[d];
        detail::PathClearing pc(run.tree.root().pres, leaf.gamma, leaf.denom);
        ExpVec kk(d);
        for (std::size_t e = 0; e < d; ++e)
            kk[e] = std::max(ka[e], kb[e]);
        auto scale = [&](const std::vector<std::size_t> &ls, const Poly &c) {
            for (auto i : ls)
                w[i] = w[i] * c;
        };
        auto lift_to = [&](const ExpVec &kc) {
            ExpVec ex(d);
            for (std::size_t e = 0; e < d; ++e)
                ex[e] = kk[e] - kc[e];
            return pc.gamma_power(ex);
        };
        std::vector<std::size_t> all = la;
        all.insert(all.end(), lb.begin(), lb.end());
        const std::uint32_t a = ka[d], b = kb[d];
        if (a == 0 || b == 0) {
            // one side alone already gives a monomial in the shorter path
            bool use_a = a == 0;
            auto &keep = use_a ? la : lb;
            auto &drop = use_a ? lb : la;
            scale(keep, lift_to(use_a ? ka : kb));
            for (auto i : drop)
                w[i] = Poly();
            return {all, kk};
        }
        auto [alpha, beta] = detail::binomial_split(gs, gt, a, b);
        scale(la, alpha * lift_to(ka));
        scale(lb, beta * lift_to(kb));
        for (std::size_t e = 0; e < d; ++e)
            kk[e] += (a + b - 1) * m[e];
        return {all, kk};
    };
    auto [ls, k0] = rec(0);
    return w;
}

/// Recursive conjugation by AL branching on F(0,0) + (1 - F(0,0)) = 1:
/// 2^n leaves, each with C F C^-1 = I_{k,n,n} in its localization, and the
/// leaf elements certified comaximal.
inline AzumayaRun azumaya_run(const ProjectorMat &fp)
{
    const std::size_t n = fp.n();
    const std::size_t base = fp.pres.params().size();
    AzumayaRun run{EvalTree(fp.pres), {}, {}, base};
    std::vector<detail::PathState> stack;
    stack.push_back({0, 0, InvertibleMat::identity(n), lift(fp.f), fp.f, fp.idempotence, {}, {}, {}});
    std::vector<detail::PathState> done;
    // depth-first; children pushed right first so leaves come out left first
    while (!stack.empty()) {
        auto st = std::move(stack.back());
        stack.pop_back();
        if (st.depth == n) {
            done.push_back(std::move(st));
            continue;
        }
        Poly s = st.fd(0, 0);
        detail::PathClearing pc(fp.pres, st.gamma, st.denom);
        auto m = pc.degrees(s);
        std::array<Poly, 2> g{pc.clear(s, m), pc.clear(Poly(1) - s, m)};
        if (g[0] + g[1] != pc.gamma_power(m))
            throw CertificateError("cleared branch elements do not sum to their denominator");
        run.tree = run.tree.branch(st.node, BranchEvent::al_complement(s));
        const auto kids = run.tree.node(st.node).children;
        std::vector<detail::PathState> next;
        for (std::size_t b = 0; b < 2; ++b) {
            const auto &cp = run.tree.node(kids[b]).pres;
            auto step = azumaya_step(st.fd, st.fd_idem, b == 0 ? AzumayaBranch::First : AzumayaBranch::Second, cp,
                                     cp.params().size() - 1);
            InvertibleMat e = step.c.shifted(st.depth);
            WMat moved = lift(e.m) * st.conj * lift(e.inv);
            WMat conj = chain(moved, WMat::block_diag(lift(detail::diag_of(st.diag)), step.conj));
            auto d = st.diag;
            d.push_back(step.b);
            auto gam = st.gamma;
            gam.push_back(g[b]);
            auto den = st.denom;
            den.push_back(m);
            next.push_back({kids[b], st.depth + 1, st.c.then(e), std::move(conj), step.f1, step.f1_idempotence, d,
                            std::move(gam), std::move(den)});
        }
        stack.push_back(std::move(next[1]));
        stack.push_back(std::move(next[0]));
    }

    for (auto &st : done) {
        const auto &lp = run.tree.node(st.node).pres;
        // permute ones to the front
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < n; ++i)
            if (st.diag[i] == 1)
                order.push_back(i);
        const std::size_t k = order.size();
        for (std::size_t i = 0; i < n; ++i)
            if (st.diag[i] != 1)
                order.push_back(i);
        auto perm = InvertibleMat::permutation(order);
        ConjugationResult cr{k, lp, st.c.then(perm), lift(perm.m) * st.conj * lift(perm.inv)};
        Poly s_leaf = Poly::constant(1, fp.pres.context());
        for (const auto &g : st.gamma)
            s_leaf = s_leaf * g;
        run.leaves.push_back({st.node, s_leaf, k, s_leaf.is_zero(), std::move(cr), st.gamma, st.denom});
    }

    ComaximalityData cd;
    for (const auto &l : run.leaves)
        cd.s.push_back(l.s_leaf);
    cd.c = path_weights(run, std::vector<detail::ExpVec>(run.leaves.size(), detail::ExpVec(n, 1)));
    cd.cert = MembershipCertificate{cd.combination() - Poly(1), {}};
    if (!cd.verify(fp.pres))
        throw CertificateError("comaximality weights do not combine to 1");
    run.comaximality = std::move(cd);
    return run;
}

/// Per-leaf rank witnesses: r_h(F) = delta_{h,k} in the leaf ring.
struct LeafRankWitness
{
    std::vector<EqualityWitness> r;
    std::vector<EqualityWitness> e; // e_j(F) = C(k, j)
};

/// e_j(F) = e_j(F C^-1 C), equal as polynomials to e_j(C F C^-1) = e_j(I_k).
inline LeafRankWitness leaf_rank_witness(const ProjectorMat &fp, const AzumayaLeaf &leaf, std::size_t effort = 0)
{
    const auto &c = leaf.conj.c;
    // the minor sums multiply entry certificates by up to n - 1 entries
    std::size_t conj_terms = 0;
    for (const auto &w : leaf.conj.conj.data())
        conj_terms += w.cert().term_count();
    if (effort != 0 && conj_terms * fp.n() > effort)
        throw EffortExhausted("leaf " + std::to_string(leaf.node) + ": conjugation certificate has " +
                              std::to_string(conj_terms) + " terms");
    auto we = diagonal_minor_sums(lift(fp.f) * flipped(c.inv_m));
    auto wc = diagonal_minor_sums(leaf.conj.conj);
    for (std::size_t j = 0; j < we.size(); ++j)
        we[j] = we[j].then(wc[j]);
    LeafRankWitness out{rank_coefficients_from_sums(we), we};
    for (const auto &r : out.r)
        check_effort(r.cert(), effort, "leaf rank witness");
    return out;
}

/// At a rank-k leaf, a (k+1)-minor of F is zero: F = C^-1 C F C^-1 C and
/// Cauchy-Binet expands the minor over minors of C F C^-1 = I_k.
inline EqualityWitness leaf_minor_witness(const ProjectorMat &fp, const AzumayaLeaf &leaf,
                                          const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols)
{
    const auto &c = leaf.conj.c;
    const std::size_t n = fp.n(), m = rows.size();
    if (m <= leaf.k)
        throw RingError("minor order must exceed the leaf rank");
    auto w1 = minor(flipped(c.inv_m * lift(fp.f) * c.inv_m), rows, cols);
    EqualityWitness w2(0);
    auto sets = subsets(n, m);
    for (const auto &t : sets) {
        Poly a = minor(c.inv, rows, t);
        if (a.is_zero())
            continue;
        for (const auto &u : sets) {
            Poly b = minor(c.m, u, cols);
            if (b.is_zero())
                continue;
            w2 += EqualityWitness(a) * minor(leaf.conj.conj, t, u) * EqualityWitness(b);
        }
    }
    return w1.then(w2.with_lhs(w1.rhs()));
}

using LeafGoalFn = std::function<EqualityWitness(const AzumayaLeaf &, const LeafRankWitness &)>;

/// Clears a leaf certificate for goal = sum c_j r_j along the path:
/// goal * prod gamma^N = sum clear(c_j) r_j over the root relations, the
/// path inverse relations clearing to zero.
inline std::pair<detail::ExpVec, CertVec> clear_leaf_certificate(const AzumayaRun &run, const AzumayaLeaf &leaf,
                                                                 const RingPresentation &lp, const Poly &goal,
                                                                 const CertVec &cert)
{
    const auto &root = run.tree.root().pres;
    detail::PathClearing pc(root, leaf.gamma, leaf.denom);
    auto n = pc.degrees(goal);
    auto terms = cert.terms();
    for (const auto &[ref, c] : terms) {
        Poly rel = ref.kind == RelationRef::Kind::Eq0 ? lp.eq0().at(ref.index) : lp.params().at(ref.index).relation;
        auto dc = pc.degrees(c), dr = pc.degrees(rel);
        for (std::size_t e = 0; e < n.size(); ++e)
            n[e] = std::max(n[e], dc[e] + dr[e]);
    }
    CertVec out;
    for (const auto &[ref, c] : terms) {
        if (ref.kind == RelationRef::Kind::Param && ref.index >= run.base_params)
            continue;
        out.slot(ref) = pc.clear(c, n);
    }
    return {n, out};
}

/// Leaf witnesses goal = 0 glued into a root membership certificate.
inline MembershipCertificate prove_on_leaves(const ProjectorMat &fp, const AzumayaRun &run,
                                             const std::vector<LeafRankWitness> &rank, const Poly &goal,
                                             const LeafGoalFn &leaf_goal, const AzumayaOptions &opts = {})
{
    std::vector<std::size_t> slot(run.tree.size(), 0);
    for (std::size_t i = 0; i < run.leaves.size(); ++i)
        slot[run.leaves[i].node] = i;
    auto leaf_cert = [&](std::size_t i) {
        const auto &lp = run.tree.node(run.leaves[i].node).pres;
        auto w = leaf_goal(run.leaves[i], rank[i]);
        if (w.lhs() != goal || !w.rhs().is_zero())
            throw CertificateError("leaf witness does not prove the goal at node " +
                                   std::to_string(run.leaves[i].node));
        if (!w.verify(lp))
            throw CertificateError("leaf witness does not verify at node " + std::to_string(run.leaves[i].node));
        check_effort(w.cert(), opts.effort, "leaf certificate");
        return w.cert();
    };
    GlueStrategy strategy = opts.strategy;
    if (strategy == GlueStrategy::Auto)
        strategy = fp.n() <= 2 ? GlueStrategy::TreeCollapse : GlueStrategy::PathClearing;
    MembershipCertificate cert;
    if (strategy == GlueStrategy::TreeCollapse) {
        cert = collapse_tree_membership(
            run.tree, goal,
            [&](std::size_t node, const RingPresentation &) {
                return MembershipCertificate{goal, leaf_cert(slot[node])};
            },
            opts.effort);
    } else {
        std::vector<detail::ExpVec> ks;
        std::vector<CertVec> cleared;
        for (std::size_t i = 0; i < run.leaves.size(); ++i) {
            const auto &lp = run.tree.node(run.leaves[i].node).pres;
            auto [k, c] = clear_leaf_certificate(run, run.leaves[i], lp, goal, leaf_cert(i));
            check_effort(c, opts.effort, "leaf clearing");
            ks.push_back(std::move(k));
            cleared.push_back(std::move(c));
        }
        auto w = path_weights(run, ks);
        CertVec total;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!w[i].is_zero())
                total += cleared[i].scaled(w[i]);
        check_effort(total, opts.effort, "path gluing");
        cert = MembershipCertificate{goal, total};
    }
    if (!verify_membership(cert, fp.pres))
        throw CertificateError("glued certificate does not verify");
    return cert;
}

struct OrthogonalityCert
{
    std::size_t h = 0, k = 0;
    MembershipCertificate cert; // target r_h r_k
};

struct MinorCert
{
    std::size_t k = 0;
    std::vector<std::size_t> rows, cols;
    MembershipCertificate cert; // target r_k * minor
};

inline std::vector<LeafRankWitness> leaf_rank_witnesses(const ProjectorMat &fp, const AzumayaRun &run,
                                                        std::size_t effort = 0)
{
    std::vector<LeafRankWitness> out;
    for (const auto &l : run.leaves)
        out.push_back(leaf_rank_witness(fp, l, effort));
    return out;
}

/// r_h r_k in the ideal for every pair h < k.
inline std::vector<OrthogonalityCert> prove_orthogonality_all(const ProjectorMat &fp, const AzumayaRun &run,
                                                              const AzumayaOptions &opts = {})
{
    auto rank = leaf_rank_witnesses(fp, run, opts.effort);
    auto r = rank_coefficients(fp.f);
    std::vector<OrthogonalityCert> out;
    for (std::size_t h = 0; h < r.size(); ++h)
        for (std::size_t k = h + 1; k < r.size(); ++k) {
            auto cert = prove_on_leaves(
                fp, run, rank, r[h] * r[k],
                [&](const AzumayaLeaf &, const LeafRankWitness &lw) { return lw.r[h] * lw.r[k]; }, opts);
            out.push_back({h, k, std::move(cert)});
        }
    return out;
}

inline MembershipCertificate prove_orthogonality(const ProjectorMat &fp, std::size_t h, std::size_t k,
                                                 const AzumayaOptions &opts = {})
{
    if (h == k || h > fp.n() || k > fp.n())
        throw RingError("orthogonality needs distinct indices in 0..n");
    auto run = azumaya_run(fp);
    auto rank = leaf_rank_witnesses(fp, run, opts.effort);
    auto r = rank_coefficients(fp.f);
    return prove_on_leaves(
        fp, run, rank, r[h] * r[k],
        [&](const AzumayaLeaf &, const LeafRankWitness &lw) { return lw.r[h] * lw.r[k]; }, opts);
}

/// r_k times every (k+1)-minor of F, for k = 0..n-1.
inline std::vector<MinorCert> prove_minor_annihilation(const ProjectorMat &fp, const AzumayaRun &run,
                                                       const AzumayaOptions &opts = {})
{
    auto rank = leaf_rank_witnesses(fp, run, opts.effort);
    auto r = rank_coefficients(fp.f);
    const std::size_t n = fp.n();
    std::vector<MinorCert> out;
    for (std::size_t k = 0; k < n; ++k)
        for (const auto &rows : subsets(n, k + 1))
            for (const auto &cols : subsets(n, k + 1)) {
                Poly m = minor(fp.f, rows, cols);
                auto leaf_goal = [&](const AzumayaLeaf &leaf, const LeafRankWitness &lw) {
                    EqualityWitness mw = leaf.k == k ? leaf_minor_witness(fp, leaf, rows, cols) : EqualityWitness(m);
                    return lw.r[k] * mw;
                };
                auto cert = prove_on_leaves(fp, run, rank, r[k] * m, leaf_goal, opts);
                out.push_back({k, rows, cols, std::move(cert)});
            }
    return out;
}

} // namespace idemcert

#endif // IDEMCERT_DYNAMIC_AZUMAYA_HPP
