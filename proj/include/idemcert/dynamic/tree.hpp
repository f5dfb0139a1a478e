#ifndef IDEMCERT_DYNAMIC_TREE_HPP
#define IDEMCERT_DYNAMIC_TREE_HPP

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <idemcert/dynamic/axioms.hpp>

namespace idemcert
{

enum class EventKind { AL, ALMI2, ALMI1 };

inline const char *to_string(EventKind k)
{
    switch (k) {
    case EventKind::AL: return "AL";
    case EventKind::ALMI2: return "ALMI2";
    case EventKind::ALMI1: return "ALMI1";
    }
    return "?";
}

/// AL(s, t) needs s + t - 1 in the ideal; ALMI2(t) is unconditional;
/// ALMI1(x) needs Unit(x).
struct BranchEvent
{
    EventKind kind = EventKind::AL;
    Poly s, t;
    MembershipCertificate st_cert;
    FactCertificate unit_fact;

    static BranchEvent al(Poly s, Poly t, MembershipCertificate cert)
    {
        return {EventKind::AL, std::move(s), std::move(t), std::move(cert), {}};
    }
    /// AL on s + (1 - s) = 1, certified by the empty combination.
    static BranchEvent al_complement(const Poly &s) { return al(s, Poly(1) - s, MembershipCertificate{Poly(), {}}); }
    static BranchEvent almi2(Poly t) { return {EventKind::ALMI2, t, t, {}, {}}; }
    static BranchEvent almi1(Poly x, FactCertificate unit_x)
    {
        return {EventKind::ALMI1, x, x, {}, std::move(unit_x)};
    }

    std::string describe() const
    {
        switch (kind) {
        case EventKind::AL: return "AL(" + s.to_string() + ", " + t.to_string() + ")";
        case EventKind::ALMI2: return "ALMI2(" + t.to_string() + ")";
        case EventKind::ALMI1: return "ALMI1(" + s.to_string() + ")";
        }
        return "?";
    }
};

struct EvalNode
{
    RingPresentation pres;
    std::optional<BranchEvent> event;
    std::vector<std::size_t> children;
    std::optional<std::size_t> parent;
    std::size_t depth = 0;
};

/// Finite record of a dynamic evaluation. Nodes are stored in creation order;
/// children of a node are listed left first.
class EvalTree
{
public:
    explicit EvalTree(RingPresentation root) { nodes_.push_back(EvalNode{std::move(root), {}, {}, {}, 0}); }

    std::size_t size() const noexcept { return nodes_.size(); }
    const EvalNode &node(std::size_t i) const { return nodes_.at(i); }
    const EvalNode &root() const { return nodes_.front(); }
    bool is_leaf(std::size_t i) const { return nodes_.at(i).children.empty(); }

    /// Leaves in left-first depth-first order.
    std::vector<std::size_t> leaves() const
    {
        std::vector<std::size_t> out;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (nodes_[i].children.empty())
                out.push_back(i);
            for (auto c : nodes_[i].children)
                rec(c);
        };
        rec(0);
        return out;
    }

    /// Opens the branching at leaf `at`. Returns the extended tree.
    EvalTree branch(std::size_t at, const BranchEvent &ev) const
    {
        if (!is_leaf(at))
            throw RingError("branching is only allowed at a leaf");
        const RingPresentation &pres = nodes_[at].pres;
        std::vector<RingPresentation> kids;
        switch (ev.kind) {
        case EventKind::AL: {
            if (ev.st_cert.target != ev.s + ev.t - Poly(1) || !verify_membership(ev.st_cert, pres))
                throw RingError("AL trigger s + t = 1 does not verify");
            auto name = pres.fresh_name("u");
            kids.push_back(pres.with_inverse(name, ev.s));
            kids.push_back(pres.with_inverse(name, ev.t));
            break;
        }
        case EventKind::ALMI2:
            kids.push_back(pres.with_unit(ev.t));
            kids.push_back(pres.with_rnul(ev.t));
            break;
        case EventKind::ALMI1: {
            if (ev.unit_fact.kind != FactKind::Unit || ev.unit_fact.target != ev.s || !fact_check(ev.unit_fact, pres))
                throw RingError("ALMI1 trigger Unit(x) does not verify");
            kids.push_back(pres.with_inverse(pres.fresh_name("u"), ev.s));
            break;
        }
        }
        EvalTree out = *this;
        out.nodes_[at].event = ev;
        for (auto &k : kids) {
            out.nodes_[at].children.push_back(out.nodes_.size());
            out.nodes_.push_back(EvalNode{std::move(k), {}, {}, at, nodes_[at].depth + 1});
        }
        return out;
    }

    /// Same tree with equations appended to every node's eq0 list.
    EvalTree with_extra_eq0(const std::vector<Poly> &extra) const
    {
        EvalTree out = *this;
        for (auto &n : out.nodes_)
            n.pres = n.pres.with_extra_eq0(extra);
        return out;
    }

    /// Indented text dump, one node per line.
    std::string dump() const
    {
        std::ostringstream os;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            const auto &n = nodes_[i];
            os << std::string(2 * n.depth, ' ') << "node " << i;
            if (n.event)
                os << " " << n.event->describe();
            else
                os << " leaf";
            if (!n.pres.params().empty()) {
                const auto &p = n.pres.params().back();
                os << " [" << p.name << ": " << p.relation.to_string() << "]";
            }
            os << "\n";
            for (auto c : n.children)
                rec(c);
        };
        rec(0);
        return os.str();
    }

private:
    std::vector<EvalNode> nodes_;
};

namespace detail
{

inline std::vector<Poly> coeffs_in_any(const Poly &p, const std::string &name)
{
    if (!p.context() || !p.context()->contains(name))
        return {p};
    return p.coeffs_in(name);
}

inline Poly to_parent(const Poly &p, const RingPresentation &parent)
{
    if (p.nvars() <= ctx_size(parent.context()))
        return p.embed(parent.context());
    return p.restrict_to(parent.context());
}

/// Relation u*s - 1 of a parameter; returns s (zero when u*0 - 1 collapsed).
inline Poly inverted_by(const Param &par)
{
    auto c = coeffs_in_any(par.relation, par.name);
    if (c.size() > 2 || c[0] != Poly(-1))
        throw RingError("parameter " + par.name + " is not an inverse");
    return c.size() == 2 ? c[1] : Poly();
}

/// Relation u*s - 1 of the last parameter; returns s.
inline Poly inverted_element(const RingPresentation &child)
{
    if (child.params().empty())
        throw RingError("no parameter to eliminate");
    return inverted_by(child.params().back());
}

} // namespace detail

/// s^N U p + j p + i = 0 over the parent, from an Eq0 fact in the child that
/// inverts s (the Rabinowitsch reversal a(u) -> sum a_k s^(N-k)).
struct ClearedFact
{
    std::uint32_t n = 0;
    Poly s;
    UnitProduct unit;
    Poly unit_value;
    JiPart ji;

    Poly residual(const Poly &p, const RingPresentation &parent) const
    {
        return s.pow(n) * unit_value * p + ji.j_value(parent) * p + ji.i_value(parent);
    }
};

inline ClearedFact rabinowitsch_clear_fact(const FactCertificate &f, const RingPresentation &child,
                                           const RingPresentation &parent)
{
    if (f.kind != FactKind::Eq0)
        throw RingError("Rabinowitsch clearing needs an Eq0 fact");
    if (!parent.is_prefix_of(child) || child.params().size() != parent.params().size() + 1 ||
        child.rnul().size() != parent.rnul().size() || child.unit().size() != parent.unit().size())
        throw RingError("child presentation does not add exactly one parameter");
    if (!fact_check(f, child))
        throw CertificateError("child certificate does not verify");
    const Poly s = detail::to_parent(detail::inverted_element(child), parent);
    const std::string u = child.params().back().name;
    const std::size_t last = parent.params().size();
    if (f.target.degree_in(std::string_view(u)) > 0)
        throw RingError("goal mentions the parameter being eliminated");
    const Poly p = detail::to_parent(f.target, parent);

    ClearedFact out;
    out.s = s;
    out.unit = f.unit_part;
    out.unit_value = detail::to_parent(f.unit_value, parent);
    if (s.is_zero()) {
        out.n = 1;
        out.unit = UnitProduct::one();
        out.unit_value = Poly::constant(1, parent.context());
        return out;
    }
    // gather coefficients, dropping the slot of the eliminated relation
    std::vector<std::vector<Poly>> split_rnul;
    for (const auto &c : f.ji.rnul)
        split_rnul.push_back(detail::coeffs_in_any(c, u));
    std::vector<std::pair<RelationRef, std::vector<Poly>>> split_eq;
    for (const auto &[ref, c] : f.ji.eq0.terms()) {
        if (ref.kind == RelationRef::Kind::Param && ref.index == last)
            continue;
        split_eq.emplace_back(ref, detail::coeffs_in_any(c, u));
    }
    std::size_t n = 0;
    for (const auto &v : split_rnul)
        n = std::max(n, v.size() - 1);
    for (const auto &[r, v] : split_eq)
        n = std::max(n, v.size() - 1);
    std::vector<Poly> spow{Poly::constant(1, parent.context())};
    for (std::size_t k = 1; k <= n; ++k)
        spow.push_back(spow.back() * s);
    auto rev = [&](const std::vector<Poly> &a) {
        Poly acc = Poly::zero_in(parent.context());
        for (std::size_t k = 0; k < a.size(); ++k)
            if (!a[k].is_zero())
                acc += detail::to_parent(a[k], parent) * spow[n - k];
        return acc;
    };
    out.n = static_cast<std::uint32_t>(n);
    for (const auto &v : split_rnul)
        out.ji.rnul.push_back(rev(v));
    for (const auto &[r, v] : split_eq)
        out.ji.eq0.slot(r) = rev(v);
    if (!out.residual(p, parent).is_zero())
        throw CertificateError("Rabinowitsch reversal produced a non-verifying identity");
    return out;
}

/// Membership form: s^N p in the parent ideal.
inline std::pair<std::uint32_t, MembershipCertificate> rabinowitsch_clear(const MembershipCertificate &cert,
                                                                          const RingPresentation &child,
                                                                          const RingPresentation &parent)
{
    auto cf = rabinowitsch_clear_fact(FactCertificate::from_membership(cert, child), child, parent);
    Poly p = detail::to_parent(cert.target, parent);
    return {cf.n, MembershipCertificate{cf.s.pow(cf.n) * p, -cf.ji.eq0}};
}

namespace detail
{

inline void effort_guard(const FactCertificate &f, std::size_t limit, const char *what)
{
    if (limit != 0 && f.ji.term_count() > limit)
        throw EffortExhausted(std::string(what) + ": certificate exceeds " + std::to_string(limit) + " terms");
}

} // namespace detail

/// Glues the two AL branches for goal p into an Eq0 fact over the parent:
/// (s + t)^(N+M) = A s^N + B t^M, split by the s exponent.
inline FactCertificate collapse_al_fact(const Poly &p, const BranchEvent &ev, const RingPresentation &parent,
                                        const RingPresentation &child1, const FactCertificate &f1,
                                        const RingPresentation &child2, const FactCertificate &f2,
                                        std::size_t effort = 0)
{
    if (ev.kind != EventKind::AL)
        throw RingError("collapse_al needs an AL event");
    auto c1 = rabinowitsch_clear_fact(f1, child1, parent);
    auto c2 = rabinowitsch_clear_fact(f2, child2, parent);
    const Poly &s = ev.s, &t = ev.t;
    const std::uint32_t n = c1.n, m = c2.n, k = n + m;
    Poly a = Poly::zero_in(parent.context()), b = Poly::zero_in(parent.context());
    for (std::uint32_t e = 0; e <= k; ++e) {
        if (e >= n)
            a += binomial(k, e) * s.pow(e - n) * t.pow(k - e);
        else
            b += binomial(k, e) * s.pow(e) * t.pow(k - e - m);
    }
    Poly pp = detail::to_parent(p, parent);
    JiPart ji = c1.ji.scaled(a * c2.unit_value) + c2.ji.scaled(b * c1.unit_value);
    if (!ev.st_cert.coeffs.empty()) {
        Poly sk = Poly::zero_in(parent.context()), w = Poly::constant(1, parent.context());
        for (std::uint32_t j = 0; j < k; ++j) {
            sk += w;
            w = w * (s + t);
        }
        ji = ji + JiPart::of_eq0(ev.st_cert.coeffs.scaled(sk * c1.unit_value * c2.unit_value * pp));
    } else if (!(s + t - Poly(1)).is_zero()) {
        throw RingError("AL event without certificate needs s + t = 1 exactly");
    }
    auto out = FactCertificate::eq0(pp, c1.unit * c2.unit, parent, ji);
    if (!fact_check(out, parent))
        throw CertificateError("AL collapse produced a non-verifying certificate");
    detail::effort_guard(out, effort, "AL collapse");
    return out;
}

/// Membership form of the AL collapse.
inline MembershipCertificate collapse_al(const Poly &p, const BranchEvent &ev, const RingPresentation &parent,
                                         const RingPresentation &child1, const MembershipCertificate &cert1,
                                         const RingPresentation &child2, const MembershipCertificate &cert2,
                                         std::size_t effort = 0)
{
    auto f = collapse_al_fact(p, ev, parent, child1, FactCertificate::from_membership(cert1, child1), child2,
                              FactCertificate::from_membership(cert2, child2), effort);
    auto m = fact_to_membership(f);
    if (!m)
        throw CertificateError("AL collapse of membership certificates left a unit or rnul part");
    return *m;
}

/// Combines Eq0(p) in the Unit(t) child and in the Rnul(t) child into Eq0(p)
/// over the parent.
inline FactCertificate collapse_almi2(const Poly &p, const BranchEvent &ev, const RingPresentation &parent,
                                      const RingPresentation &unit_child, const FactCertificate &fu,
                                      const RingPresentation &rnul_child, const FactCertificate &fr,
                                      std::size_t effort = 0)
{
    if (ev.kind != EventKind::ALMI2)
        throw RingError("collapse_almi2 needs an ALMI2 event");
    if (fu.kind != FactKind::Eq0 || fr.kind != FactKind::Eq0)
        throw RingError("ALMI2 collapse needs Eq0 facts");
    if (!fact_check(fu, unit_child) || !fact_check(fr, rnul_child))
        throw CertificateError("child certificate does not verify");
    const std::size_t qi = parent.unit().size(), ri = parent.rnul().size();
    const Poly &t = ev.t;
    // (u1' t^m + j1) p + i1 = 0
    auto [u1p, m] = fu.unit_part.split(qi);
    if (u1p.exps.size() > qi)
        u1p.exps.resize(qi);
    JiPart ji1 = fu.ji;
    if (ji1.rnul.size() > ri)
        ji1.rnul.resize(ri);
    // (u2 + j2 - a2 t) p + i2 = 0
    auto [c, ji2] = fr.ji.split_rnul(ri);
    if (ji2.rnul.size() > ri)
        ji2.rnul.resize(ri);
    UnitProduct u2 = fr.unit_part;
    if (u2.exps.size() > qi)
        u2.exps.resize(qi);
    const Poly a2 = -detail::to_parent(c, parent);
    const Poly u1v = u1p.expand(parent), u2v = u2.expand(parent);
    const Poly j2 = ji2.j_value(parent);
    const Poly uu = u2v + j2, ss = a2 * t;
    Poly q = Poly::zero_in(parent.context());
    for (std::uint32_t i = 0; i < m; ++i)
        q += uu.pow(m - 1 - i) * ss.pow(i);
    Poly qp = detail::binomial_tail(u2v, j2, m);
    Poly a2m = a2.pow(m);
    JiPart ji = ji1.scaled(a2m) + ji2.j_only().scaled(u1v * qp) + ji2.i_only().scaled(u1v * q);
    auto out = FactCertificate::eq0(detail::to_parent(p, parent), u1p * u2.pow(m), parent, ji);
    if (!fact_check(out, parent))
        throw CertificateError("ALMI2 collapse produced a non-verifying certificate");
    detail::effort_guard(out, effort, "ALMI2 collapse");
    return out;
}

/// Eliminates the inverse parameter of an ALMI1 child using Unit(x).
inline FactCertificate collapse_almi1(const Poly &p, const BranchEvent &ev, const RingPresentation &parent,
                                      const RingPresentation &child, const FactCertificate &f, std::size_t effort = 0)
{
    if (ev.kind != EventKind::ALMI1)
        throw RingError("collapse_almi1 needs an ALMI1 event");
    auto cl = rabinowitsch_clear_fact(f, child, parent);
    const auto &ux = ev.unit_fact;
    const std::uint32_t n = cl.n;
    Poly w = ux.ji.j_value(parent) + ux.ji.i_value(parent);
    Poly q = detail::binomial_tail(ux.unit_value, w, n);
    Poly pp = detail::to_parent(p, parent);
    Poly na = (-ux.aux).pow(n);
    JiPart ji = ux.ji.j_only().scaled(q * cl.unit_value) + ux.ji.i_only().scaled(q * cl.unit_value * pp) +
                cl.ji.scaled(na);
    auto out = FactCertificate::eq0(pp, ux.unit_part.pow(n) * cl.unit, parent, ji);
    if (!fact_check(out, parent))
        throw CertificateError("ALMI1 collapse produced a non-verifying certificate");
    detail::effort_guard(out, effort, "ALMI1 collapse");
    return out;
}

using LeafFactFn = std::function<FactCertificate(std::size_t node, const RingPresentation &)>;

/// Bottom-up fold of the tree on goal p: leaves supply Eq0(p) facts over
/// their own presentations; the result is an Eq0(p) fact over the root.
inline FactCertificate collapse_tree(const EvalTree &tree, const Poly &p, const LeafFactFn &leaf,
                                     std::size_t effort = 0)
{
    std::function<FactCertificate(std::size_t)> rec = [&](std::size_t i) -> FactCertificate {
        const auto &nd = tree.node(i);
        if (!nd.event) {
            auto f = leaf(i, nd.pres);
            if (f.kind != FactKind::Eq0 || f.target != p || !fact_check(f, nd.pres))
                throw CertificateError("leaf " + std::to_string(i) + " certificate does not verify");
            return f;
        }
        const auto &ev = *nd.event;
        switch (ev.kind) {
        case EventKind::AL: {
            auto a = rec(nd.children[0]);
            auto b = rec(nd.children[1]);
            return collapse_al_fact(p, ev, nd.pres, tree.node(nd.children[0]).pres, a,
                                    tree.node(nd.children[1]).pres, b, effort);
        }
        case EventKind::ALMI2: {
            auto a = rec(nd.children[0]);
            auto b = rec(nd.children[1]);
            return collapse_almi2(p, ev, nd.pres, tree.node(nd.children[0]).pres, a,
                                  tree.node(nd.children[1]).pres, b, effort);
        }
        case EventKind::ALMI1: {
            auto a = rec(nd.children[0]);
            return collapse_almi1(p, ev, nd.pres, tree.node(nd.children[0]).pres, a, effort);
        }
        }
        throw RingError("unknown event");
    };
    return rec(0);
}

using LeafMembershipFn = std::function<MembershipCertificate(std::size_t node, const RingPresentation &)>;

/// Membership fold for trees whose root has no rnul or unit relations.
inline MembershipCertificate collapse_tree_membership(const EvalTree &tree, const Poly &p,
                                                      const LeafMembershipFn &leaf, std::size_t effort = 0)
{
    auto f = collapse_tree(
        tree, p,
        [&](std::size_t i, const RingPresentation &pres) {
            return FactCertificate::from_membership(leaf(i, pres), pres);
        },
        effort);
    auto m = fact_to_membership(f);
    if (!m)
        throw CertificateError("collapsed certificate still has unit or rnul parts");
    return *m;
}

/// ALMI3 as a derived rule: from x + y = 1 branch on ALMI2(x); the Rnul(x)
/// child gets Unit(y) through AU1, AI3, AU2 and the transfer along x + y - 1.
struct Almi3Branch
{
    EvalTree tree;
    std::size_t unit_x_child, unit_y_child;
    FactCertificate unit_x, unit_y;
};

inline Almi3Branch almi3_branch(const EvalTree &tree, std::size_t at, const Poly &x, const Poly &y,
                                const MembershipCertificate &xy_cert)
{
    if (xy_cert.target != x + y - Poly(1))
        throw RingError("ALMI3 trigger is not x + y - 1");
    const auto &pres = tree.node(at).pres;
    if (!verify_membership(xy_cert, pres))
        throw RingError("ALMI3 trigger does not verify");
    EvalTree out = tree.branch(at, BranchEvent::almi2(x));
    const auto &n = out.node(at);
    const std::size_t cu = n.children[0], cr = n.children[1];
    const auto &pu = out.node(cu).pres, &pr = out.node(cr).pres;
    auto ux = fact_from_unit_relation(pu, pu.unit().size() - 1);
    auto rx = fact_from_rnul_relation(pr, pr.rnul().size() - 1);
    auto one = axiom_apply(Axiom::AU1, {}, pr);
    auto rnx = axiom_apply(Axiom::AI3, {rx}, pr, {Poly(-1)});
    auto u1mx = axiom_apply(Axiom::AU2, {one, rnx}, pr);
    MembershipCertificate diff{y - (Poly(1) - x), xy_cert.coeffs};
    auto uy = unit_transfer(u1mx, y, diff, pr);
    return {out, cu, cr, ux, uy};
}

} // namespace idemcert

#endif // IDEMCERT_DYNAMIC_TREE_HPP
