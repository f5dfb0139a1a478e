#ifndef IDEMCERT_FREENESS_FREENESS_HPP
#define IDEMCERT_FREENESS_FREENESS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <idemcert/matrix/invertible.hpp>
#include <idemcert/projector/projector.hpp>

namespace idemcert
{

/// P G Q = I_{k,q,m}: the cokernel of G is free of rank q - k.
struct FreenessResult
{
    std::size_t k = 0;
    RingPresentation pres;
    InvertibleMat p, q;
    WMat pgq;        // lhs P*G*Q, rhs canonical
    Mat image_basis; // first k columns of P^-1
    Mat cokernel_basis;

    EquivWitness witness(const Mat &g) const
    {
        return {g, p.m, p.inv, q.m, q.inv, p.m_inv, p.inv_m, q.m_inv, q.inv_m, {}};
    }

    bool verify(const Mat &g) const
    {
        return p.verify(pres) && q.verify(pres) && lhs_of(pgq) == p.m * g * q.m &&
               rhs_of(pgq) == Mat::canonical(k, g.rows(), g.cols()) && verify_all(pgq, pres);
    }
};

/// C F C^-1 = I_{k,n,n}.
struct ConjugationResult
{
    std::size_t k = 0;
    RingPresentation pres;
    InvertibleMat c;
    WMat conj; // lhs C*F*C^-1

    bool verify(const Mat &f) const
    {
        const std::size_t n = f.rows();
        return c.verify(pres) && lhs_of(conj) == c.m * f * c.inv && rhs_of(conj) == Mat::canonical(k, n, n) &&
               verify_all(conj, pres);
    }
};

struct MinorWitness
{
    std::vector<std::size_t> rows, cols; // sorted
    EqualityWitness witness;             // minor = 0
};

namespace detail
{

inline std::vector<std::size_t> complement_order(const std::vector<std::size_t> &first, std::size_t n)
{
    std::vector<std::size_t> out = first;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(first.begin(), first.end(), i) == first.end())
            out.push_back(i);
    return out;
}

inline WMat diag_witness(std::size_t n, const EqualityWitness &w, const Poly &lhs)
{
    WMat out = identity_witness(n);
    for (std::size_t i = 0; i < n; ++i)
        out(i, i) = w.with_lhs(lhs);
    return out;
}

inline std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace detail

/// Freeness lemma: G (q x m) with an invertible k x k minor on `rows` x `cols`
/// (witness minor * minor_inverse = 1) and all (k+1)-minors zero is equivalent
/// to I_{k,q,m}. Missing (k+1)-minor witnesses are taken exact or searched.
inline FreenessResult freeness_reduce(const Mat &g, std::size_t k, const std::vector<std::size_t> &rows,
                                      const std::vector<std::size_t> &cols, const Poly &minor_inverse,
                                      const EqualityWitness &inverse_witness, const RingPresentation &pres,
                                      const std::vector<MinorWitness> &minor_witnesses = {},
                                      const SearchBounds &bounds = {})
{
    const std::size_t q = g.rows(), m = g.cols();
    if (rows.size() != k || cols.size() != k)
        throw DimensionError("pivot index sets must have k elements");
    check_index_set(rows, q);
    check_index_set(cols, m);
    const Poly delta = minor_inverse;
    const Poly pivot_minor = minor(g, rows, cols);
    if (inverse_witness.lhs() != pivot_minor * delta || inverse_witness.rhs() != Poly(1) ||
        !inverse_witness.verify(pres))
        throw RingError("pivot minor inverse witness does not verify");
    for (const auto &mw : minor_witnesses) {
        if (mw.rows.size() != k + 1 || mw.cols.size() != k + 1 || mw.witness.rhs() != Poly(0) ||
            mw.witness.lhs() != minor(g, mw.rows, mw.cols) || !mw.witness.verify(pres))
            throw RingError("supplied minor witness does not verify");
    }

    const auto row_order = detail::complement_order(rows, q), col_order = detail::complement_order(cols, m);
    auto p0 = InvertibleMat::permutation(row_order);
    auto q0t = InvertibleMat::permutation(col_order);
    InvertibleMat q0{q0t.inv, q0t.m, q0t.inv_m, q0t.m_inv};
    Mat g2 = p0.m * g * q0.m;
    Mat a = g2.block(0, 0, k, k), x = g2.block(0, k, k, m - k), y = g2.block(k, 0, q - k, k),
        z = g2.block(k, k, q - k, m - k);
    Mat t = delta * adjugate(a);
    if (k == 0)
        t = Mat(0, 0);
    // A T = T A = delta det(A) I = I
    WMat w_at = detail::diag_witness(k, inverse_witness, pivot_minor * delta);
    Mat ik = Mat::identity(k), iq = Mat::identity(q - k), im = Mat::identity(m - k);
    Mat q1 = Mat::blocks(t, -(t * x), Mat(m - k, k), im);
    Mat q1i = Mat::blocks(a, x, Mat(m - k, k), im);
    InvertibleMat q1p;
    q1p.m = q1;
    q1p.inv = q1i;
    {
        WMat top = WMat::blocks(detail::relabel(w_at, t * a), lift(Mat(k, m - k)), lift(Mat(m - k, k)), lift(im));
        q1p.m_inv = detail::relabel(top, q1 * q1i);
        // [[A T, -A T X + X], [0, I]]
        WMat tr = -(detail::relabel(w_at, a * t) * lift(x)) + lift(x);
        WMat bot = WMat::blocks(detail::relabel(w_at, a * t), tr, lift(Mat(m - k, k)), lift(im));
        q1p.inv_m = detail::relabel(bot, q1i * q1);
    }
    auto p1p = InvertibleMat::exact(Mat::blocks(ik, Mat(k, q - k), -(y * t), iq),
                                    Mat::blocks(ik, Mat(k, q - k), y * t, iq));

    // G2 Q1 = [[A T, -A T X + X], [Y T, Z - Y T X]] = [[I, 0], [Y T, Z - Y T X]]
    Mat n1 = g2 * q1;
    Mat resid = z - y * t * x;
    WMat wn(q, m);
    {
        WMat tl = detail::relabel(w_at, a * t);
        WMat tr = -(tl * lift(x)) + lift(x);
        WMat left = WMat::blocks(tl, tr, lift(y * t), lift(resid));
        wn = detail::relabel(left, n1);
    }
    WMat w1 = lift(p1p.m) * wn; // P1 G2 Q1 = [[I, 0], [0, resid]]
    // resid_ij = delta * det B_ij + (1 - delta det A) z_ij with B_ij bordered
    WMat wres(q - k, m - k);
    EqualityWitness one_minus = EqualityWitness(1) - inverse_witness.with_lhs(pivot_minor * delta);
    for (std::size_t i = 0; i < q - k; ++i)
        for (std::size_t j = 0; j < m - k; ++j) {
            const std::size_t gi = row_order[k + i], gj = col_order[k + j];
            std::vector<std::size_t> br = rows, bc = cols;
            br.push_back(gi);
            bc.push_back(gj);
            int sign = permutation_sign(br) * permutation_sign(bc);
            auto sr = detail::sorted_copy(br), sc = detail::sorted_copy(bc);
            Poly mval = minor(g, sr, sc);
            std::optional<EqualityWitness> mw;
            for (const auto &s : minor_witnesses)
                if (s.rows == sr && s.cols == sc)
                    mw = s.witness;
            if (!mw) {
                auto cert = certify_member(mval, pres, bounds);
                if (!cert)
                    throw CertificateError("residual block not certifiably zero: minor " + mval.to_string());
                mw = EqualityWitness(mval, Poly(0), cert->coeffs);
            }
            EqualityWitness part = EqualityWitness(delta * Poly(sign)) * *mw + EqualityWitness(z(i, j)) * one_minus;
            wres(i, j) = part.with_lhs(resid(i, j));
        }
    WMat w2 = WMat::blocks(lift(ik), lift(Mat(k, m - k)), lift(Mat(q - k, k)), wres);
    WMat w_pgq_local = chain(w1, w2);

    FreenessResult out;
    out.k = k;
    out.pres = pres;
    out.p = p0.then(p1p);
    out.q = q1p.then(q0); // Q0 Q1
    out.pgq = detail::relabel(w_pgq_local, out.p.m * g * out.q.m);
    out.image_basis = out.p.inv.block(0, 0, q, k);
    out.cokernel_basis = out.p.inv.block(0, k, q, q - k);
    if (!out.verify(g))
        throw CertificateError("freeness reduction failed to verify");
    return out;
}

enum class OracleAnswer { Unit, Rnul, Refuse };

class OracleRefused : public RingError
{
public:
    OracleRefused(const std::string &what, std::vector<TransformRecord> partial)
        : RingError(what), log(std::move(partial))
    {
    }
    std::vector<TransformRecord> log;
};

using PivotOracle = std::function<OracleAnswer(const Poly &, const RingPresentation &)>;

/// P G Q = [[I_k, 0], [0, G']] with every entry of G' declared residually
/// null by the oracle. Unit answers add an inverse parameter unless the
/// pivot is +-1.
struct LocalReduction
{
    std::size_t k = 0;
    RingPresentation pres;
    InvertibleMat p, q;
    WMat pgq;      // lhs P*G*Q, rhs reduced
    Mat reduced;   // [[I_k, 0], [0, G']]
    Mat residual;  // G'
    std::vector<TransformRecord> log;

    bool verify(const Mat &g) const
    {
        return p.verify(pres) && q.verify(pres) && lhs_of(pgq) == p.m * g * q.m && rhs_of(pgq) == reduced &&
               verify_all(pgq, pres);
    }
};

inline LocalReduction local_presentation_reduce(const Mat &g, const PivotOracle &oracle, const RingPresentation &pres)
{
    const std::size_t q = g.rows(), m = g.cols();
    LocalReduction st;
    st.pres = pres;
    st.p = InvertibleMat::identity(q);
    st.q = InvertibleMat::identity(m);
    st.pgq = lift(g);
    st.reduced = g;
    std::size_t k = 0;
    for (;;) {
        Mat h = st.reduced.block(k, k, q - k, m - k);
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = 0; i < h.rows() && !pivot; ++i)
            for (std::size_t j = 0; j < h.cols() && !pivot; ++j) {
                if (h(i, j).is_zero())
                    continue;
                auto ans = oracle(h(i, j), st.pres);
                std::string where = "(" + std::to_string(k + i + 1) + "," + std::to_string(k + j + 1) + ") " +
                                    h(i, j).to_string();
                if (ans == OracleAnswer::Refuse) {
                    st.log.push_back({"refuse", where});
                    throw OracleRefused("oracle refused entry " + where, st.log);
                }
                st.log.push_back({ans == OracleAnswer::Unit ? "unit" : "rnul", where});
                if (ans == OracleAnswer::Unit)
                    pivot = std::make_pair(i, j);
            }
        if (!pivot)
            break;
        auto [pi, pj] = *pivot;
        // move the pivot to (k, k)
        std::vector<std::size_t> ro(q), co(m);
        for (std::size_t i = 0; i < q; ++i)
            ro[i] = i;
        for (std::size_t j = 0; j < m; ++j)
            co[j] = j;
        std::swap(ro[k], ro[k + pi]);
        std::swap(co[k], co[k + pj]);
        auto pr = InvertibleMat::permutation(ro);
        auto pct = InvertibleMat::permutation(co);
        InvertibleMat pc{pct.inv, pct.m, pct.inv_m, pct.m_inv};
        st.pgq = lift(pr.m) * st.pgq * lift(pc.m);
        st.p = st.p.then(pr);
        st.q = pc.then(st.q);
        st.reduced = pr.m * st.reduced * pc.m;
        h = st.reduced.block(k, k, q - k, m - k);
        const Poly x = h(0, 0);
        auto inv = invert_element(st.pres, x, "u");
        st.pres = inv.pres;
        const Poly &u = inv.inverse;
        const std::size_t r = q - k - 1, c = m - k - 1;
        Mat xr = h.block(0, 1, 1, c), yc = h.block(1, 0, r, 1), zb = h.block(1, 1, r, c);
        Mat ur = Mat::from_rows({{u}});
        Mat ps = Mat::blocks(ur, Mat(1, r), -(yc * ur), Mat::identity(r));
        Mat psi = Mat::blocks(Mat::from_rows({{x}}), Mat(1, r), yc, Mat::identity(r));
        Mat qs = Mat::blocks(Mat::identity(1), -(ur * xr), Mat(c, 1), Mat::identity(c));
        Mat qsi = Mat::blocks(Mat::identity(1), ur * xr, Mat(c, 1), Mat::identity(c));
        EqualityWitness wu = inv.witness.with_lhs(u * x);
        WMat wu1 = WMat::from_rows({{wu}});
        InvertibleMat pstep;
        pstep.m = ps;
        pstep.inv = psi;
        // ps psi = [[u x, 0], [-Y u x + Y, I]]
        pstep.m_inv = detail::relabel(
            WMat::blocks(wu1, lift(Mat(1, r)), lift(yc) * (lift(Mat::identity(1)) - wu1), lift(Mat::identity(r))),
            ps * psi);
        // psi ps = [[x u, 0], [0, I]]
        pstep.inv_m = detail::relabel(
            WMat::blocks(wu1, lift(Mat(1, r)), lift(Mat(r, 1)), lift(Mat::identity(r))), psi * ps);
        auto qstep = InvertibleMat::exact(qs, qsi);
        // ps h = [[u x, u X], [Y (1 - u x), Z - Y u X]] = [[1, u X], [0, Z']]
        Mat zp = zb - yc * ur * xr;
        WMat wph = detail::relabel(WMat::blocks(wu1, lift(ur * xr), lift(yc) * (lift(Mat::identity(1)) - wu1), lift(zp)),
                                   ps * h);
        WMat wstep = wph * lift(qs); // rhs diag(1, Z')
        auto eps = pstep.shifted(k), eqs = qstep.shifted(k);
        WMat moved = lift(eps.m) * st.pgq * lift(eqs.m);
        WMat local = WMat::block_diag(identity_witness(k), wstep);
        st.pgq = chain(moved, detail::relabel(local, rhs_of(moved)));
        st.p = st.p.then(eps);
        st.q = eqs.then(st.q);
        st.reduced = rhs_of(st.pgq);
        ++k;
        st.log.push_back({"pivot", "k=" + std::to_string(k) + " inverse " + u.to_string()});
    }
    st.k = k;
    st.residual = st.reduced.block(k, k, q - k, m - k);
    return st;
}

/// Conjugates F to I_{k,n,n} from a local reduction P F Q = diag(I_k, H):
/// F^2 = F forces B = I and H E H = H for [[B, C], [D, E]] = Q^-1 P^-1,
/// then H = 0 once det(I - H E) is inverted, and C = R P with
/// R = [[I, C], [0, I]].
inline ConjugationResult projector_standardize(const ProjectorMat &fp, const LocalReduction &red)
{
    const Mat &f = fp.f;
    const std::size_t n = f.rows(), k = red.k, r = n - k;
    if (!fp.pres.is_prefix_of(red.pres))
        throw RingError("reduction does not extend the projector's presentation");
    if (!red.verify(f))
        throw RingError("reduction witness does not verify");
    const auto &p = red.p, &q = red.q;
    const Mat &kk = red.reduced;
    const Mat h = red.residual;
    // F = P^-1 K Q^-1
    WMat x = lift(p.inv) * red.pgq * lift(q.inv);
    WMat y = p.inv_m * lift(f) * q.m_inv;
    WMat wf = chain(flipped(y), x);
    // K (Q^-1 P^-1) K = K
    WMat w1 = chain(lift(p.m) * fp.idempotence * lift(q.m), red.pgq);
    WMat w2 = lift(p.m * f) * (q.m_inv * p.inv_m) * lift(f * q.m);
    Mat qp = q.inv * p.inv;
    WMat w3 = flipped(red.pgq) * lift(qp) * flipped(red.pgq);
    WMat wk = chain(chain(w3, detail::relabel(w2, rhs_of(w3))), detail::relabel(w1, rhs_of(w2)));
    wk = detail::relabel(wk, kk * qp * kk);
    const Mat b = qp.block(0, 0, k, k), c = qp.block(0, k, k, r), e = qp.block(k, k, r, r);
    WMat wb = wk.block(0, 0, k, k);       // B = I
    WMat wheh = wk.block(k, k, r, r);     // H E H = H
    // (I - H E) H = 0
    Mat mm = Mat::identity(r) - h * e;
    WMat wmh = detail::relabel(lift(h) - wheh, mm * h);
    auto inv = invert_element(red.pres, det(mm), "w");
    RingPresentation pres = inv.pres;
    const Poly &w = inv.inverse;
    EqualityWitness ww = inv.witness.with_lhs(w * det(mm));
    // H = w adj(M) (M H) - (w det M - 1) H
    WMat wh0 = detail::relabel(lift(w * adjugate(mm)) * wmh - (ww - EqualityWitness(1)) * lift(h), h);
    Mat j = Mat::canonical(k, n, n);
    WMat wkj = WMat::block_diag(identity_witness(k), wh0);
    auto rr = InvertibleMat::exact(Mat::blocks(Mat::identity(k), c, Mat(r, k), Mat::identity(r)),
                                   Mat::blocks(Mat::identity(k), -c, Mat(r, k), Mat::identity(r)));
    InvertibleMat cm = p.then(rr);
    // C F C^-1 = R P (P^-1 K Q^-1) P^-1 R^-1
    WMat s1 = lift(cm.m) * wf * lift(cm.inv);
    WMat s2 = lift(rr.m * p.m * p.inv) * wkj * lift(qp * rr.inv);
    WMat s3 = lift(rr.m) * p.m_inv * lift(j * qp * rr.inv);
    WMat acc = chain(chain(s1, detail::relabel(s2, rhs_of(s1))), detail::relabel(s3, rhs_of(s2)));
    // R J Q^-1 P^-1 R^-1 = [[B, -B C + C], [0, 0]]
    WMat tl = wb;
    WMat tr = -(wb * lift(c)) + lift(c);
    WMat fin = WMat::blocks(tl, tr, lift(Mat(r, k)), lift(Mat(r, r)));
    acc = chain(acc, detail::relabel(fin, rhs_of(acc)));
    ConjugationResult out{k, pres, cm, detail::relabel(acc, cm.m * f * cm.inv)};
    (void)b;
    if (!out.verify(f))
        throw CertificateError("projector standardization failed to verify");
    return out;
}

/// One step of the recursive conjugation: with u inverting F(0,0) (first
/// case) or 1 - F(0,0) (second case), C F C^-1 = diag(b, F1) where b is 1
/// resp. 0 and F1 is again idempotent.
struct AzumayaStep
{
    InvertibleMat c;
    WMat conj; // lhs C F C^-1, rhs diag(b, F1)
    int b = 1;
    Mat f1;
    WMat f1_idempotence;
};

enum class AzumayaBranch { First, Second };

namespace detail
{

inline AzumayaStep azumaya_first_case(const Mat &f, const WMat &wff, const RingPresentation &pres,
                                      std::size_t param)
{
    const std::size_t n = f.rows(), r = n - 1;
    const auto &rel = pres.params().at(param);
    const Poly u = pres.var(rel.name);
    if (rel.relation != u * f(0, 0) - Poly(1))
        throw RingError("parameter relation does not invert the pivot entry");
    const RelationRef ref{RelationRef::Kind::Param, param};
    EqualityWitness wu = EqualityWitness::param_inverse(pres, param).with_lhs(f(0, 0) * u);
    Mat bm = Mat::identity(n), bi = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        bm(i, 0) = f(i, 0);
    bi(0, 0) = u;
    for (std::size_t i = 1; i < n; ++i)
        bi(i, 0) = -(f(i, 0) * u);
    // B B^-1 = diag(f11 u, I); B^-1 B has column 0 = (u f11, f_i1 (1 - u f11))
    WMat w_bbi = lift(bm * bi);
    w_bbi(0, 0) = wu;
    WMat w_bib = lift(bi * bm);
    w_bib(0, 0) = wu;
    for (std::size_t i = 1; i < n; ++i)
        w_bib(i, 0) = EqualityWitness((bi * bm)(i, 0), Poly(0), CertVec::single(ref, -f(i, 0)));
    for (const auto &z : w_bib.data())
        if (!z.verify(pres))
            throw CertificateError("base change witness does not verify");
    Mat g = bi * f * bm;
    // G G = G
    WMat a = lift(bi) * lift(f) * w_bbi * lift(f) * lift(bm);
    WMat bw = lift(bi) * wff * lift(bm);
    WMat wgg = detail::relabel(chain(a, detail::relabel(bw, rhs_of(a))), g * g);
    // first column of G is e_1
    WMat c1 = lift(bi) * wff.column(0);
    WMat wcol = chain(detail::relabel(c1, g.column(0)), detail::relabel(w_bib.column(0), rhs_of(c1)));
    Mat gp = g;
    WMat wgp = lift(g);
    for (std::size_t i = 0; i < n; ++i) {
        gp(i, 0) = i == 0 ? Poly(1) : Poly(0);
        wgp(i, 0) = wcol(i, 0);
    }
    // G' G' = G'
    WMat wgp2 = chain(chain(detail::relabel(flipped(wgp) * flipped(wgp), gp * gp), wgg), wgp);
    Mat li = gp.block(0, 1, 1, r), f1 = gp.block(1, 1, r, r);
    WMat wf1 = detail::relabel(wgp2.block(1, 1, r, r), f1 * f1);
    WMat wlif1 = detail::relabel(wgp2.block(0, 1, 1, r) - lift(li), li * f1);
    Mat l = Mat::blocks(Mat::identity(1), li, Mat(r, 1), Mat::identity(r));
    Mat linv = Mat::blocks(Mat::identity(1), -li, Mat(r, 1), Mat::identity(r));
    InvertibleMat bpair{bi, bm, w_bib, w_bbi};
    InvertibleMat cm = bpair.then(InvertibleMat::exact(l, linv));
    // C F C^-1 = L G L^-1 = L G' L^-1 = [[1, li F1], [0, F1]] = diag(1, F1)
    WMat s1 = lift(l) * wgp * lift(linv);
    WMat fin = WMat::blocks(lift(Mat::identity(1)), wlif1, lift(Mat(r, 1)), lift(f1));
    WMat conj = chain(s1, detail::relabel(fin, rhs_of(s1)));
    conj = detail::relabel(conj, cm.m * f * cm.inv);
    return {cm, conj, 1, f1, wf1};
}

} // namespace detail

inline AzumayaStep azumaya_step(const Mat &f, const WMat &idempotence, AzumayaBranch branch,
                                const RingPresentation &pres, std::size_t param)
{
    if (!f.square() || f.rows() == 0)
        throw DimensionError("azumaya_step needs a non-empty square matrix");
    if (branch == AzumayaBranch::First)
        return detail::azumaya_first_case(f, idempotence, pres, param);
    const std::size_t n = f.rows();
    Mat id = Mat::identity(n);
    Mat h = id - f;
    // (I - F)^2 = I - 2F + F^2 = I - F
    WMat whh = detail::relabel(lift(id) - lift(f) - lift(f) + idempotence, h * h);
    auto st = detail::azumaya_first_case(h, whh, pres, param);
    // C F C^-1 = C C^-1 - C H C^-1 = I - diag(1, H1)
    WMat conj = detail::relabel(st.c.m_inv - st.conj, st.c.m * f * st.c.inv);
    const std::size_t r = n - 1;
    Mat f1 = Mat::identity(r) - st.f1;
    WMat wf1 = detail::relabel(lift(Mat::identity(r)) - lift(st.f1) - lift(st.f1) + st.f1_idempotence, f1 * f1);
    return {st.c, conj, 0, f1, wf1};
}

} // namespace idemcert

#endif // IDEMCERT_FREENESS_FREENESS_HPP
