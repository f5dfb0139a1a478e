#include <catch_amalgamated.hpp>

#include <random>

#include <idemcert/projector/analysis.hpp>

#include "oracles.hpp"

using namespace idemcert;

namespace
{
Mat numeric(std::vector<std::vector<int>> rows)
{
    std::vector<std::vector<Poly>> out;
    for (auto &r : rows) {
        out.emplace_back();
        for (int v : r)
            out.back().emplace_back(v);
    }
    return Mat::from_rows(out);
}

ProjectorMat idempotent_e()
{
    auto pres = RingPresentation::parse({"e"}, {"e^2 - e"});
    return make_projector(Mat::from_rows({{pres.var("e")}}), pres);
}

// Random unimodular integer matrix with its inverse, by elementary operations.
std::pair<Mat, Mat> random_unimodular(std::mt19937_64 &rng, std::size_t n)
{
    Mat c = Mat::identity(n), ci = Mat::identity(n);
    for (int s = 0; s < 3 * static_cast<int>(n); ++s) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j)
            continue;
        int lam = static_cast<int>(rng() % 5) - 2;
        Mat e = Mat::identity(n), ei = Mat::identity(n);
        e(i, j) = Poly(lam);
        ei(i, j) = Poly(-lam);
        Mat nc = e * c, nci = ci * ei;
        bool small = true;
        for (const auto &p : nc.data())
            if (p.constant_term() > 3 || p.constant_term() < -3)
                small = false;
        if (small) {
            c = nc;
            ci = nci;
        }
    }
    return {c, ci};
}
} // namespace

TEST_CASE("rank polynomial examples", "[projector]")
{
    RingPresentation z;
    auto x = Poly::variable(make_context({"X"}), "X");
    CHECK(rank_polynomial(make_projector(numeric({{0, 0}, {0, 0}}), z)) == Poly(1));
    CHECK(rank_polynomial(make_projector(Mat::identity(2), z)) == x * x);
    CHECK(rank_polynomial(make_projector(numeric({{1, 1}, {0, 0}}), z)) == x);

    auto fe = idempotent_e();
    auto r = rank_polynomial(fe);
    auto ctx = r.context();
    auto e = Poly::variable(ctx, "e"), xx = Poly::variable(ctx, "X");
    CHECK(r == (1 - e) + e * xx);
    CHECK(r.substitute({{"X", Poly(1)}}) == Poly(1));
}

TEST_CASE("fundamental idempotents examples", "[projector]")
{
    auto fe = idempotent_e();
    auto ids = fundamental_idempotents(fe);
    auto e = fe.pres.var("e");
    REQUIRE(ids.r.size() == 2);
    CHECK(ids.r[0] == 1 - e);
    CHECK(ids.r[1] == e);
    REQUIRE(ids.orthogonality.size() == 1);
    CHECK(ids.orthogonality[0].cert.coeffs.eq0().at(0) == Poly(-1));
    CHECK(oracle::expand_membership(ids.orthogonality[0].cert, fe.pres));

    RingPresentation z;
    auto i3 = fundamental_idempotents(make_projector(Mat::identity(3), z));
    CHECK(i3.r == std::vector<Poly>{Poly(0), Poly(0), Poly(0), Poly(1)});
    for (const auto &c : i3.orthogonality)
        CHECK(c.cert.coeffs.empty());
}

TEST_CASE("comaximal family examples", "[projector]")
{
    RingPresentation z;
    auto f1 = make_projector(numeric({{1, 1}, {0, 0}}), z);
    CertificateSource s1(f1);
    auto i1 = fundamental_idempotents(f1, s1);
    auto fam1 = comaximal_family(f1, i1, s1);
    REQUIRE(fam1.entries.size() == 2);
    CHECK(fam1.entries[0].k == 1);
    CHECK(fam1.entries[0].s == Poly(1));
    CHECK(fam1.entries[1].s == Poly(0));
    CHECK(fam1.data().verify(z));

    auto f0 = make_projector(numeric({{0, 0}, {0, 0}}), z);
    CertificateSource s0(f0);
    auto i0 = fundamental_idempotents(f0, s0);
    auto fam0 = comaximal_family(f0, i0, s0);
    REQUIRE(fam0.entries.size() == 1);
    CHECK(fam0.entries[0].k == 0);
    CHECK(fam0.entries[0].index.empty());
    CHECK(fam0.entries[0].s == Poly(1));

    auto fe = idempotent_e();
    CertificateSource se(fe);
    auto ie = fundamental_idempotents(fe, se);
    auto fam = comaximal_family(fe, ie, se);
    auto e = fe.pres.var("e");
    REQUIRE(fam.entries.size() == 2);
    CHECK(fam.entries[0].s == 1 - e);
    CHECK(fam.entries[1].s == e * e);
    CHECK(fam.total.target == e * e - e);
    CHECK(oracle::expand_membership(fam.total, fe.pres));
    CHECK(fam.data().verify(fe.pres));
}

TEST_CASE("minor annihilation examples", "[projector]")
{
    RingPresentation z;
    auto f1 = make_projector(numeric({{1, 1}, {0, 0}}), z);
    CertificateSource s1(f1);
    auto i1 = fundamental_idempotents(f1, s1);
    auto m1 = minor_annihilation(f1, i1, 1, s1);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0].cert.target.is_zero());

    auto fe = idempotent_e();
    CertificateSource se(fe);
    auto ie = fundamental_idempotents(fe, se);
    auto me = minor_annihilation(fe, ie, 0, se);
    REQUIRE(me.size() == 1);
    auto e = fe.pres.var("e");
    CHECK(me[0].cert.target == (1 - e) * e);
    CHECK(oracle::expand_membership(me[0].cert, fe.pres));
    CHECK_THROWS_AS(minor_annihilation(fe, ie, 1, se), RingError);
}

TEST_CASE("generic projector of size 2 through the analysis", "[projector][generic]")
{
    auto fp = generic_projector(2);
    CertificateSource src(fp);
    auto ids = fundamental_idempotents(fp, src);
    CHECK(ids.orthogonality.size() == 3);
    for (const auto &c : ids.orthogonality) {
        CHECK(c.origin == CertOrigin::Dynamic);
        CHECK(oracle::expand_membership(c.cert, fp.pres));
    }
    auto fam = comaximal_family(fp, ids, src);
    CHECK(fam.entries.size() == 4);
    CHECK(oracle::expand_membership(fam.total, fp.pres));
    auto m = minor_annihilation(fp, ids, 1, src);
    REQUIRE(m.size() == 1);
    CHECK(m[0].cert.target == ids.r[1] * det(fp.f));
    CHECK(oracle::expand_membership(m[0].cert, fp.pres));
    CHECK(rank_basis_check(fp));
}

TEST_CASE("constant rank examples", "[projector]")
{
    RingPresentation z;
    for (std::size_t k = 0; k <= 3; ++k) {
        auto fp = make_projector(Mat::canonical(k, 3, 3), z);
        for (std::size_t j = 0; j <= 3; ++j) {
            auto v = constant_rank_check(fp, j, RankMode::Exact).verdict;
            CHECK(v == (j == k ? Verdict::True : Verdict::False));
            auto d = constant_rank_check(fp, j, RankMode::DynamicNilpotent).verdict;
            CHECK(d == (j == k ? Verdict::True : Verdict::False));
        }
    }
    auto f1 = make_projector(numeric({{1, 1}, {0, 0}}), z);
    CHECK(constant_rank_check(f1, 1, RankMode::Exact).verdict == Verdict::True);

    auto fe = idempotent_e();
    for (std::size_t k = 0; k <= 1; ++k) {
        CHECK(constant_rank_check(fe, k, RankMode::Exact).verdict == Verdict::False);
        auto d = constant_rank_check(fe, k, RankMode::DynamicNilpotent);
        CHECK(d.verdict == Verdict::False);
        CHECK(d.refuted == 1 - k);
    }

    // over Z[a]/(a) the entry a is idempotent and r_1 = a is residually null
    auto pres = RingPresentation::parse({"a"}, {"a"});
    auto fa = make_projector(Mat::from_rows({{pres.var("a")}}), pres);
    CHECK(constant_rank_check(fa, 0, RankMode::Exact).verdict == Verdict::False);
    auto dn = constant_rank_check(fa, 0, RankMode::DynamicNilpotent);
    CHECK(dn.verdict == Verdict::True);
    REQUIRE(dn.nilpotence.size() == 1);
    for (const auto &f : dn.nilpotence)
        CHECK(fact_check(f, pres));
}

TEST_CASE("characteristic polynomial in the rank basis", "[projector]")
{
    RingPresentation z;
    CHECK(rank_basis_check(make_projector(numeric({{1, 1}, {0, 0}}), z)));
    CHECK(rank_basis_check(make_projector(numeric({{0, 0}, {0, 0}}), z)));
    CHECK(rank_basis_check(idempotent_e()));
}

TEST_CASE("localization rank examples", "[projector]")
{
    auto fe = idempotent_e();
    auto ids = fundamental_idempotents(fe);
    auto e = fe.pres.var("e");
    auto a = localization_rank(fe, ids, e, 8);
    REQUIRE(a);
    CHECK(a->h == 1);
    CHECK(a->m == 1);
    CHECK(verify_membership(a->cert, fe.pres));
    auto b = localization_rank(fe, ids, ids.r[1], 8);
    REQUIRE(b);
    CHECK(b->h == 1);
    CHECK_FALSE(localization_rank(fe, ids, Poly(1), 3));
}

TEST_CASE("localization bases", "[projector][freeness]")
{
    auto fe = idempotent_e();
    CertificateSource se(fe);
    auto ids = fundamental_idempotents(fe, se);
    auto fam = comaximal_family(fe, ids, se);
    auto m0 = minor_annihilation(fe, ids, 0, se);
    for (const auto &entry : fam.entries) {
        auto res = localization_basis(fe, ids, entry, m0);
        CHECK(res.k == entry.k);
        CHECK(res.verify(fe.f));
    }

    auto fp = generic_projector(2);
    CertificateSource src(fp);
    auto gi = fundamental_idempotents(fp, src);
    auto gf = comaximal_family(fp, gi, src);
    std::vector<MinorAnnihilation> all;
    for (std::size_t k = 0; k < 2; ++k)
        for (auto &m : minor_annihilation(fp, gi, k, src))
            all.push_back(std::move(m));
    for (const auto &entry : gf.entries) {
        auto res = localization_basis(fp, gi, entry, all);
        CHECK(res.verify(fp.f));
    }
}

TEST_CASE("random integer projectors satisfy the structure identities", "[projector][property]")
{
    std::mt19937_64 rng(23);
    RingPresentation z;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 4, k = rng() % (n + 1);
        auto [c, ci] = random_unimodular(rng, n);
        REQUIRE(c * ci == Mat::identity(n));
        Mat f = ci * Mat::canonical(k, n, n) * c;
        auto fp = make_projector(f, z);
        auto ids = fundamental_idempotents(fp);
        for (std::size_t h = 0; h <= n; ++h) {
            CHECK(ids.r[h] == Poly(h == k ? 1 : 0));
            CHECK(ids.r[h] * ids.r[h] == ids.r[h]);
        }
        CertificateSource src(fp);
        auto fam = comaximal_family(fp, ids, src);
        CHECK(fam.total.coeffs.empty());
        for (const auto &rs : fam.rank_sums)
            CHECK(rs.cert.target.is_zero());
        if (k < n)
            for (const auto &m : minor_annihilation(fp, ids, k, src))
                CHECK(oracle::leibniz_det(f.submatrix(m.rows, m.cols), z.context()).is_zero());
        CHECK(rank_basis_check(fp));
        CHECK(constant_rank_check(fp, k, RankMode::Exact).verdict == Verdict::True);
    }
}
