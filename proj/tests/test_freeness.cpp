#include <catch_amalgamated.hpp>

#include <random>

#include <idemcert/freeness/freeness.hpp>

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
} // namespace

TEST_CASE("freeness_reduce examples", "[freeness]")
{
    RingPresentation z;
    Mat g = numeric({{0, 0}, {1, 0}});
    auto res = freeness_reduce(g, 1, {1}, {0}, Poly(1), EqualityWitness(Poly(1)), z);
    CHECK(res.p.m == numeric({{0, 1}, {1, 0}}));
    CHECK(res.q.m == Mat::identity(2));
    CHECK(res.p.m * g * res.q.m == numeric({{1, 0}, {0, 0}}));
    CHECK(res.verify(g));
    CHECK(res.witness(g).verify(res.p.m * g * res.q.m, z));

    Mat canon = Mat::canonical(2, 3, 4);
    auto id = freeness_reduce(canon, 2, {0, 1}, {0, 1}, Poly(1), EqualityWitness(Poly(1)), z);
    CHECK(id.p.m == Mat::identity(3));
    CHECK(id.q.m == Mat::identity(4));

    auto base = RingPresentation::parse({}, {});
    auto pres = base.with_inverse("sigma", Poly(2));
    auto sigma = pres.var("sigma");
    Mat two = numeric({{2}});
    auto w = EqualityWitness::param_inverse(pres, 0).with_lhs(2 * sigma);
    auto loc = freeness_reduce(two, 1, {0}, {0}, sigma, w, pres);
    CHECK(loc.q.m == Mat::from_rows({{sigma}}));
    CHECK(lhs_of(loc.pgq)(0, 0) == 2 * sigma);
    CHECK(rhs_of(loc.pgq)(0, 0) == Poly(1));
    CHECK(loc.verify(two));

    CHECK_THROWS_AS(freeness_reduce(two, 1, {0}, {0}, Poly(1), EqualityWitness(Poly(1)), z), RingError);
}

TEST_CASE("freeness_reduce on random integer matrices of known rank", "[freeness][property]")
{
    std::mt19937_64 rng(17);
    RingPresentation z;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t q = 2 + trial % 3, m = 2 + (trial / 3) % 3, k = 1 + trial % std::min(q, m);
        // unimodular P, Q by random elementary operations on I_{k,q,m}
        Mat g = Mat::canonical(k, q, m);
        for (int s = 0; s < 6; ++s) {
            std::size_t i = rng() % q, j = rng() % q;
            Poly lam(static_cast<int>(rng() % 5) - 2);
            if (i != j)
                for (std::size_t c = 0; c < m; ++c)
                    g(i, c) = g(i, c) + lam * g(j, c);
            std::size_t a = rng() % m, b = rng() % m;
            Poly mu(static_cast<int>(rng() % 5) - 2);
            if (a != b)
                for (std::size_t r = 0; r < q; ++r)
                    g(r, a) = g(r, a) + mu * g(r, b);
        }
        // find a unimodular k-minor
        std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> piv;
        for (auto &rs : subsets(q, k))
            for (auto &cs : subsets(m, k))
                if (!piv) {
                    Poly d = minor(g, rs, cs);
                    if (d == Poly(1) || d == Poly(-1))
                        piv = std::make_pair(rs, cs);
                }
        if (!piv)
            continue;
        Poly d = minor(g, piv->first, piv->second);
        auto res = freeness_reduce(g, k, piv->first, piv->second, d, EqualityWitness(d * d, Poly(1), {}), z);
        CHECK(res.p.m * g * res.q.m == Mat::canonical(k, q, m));
        CHECK(res.verify(g));
    }
}

TEST_CASE("local_presentation_reduce examples", "[freeness]")
{
    RingPresentation z;
    auto yes_no = [](const Poly &p, const RingPresentation &) {
        return p == Poly(1) ? OracleAnswer::Unit : OracleAnswer::Rnul;
    };
    auto r1 = local_presentation_reduce(numeric({{1, 0}, {0, 0}}), yes_no, z);
    CHECK(r1.k == 1);
    CHECK(r1.residual == numeric({{0}}));
    CHECK(r1.verify(numeric({{1, 0}, {0, 0}})));

    auto fp = idempotent_e();
    auto unit = local_presentation_reduce(fp.f, [](auto &, auto &) { return OracleAnswer::Unit; }, fp.pres);
    CHECK(unit.k == 1);
    CHECK(unit.residual.rows() == 0);
    CHECK(unit.pres.params().size() == 1);
    CHECK(unit.verify(fp.f));
    auto rnul = local_presentation_reduce(fp.f, [](auto &, auto &) { return OracleAnswer::Rnul; }, fp.pres);
    CHECK(rnul.k == 0);
    CHECK(rnul.residual == fp.f);
    CHECK_THROWS_AS(local_presentation_reduce(fp.f, [](auto &, auto &) { return OracleAnswer::Refuse; }, fp.pres),
                    OracleRefused);

    Mat g = numeric({{2, 1, 0}, {4, 3, 1}});
    auto r3 = local_presentation_reduce(g, yes_no, z);
    CHECK(r3.k == 2);
    CHECK(r3.verify(g));
}

TEST_CASE("projector_standardize examples", "[freeness]")
{
    RingPresentation z;
    auto unit_if_one = [](const Poly &p, const RingPresentation &) {
        return p == Poly(1) || p == Poly(-1) ? OracleAnswer::Unit : OracleAnswer::Rnul;
    };
    for (std::size_t k = 0; k <= 3; ++k) {
        auto fp = make_projector(Mat::canonical(k, 3, 3), z);
        auto red = local_presentation_reduce(fp.f, unit_if_one, z);
        auto cr = projector_standardize(fp, red);
        CHECK(cr.k == k);
        CHECK(cr.c.m == Mat::identity(3));
        CHECK(cr.verify(fp.f));
    }
    auto fp = make_projector(numeric({{1, 1}, {0, 0}}), z);
    auto red = local_presentation_reduce(fp.f, unit_if_one, z);
    auto cr = projector_standardize(fp, red);
    CHECK(cr.c.m * fp.f * cr.c.inv == numeric({{1, 0}, {0, 0}}));
    CHECK(cr.verify(fp.f));

    auto fe = idempotent_e();
    auto ue = local_presentation_reduce(fe.f, [](auto &, auto &) { return OracleAnswer::Unit; }, fe.pres);
    auto ce = projector_standardize(fe, ue);
    CHECK(ce.c.m == Mat::from_rows({{ue.pres.var("u1")}}));
    CHECK(rhs_of(ce.conj) == numeric({{1}}));
    CHECK(ce.verify(fe.f));
}

TEST_CASE("azumaya_step examples", "[freeness]")
{
    RingPresentation z;
    auto one = z.with_inverse("u1", Poly(1));
    auto fi = make_projector(Mat::identity(2), one);
    auto s1 = azumaya_step(fi.f, fi.idempotence, AzumayaBranch::First, one, 0);
    CHECK(s1.b == 1);
    CHECK(s1.f1 == numeric({{1}}));

    auto fp = make_projector(numeric({{1, 1}, {0, 0}}), one);
    auto s2 = azumaya_step(fp.f, fp.idempotence, AzumayaBranch::First, one, 0);
    CHECK(s2.f1 == numeric({{0}}));
    CHECK(rhs_of(s2.conj) == numeric({{1, 0}, {0, 0}}));
    CHECK(verify_all(s2.conj, one));
    CHECK(s2.c.verify(one));

    auto fe = idempotent_e();
    auto pv = fe.pres.with_inverse("u1", 1 - fe.pres.var("e"));
    auto s3 = azumaya_step(fe.f, fe.idempotence, AzumayaBranch::Second, pv, 0);
    CHECK(s3.b == 0);
    CHECK(rhs_of(s3.conj) == numeric({{0}}));
    CHECK(lhs_of(s3.conj) == s3.c.m * fe.f * s3.c.inv);
    CHECK(verify_all(s3.conj, pv));
    CHECK(s3.f1.rows() == 0);
}

TEST_CASE("azumaya_step on a generic 2x2 projector branch", "[freeness]")
{
    auto pres = RingPresentation::parse({"a", "b", "c", "d"},
                                        {"a^2 + b*c - a", "a*b + b*d - b", "c*a + d*c - c", "c*b + d^2 - d"});
    Mat f = Mat::from_rows({{pres.var("a"), pres.var("b")}, {pres.var("c"), pres.var("d")}});
    auto fp = make_projector(f, pres);
    for (auto branch : {AzumayaBranch::First, AzumayaBranch::Second}) {
        auto piv = branch == AzumayaBranch::First ? pres.var("a") : 1 - pres.var("a");
        auto ext = pres.with_inverse("u1", piv);
        auto st = azumaya_step(fp.f, fp.idempotence, branch, ext, 0);
        CHECK(verify_all(st.conj, ext));
        CHECK(verify_all(st.f1_idempotence, ext));
        CHECK(lhs_of(st.f1_idempotence) == st.f1 * st.f1);
        CHECK(st.c.verify(ext));
    }
}
