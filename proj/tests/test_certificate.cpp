#include <catch_amalgamated.hpp>

#include <random>

#include <idemcert/ring/fact.hpp>

#include "oracles.hpp"

using namespace idemcert;

namespace
{
const RelationRef g0{RelationRef::Kind::Eq0, 0}, g1{RelationRef::Kind::Eq0, 1};

// Z[e, u]/(e^2 - e, u e - 1), where e = 1.
struct UnitE
{
    RingPresentation pres = RingPresentation::parse({"e", "u"}, {"e^2 - e", "u*e - 1"});
    Poly e = pres.var("e"), u = pres.var("u");
    // e - 1 = u (e^2 - e) + (1 - e)(u e - 1)
    EqualityWitness e_is_one()
    {
        CertVec c;
        c.slot(g0) = u;
        c.slot(g1) = 1 - e;
        return {e, Poly(1), c};
    }
};

Poly slots(std::size_t k, std::size_t i)
{
    std::vector<std::string> names;
    for (std::size_t j = 0; j < k; ++j)
        names.push_back("s" + std::to_string(j + 1));
    return Poly::variable(make_context(names), names[i]);
}
} // namespace

TEST_CASE("verify_membership examples", "[certificate]")
{
    auto pres = RingPresentation::parse({"e"}, {"e^2 - e"});
    auto e = pres.var("e");
    MembershipCertificate c{e - e * e, CertVec::single(g0, Poly(-1))};
    CHECK(verify_membership(c, pres));
    CHECK(oracle::expand_membership(c, pres));
    CHECK(verify_membership({Poly(0), {}}, pres));
    CHECK_FALSE(verify_membership({Poly(1), {}}, pres));

    MembershipCertificate dangling{Poly(0), CertVec::single(g1, Poly(1))};
    CHECK_THROWS_AS(verify_membership(dangling, pres), RingError);
}

TEST_CASE("witness_compose examples", "[certificate]")
{
    UnitE r;
    auto w = r.e_is_one();
    REQUIRE(w.verify(r.pres));
    auto sq = witness_compose(WitnessOp::Mul, w, w, r.pres);
    CHECK(sq.lhs() == r.e * r.e);
    CHECK(sq.rhs() == Poly(1));
    CHECK(oracle::expand_membership(sq.membership(), r.pres));

    auto pa = RingPresentation::parse({"a", "b"}, {});
    auto a = pa.var("a"), b = pa.var("b");
    auto sum = witness_compose(WitnessOp::Add, EqualityWitness(a), EqualityWitness(b), pa);
    CHECK(sum.lhs() == a + b);
    CHECK(sum.rhs() == a + b);
    CHECK(sum.cert().empty());

    auto px = RingPresentation::parse({"x", "y"}, {"x"});
    auto x = px.var("x"), y = px.var("y");
    EqualityWitness x0(x, Poly(0), CertVec::single(g0, Poly(1)));
    auto xy = witness_compose(WitnessOp::Mul, x0, EqualityWitness(y), px);
    CHECK(xy.lhs() == x * y);
    CHECK(xy.rhs().is_zero());
    CHECK(oracle::expand_membership(xy.membership(), px));

    // a witness that does not hold over the presentation is rejected
    EqualityWitness bogus(y, Poly(0), CertVec::single(g0, Poly(1)));
    CHECK_THROWS_AS(witness_compose(WitnessOp::Add, bogus, x0, px), RingError);
}

TEST_CASE("witness_through_polymap examples", "[certificate]")
{
    auto trivial = RingPresentation::parse({"e"}, {"1"});
    auto e = trivial.var("e");
    EqualityWitness e1(e, Poly(1), CertVec::single(g0, e - 1));
    EqualityWitness e0(e, Poly(0), CertVec::single(g0, e));
    REQUIRE(e1.verify(trivial));
    REQUIRE(e0.verify(trivial));
    auto w = witness_through_polymap(slots(2, 0) * slots(2, 1), {e1, e0});
    CHECK(w.lhs() == e * e);
    CHECK(w.rhs().is_zero());
    CHECK(oracle::expand_membership(w.membership(), trivial));

    auto pxy = RingPresentation::parse({"x", "y"}, {"x - y"});
    EqualityWitness xy(pxy.var("x"), pxy.var("y"), CertVec::single(g0, Poly(1)));
    auto w1 = witness_through_polymap(slots(1, 0) + 1, {xy});
    CHECK(w1.lhs() == pxy.var("x") + 1);
    CHECK(w1.rhs() == pxy.var("y") + 1);
    CHECK(w1.cert().get(g0) == Poly(1));

    UnitE r;
    auto sq = witness_through_polymap(slots(1, 0).pow(2), {r.e_is_one()});
    CHECK(sq.lhs() == r.e * r.e);
    CHECK(sq.rhs() == Poly(1));
    CHECK(oracle::expand_membership(sq.membership(), r.pres));

    CHECK_THROWS_AS(witness_through_polymap(slots(2, 0) * slots(2, 1), {xy}), RingError);
}

TEST_CASE("product witnesses have the exact product target", "[certificate][property]")
{
    std::mt19937_64 rng(41);
    auto pres = RingPresentation::parse({"x", "y", "z"}, {"x^2 - y", "y*z - 1", "x*z - x"});
    auto ctx = pres.context();
    auto random_witness = [&] {
        Poly lhs = oracle::random_poly(rng, ctx, 3, 5, 3);
        CertVec c;
        for (std::size_t i = 0; i < 3; ++i)
            c.slot({RelationRef::Kind::Eq0, i}) = oracle::random_poly(rng, ctx, 2, 3, 2);
        return EqualityWitness(lhs, lhs - c.value(pres), c);
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto w1 = random_witness(), w2 = random_witness();
        auto m = witness_compose(WitnessOp::Mul, w1, w2, pres);
        CHECK(m.membership().target == w1.lhs() * w2.lhs() - w1.rhs() * w2.rhs());
        CHECK(oracle::expand_membership(m.membership(), pres));
        auto a = witness_compose(WitnessOp::Add, w1, w2, pres);
        CHECK(oracle::expand_membership(a.membership(), pres));
    }
}

TEST_CASE("membership certificates as Eq0 facts", "[certificate][fact]")
{
    auto pres = RingPresentation::parse({"e"}, {"e^2 - e"});
    auto e = pres.var("e");
    MembershipCertificate m{e - e * e, CertVec::single(g0, Poly(-1))};
    auto f = FactCertificate::from_membership(m, pres);
    CHECK(f.kind == FactKind::Eq0);
    CHECK(fact_check(f, pres));
    auto back = fact_to_membership(f);
    REQUIRE(back);
    CHECK(back->target == m.target);
    CHECK(verify_membership(*back, pres));

    auto wrong = FactCertificate::from_membership({e, CertVec::single(g0, Poly(-1))}, pres);
    CHECK_FALSE(fact_check(wrong, pres));

    // facts using a residually null relation are not plain memberships
    auto rp = RingPresentation::parse({"a"}, {}, {"a"});
    auto rf = FactCertificate::rnul(rp.var("a"), 1, UnitProduct::one(), rp, JiPart::of_rnul(0, Poly(-1)));
    CHECK(fact_check(rf, rp));
    CHECK_FALSE(fact_to_membership(rf));
}
