#include <catch_amalgamated.hpp>

#include <random>

#include <idemcert/matrix/determinant.hpp>
#include <idemcert/matrix/transform.hpp>

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
} // namespace

TEST_CASE("matrix arithmetic examples", "[matrix]")
{
    Mat f = numeric({{1, 1}, {0, 0}});
    CHECK(Mat::identity(2) * f == f);
    CHECK(f * f == f);
    CHECK(Mat::block_diag(f, Mat::zero(3, 3)).rows() == 5);
    CHECK_THROWS_AS(f * Mat::zero(3, 1), DimensionError);
}

TEST_CASE("characteristic polynomial examples", "[matrix][charpoly]")
{
    auto ctx = make_context({"X"});
    auto X = Poly::variable(ctx, "X");
    Mat f = numeric({{1, 1}, {0, 0}});
    CHECK(charpoly_div_free(f, "X") == X * X - X);
    CHECK(charpoly_div_free(f, "X") == oracle::leibniz_charpoly(f, ctx, "X"));
    CHECK(charpoly_div_free(Mat::identity(3), "X") == (X - 1).pow(3));
    CHECK(charpoly_div_free(Mat::zero(4, 4), "X") == X.pow(4));
    CHECK_THROWS_AS(charpoly_div_free(Mat::zero(2, 3), "X"), DimensionError);
    auto ex = make_context({"X"});
    Mat bad = Mat::from_rows({{Poly::variable(ex, "X")}});
    CHECK_THROWS_AS(charpoly_div_free(bad, "X"), RingError);
}

TEST_CASE("charpoly agrees with Leibniz on random polynomial matrices", "[matrix][charpoly][property]")
{
    std::mt19937_64 rng(23);
    auto vars = make_context({"a", "b"});
    auto full = make_context({"a", "b", "X"});
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + trial % 4;
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = oracle::random_poly(rng, vars, 2, 3, 3);
        CHECK(charpoly_div_free(m, "X") == oracle::leibniz_charpoly(m, full, "X"));
    }
}

TEST_CASE("minors", "[matrix][minor]")
{
    Mat f = numeric({{1, 1}, {0, 0}});
    auto d1 = diagonal_minors(f, 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].first == std::vector<std::size_t>{0});
    CHECK(d1[0].second == Poly(1));
    CHECK(d1[1].second == Poly(0));
    auto d0 = diagonal_minors(f, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].second == Poly(1));
    auto i3 = diagonal_minors(Mat::identity(3), 2);
    REQUIRE(i3.size() == 3);
    for (auto &[s, v] : i3)
        CHECK(v == Poly(1));
    CHECK_THROWS_AS(minor(f, {0, 2}, {0, 1}), DimensionError);
    CHECK_THROWS_AS(minor(f, {1, 0}, {0, 1}), DimensionError);
}

TEST_CASE("det(I + YF) expands into diagonal minor sums", "[matrix][minor][property]")
{
    std::mt19937_64 rng(5);
    auto vars = make_context({"a", "b"});
    auto withY = make_context({"a", "b", "Y"});
    auto Y = Poly::variable(withY, "Y");
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + trial % 4;
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = oracle::random_poly(rng, vars, 2, 3, 3);
        Mat shifted(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                shifted(i, j) = (i == j ? Poly(1) : Poly(0)) + Y * m(i, j);
        Poly lhs = oracle::leibniz_det(shifted, withY);
        Poly rhs = Poly::zero_in(withY);
        for (std::size_t k = 0; k <= n; ++k) {
            Poly ek = Poly::zero_in(withY);
            for (auto &[s, t] : diagonal_minors(m, k))
                ek += t;
            rhs += ek * Y.pow(k);
        }
        CHECK(lhs == rhs);
        auto sums = diagonal_minor_sums(m);
        auto r = Poly::zero_in(withY);
        for (std::size_t k = 0; k <= n; ++k)
            r += sums[k] * Y.pow(k);
        CHECK(r == lhs);
    }
}

TEST_CASE("adjugate", "[matrix]")
{
    std::mt19937_64 rng(9);
    auto vars = make_context({"a", "b"});
    for (std::size_t n = 1; n <= 4; ++n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = oracle::random_poly(rng, vars, 2, 3, 3);
        Poly d = oracle::leibniz_det(m, vars);
        CHECK(adjugate(m) * m == d * Mat::identity(n));
        CHECK(m * adjugate(m) == d * Mat::identity(n));
    }
}

TEST_CASE("padded charpoly identity", "[matrix]")
{
    CHECK(padded_charpoly_identity(numeric({{1}}), numeric({{1, 0}, {0, 0}})));
    Mat f = numeric({{1, 1}, {0, 0}});
    CHECK(padded_charpoly_identity(f, f));
    CHECK_FALSE(padded_charpoly_identity(numeric({{1}}), Mat::identity(2)));
    CHECK(padded_charpoly_identity(f, Mat::block_diag(f, Mat::zero(2, 2))));
}

TEST_CASE("presentation transforms keep their witnesses", "[matrix][transform]")
{
    RingPresentation pres;
    Mat g = numeric({{0, 0}, {1, 0}});
    auto w = EquivWitness::identity(g);
    auto [g2, w2] = presentation_transform(g, w, TransformOp::add_row(0, 1, Poly(1)), pres);
    CHECK(g2 == numeric({{1, 0}, {1, 0}}));
    CHECK(w2.p == numeric({{1, 1}, {0, 1}}));
    CHECK(w2.p_inv == numeric({{1, -1}, {0, 1}}));
    CHECK(w2.p * w2.p_inv == Mat::identity(2));
    CHECK(w2.verify(g2, pres));
    CHECK(w2.log.size() == 1);

    Mat col = numeric({{1}, {0}});
    auto [c2, cw] = presentation_transform(col, EquivWitness::identity(col), TransformOp::append_zero_column(), pres);
    CHECK(c2 == numeric({{1, 0}, {0, 0}}));
    CHECK(cw.verify(c2, pres));

    auto [b2, bw] = presentation_transform(g, w, TransformOp::border(numeric({{3}, {4}})), pres);
    CHECK(b2.rows() == 3);
    CHECK(b2.cols() == 3);
    CHECK(b2(2, 2) == Poly(1));
    CHECK(bw.verify(b2, pres));
}

TEST_CASE("unit scaling requires a certified inverse", "[matrix][transform]")
{
    auto base = RingPresentation::parse({"x"}, {});
    auto pres = base.with_inverse("s", base.parse_poly("2"));
    auto s = pres.var("s");
    Mat g = Mat::from_rows({{Poly(2)}});
    auto ok = TransformOp::scale_col(0, Poly(2), s, EqualityWitness::param_inverse(pres, 0));
    auto [g2, w2] = presentation_transform(g, EquivWitness::identity(g), ok, pres);
    CHECK(g2(0, 0) == Poly(4));
    CHECK(w2.verify(g2, pres));
    auto bad = TransformOp::scale_col(0, Poly(2), Poly(1), EqualityWitness(Poly(2)));
    CHECK_THROWS_AS(presentation_transform(g, EquivWitness::identity(g), bad, pres), RingError);

    // random elementary sequences keep P P^-1 = I exactly
    std::mt19937_64 rng(3);
    Mat h = numeric({{1, 2, 0}, {0, 1, 1}});
    auto hw = EquivWitness::identity(h);
    RingPresentation z;
    for (int step = 0; step < 40; ++step) {
        int kind = static_cast<int>(rng() % 4);
        std::size_t i = rng() % 2, j = (i + 1) % 2;
        std::size_t a = rng() % 3, b = (a + 1 + rng() % 2) % 3;
        TransformOp op = kind == 0   ? TransformOp::add_row(i, j, Poly(static_cast<int>(rng() % 5) - 2))
                         : kind == 1 ? TransformOp::add_col(a, b, Poly(static_cast<int>(rng() % 5) - 2))
                         : kind == 2 ? TransformOp::swap_rows(i, j)
                                     : TransformOp::swap_cols(a, b);
        std::tie(h, hw) = presentation_transform(h, hw, op, z);
        REQUIRE(hw.verify(h, z));
        CHECK(hw.p * hw.p_inv == Mat::identity(2));
        CHECK(hw.q * hw.q_inv == Mat::identity(3));
    }
}
