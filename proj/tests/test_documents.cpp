#include <catch_amalgamated.hpp>

#include <sstream>

#include <idemcert/cli/commands.hpp>

using namespace idemcert;

namespace
{
struct Run
{
    int code;
    std::string out, err;
};

template <typename F>
Run capture(F &&f)
{
    std::ostringstream out, err;
    int code = f(out, err);
    return {code, out.str(), err.str()};
}

ProjectorMat from_text(const std::string &doc)
{
    auto in = input_from_json(parse_json(doc));
    return make_projector(*in.matrix, in.pres);
}

const char *idempotent_e = R"({"variables": ["e"], "relations": {"eq0": ["e^2 - e"]}, "matrix": [["e"]]})";
} // namespace

TEST_CASE("input documents", "[documents]")
{
    auto d = input_from_json(parse_json(R"({
        "variables": ["x", "y"],
        "relations": {"eq0": ["x^2 - x"], "unit": ["y"]},
        "params": [{"name": "v", "relation": "v*(1 - x) - 1"}],
        "matrix": [["x", "0"], ["0", "1 - x"]]
    })"));
    CHECK(d.pres.eq0().size() == 1);
    CHECK(d.pres.unit().size() == 1);
    REQUIRE(d.pres.params().size() == 1);
    CHECK(d.pres.params()[0].name == "v");
    REQUIRE(d.matrix);
    CHECK(d.matrix->rows() == 2);
    auto again = input_from_json(presentation_to_json(d.pres, d.matrix));
    CHECK(dump(presentation_to_json(again.pres, again.matrix)) == dump(presentation_to_json(d.pres, d.matrix)));

    CHECK_THROWS_AS(parse_json("{"), DocumentError);
    CHECK_THROWS_AS(input_from_json(parse_json("[]")), DocumentError);
    CHECK_THROWS_AS(input_from_json(parse_json(R"({"relations": {}})")), DocumentError);
    CHECK_THROWS_AS(input_from_json(parse_json(R"({"variables": ["x"], "relations": {"eq0": ["x +"]}})")),
                    DocumentError);
    CHECK_THROWS_AS(input_from_json(parse_json(R"({"variables": ["x"], "relations": {"odd": []}})")), DocumentError);
    CHECK_THROWS_AS(input_from_json(parse_json(R"({"variables": ["x"], "matrix": [["z"]]})")), DocumentError);
}

TEST_CASE("certificate documents round-trip byte-identically", "[documents]")
{
    auto pres = RingPresentation::parse({"e"}, {"e^2 - e"}, {"e^3"}, {"1 + e"});
    auto e = pres.var("e");
    CertificateArchive a;
    a.pres = pres;
    a.run = Json{{"command", "test"}};
    a.entries.push_back({"m", MembershipCertificate{e - e * e, CertVec::single({RelationRef::Kind::Eq0, 0}, Poly(-1))}});
    a.entries.push_back({"f", FactCertificate::from_membership({e - e * e, CertVec::single({RelationRef::Kind::Eq0, 0},
                                                                                           Poly(-1))},
                                                               pres)});
    a.entries.push_back({"", FactCertificate::rnul(e, 3, UnitProduct::one(), pres, JiPart::of_rnul(0, Poly(-1)))});
    UnitProduct u;
    u.exps = {2};
    a.entries.push_back({"unit", FactCertificate::unit(e, Poly(0), u, pres, JiPart{})});
    const auto text = canonical_archive(a);
    const auto back = archive_from_json(parse_json(text));
    CHECK(canonical_archive(back) == text);
    REQUIRE(back.entries.size() == 4);
    CHECK(verify_entry(back.entries[0], pres));
    CHECK(verify_entry(back.entries[1], pres));
    CHECK(verify_entry(back.entries[2], pres));
    CHECK_FALSE(verify_entry(back.entries[3], pres));
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("malformed certificates are rejected", "[documents]")
{
    auto pres = RingPresentation::parse({"e"}, {"e^2 - e"});
    auto bad = [&](const char *doc) { return certificates_from_json(parse_json(doc), pres); };
    CHECK_THROWS_AS(bad(R"({"kind": "membership", "target": "0", "terms": [{"relation": "eq0:1", "coeff": "1"}]})"),
                    DocumentError);
    CHECK_THROWS_AS(bad(R"({"kind": "membership", "target": "0", "terms": [{"relation": "foo:0", "coeff": "1"}]})"),
                    DocumentError);
    CHECK_THROWS_AS(bad(R"({"kind": "membership", "target": "0", "terms": [{"relation": "eq0:x", "coeff": "1"}]})"),
                    DocumentError);
    CHECK_THROWS_AS(bad(R"({"kind": "guess", "target": "0", "terms": []})"), DocumentError);
    CHECK_THROWS_AS(bad(R"({"kind": "membership", "target": "q", "terms": []})"), DocumentError);
    CHECK_THROWS_AS(bad(R"({"format": "other", "certificates": []})"), DocumentError);
    CHECK(bad(R"({"kind": "membership", "target": "0", "terms": []})").size() == 1);
}

TEST_CASE("analyze command", "[cli]")
{
    cli::Options opt;
    auto f1 = from_text(R"({"variables": [], "matrix": [["1", "1"], ["0", "0"]]})");
    auto r1 = capture([&](auto &o, auto &) { return cli::analyze(f1, opt, o); });
    CHECK(r1.code == cli::Ok);
    CHECK(r1.out.find("R(X) = X\n") != std::string::npos);
    CHECK(r1.out.find("s_1,{1} = 1 ") != std::string::npos);
    CHECK(r1.out.find("s_1,{2} = 0 ") != std::string::npos);

    auto f0 = from_text(R"({"variables": [], "matrix": [["0", "0"], ["0", "0"]]})");
    opt.format = cli::Format::Structured;
    auto r0 = capture([&](auto &o, auto &) { return cli::analyze(f0, opt, o); });
    CHECK(r0.code == cli::Ok);
    auto j0 = parse_json(r0.out);
    CHECK(j0["idempotents"][0] == "1");
    REQUIRE(j0["comaximal_family"]["entries"].size() == 1);
    CHECK(j0["comaximal_family"]["entries"][0]["s"] == "1");
    CHECK(j0["verified"] == true);

    auto fe = from_text(idempotent_e);
    opt.bases = true;
    auto a = capture([&](auto &o, auto &) { return cli::analyze(fe, opt, o); });
    auto b = capture([&](auto &o, auto &) { return cli::analyze(fe, opt, o); });
    CHECK(a.code == cli::Ok);
    CHECK(a.out == b.out);
    CHECK(parse_json(a.out)["comaximal_family"]["entries"][1]["basis"]["image_basis"] == Json::parse(R"([["1"]])"));

    CHECK_THROWS_AS(from_text(R"({"variables": [], "matrix": [["1", "1"], ["0", "1"]]})"), NotIdempotentError);
    CHECK(capture([&](auto &o, auto &e) { return cli::cmd_analyze("/nonexistent/input.json", opt, o, e); }).code ==
          cli::ParseFailed);
}

TEST_CASE("generic command", "[cli][generic]")
{
    cli::Options opt;
    std::ostringstream log;
    auto a1 = cli::generic_archive(1, cli::Goal::Orthogonality, opt, log);
    REQUIRE(a1.entries.size() == 1);
    const auto &m = std::get<MembershipCertificate>(a1.entries[0].cert);
    auto f = a1.pres.var("f11");
    CHECK(m.target == (1 - f) * f);
    CHECK(m.coeffs.get({RelationRef::Kind::Eq0, 0}) == Poly(-1));

    auto a2 = cli::generic_archive(2, cli::Goal::Orthogonality, opt, log);
    CHECK(a2.entries.size() == 3);
    auto m2 = cli::generic_archive(2, cli::Goal::Minors, opt, log);
    bool has_det = false;
    auto fp = generic_projector(2);
    auto r = rank_coefficients(fp.f);
    for (const auto &e : m2.entries)
        has_det = has_det || std::get<MembershipCertificate>(e.cert).target == r[1] * det(fp.f);
    CHECK(has_det);
    CHECK(canonical_archive(a2) == canonical_archive(cli::generic_archive(2, cli::Goal::Orthogonality, opt, log)));

    opt.effort = 10;
    auto small = capture([&](auto &o, auto &e) { return cli::cmd_generic(2, cli::Goal::Orthogonality, opt, o, e); });
    CHECK(small.code == cli::EffortExceeded);
}

TEST_CASE("azumaya command", "[cli][azumaya]")
{
    cli::Options opt;
    auto fe = from_text(idempotent_e);
    auto r = capture([&](auto &o, auto &) { return cli::azumaya(fe, opt, o); });
    CHECK(r.code == cli::Ok);
    CHECK(r.out.find("leaves: 2\n") != std::string::npos);

    opt.format = cli::Format::Structured;
    auto i2 = from_text(R"({"variables": [], "matrix": [["1", "0"], ["0", "1"]]})");
    auto s = capture([&](auto &o, auto &) { return cli::azumaya(i2, opt, o); });
    CHECK(s.code == cli::Ok);
    auto j = parse_json(s.out);
    CHECK(j["leaf_count"] == 4);
    int trivial = 0;
    for (const auto &l : j["leaves"])
        trivial += l["trivial"].get<bool>();
    // the rank-1 branches die too: 1/(1 - 1) is one of their inverses
    CHECK(trivial == 3);
}

TEST_CASE("verify command", "[cli][verify]")
{
    cli::Options opt;
    std::ostringstream log;
    const auto text = canonical_archive(cli::generic_archive(1, cli::Goal::Orthogonality, opt, log));
    auto ok = capture([&](auto &o, auto &e) { return cli::verify_texts(text, text, o, e); });
    CHECK(ok.code == cli::Ok);

    auto j = parse_json(text);
    auto &coeff = j["certificates"][0]["terms"][0]["coeff"];
    coeff = "0";
    auto bumped = dump(j);
    CHECK(capture([&](auto &o, auto &e) { return cli::verify_texts(bumped, text, o, e); }).code == cli::VerifyFailed);

    const char *pres = R"({"variables": ["e"], "relations": {"eq0": ["e^2 - e"]}})";
    CHECK(capture([&](auto &o, auto &e) {
              return cli::verify_texts(R"({"kind": "membership", "target": "0", "terms": []})", pres, o, e);
          }).code == cli::Ok);
    CHECK(capture([&](auto &o, auto &e) { return cli::verify_texts("{", pres, o, e); }).code == cli::ParseFailed);
    CHECK(capture([&](auto &o, auto &e) { return cli::verify_texts(text, "[1]", o, e); }).code == cli::ParseFailed);
}
