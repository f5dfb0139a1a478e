#ifndef IDEMCERT_CLI_COMMANDS_HPP
#define IDEMCERT_CLI_COMMANDS_HPP

#include <chrono>
#include <iostream>
#include <string>

#include <idemcert/io/documents.hpp>
#include <idemcert/projector/analysis.hpp>

namespace idemcert::cli
{

enum Exit : int {
    Ok = 0,
    VerifyFailed = 1,
    ParseFailed = 2,
    NotIdempotent = 3,
    CertificateFailed = 4,
    EffortExceeded = 5,
};

enum class Format { Text, Structured };
enum class Goal { Orthogonality, Minors };

struct Options
{
    unsigned max_exponent = 8;
    std::size_t effort = 200000; // certificate terms; 0 = unbounded
    bool bases = false;
    Format format = Format::Text;
    std::string output; // archive path for `generic`; empty = stdout
};

namespace util
{

inline std::string index_set(const std::vector<std::size_t> &v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s + "}";
}

inline Json index_json(const std::vector<std::size_t> &v)
{
    Json a = Json::array();
    for (auto i : v)
        a.push_back(i + 1);
    return a;
}

inline Json cert_json(const MembershipCertificate &c, const std::string &label = {})
{
    return certificate_to_json({label, c});
}

inline std::string cert_line(const MembershipCertificate &c, const RingPresentation &pres)
{
    return std::to_string(c.coeffs.term_count()) + " terms, " +
           (verify_membership(c, pres) ? "verified" : "NOT VERIFIED");
}

inline Json matrix_json(const Mat &m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

/// Runs `body`, mapping library exceptions to exit codes.
template <typename F>
int guarded(std::ostream &err, F &&body)
{
    try {
        return body();
    } catch (const NotIdempotentError &e) {
        err << "error: " << e.what() << "\n";
        return NotIdempotent;
    } catch (const EffortExhausted &e) {
        err << "error: effort bound exhausted: " << e.what() << "\n";
        return EffortExceeded;
    } catch (const DocumentError &e) {
        err << "error: " << e.what() << "\n";
        return ParseFailed;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return ParseFailed;
    } catch (const CertificateError &e) {
        err << "error: certificate failure: " << e.what() << "\n";
        return CertificateFailed;
    } catch (const std::bad_alloc &) {
        err << "error: out of memory; lower the problem size or set --effort\n";
        return EffortExceeded;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return CertificateFailed;
    }
}

inline ProjectorMat load_projector(const std::string &path)
{
    auto doc = read_input(path);
    if (!doc.matrix)
        throw DocumentError("input document has no matrix");
    if (!doc.matrix->square())
        throw DocumentError("matrix must be square");
    return make_projector(*doc.matrix, doc.pres);
}

} // namespace util

/// Rank polynomial, idempotents, comaximal family, minor certificates,
/// constant-rank verdicts and optionally localization bases.
inline int analyze(const ProjectorMat &fp, const Options &opt, std::ostream &out)
{
    const auto &pres = fp.pres;
    const std::size_t n = fp.n();
    CertificateSource src(fp, AzumayaOptions{opt.effort, GlueStrategy::Auto});
    auto ids = fundamental_idempotents(fp, src);
    auto fam = comaximal_family(fp, ids, src);
    std::vector<MinorAnnihilation> minors;
    for (std::size_t k = 0; k < n; ++k)
        for (auto &m : minor_annihilation(fp, ids, k, src))
            minors.push_back(std::move(m));
    bool ok = ids.verify(pres) && fam.verify(pres, ids);
    for (const auto &m : minors)
        ok = ok && verify_membership(m.cert, pres);
    std::vector<ConstantRankResult> exact, dyn;
    for (std::size_t k = 0; k <= n; ++k) {
        exact.push_back(constant_rank_check(fp, k, RankMode::Exact, opt.max_exponent));
        dyn.push_back(constant_rank_check(fp, k, RankMode::DynamicNilpotent, opt.max_exponent));
        for (const auto &f : dyn.back().nilpotence)
            ok = ok && fact_check(f, pres);
    }
    std::vector<std::optional<LocalizationRank>> loc;
    for (const auto &e : fam.entries) {
        loc.push_back(localization_rank(fp, ids, e.s, opt.max_exponent));
        if (loc.back())
            ok = ok && verify_membership(loc.back()->cert, pres);
    }
    std::vector<std::optional<FreenessResult>> bases;
    if (opt.bases)
        for (const auto &e : fam.entries) {
            if (e.s.is_zero()) {
                bases.emplace_back();
                continue;
            }
            bases.push_back(localization_basis(fp, ids, e, minors));
            ok = ok && bases.back()->verify(fp.f);
        }
    const Poly rx = rank_polynomial(fp, pres.has_name("X") ? pres.fresh_name("X") : "X");
    const bool rb = rank_basis_check(fp);

    if (opt.format == Format::Structured) {
        Json j;
        j["presentation"] = presentation_to_json(pres, fp.f);
        j["rank_polynomial"] = rx.to_string();
        j["idempotents"] = idemcert::detail::poly_list(ids.r);
        Json orth = Json::array();
        for (const auto &c : ids.orthogonality) {
            Json e{{"h", c.h}, {"k", c.k}, {"origin", to_string(c.origin)}};
            e["certificate"] = util::cert_json(c.cert);
            orth.push_back(e);
        }
        j["orthogonality"] = orth;
        j["unit_sum"] = util::cert_json(ids.unit_sum);
        Json entries = Json::array();
        for (std::size_t i = 0; i < fam.entries.size(); ++i) {
            const auto &e = fam.entries[i];
            Json x{{"k", e.k}, {"index", util::index_json(e.index)}, {"minor", e.t.to_string()},
                   {"s", e.s.to_string()}};
            if (loc[i])
                x["localization_rank"] = Json{{"h", loc[i]->h}, {"m", loc[i]->m},
                                              {"certificate", util::cert_json(loc[i]->cert)}};
            else
                x["localization_rank"] = nullptr;
            if (opt.bases) {
                if (bases[i])
                    x["basis"] = Json{{"inverse", bases[i]->pres.params().back().name + " = 1/(" + e.s.to_string() +
                                                      ")"},
                                      {"image_basis", util::matrix_json(bases[i]->image_basis)}};
                else
                    x["basis"] = nullptr;
            }
            entries.push_back(x);
        }
        Json sums = Json::array();
        for (const auto &rs : fam.rank_sums)
            sums.push_back(Json{{"k", rs.k}, {"origin", to_string(rs.origin)}, {"certificate", util::cert_json(rs.cert)}});
        j["comaximal_family"] = Json{{"entries", entries}, {"rank_sums", sums}, {"total", util::cert_json(fam.total)}};
        Json mj = Json::array();
        for (const auto &m : minors)
            mj.push_back(Json{{"k", m.k}, {"rows", util::index_json(m.rows)}, {"cols", util::index_json(m.cols)},
                              {"origin", to_string(m.origin)}, {"certificate", util::cert_json(m.cert)}});
        j["minor_annihilation"] = mj;
        Json cr = Json::array();
        for (std::size_t k = 0; k <= n; ++k)
            cr.push_back(Json{{"k", k}, {"exact", to_string(exact[k].verdict)}, {"dynamic", to_string(dyn[k].verdict)}});
        j["constant_rank"] = cr;
        j["rank_basis_identity"] = rb;
        j["verified"] = ok;
        out << dump(j);
    } else {
        out << "matrix " << n << "x" << n << ": " << to_string(fp.f) << "\n";
        out << "R(X) = " << rx << "\n";
        for (std::size_t k = 0; k <= n; ++k)
            out << "r_" << k << " = " << ids.r[k] << "\n";
        out << "sum r = 1: " << util::cert_line(ids.unit_sum, pres) << "\n";
        for (const auto &c : ids.orthogonality)
            out << "r_" << c.h << " r_" << c.k << " = 0: " << to_string(c.origin) << ", " << util::cert_line(c.cert, pres)
                << "\n";
        out << "comaximal family (" << fam.entries.size() << " elements):\n";
        for (std::size_t i = 0; i < fam.entries.size(); ++i) {
            const auto &e = fam.entries[i];
            out << "  s_" << e.k << "," << util::index_set(e.index) << " = " << e.s;
            if (loc[i])
                out << "  [r_" << loc[i]->h << " s^" << loc[i]->m << " = s^" << loc[i]->m << "]";
            out << "\n";
            if (opt.bases && bases[i]) {
                out << "    basis over " << bases[i]->pres.params().back().name << " = 1/s: "
                    << to_string(bases[i]->image_basis) << "\n";
            }
        }
        for (const auto &rs : fam.rank_sums)
            out << "sum_i s_" << rs.k << ",i = r_" << rs.k << ": " << to_string(rs.origin) << ", "
                << util::cert_line(rs.cert, pres) << "\n";
        out << "sum s = 1: " << util::cert_line(fam.total, pres) << "\n";
        for (const auto &m : minors)
            out << "r_" << m.k << " * minor " << util::index_set(m.rows) << "x" << util::index_set(m.cols)
                << " = 0: " << to_string(m.origin) << ", " << util::cert_line(m.cert, pres) << "\n";
        for (std::size_t k = 0; k <= n; ++k)
            out << "constant rank " << k << ": exact " << to_string(exact[k].verdict) << ", dynamic "
                << to_string(dyn[k].verdict) << "\n";
        out << "charpoly = sum r_i X^(n-i) (X-1)^i: " << (rb ? "yes" : "no") << "\n";
        out << (ok ? "all certificates verified" : "CERTIFICATE FAILURE") << "\n";
    }
    return ok ? Ok : CertificateFailed;
}

inline int cmd_analyze(const std::string &input, const Options &opt, std::ostream &out, std::ostream &err)
{
    return util::guarded(err, [&] { return analyze(util::load_projector(input), opt, out); });
}

/// Certificates for the generic projector over B_n as an archive.
inline CertificateArchive generic_archive(std::size_t n, Goal goal, const Options &opt, std::ostream &log,
                                          std::ostream *timing = nullptr)
{
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto fp = generic_projector(n);
    AzumayaOptions ao{opt.effort, GlueStrategy::Auto};
    auto run = azumaya_run(fp);
    log << "tree: " << run.tree.size() << " nodes, " << run.leaves.size() << " leaves\n";
    CertificateArchive a;
    a.pres = fp.pres;
    a.run = Json{{"command", "generic"},
                 {"n", n},
                 {"goal", goal == Goal::Orthogonality ? "orthogonality" : "minors"},
                 {"effort", opt.effort}};
    auto r = rank_coefficients(fp.f);
    if (goal == Goal::Orthogonality) {
        for (auto &c : prove_orthogonality_all(fp, run, ao))
            a.entries.push_back({"r" + std::to_string(c.h) + "*r" + std::to_string(c.k), std::move(c.cert)});
    } else {
        for (auto &c : prove_minor_annihilation(fp, run, ao))
            a.entries.push_back({"r" + std::to_string(c.k) + "*minor" + util::index_set(c.rows) +
                                     util::index_set(c.cols),
                                 std::move(c.cert)});
    }
    auto secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::size_t total = 0;
    for (const auto &e : a.entries) {
        const auto &m = std::get<MembershipCertificate>(e.cert);
        if (!verify_membership(m, fp.pres))
            throw CertificateError("certificate " + e.label + " does not verify");
        log << e.label << ": " << m.coeffs.term_count() << " terms, verified\n";
        total += m.coeffs.term_count();
    }
    log << a.entries.size() << " certificates, " << total << " terms in total\n";
    if (timing)
        *timing << "time: " << secs << " s\n";
    return a;
}

inline int cmd_generic(std::size_t n, Goal goal, const Options &opt, std::ostream &out, std::ostream &err)
{
    return util::guarded(err, [&] {
        if (n < 1)
            throw DocumentError("--n must be at least 1");
        std::ostream &log = opt.output.empty() ? err : out;
        auto a = generic_archive(n, goal, opt, log, &err);
        auto text = canonical_archive(a);
        if (opt.output.empty())
            out << text;
        else
            write_file(opt.output, text);
        return Ok;
    });
}

inline int azumaya(const ProjectorMat &fp, const Options &opt, std::ostream &out)
{
    auto run = azumaya_run(fp);
    bool ok = run.comaximality.verify(fp.pres);
    for (const auto &l : run.leaves)
        ok = ok && l.conj.verify(fp.f);
    if (opt.format == Format::Structured) {
        Json j;
        j["presentation"] = presentation_to_json(fp.pres, fp.f);
        Json nodes = Json::array();
        for (std::size_t i = 0; i < run.tree.size(); ++i) {
            const auto &nd = run.tree.node(i);
            Json x{{"id", i}, {"depth", nd.depth}};
            x["parent"] = nd.parent ? Json(*nd.parent) : Json(nullptr);
            x["event"] = nd.event ? Json(nd.event->describe()) : Json(nullptr);
            Json kids = Json::array();
            for (auto c : nd.children)
                kids.push_back(c);
            x["children"] = kids;
            if (!nd.pres.params().empty())
                x["param"] = Json{{"name", nd.pres.params().back().name},
                                  {"relation", nd.pres.params().back().relation.to_string()}};
            nodes.push_back(x);
        }
        j["tree"] = nodes;
        Json leaves = Json::array();
        for (const auto &l : run.leaves)
            leaves.push_back(Json{{"node", l.node},
                                  {"s", l.s_leaf.to_string()},
                                  {"rank", l.k},
                                  {"trivial", l.trivial},
                                  {"conjugation", util::matrix_json(l.conj.c.m)},
                                  {"conjugation_verified", l.conj.verify(fp.f)}});
        j["leaves"] = leaves;
        j["leaf_count"] = run.leaves.size();
        Json cm{{"weights", idemcert::detail::poly_list(run.comaximality.c)}};
        cm["certificate"] = util::cert_json(run.comaximality.cert);
        j["comaximality"] = cm;
        j["verified"] = ok;
        out << dump(j);
    } else {
        out << run.tree.dump();
        for (const auto &l : run.leaves) {
            out << "leaf " << l.node << ": s = " << l.s_leaf << ", rank " << l.k;
            if (l.trivial)
                out << " (trivial ring)";
            out << ", C = " << to_string(l.conj.c.m) << ", C F C^-1 = I_" << l.k << ": "
                << (l.conj.verify(fp.f) ? "verified" : "NOT VERIFIED") << "\n";
        }
        out << "comaximality: sum c_i s_i = 1 with c = [";
        for (std::size_t i = 0; i < run.comaximality.c.size(); ++i)
            out << (i ? ", " : "") << run.comaximality.c[i];
        out << "]: " << util::cert_line(run.comaximality.cert, fp.pres) << "\n";
        out << "leaves: " << run.leaves.size() << "\n";
    }
    return ok ? Ok : CertificateFailed;
}

inline int cmd_azumaya(const std::string &input, const Options &opt, std::ostream &out, std::ostream &err)
{
    return util::guarded(err, [&] { return azumaya(util::load_projector(input), opt, out); });
}

/// Exit 0 iff every certificate in `cert_text` verifies over the presentation
/// in `pres_text`; only polynomial expansion is used.
inline int verify_texts(const std::string &cert_text, const std::string &pres_text, std::ostream &out,
                        std::ostream &err)
{
    std::vector<CertificateEntry> entries;
    RingPresentation pres;
    try {
        auto pj = parse_json(pres_text);
        // an archive may serve as its own presentation file
        if (pj.is_object() && pj.contains("format"))
            pj = idemcert::detail::field(pj, "presentation");
        pres = input_from_json(pj).pres;
        entries = certificates_from_json(parse_json(cert_text), pres);
    } catch (const DocumentError &e) {
        err << "error: " << e.what() << "\n";
        return ParseFailed;
    }
    bool ok = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        bool v = false;
        try {
            v = verify_entry(entries[i], pres);
        } catch (const std::exception &e) {
            err << "error: " << e.what() << "\n";
        }
        if (!v) {
            out << "FAILED: " << (entries[i].label.empty() ? "#" + std::to_string(i) : entries[i].label) << "\n";
            ok = false;
        }
    }
    if (ok)
        out << "ok: " << entries.size() << " certificate" << (entries.size() == 1 ? "" : "s") << " verified\n";
    return ok ? Ok : VerifyFailed;
}

inline int cmd_verify(const std::string &cert_path, const std::string &pres_path, std::ostream &out,
                      std::ostream &err)
{
    std::string ct, pt;
    try {
        ct = read_file(cert_path);
        pt = read_file(pres_path);
    } catch (const DocumentError &e) {
        err << "error: " << e.what() << "\n";
        return ParseFailed;
    }
    return verify_texts(ct, pt, out, err);
}

} // namespace idemcert::cli

#endif // IDEMCERT_CLI_COMMANDS_HPP
