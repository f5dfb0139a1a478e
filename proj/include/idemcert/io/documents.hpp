#ifndef IDEMCERT_IO_DOCUMENTS_HPP
#define IDEMCERT_IO_DOCUMENTS_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <idemcert/matrix/matrix.hpp>
#include <idemcert/ring/certificate.hpp>
#include <idemcert/ring/fact.hpp>

namespace idemcert
{

inline constexpr const char *tool_version = "1.0.0";

/// Malformed document: bad JSON, missing fields, unparsable polynomials,
/// dangling references.
class DocumentError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Canonical text: two-space indent, keys in schema order, final newline.
inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string &text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw DocumentError(std::string("invalid JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DocumentError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DocumentError("cannot write " + path);
    out << text;
}

namespace detail
{

inline const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        throw DocumentError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string string_field(const Json &j, const char *key)
{
    const auto &v = field(j, key);
    if (!v.is_string())
        throw DocumentError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

inline std::vector<std::string> string_list(const Json &j, const char *what)
{
    if (!j.is_array())
        throw DocumentError(std::string(what) + " must be a list");
    std::vector<std::string> out;
    for (const auto &v : j) {
        if (!v.is_string())
            throw DocumentError(std::string(what) + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

inline Poly parse_poly(const std::string &s, const ContextPtr &ctx)
{
    try {
        return Poly::parse(s, ctx);
    } catch (const std::exception &e) {
        throw DocumentError(e.what());
    }
}

inline Json poly_list(const std::vector<Poly> &ps)
{
    Json a = Json::array();
    for (const auto &p : ps)
        a.push_back(p.to_string());
    return a;
}

inline std::string ref_string(RelationRef r)
{
    return (r.kind == RelationRef::Kind::Eq0 ? "eq0:" : "param:") + std::to_string(r.index);
}

inline std::size_t parse_index(const std::string &s, std::size_t from)
{
    if (from >= s.size() || s.size() - from > 9)
        throw DocumentError("bad relation reference '" + s + "'");
    std::size_t v = 0;
    for (std::size_t i = from; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw DocumentError("bad relation reference '" + s + "'");
        v = v * 10 + static_cast<std::size_t>(s[i] - '0');
    }
    return v;
}

inline RelationRef parse_ref(const std::string &s)
{
    if (s.rfind("eq0:", 0) == 0)
        return {RelationRef::Kind::Eq0, parse_index(s, 4)};
    if (s.rfind("param:", 0) == 0)
        return {RelationRef::Kind::Param, parse_index(s, 6)};
    throw DocumentError("bad relation reference '" + s + "'");
}

inline Json cert_terms(const CertVec &v)
{
    Json a = Json::array();
    for (const auto &[ref, c] : v.terms())
        a.push_back(Json{{"relation", ref_string(ref)}, {"coeff", c.to_string()}});
    return a;
}

inline CertVec parse_cert_terms(const Json &j, const RingPresentation &pres)
{
    if (!j.is_array())
        throw DocumentError("terms must be a list");
    CertVec v;
    for (const auto &t : j) {
        auto ref = parse_ref(string_field(t, "relation"));
        const std::size_t bound = ref.kind == RelationRef::Kind::Eq0 ? pres.eq0().size() : pres.params().size();
        if (ref.index >= bound)
            throw DocumentError("dangling relation reference " + ref_string(ref));
        v.slot(ref) += parse_poly(string_field(t, "coeff"), pres.context());
    }
    return v;
}

} // namespace detail

/// Presentation (and optional matrix) as read from an input document.
struct InputDocument
{
    RingPresentation pres;
    std::optional<Mat> matrix;
};

/// {"variables": [...], "relations": {"eq0": [...], "rnul": [...],
/// "unit": [...]}, "params": [{"name", "relation"}], "matrix": [[...]]}.
/// "relations", "params" and "matrix" are optional.
inline InputDocument input_from_json(const Json &j)
{
    if (!j.is_object())
        throw DocumentError("input document must be an object");
    auto vars = detail::string_list(detail::field(j, "variables"), "variables");
    std::vector<std::string> eq0, rnul, unit;
    if (j.contains("relations")) {
        const auto &r = j.at("relations");
        if (!r.is_object())
            throw DocumentError("relations must be an object");
        for (const auto &[key, val] : r.items()) {
            if (key == "eq0")
                eq0 = detail::string_list(val, "relations.eq0");
            else if (key == "rnul")
                rnul = detail::string_list(val, "relations.rnul");
            else if (key == "unit")
                unit = detail::string_list(val, "relations.unit");
            else
                throw DocumentError("unknown relation list '" + key + "'");
        }
    }
    InputDocument doc;
    try {
        doc.pres = RingPresentation::parse(vars, eq0, rnul, unit);
        doc.pres.validate();
        if (j.contains("params")) {
            const auto &ps = j.at("params");
            if (!ps.is_array())
                throw DocumentError("params must be a list");
            for (const auto &p : ps) {
                auto rel = detail::string_field(p, "relation");
                doc.pres = doc.pres.with_param_built(detail::string_field(p, "name"), [&](const Poly &u) {
                    return detail::parse_poly(rel, u.context());
                });
            }
        }
    } catch (const DocumentError &) {
        throw;
    } catch (const std::exception &e) {
        throw DocumentError(e.what());
    }
    if (j.contains("matrix") && !j.at("matrix").is_null()) {
        const auto &m = j.at("matrix");
        if (!m.is_array())
            throw DocumentError("matrix must be a list of rows");
        std::vector<std::vector<std::string>> rows;
        for (const auto &r : m)
            rows.push_back(detail::string_list(r, "matrix rows"));
        try {
            doc.matrix = parse_matrix(rows, doc.pres.context());
        } catch (const std::exception &e) {
            throw DocumentError(e.what());
        }
    }
    return doc;
}

inline Json presentation_to_json(const RingPresentation &pres, const std::optional<Mat> &matrix = std::nullopt)
{
    Json j;
    j["variables"] = pres.generators();
    j["relations"] = Json{{"eq0", detail::poly_list(pres.eq0())},
                          {"rnul", detail::poly_list(pres.rnul())},
                          {"unit", detail::poly_list(pres.unit())}};
    Json ps = Json::array();
    for (const auto &p : pres.params())
        ps.push_back(Json{{"name", p.name}, {"relation", p.relation.to_string()}});
    j["params"] = ps;
    if (matrix) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < matrix->rows(); ++i) {
            Json row = Json::array();
            for (std::size_t c = 0; c < matrix->cols(); ++c)
                row.push_back((*matrix)(i, c).to_string());
            rows.push_back(row);
        }
        j["matrix"] = rows;
    }
    return j;
}

inline InputDocument read_input(const std::string &path) { return input_from_json(parse_json(read_file(path))); }

/// A membership certificate or a fact certificate with a label.
struct CertificateEntry
{
    std::string label;
    std::variant<MembershipCertificate, FactCertificate> cert;
};

inline Json certificate_to_json(const CertificateEntry &e)
{
    Json j;
    if (!e.label.empty())
        j["label"] = e.label;
    if (const auto *m = std::get_if<MembershipCertificate>(&e.cert)) {
        j["kind"] = "membership";
        j["target"] = m->target.to_string();
        j["terms"] = detail::cert_terms(m->coeffs);
        return j;
    }
    const auto &f = std::get<FactCertificate>(e.cert);
    j["kind"] = "fact";
    j["fact"] = to_string(f.kind);
    j["target"] = f.target.to_string();
    j["unit_exponents"] = f.unit_part.exps;
    Json rn = Json::array();
    for (std::size_t i = 0; i < f.ji.rnul.size(); ++i)
        if (!f.ji.rnul[i].is_zero())
            rn.push_back(Json{{"relation", "rnul:" + std::to_string(i)}, {"coeff", f.ji.rnul[i].to_string()}});
    j["rnul_terms"] = rn;
    j["terms"] = detail::cert_terms(f.ji.eq0);
    if (f.kind == FactKind::Unit)
        j["aux"] = f.aux.to_string();
    if (f.kind == FactKind::Rnul)
        j["exponent"] = f.exponent;
    return j;
}

inline CertificateEntry certificate_from_json(const Json &j, const RingPresentation &pres)
{
    CertificateEntry e;
    if (j.contains("label"))
        e.label = detail::string_field(j, "label");
    const auto kind = detail::string_field(j, "kind");
    const Poly target = detail::parse_poly(detail::string_field(j, "target"), pres.context());
    const CertVec terms = detail::parse_cert_terms(detail::field(j, "terms"), pres);
    if (kind == "membership") {
        e.cert = MembershipCertificate{target, terms};
        return e;
    }
    if (kind != "fact")
        throw DocumentError("unknown certificate kind '" + kind + "'");
    const auto fk = detail::string_field(j, "fact");
    UnitProduct u;
    const auto &ue = detail::field(j, "unit_exponents");
    if (!ue.is_array())
        throw DocumentError("unit_exponents must be a list");
    for (const auto &x : ue) {
        if (!x.is_number_unsigned())
            throw DocumentError("unit exponents must be natural numbers");
        u.exps.push_back(x.get<std::uint32_t>());
    }
    for (std::size_t i = 0; i < u.exps.size(); ++i)
        if (u.exps[i] != 0 && i >= pres.unit().size())
            throw DocumentError("dangling unit reference " + std::to_string(i));
    JiPart ji = JiPart::of_eq0(terms);
    const auto &rn = detail::field(j, "rnul_terms");
    if (!rn.is_array())
        throw DocumentError("rnul_terms must be a list");
    for (const auto &t : rn) {
        const auto ref = detail::string_field(t, "relation");
        if (ref.rfind("rnul:", 0) != 0)
            throw DocumentError("bad rnul reference '" + ref + "'");
        const std::size_t idx = detail::parse_index(ref, 5);
        if (idx >= pres.rnul().size())
            throw DocumentError("dangling rnul reference " + ref);
        if (ji.rnul.size() <= idx)
            ji.rnul.resize(idx + 1);
        ji.rnul[idx] += detail::parse_poly(detail::string_field(t, "coeff"), pres.context());
    }
    try {
        if (fk == to_string(FactKind::Eq0))
            e.cert = FactCertificate::eq0(target, u, pres, ji);
        else if (fk == to_string(FactKind::Rnul)) {
            const auto &x = detail::field(j, "exponent");
            if (!x.is_number_unsigned())
                throw DocumentError("exponent must be a natural number");
            e.cert = FactCertificate::rnul(target, x.get<std::uint32_t>(), u, pres, ji);
        } else if (fk == to_string(FactKind::Unit))
            e.cert = FactCertificate::unit(target, detail::parse_poly(detail::string_field(j, "aux"), pres.context()),
                                           u, pres, ji);
        else
            throw DocumentError("unknown fact kind '" + fk + "'");
    } catch (const DocumentError &) {
        throw;
    } catch (const std::exception &ex) {
        throw DocumentError(ex.what());
    }
    return e;
}

/// Pure expansion check of one entry.
inline bool verify_entry(const CertificateEntry &e, const RingPresentation &pres)
{
    if (const auto *m = std::get_if<MembershipCertificate>(&e.cert))
        return verify_membership(*m, pres);
    return fact_check(std::get<FactCertificate>(e.cert), pres);
}

/// Several certificates over one presentation, with run metadata.
struct CertificateArchive
{
    RingPresentation pres;
    std::vector<CertificateEntry> entries;
    Json run = Json::object(); // command and parameters, no timings
};

inline Json archive_to_json(const CertificateArchive &a)
{
    Json j;
    j["format"] = "idemcert-archive";
    j["version"] = 1;
    j["presentation"] = presentation_to_json(a.pres);
    Json cs = Json::array();
    for (const auto &e : a.entries)
        cs.push_back(certificate_to_json(e));
    j["certificates"] = cs;
    j["metadata"] = Json{{"tool", "idemcert"}, {"tool_version", tool_version}, {"run", a.run}};
    return j;
}

/// Reads an archive or a single certificate; certificates are parsed over
/// `pres`. The embedded presentation of an archive is not trusted.
inline std::vector<CertificateEntry> certificates_from_json(const Json &j, const RingPresentation &pres)
{
    if (!j.is_object())
        throw DocumentError("certificate document must be an object");
    std::vector<CertificateEntry> out;
    if (j.contains("format")) {
        if (detail::string_field(j, "format") != "idemcert-archive")
            throw DocumentError("unknown document format");
        const auto &cs = detail::field(j, "certificates");
        if (!cs.is_array())
            throw DocumentError("certificates must be a list");
        for (const auto &c : cs)
            out.push_back(certificate_from_json(c, pres));
    } else {
        out.push_back(certificate_from_json(j, pres));
    }
    return out;
}

inline CertificateArchive archive_from_json(const Json &j)
{
    CertificateArchive a;
    a.pres = input_from_json(detail::field(j, "presentation")).pres;
    a.entries = certificates_from_json(j, a.pres);
    const auto &meta = detail::field(j, "metadata");
    if (meta.contains("run"))
        a.run = meta.at("run");
    return a;
}

inline std::string canonical_archive(const CertificateArchive &a) { return dump(archive_to_json(a)); }

} // namespace idemcert

#endif // IDEMCERT_IO_DOCUMENTS_HPP
