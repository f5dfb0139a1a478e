#ifndef IDEMCERT_MATRIX_TRANSFORM_HPP
#define IDEMCERT_MATRIX_TRANSFORM_HPP

#include <string>
#include <utility>
#include <vector>

#include <idemcert/matrix/determinant.hpp>

namespace idemcert
{

struct TransformRecord
{
    std::string op;
    std::string detail;
};

/// P * base * Q = current, with P, Q invertible. The four witness matrices
/// certify P P^-1 = I, P^-1 P = I, Q Q^-1 = I, Q^-1 Q = I (exact in the free
/// ring, certified in presented rings).
struct EquivWitness
{
    Mat base;
    Mat p, p_inv, q, q_inv;
    WMat pp_inv, p_inv_p, qq_inv, q_inv_q;
    std::vector<TransformRecord> log;

    static EquivWitness identity(const Mat &g)
    {
        EquivWitness w;
        w.base = g;
        w.p = w.p_inv = Mat::identity(g.rows());
        w.q = w.q_inv = Mat::identity(g.cols());
        w.pp_inv = w.p_inv_p = lift(w.p);
        w.qq_inv = w.q_inv_q = lift(w.q);
        return w;
    }

    /// Full re-check: exact P*base*Q == current, witness left sides match the
    /// products, right sides are identities, all certificates verify.
    bool verify(const Mat &current, const RingPresentation &pres) const
    {
        if (p * base * q != current)
            return false;
        auto check = [&](const WMat &w, const Mat &a, const Mat &b) {
            return lhs_of(w) == a * b && rhs_of(w) == Mat::identity(a.rows()) && verify_all(w, pres);
        };
        return check(pp_inv, p, p_inv) && check(p_inv_p, p_inv, p) && check(qq_inv, q, q_inv) &&
               check(q_inv_q, q_inv, q);
    }
};

/// Elementary operations on a presentation matrix. Indices are 0-based.
struct TransformOp
{
    enum class Kind {
        AddRowMultiple, // row i += coeff * row j
        AddColMultiple, // col i += coeff * col j
        SwapRows,
        SwapCols,
        ScaleRow, // row i *= coeff, coeff * inverse = 1 certified by unit_witness
        ScaleCol,
        AppendZeroColumn,
        DeleteZeroColumn, // column i, which must be exactly zero
        Border,           // G -> [[G, column], [0, 1]]
    };
    Kind kind = Kind::SwapRows;
    std::size_t i = 0, j = 0;
    Poly coeff;
    Poly inverse;
    EqualityWitness unit_witness;
    Mat column;

    static TransformOp add_row(std::size_t i, std::size_t j, Poly c) { return {Kind::AddRowMultiple, i, j, std::move(c), {}, {}, {}}; }
    static TransformOp add_col(std::size_t i, std::size_t j, Poly c) { return {Kind::AddColMultiple, i, j, std::move(c), {}, {}, {}}; }
    static TransformOp swap_rows(std::size_t i, std::size_t j) { return {Kind::SwapRows, i, j, {}, {}, {}, {}}; }
    static TransformOp swap_cols(std::size_t i, std::size_t j) { return {Kind::SwapCols, i, j, {}, {}, {}, {}}; }
    static TransformOp scale_row(std::size_t i, Poly c, Poly inv, EqualityWitness w)
    {
        return {Kind::ScaleRow, i, 0, std::move(c), std::move(inv), std::move(w), {}};
    }
    static TransformOp scale_col(std::size_t i, Poly c, Poly inv, EqualityWitness w)
    {
        return {Kind::ScaleCol, i, 0, std::move(c), std::move(inv), std::move(w), {}};
    }
    static TransformOp append_zero_column() { return {Kind::AppendZeroColumn, 0, 0, {}, {}, {}, {}}; }
    static TransformOp delete_zero_column(std::size_t i) { return {Kind::DeleteZeroColumn, i, 0, {}, {}, {}, {}}; }
    static TransformOp border(Mat column) { return {Kind::Border, 0, 0, {}, {}, {}, std::move(column)}; }
};

namespace detail
{

inline Mat elementary_add(std::size_t n, std::size_t i, std::size_t j, const Poly &c)
{
    Mat e = Mat::identity(n);
    e(i, j) = e(i, j) + c;
    return e;
}

inline Mat elementary_swap(std::size_t n, std::size_t i, std::size_t j)
{
    Mat e = Mat::identity(n);
    e(i, i) = Poly(0);
    e(j, j) = Poly(0);
    e(i, j) = Poly(1);
    e(j, i) = Poly(1);
    return e;
}

// A * W * B where W certifies X = I, then relabel: lhs must equal a*x*b.
inline WMat sandwich(const Mat &a, const WMat &w, const Mat &b) { return lift(a) * w * lift(b); }

// Witness matrix whose lhs is `lhs_exact` (an exact product equal to w's lhs).
inline WMat relabel(const WMat &w, const Mat &lhs_exact)
{
    std::vector<EqualityWitness> out;
    for (std::size_t k = 0; k < w.data().size(); ++k)
        out.push_back(w.data()[k].with_lhs(lhs_exact.data()[k]));
    return WMat(w.rows(), w.cols(), std::move(out));
}

// Left multiplication of the row side by E (with inverse Einv and witnesses
// for E Einv = I and Einv E = I).
inline void left_apply(EquivWitness &w, const Mat &e, const Mat &einv, const WMat &e_einv, const WMat &einv_e)
{
    Mat np = e * w.p, npi = w.p_inv * einv;
    // (E P)(P^-1 E^-1) = E (P P^-1) E^-1 = E E^-1 = I
    WMat a = sandwich(e, w.pp_inv, einv); // E P P^-1 E^-1 = E E^-1
    w.pp_inv = relabel(chain(a, e_einv), np * npi);
    // (P^-1 E^-1)(E P) = P^-1 (E^-1 E) P = P^-1 P = I
    WMat b = lift(w.p_inv) * einv_e * lift(w.p); // P^-1 E^-1 E P = P^-1 P
    w.p_inv_p = relabel(chain(b, relabel(w.p_inv_p, w.p_inv * w.p)), npi * np);
    w.p = std::move(np);
    w.p_inv = std::move(npi);
}

inline void right_apply(EquivWitness &w, const Mat &e, const Mat &einv, const WMat &e_einv, const WMat &einv_e)
{
    Mat nq = w.q * e, nqi = einv * w.q_inv;
    // (Q E)(E^-1 Q^-1) = Q (E E^-1) Q^-1 = Q Q^-1
    WMat a = lift(w.q) * e_einv * lift(w.q_inv);
    w.qq_inv = relabel(chain(a, w.qq_inv), nq * nqi);
    // (E^-1 Q^-1)(Q E) = E^-1 (Q^-1 Q) E = E^-1 E
    WMat b = sandwich(einv, w.q_inv_q, e);
    w.q_inv_q = relabel(chain(b, einv_e), nqi * nq);
    w.q = std::move(nq);
    w.q_inv = std::move(nqi);
}

inline std::string poly_detail(const Poly &p) { return p.to_string(); }

} // namespace detail

/// Applies one elementary operation. The returned matrix presents the same
/// module; the witness is extended and its log records the step.
inline std::pair<Mat, EquivWitness> presentation_transform(const Mat &g, EquivWitness w, const TransformOp &op,
                                                           const RingPresentation &pres)
{
    using K = TransformOp::Kind;
    const std::size_t q = g.rows(), m = g.cols();
    auto need = [](bool ok, const char *msg) {
        if (!ok)
            throw DimensionError(msg);
    };
    switch (op.kind) {
    case K::AddRowMultiple:
    case K::SwapRows:
    case K::ScaleRow: {
        need(op.i < q && (op.kind == K::ScaleRow || (op.j < q && op.i != op.j)), "row operation: bad indices");
        Mat e, einv;
        WMat e_einv, einv_e;
        std::string detail;
        if (op.kind == K::AddRowMultiple) {
            e = detail::elementary_add(q, op.i, op.j, op.coeff);
            einv = detail::elementary_add(q, op.i, op.j, -op.coeff);
            e_einv = lift(e * einv);
            einv_e = lift(einv * e);
            detail = "row" + std::to_string(op.i) + " += (" + op.coeff.to_string() + ")*row" + std::to_string(op.j);
        } else if (op.kind == K::SwapRows) {
            e = einv = detail::elementary_swap(q, op.i, op.j);
            e_einv = einv_e = lift(e * e);
            detail = "swap row" + std::to_string(op.i) + ", row" + std::to_string(op.j);
        } else {
            const auto &uw = op.unit_witness;
            if (uw.lhs() != op.coeff * op.inverse || uw.rhs() != Poly(1) || !uw.verify(pres))
                throw RingError("scaling by a non-certified unit");
            e = einv = Mat::identity(q);
            e(op.i, op.i) = op.coeff;
            einv(op.i, op.i) = op.inverse;
            e_einv = lift(Mat::identity(q));
            e_einv(op.i, op.i) = uw;
            einv_e = e_einv;
            einv_e(op.i, op.i) = uw.with_lhs(op.inverse * op.coeff);
            detail = "row" + std::to_string(op.i) + " *= " + op.coeff.to_string();
        }
        Mat ng = e * g;
        detail::left_apply(w, e, einv, e_einv, einv_e);
        w.log.push_back({op.kind == K::ScaleRow ? "scale_row" : op.kind == K::SwapRows ? "swap_rows" : "add_row", detail});
        return {ng, w};
    }
    case K::AddColMultiple:
    case K::SwapCols:
    case K::ScaleCol: {
        need(op.i < m && (op.kind == K::ScaleCol || (op.j < m && op.i != op.j)), "column operation: bad indices");
        Mat e, einv;
        WMat e_einv, einv_e;
        std::string detail;
        if (op.kind == K::AddColMultiple) {
            // col i += c col j  is  G * (I + c e_{j i})
            e = detail::elementary_add(m, op.j, op.i, op.coeff);
            einv = detail::elementary_add(m, op.j, op.i, -op.coeff);
            e_einv = lift(e * einv);
            einv_e = lift(einv * e);
            detail = "col" + std::to_string(op.i) + " += (" + op.coeff.to_string() + ")*col" + std::to_string(op.j);
        } else if (op.kind == K::SwapCols) {
            e = einv = detail::elementary_swap(m, op.i, op.j);
            e_einv = einv_e = lift(e * e);
            detail = "swap col" + std::to_string(op.i) + ", col" + std::to_string(op.j);
        } else {
            const auto &uw = op.unit_witness;
            if (uw.lhs() != op.coeff * op.inverse || uw.rhs() != Poly(1) || !uw.verify(pres))
                throw RingError("scaling by a non-certified unit");
            e = einv = Mat::identity(m);
            e(op.i, op.i) = op.coeff;
            einv(op.i, op.i) = op.inverse;
            e_einv = lift(Mat::identity(m));
            e_einv(op.i, op.i) = uw;
            einv_e = e_einv;
            einv_e(op.i, op.i) = uw.with_lhs(op.inverse * op.coeff);
            detail = "col" + std::to_string(op.i) + " *= " + op.coeff.to_string();
        }
        Mat ng = g * e;
        detail::right_apply(w, e, einv, e_einv, einv_e);
        w.log.push_back({op.kind == K::ScaleCol ? "scale_col" : op.kind == K::SwapCols ? "swap_cols" : "add_col", detail});
        return {ng, w};
    }
    case K::AppendZeroColumn: {
        Mat ng = Mat::blocks(g, Mat(q, 1), Mat(0, m), Mat(0, 1));
        // Extend base and Q by a trailing zero column / unit entry; P*base*Q stays exact.
        w.base = Mat::blocks(w.base, Mat(w.base.rows(), 1), Mat(0, w.base.cols()), Mat(0, 1));
        auto ext = [](const Mat &a) { return Mat::block_diag(a, Mat::identity(1)); };
        auto extw = [](const WMat &a) { return WMat::block_diag(a, WMat::identity(1)); };
        w.q = ext(w.q);
        w.q_inv = ext(w.q_inv);
        w.qq_inv = extw(w.qq_inv);
        w.q_inv_q = extw(w.q_inv_q);
        w.log.push_back({"append_zero_column", std::to_string(m)});
        return {ng, w};
    }
    case K::DeleteZeroColumn: {
        need(op.i < m, "delete column: bad index");
        for (std::size_t r = 0; r < q; ++r)
            if (!g(r, op.i).is_zero())
                throw RingError("delete_zero_column: column is not zero");
        std::vector<std::size_t> rows(q), cols;
        for (std::size_t r = 0; r < q; ++r)
            rows[r] = r;
        for (std::size_t c = 0; c < m; ++c)
            if (c != op.i)
                cols.push_back(c);
        Mat ng = g.submatrix(rows, cols);
        auto log = std::move(w.log);
        w = EquivWitness::identity(ng);
        w.log = std::move(log);
        w.log.push_back({"delete_zero_column", std::to_string(op.i) + "; witness reset to new base"});
        return {ng, w};
    }
    case K::Border: {
        need(op.column.rows() == q && op.column.cols() == 1, "border: column must be q x 1");
        Mat ng = Mat::blocks(g, op.column, Mat(1, m), Mat::identity(1));
        auto log = std::move(w.log);
        w = EquivWitness::identity(ng);
        w.log = std::move(log);
        w.log.push_back({"border", to_string(op.column) + "; witness reset to new base"});
        return {ng, w};
    }
    }
    throw DimensionError("unknown transform");
}

} // namespace idemcert

#endif // IDEMCERT_MATRIX_TRANSFORM_HPP
