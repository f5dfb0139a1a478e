#ifndef IDEMCERT_RING_SEARCH_HPP
#define IDEMCERT_RING_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <idemcert/ring/certificate.hpp>

// Bounded searches. Nothing here decides ideal membership: a hit yields a
// certificate that is verified by expansion, a miss only means "not found
// within the bound". The mod-p point search gives refutations: a point where
// all equations vanish and t does not shows t is not in the ideal (and no
// power of t is).

namespace idemcert
{

struct SearchBounds
{
    unsigned max_degree = 2;         // total degree of monomial multipliers
    std::size_t max_products = 6000; // cap on multiplier * generator products
};

struct SearchResult
{
    std::optional<std::vector<Poly>> coeffs; // one per generator
    bool truncated = false;                  // the product cap was hit
};

namespace detail
{

struct DescOrder
{
    bool operator()(const Exponents &a, const Exponents &b) const noexcept
    {
        std::uint32_t da = 0, db = 0;
        for (auto x : a)
            da += x;
        for (auto x : b)
            db += x;
        return term_order_greater(a, da, b, db);
    }
};

using SparseVec = std::map<Exponents, mpz_class, DescOrder>;
using Combo = std::map<std::size_t, mpz_class>;

struct LatticeRow
{
    SparseVec vec;
    Combo combo;
};

inline void axpy(SparseVec &y, const mpz_class &a, const SparseVec &x)
{
    for (const auto &[k, v] : x) {
        auto &slot = y[k];
        slot += a * v;
        if (slot == 0)
            y.erase(k);
    }
}

inline void axpy(Combo &y, const mpz_class &a, const Combo &x)
{
    for (const auto &[k, v] : x) {
        auto &slot = y[k];
        slot += a * v;
        if (slot == 0)
            y.erase(k);
    }
}

inline LatticeRow lin(const mpz_class &a, const LatticeRow &x, const mpz_class &b, const LatticeRow &y)
{
    LatticeRow r;
    axpy(r.vec, a, x.vec);
    axpy(r.vec, b, y.vec);
    axpy(r.combo, a, x.combo);
    axpy(r.combo, b, y.combo);
    return r;
}

/// Integer row echelon form with one row per leading monomial.
class Echelon
{
public:
    void insert(LatticeRow cur)
    {
        while (!cur.vec.empty()) {
            auto lead = cur.vec.begin()->first;
            auto it = table_.find(lead);
            if (it == table_.end()) {
                table_.emplace(lead, std::move(cur));
                return;
            }
            const mpz_class a = it->second.vec.begin()->second;
            const mpz_class b = cur.vec.begin()->second;
            if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
                mpz_class q = b / a;
                cur = lin(1, cur, -q, it->second);
                continue;
            }
            mpz_class g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            LatticeRow pivot = lin(x, it->second, y, cur);
            LatticeRow rest = lin(b / g, it->second, -(a / g), cur);
            it->second = std::move(pivot);
            cur = std::move(rest);
        }
    }

    /// Combination expressing `target`, if it lies in the lattice.
    std::optional<Combo> solve(SparseVec target) const
    {
        SparseVec cur = std::move(target);
        Combo out;
        while (!cur.empty()) {
            auto it = table_.find(cur.begin()->first);
            if (it == table_.end())
                return std::nullopt;
            const mpz_class &a = it->second.vec.begin()->second;
            const mpz_class b = cur.begin()->second;
            if (!mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()))
                return std::nullopt;
            mpz_class q = b / a;
            axpy(cur, -q, it->second.vec);
            axpy(out, q, it->second.combo);
        }
        return out;
    }

private:
    std::map<Exponents, LatticeRow, DescOrder> table_;
};

inline SparseVec to_sparse(const Poly &p)
{
    SparseVec v;
    for (const auto &t : p.terms())
        v.emplace(t.exps, t.coeff);
    return v;
}

inline void monomials_up_to(std::size_t nvars, unsigned deg, const std::function<void(const Exponents &)> &fn)
{
    Exponents e(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == nvars) {
            fn(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, deg);
}

} // namespace detail

/// Looks for target = sum c_i * gens_i with each c_i of total degree at most
/// bounds.max_degree, integer coefficients. Returns the coefficients when the
/// integer linear system has a solution.
inline SearchResult find_combination(const Poly &target, const std::vector<Poly> &gens, const ContextPtr &ctx,
                                     SearchBounds bounds = {})
{
    SearchResult res;
    const auto n = ctx ? ctx->size() : 0;
    if (target.is_zero()) {
        res.coeffs = std::vector<Poly>(gens.size(), Poly::zero_in(ctx));
        return res;
    }
    struct Product
    {
        std::size_t gen;
        detail::Exponents mono;
    };
    std::vector<Product> products;
    detail::Echelon ech;
    for (unsigned d = 0; d <= bounds.max_degree && !res.truncated; ++d) {
        detail::monomials_up_to(n, d, [&](const detail::Exponents &e) {
            std::uint32_t s = 0;
            for (auto x : e)
                s += x;
            if (s != d || res.truncated)
                return;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (gens[g].is_zero())
                    continue;
                if (products.size() >= bounds.max_products) {
                    res.truncated = true;
                    return;
                }
                Poly m = Poly::from_terms(ctx, {Term{e, 0, mpz_class(1)}});
                detail::LatticeRow row{detail::to_sparse(m * gens[g].embed(ctx)), {}};
                row.combo.emplace(products.size(), 1);
                products.push_back({g, e});
                ech.insert(std::move(row));
            }
        });
    }
    auto sol = ech.solve(detail::to_sparse(target.embed(ctx)));
    if (!sol)
        return res;
    std::vector<std::vector<Term>> parts(gens.size());
    for (const auto &[idx, c] : *sol)
        parts[products[idx].gen].push_back(Term{products[idx].mono, 0, c});
    std::vector<Poly> coeffs;
    for (auto &p : parts)
        coeffs.push_back(Poly::from_terms(ctx, std::move(p)));
    Poly check = Poly::zero_in(ctx);
    for (std::size_t g = 0; g < gens.size(); ++g)
        check += coeffs[g] * gens[g];
    if (check != target)
        throw CertificateError("lattice search returned a wrong combination");
    res.coeffs = std::move(coeffs);
    return res;
}

/// Membership search against the equations of a presentation.
inline std::optional<MembershipCertificate> search_membership(const Poly &target, const RingPresentation &pres,
                                                              SearchBounds bounds = {}, bool *truncated = nullptr)
{
    auto gens = pres.ideal_generators();
    auto r = find_combination(target, gens, pres.context(), bounds);
    if (truncated)
        *truncated = r.truncated;
    if (!r.coeffs)
        return std::nullopt;
    MembershipCertificate cert{target.embed(pres.context()), {}};
    const auto ne = pres.eq0().size();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if ((*r.coeffs)[g].is_zero())
            continue;
        RelationRef ref = g < ne ? RelationRef{RelationRef::Kind::Eq0, g} : RelationRef{RelationRef::Kind::Param, g - ne};
        cert.coeffs.slot(ref) = (*r.coeffs)[g];
    }
    return cert;
}

/// A point over Z/p where every `vanish` polynomial is 0 and `nonzero` is not.
/// Exhaustive when p^n <= max_points, otherwise a fixed-seed sample.
inline std::optional<std::vector<long>> find_point_mod_p(const std::vector<Poly> &vanish, const Poly &nonzero,
                                                         std::size_t nvars, long p, std::size_t max_points = 200000)
{
    std::vector<long> pt(nvars, 0);
    auto good = [&]() {
        if (nonzero.evaluate_mod(pt, p) == 0)
            return false;
        for (const auto &v : vanish)
            if (v.evaluate_mod(pt, p) != 0)
                return false;
        return true;
    };
    double total = 1;
    for (std::size_t i = 0; i < nvars; ++i)
        total *= static_cast<double>(p);
    if (total <= static_cast<double>(max_points)) {
        for (;;) {
            if (good())
                return pt;
            std::size_t i = 0;
            while (i < nvars && ++pt[i] == p)
                pt[i++] = 0;
            if (i == nvars)
                return std::nullopt;
        }
    }
    std::mt19937_64 rng(0x1de3ce27ULL + static_cast<std::uint64_t>(p));
    std::uniform_int_distribution<long> dist(0, p - 1);
    for (std::size_t k = 0; k < max_points; ++k) {
        for (auto &x : pt)
            x = dist(rng);
        if (good())
            return pt;
    }
    return std::nullopt;
}

/// Tries small primes; a hit proves that no power of `t` lies in the ideal
/// generated by `vanish`.
inline std::optional<std::pair<long, std::vector<long>>> refute_nilpotent(const std::vector<Poly> &vanish, const Poly &t,
                                                                          std::size_t nvars)
{
    for (long p : {2L, 3L, 5L, 7L}) {
        if (auto pt = find_point_mod_p(vanish, t, nvars, p))
            return std::make_pair(p, *pt);
    }
    return std::nullopt;
}

} // namespace idemcert

#endif // IDEMCERT_RING_SEARCH_HPP
