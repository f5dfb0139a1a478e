#ifndef IDEMCERT_RING_POLY_HPP
#define IDEMCERT_RING_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace idemcert
{

/// Raised for operands living in incompatible variable contexts, bad
/// substitutions and other malformed inputs to the ring layer.
class RingError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Ordered list of variable names. Shared, immutable.
class Context
{
public:
    Context() = default;
    explicit Context(std::vector<std::string> names) : names_(std::move(names))
    {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!valid_name(names_[i]))
                throw RingError("invalid variable name '" + names_[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[j] == names_[i])
                    throw RingError("duplicate variable name '" + names_[i] + "'");
        }
    }

    const std::vector<std::string> &names() const noexcept { return names_; }
    std::size_t size() const noexcept { return names_.size(); }

    std::ptrdiff_t index_of(std::string_view name) const noexcept
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return static_cast<std::ptrdiff_t>(i);
        return -1;
    }

    bool contains(std::string_view name) const noexcept { return index_of(name) >= 0; }

    bool is_prefix_of(const Context &other) const noexcept
    {
        if (names_.size() > other.names_.size())
            return false;
        return std::equal(names_.begin(), names_.end(), other.names_.begin());
    }

    static bool valid_name(std::string_view s) noexcept
    {
        if (s.empty())
            return false;
        if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
            return false;
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                return false;
        return true;
    }

private:
    std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const Context>;

inline ContextPtr make_context(std::vector<std::string> names)
{
    return std::make_shared<const Context>(std::move(names));
}

/// Appends names to a context (which may be null).
inline ContextPtr extend_context(const ContextPtr &base, const std::vector<std::string> &extra)
{
    std::vector<std::string> names = base ? base->names() : std::vector<std::string>{};
    names.insert(names.end(), extra.begin(), extra.end());
    return make_context(std::move(names));
}

namespace detail
{

inline std::size_t ctx_size(const ContextPtr &c) noexcept { return c ? c->size() : 0; }

inline bool ctx_equal(const ContextPtr &a, const ContextPtr &b) noexcept
{
    if (a == b)
        return true;
    if (ctx_size(a) != ctx_size(b))
        return false;
    if (ctx_size(a) == 0)
        return true;
    return a->names() == b->names();
}

// Smallest context containing both, when one is a prefix of the other.
inline ContextPtr common_context(const ContextPtr &a, const ContextPtr &b)
{
    if (ctx_equal(a, b))
        return ctx_size(a) >= ctx_size(b) ? a : b;
    if (ctx_size(a) == 0)
        return b;
    if (ctx_size(b) == 0)
        return a;
    if (a->is_prefix_of(*b))
        return b;
    if (b->is_prefix_of(*a))
        return a;
    throw RingError("polynomial context mismatch");
}

using Exponents = std::vector<std::uint32_t>;

struct ExponentsHash
{
    std::size_t operator()(const Exponents &e) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : e) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace detail

struct Term
{
    detail::Exponents exps;
    std::uint32_t degree = 0;
    mpz_class coeff;
};

// Graded lex, descending; variable precedence follows declaration order.
inline bool term_order_greater(const detail::Exponents &a, std::uint32_t da, const detail::Exponents &b,
                               std::uint32_t db) noexcept
{
    if (da != db)
        return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

/// Multivariate polynomial with arbitrary-precision integer coefficients
/// over an ordered variable context. Always kept in canonical form: no zero
/// coefficients, terms sorted by descending graded-lex order.
class Poly
{
public:
    Poly() = default;
    Poly(long c) : Poly(mpz_class(c)) {}
    Poly(int c) : Poly(mpz_class(c)) {}
    Poly(const mpz_class &c)
    {
        if (c != 0)
            terms_.push_back(Term{{}, 0, c});
    }

    static Poly constant(const mpz_class &c, ContextPtr ctx)
    {
        Poly p;
        p.ctx_ = std::move(ctx);
        if (c != 0)
            p.terms_.push_back(Term{detail::Exponents(detail::ctx_size(p.ctx_), 0), 0, c});
        return p;
    }

    static Poly variable(const ContextPtr &ctx, std::string_view name)
    {
        auto idx = ctx ? ctx->index_of(name) : -1;
        if (idx < 0)
            throw RingError("unknown variable '" + std::string(name) + "'");
        return variable(ctx, static_cast<std::size_t>(idx));
    }

    static Poly variable(const ContextPtr &ctx, std::size_t index)
    {
        Poly p;
        p.ctx_ = ctx;
        detail::Exponents e(ctx->size(), 0);
        e.at(index) = 1;
        p.terms_.push_back(Term{std::move(e), 1, mpz_class(1)});
        return p;
    }

    /// Builds from arbitrary (possibly unsorted, duplicated, zero) terms.
    static Poly from_terms(ContextPtr ctx, std::vector<Term> terms)
    {
        Poly p;
        p.ctx_ = std::move(ctx);
        for (auto &t : terms) {
            if (t.exps.size() != detail::ctx_size(p.ctx_))
                throw RingError("exponent vector length does not match context");
            t.degree = 0;
            for (auto x : t.exps)
                t.degree += x;
        }
        std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
            return term_order_greater(a.exps, a.degree, b.exps, b.degree);
        });
        for (auto &t : terms) {
            if (!p.terms_.empty() && p.terms_.back().exps == t.exps)
                p.terms_.back().coeff += t.coeff;
            else
                p.terms_.push_back(std::move(t));
            if (p.terms_.back().coeff == 0)
                p.terms_.pop_back();
        }
        return p;
    }

    const ContextPtr &context() const noexcept { return ctx_; }
    std::size_t nvars() const noexcept { return detail::ctx_size(ctx_); }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].degree == 0); }

    mpz_class constant_term() const
    {
        if (!terms_.empty() && terms_.back().degree == 0)
            return terms_.back().coeff;
        return 0;
    }

    std::uint32_t total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().degree; }

    std::uint32_t degree_in(std::size_t var) const noexcept
    {
        std::uint32_t d = 0;
        for (const auto &t : terms_)
            d = std::max(d, t.exps[var]);
        return d;
    }

    std::uint32_t degree_in(std::string_view name) const
    {
        auto idx = ctx_ ? ctx_->index_of(name) : -1;
        if (idx < 0)
            return 0;
        return degree_in(static_cast<std::size_t>(idx));
    }

    /// True if no term mentions a variable at position >= n.
    bool uses_only_first(std::size_t n) const noexcept
    {
        for (const auto &t : terms_)
            for (std::size_t i = n; i < t.exps.size(); ++i)
                if (t.exps[i] != 0)
                    return false;
        return true;
    }

    /// Re-expresses the polynomial in a context that extends the current one.
    Poly embed(const ContextPtr &target) const
    {
        if (detail::ctx_equal(ctx_, target)) {
            Poly p = *this;
            p.ctx_ = target;
            return p;
        }
        if (detail::ctx_size(ctx_) != 0 && !(target && ctx_->is_prefix_of(*target)))
            throw RingError("cannot embed polynomial: context is not a prefix of the target");
        Poly p;
        p.ctx_ = target;
        p.terms_ = terms_;
        auto n = detail::ctx_size(target);
        for (auto &t : p.terms_)
            t.exps.resize(n, 0);
        // Padding with trailing zeros preserves the order.
        return p;
    }

    /// Drops trailing context variables that the polynomial does not use.
    Poly restrict_to(const ContextPtr &target) const
    {
        auto n = detail::ctx_size(target);
        if (detail::ctx_size(target) > nvars() || (n > 0 && !target->is_prefix_of(*ctx_)))
            throw RingError("restrict_to: target is not a prefix of the context");
        if (!uses_only_first(n))
            throw RingError("restrict_to: polynomial uses dropped variables");
        Poly p;
        p.ctx_ = target;
        p.terms_ = terms_;
        for (auto &t : p.terms_)
            t.exps.resize(n);
        return p;
    }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        if (a.terms_.size() != b.terms_.size())
            return false;
        if (a.terms_.empty())
            return true;
        if (!detail::ctx_equal(a.ctx_, b.ctx_)) {
            auto c = detail::common_context(a.ctx_, b.ctx_);
            return a.embed(c).terms_equal(b.embed(c));
        }
        return a.terms_equal(b);
    }
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

    Poly operator-() const
    {
        Poly p = *this;
        for (auto &t : p.terms_)
            t.coeff = -t.coeff;
        return p;
    }

    friend Poly operator+(const Poly &a, const Poly &b) { return add(a, b, false); }
    friend Poly operator-(const Poly &a, const Poly &b) { return add(a, b, true); }
    Poly &operator+=(const Poly &b) { return *this = add(*this, b, false); }
    Poly &operator-=(const Poly &b) { return *this = add(*this, b, true); }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        auto ctx = detail::common_context(a.ctx_, b.ctx_);
        if (a.is_zero() || b.is_zero())
            return zero_in(ctx);
        if (a.nvars() != b.nvars())
            return mul_same(a.nvars() == detail::ctx_size(ctx) ? a : a.embed(ctx),
                            b.nvars() == detail::ctx_size(ctx) ? b : b.embed(ctx), ctx);
        return mul_same(a, b, ctx);
    }
    Poly &operator*=(const Poly &b) { return *this = *this * b; }

    Poly scaled(const mpz_class &c) const
    {
        if (c == 0)
            return zero_in(ctx_);
        Poly p = *this;
        for (auto &t : p.terms_)
            t.coeff *= c;
        return p;
    }

    Poly pow(unsigned long e) const
    {
        Poly result = constant(1, ctx_);
        Poly base = *this;
        while (e > 0) {
            if (e & 1UL)
                result = result * base;
            e >>= 1;
            if (e)
                base = base * base;
        }
        return result;
    }

    /// Coefficients c_0..c_d with p = sum c_k v^k; each c_k is v-free.
    std::vector<Poly> coeffs_in(std::size_t var) const
    {
        std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
        for (const auto &t : terms_) {
            Term u = t;
            auto k = u.exps[var];
            u.exps[var] = 0;
            u.degree -= k;
            buckets[k].push_back(std::move(u));
        }
        std::vector<Poly> out;
        out.reserve(buckets.size());
        for (auto &b : buckets)
            out.push_back(from_terms(ctx_, std::move(b)));
        return out;
    }

    std::vector<Poly> coeffs_in(std::string_view name) const
    {
        auto idx = ctx_ ? ctx_->index_of(name) : -1;
        if (idx < 0)
            throw RingError("coeffs_in: variable '" + std::string(name) + "' not in context");
        return coeffs_in(static_cast<std::size_t>(idx));
    }

    /// Simultaneous substitution var -> image.
    Poly substitute(const std::map<std::string, Poly> &bindings) const;

    /// Value at an integer point (one entry per context variable).
    mpz_class evaluate(const std::vector<mpz_class> &point) const
    {
        if (point.size() != nvars())
            throw RingError("evaluate: point dimension mismatch");
        mpz_class acc = 0, m;
        for (const auto &t : terms_) {
            m = t.coeff;
            for (std::size_t i = 0; i < t.exps.size(); ++i)
                for (std::uint32_t k = 0; k < t.exps[i]; ++k)
                    m *= point[i];
            acc += m;
        }
        return acc;
    }

    /// Value modulo p at a point with residues in [0, p).
    long evaluate_mod(const std::vector<long> &point, long p) const
    {
        long acc = 0;
        for (const auto &t : terms_) {
            long m = static_cast<long>(mpz_fdiv_ui(t.coeff.get_mpz_t(), static_cast<unsigned long>(p)));
            for (std::size_t i = 0; i < t.exps.size() && m != 0; ++i)
                for (std::uint32_t k = 0; k < t.exps[i]; ++k)
                    m = (m * point[i]) % p;
            acc = (acc + m) % p;
        }
        return acc;
    }

    std::string to_string() const;

    static Poly parse(std::string_view text, const ContextPtr &ctx);

    static Poly zero_in(ContextPtr ctx)
    {
        Poly p;
        p.ctx_ = std::move(ctx);
        return p;
    }

private:
    bool terms_equal(const Poly &b) const
    {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coeff != b.terms_[i].coeff || terms_[i].exps != b.terms_[i].exps)
                return false;
        }
        return true;
    }

    static Poly add(const Poly &a, const Poly &b, bool subtract)
    {
        auto ctx = detail::common_context(a.ctx_, b.ctx_);
        if (b.is_zero()) {
            Poly r = detail::ctx_equal(a.ctx_, ctx) ? a : a.embed(ctx);
            r.ctx_ = ctx;
            return r;
        }
        if (a.is_zero()) {
            Poly r = detail::ctx_equal(b.ctx_, ctx) ? b : b.embed(ctx);
            r.ctx_ = ctx;
            return subtract ? -r : r;
        }
        const Poly x = detail::ctx_equal(a.ctx_, ctx) ? a : a.embed(ctx);
        const Poly y = detail::ctx_equal(b.ctx_, ctx) ? b : b.embed(ctx);
        Poly r;
        r.ctx_ = ctx;
        r.terms_.reserve(x.terms_.size() + y.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < x.terms_.size() || j < y.terms_.size()) {
            if (j == y.terms_.size() ||
                (i < x.terms_.size() && term_order_greater(x.terms_[i].exps, x.terms_[i].degree, y.terms_[j].exps,
                                                           y.terms_[j].degree))) {
                r.terms_.push_back(x.terms_[i++]);
            } else if (i == x.terms_.size() || x.terms_[i].exps != y.terms_[j].exps) {
                r.terms_.push_back(y.terms_[j++]);
                if (subtract)
                    r.terms_.back().coeff = -r.terms_.back().coeff;
            } else {
                mpz_class c = subtract ? mpz_class(x.terms_[i].coeff - y.terms_[j].coeff)
                                       : mpz_class(x.terms_[i].coeff + y.terms_[j].coeff);
                if (c != 0)
                    r.terms_.push_back(Term{x.terms_[i].exps, x.terms_[i].degree, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    static Poly mul_same(const Poly &x, const Poly &y, const ContextPtr &ctx)
    {
        const auto n = detail::ctx_size(ctx);
        Poly r;
        r.ctx_ = ctx;
        if (x.terms_.size() == 1 || y.terms_.size() == 1) {
            // Monomial times polynomial keeps the order.
            const Poly &m = x.terms_.size() == 1 ? x : y;
            const Poly &q = x.terms_.size() == 1 ? y : x;
            const Term &mt = m.terms_[0];
            r.terms_.reserve(q.terms_.size());
            for (const auto &t : q.terms_) {
                Term u{t.exps, t.degree + mt.degree, t.coeff * mt.coeff};
                for (std::size_t k = 0; k < n; ++k)
                    u.exps[k] += mt.exps[k];
                r.terms_.push_back(std::move(u));
            }
            return r;
        }
        std::unordered_map<detail::Exponents, mpz_class, detail::ExponentsHash> acc;
        acc.reserve(x.terms_.size() * y.terms_.size());
        detail::Exponents e(n);
        for (const auto &a : x.terms_) {
            for (const auto &b : y.terms_) {
                for (std::size_t k = 0; k < n; ++k)
                    e[k] = a.exps[k] + b.exps[k];
                auto [it, inserted] = acc.try_emplace(e);
                mpz_addmul(it->second.get_mpz_t(), a.coeff.get_mpz_t(), b.coeff.get_mpz_t());
            }
        }
        r.terms_.reserve(acc.size());
        for (auto &[ex, c] : acc) {
            if (c == 0)
                continue;
            std::uint32_t d = 0;
            for (auto v : ex)
                d += v;
            r.terms_.push_back(Term{ex, d, std::move(c)});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term &a, const Term &b) {
            return term_order_greater(a.exps, a.degree, b.exps, b.degree);
        });
        return r;
    }

    ContextPtr ctx_;
    std::vector<Term> terms_;
};

inline Poly Poly::substitute(const std::map<std::string, Poly> &bindings) const
{
    ContextPtr image_ctx;
    for (const auto &[name, img] : bindings) {
        if (!(ctx_ && ctx_->contains(name)))
            throw RingError("substitute: variable '" + name + "' is not in the polynomial's context");
        image_ctx = detail::common_context(image_ctx, img.context());
    }
    // Result lives in the source context when the images fit there.
    ContextPtr out_ctx;
    if (detail::ctx_size(image_ctx) == 0 ||
        (ctx_ && image_ctx->is_prefix_of(*ctx_)))
        out_ctx = ctx_;
    else if (ctx_ && ctx_->is_prefix_of(*image_ctx))
        out_ctx = image_ctx;
    else
        out_ctx = image_ctx;

    const auto n = nvars();
    std::vector<Poly> images(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto &name = ctx_->names()[i];
        auto it = bindings.find(name);
        if (it != bindings.end()) {
            images[i] = it->second.embed(out_ctx);
        } else {
            // Unbound variables must exist in the output context.
            if (!(out_ctx && out_ctx->contains(name))) {
                bool used = degree_in(i) > 0;
                if (used)
                    throw RingError("substitute: variable '" + name + "' is unbound and absent from the image context");
                continue;
            }
            images[i] = Poly::variable(out_ctx, name);
        }
    }
    std::vector<std::vector<Poly>> powers(n);
    Poly result = zero_in(out_ctx);
    for (const auto &t : terms_) {
        Poly m = constant(t.coeff, out_ctx);
        for (std::size_t i = 0; i < n; ++i) {
            auto e = t.exps[i];
            if (e == 0)
                continue;
            auto &pw = powers[i];
            if (pw.empty())
                pw.push_back(constant(1, out_ctx));
            while (pw.size() <= e)
                pw.push_back(pw.back() * images[i]);
            m = m * pw[e];
        }
        result += m;
    }
    return result;
}

inline std::string Poly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &t : terms_) {
        bool neg = t.coeff < 0;
        mpz_class mag = abs(t.coeff);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            if (t.exps[i] == 0)
                continue;
            if (!mono.empty())
                mono += '*';
            mono += ctx_->names()[i];
            if (t.exps[i] != 1)
                mono += '^' + std::to_string(t.exps[i]);
        }
        if (mono.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << mono;
        else
            os << mag.get_str() << '*' << mono;
    }
    return os.str();
}

namespace detail
{

class PolyParser
{
public:
    PolyParser(std::string_view text, const ContextPtr &ctx) : s_(text), ctx_(ctx) {}

    Poly parse()
    {
        Poly p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return p.embed(ctx_);
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg + " in '" +
                         std::string(s_) + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Poly term()
    {
        Poly acc = unary();
        while (eat('*'))
            acc = acc * unary();
        return acc;
    }

    Poly unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }

    Poly power()
    {
        Poly base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            if (pos_ - start > 6)
                fail("exponent too large");
            base = base.pow(std::stoul(std::string(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    Poly atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')'))
                fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                fail("missing '*' between number and identifier");
            return Poly::constant(mpz_class(std::string(s_.substr(start, pos_ - start))), ctx_);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (!(ctx_ && ctx_->contains(name)))
                fail("unknown variable '" + name + "'");
            return Poly::variable(ctx_, name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    const ContextPtr &ctx_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly Poly::parse(std::string_view text, const ContextPtr &ctx)
{
    return detail::PolyParser(text, ctx).parse();
}

inline std::ostream &operator<<(std::ostream &os, const Poly &p) { return os << p.to_string(); }

/// Arithmetic entry point mirroring the operation table: Add, Sub, Mul, Neg, Pow.
enum class PolyOp { Add, Sub, Mul, Neg, Pow };

inline Poly poly_arith(PolyOp op, const Poly &a, const Poly &b)
{
    switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
    case PolyOp::Neg: return -a;
    case PolyOp::Pow: {
        if (!b.is_constant() || b.constant_term() < 0 || !b.constant_term().fits_ulong_p())
            throw RingError("Pow exponent must be a natural number");
        return a.pow(b.constant_term().get_ui());
    }
    }
    throw RingError("unknown polynomial operation");
}

inline mpz_class binomial(unsigned long n, unsigned long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace idemcert

#endif // IDEMCERT_RING_POLY_HPP
