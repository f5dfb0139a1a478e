#ifndef IDEMCERT_RING_PRESENTATION_HPP
#define IDEMCERT_RING_PRESENTATION_HPP

#include <string>
#include <utility>
#include <vector>

#include <idemcert/ring/poly.hpp>

namespace idemcert
{

struct Param
{
    std::string name;
    Poly relation;
};

/// A ring presented by generators, equations (= 0), residually-null and
/// preinvertible relations, plus introduced parameters with their defining
/// equations. Param relations count as equations.
///
/// The variable context is generators followed by parameter names, so a
/// presentation extended by a fresh parameter has a context that the parent's
/// context is a prefix of.
class RingPresentation
{
public:
    RingPresentation() : ctx_(make_context({})) {}

    explicit RingPresentation(std::vector<std::string> generators)
        : generators_(std::move(generators)), ctx_(make_context(generators_))
    {
    }

    RingPresentation(std::vector<std::string> generators, std::vector<Poly> eq0, std::vector<Poly> rnul = {},
                     std::vector<Poly> unit = {})
        : RingPresentation(std::move(generators))
    {
        for (auto &p : eq0)
            eq0_.push_back(adopt(std::move(p)));
        for (auto &p : rnul)
            rnul_.push_back(adopt(std::move(p)));
        for (auto &p : unit)
            unit_.push_back(adopt(std::move(p)));
    }

    /// Parses relation strings against the generator names.
    static RingPresentation parse(std::vector<std::string> generators, const std::vector<std::string> &eq0,
                                  const std::vector<std::string> &rnul = {},
                                  const std::vector<std::string> &unit = {})
    {
        RingPresentation pres(std::move(generators));
        for (const auto &s : eq0)
            pres.eq0_.push_back(Poly::parse(s, pres.ctx_));
        for (const auto &s : rnul)
            pres.rnul_.push_back(Poly::parse(s, pres.ctx_));
        for (const auto &s : unit)
            pres.unit_.push_back(Poly::parse(s, pres.ctx_));
        return pres;
    }

    const std::vector<std::string> &generators() const noexcept { return generators_; }
    const std::vector<Poly> &eq0() const noexcept { return eq0_; }
    const std::vector<Poly> &rnul() const noexcept { return rnul_; }
    const std::vector<Poly> &unit() const noexcept { return unit_; }
    const std::vector<Param> &params() const noexcept { return params_; }
    const ContextPtr &context() const noexcept { return ctx_; }

    Poly var(std::string_view name) const { return Poly::variable(ctx_, name); }
    Poly constant(const mpz_class &c) const { return Poly::constant(c, ctx_); }
    Poly parse_poly(std::string_view text) const { return Poly::parse(text, ctx_); }

    /// All equations generating the ideal: eq0 relations, then param relations.
    std::vector<Poly> ideal_generators() const
    {
        std::vector<Poly> out = eq0_;
        for (const auto &p : params_)
            out.push_back(p.relation);
        return out;
    }

    bool has_name(std::string_view name) const { return ctx_->contains(name); }

    /// First name of the form `<stem><k>` (k = 1, 2, ...) not already used.
    std::string fresh_name(const std::string &stem) const
    {
        for (std::size_t k = 1;; ++k) {
            auto name = stem + std::to_string(k);
            if (!has_name(name))
                return name;
        }
    }

    /// Adds a parameter whose relation is built by `make(param_variable)`.
    template <typename F>
    RingPresentation with_param_built(const std::string &name, F &&make) const
    {
        if (has_name(name))
            throw RingError("parameter name '" + name + "' is not fresh");
        RingPresentation out = *this;
        out.ctx_ = extend_context(ctx_, {name});
        out.relift();
        Poly rel = make(Poly::variable(out.ctx_, name));
        out.params_.push_back(Param{name, rel.embed(out.ctx_)});
        return out;
    }

    /// Adds a parameter u with relation u*s - 1 (u is an inverse of s).
    RingPresentation with_inverse(const std::string &name, const Poly &s) const
    {
        return with_param_built(name, [&](const Poly &u) { return u * s - Poly(1); });
    }

    RingPresentation with_param(const std::string &name, const Poly &relation) const
    {
        RingPresentation out = *this;
        if (has_name(name))
            throw RingError("parameter name '" + name + "' is not fresh");
        out.ctx_ = extend_context(ctx_, {name});
        out.relift();
        out.params_.push_back(Param{name, relation.embed(out.ctx_)});
        return out;
    }

    RingPresentation with_eq0(const Poly &p) const
    {
        RingPresentation out = *this;
        out.eq0_.push_back(out.adopt(p));
        return out;
    }

    RingPresentation with_rnul(const Poly &p) const
    {
        RingPresentation out = *this;
        out.rnul_.push_back(out.adopt(p));
        return out;
    }

    RingPresentation with_unit(const Poly &p) const
    {
        RingPresentation out = *this;
        out.unit_.push_back(out.adopt(p));
        return out;
    }

    /// Same presentation with extra equations appended to eq0. Params keep
    /// their indices, so certificates stay valid.
    RingPresentation with_extra_eq0(const std::vector<Poly> &extra) const
    {
        RingPresentation out = *this;
        for (const auto &p : extra)
            out.eq0_.push_back(out.adopt(p));
        return out;
    }

    /// True if `child` was obtained from this presentation by appending
    /// relations and parameters (so every reference valid here is valid there).
    bool is_prefix_of(const RingPresentation &child) const
    {
        auto prefix = [](const std::vector<Poly> &a, const std::vector<Poly> &b) {
            if (a.size() > b.size())
                return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i])
                    return false;
            return true;
        };
        if (generators_ != child.generators_ || params_.size() > child.params_.size())
            return false;
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (params_[i].name != child.params_[i].name || params_[i].relation != child.params_[i].relation)
                return false;
        return prefix(eq0_, child.eq0_) && prefix(rnul_, child.rnul_) && prefix(unit_, child.unit_);
    }

    friend bool operator==(const RingPresentation &a, const RingPresentation &b)
    {
        return a.is_prefix_of(b) && b.is_prefix_of(a);
    }

    /// Drops the last parameter (its relation and variable). Relations in the
    /// other lists must not mention it.
    RingPresentation without_last_param() const
    {
        if (params_.empty())
            throw RingError("no parameter to drop");
        RingPresentation out = *this;
        out.params_.pop_back();
        std::vector<std::string> names = generators_;
        for (const auto &p : out.params_)
            names.push_back(p.name);
        out.ctx_ = make_context(std::move(names));
        auto down = [&](std::vector<Poly> &v) {
            for (auto &p : v)
                p = p.restrict_to(out.ctx_);
        };
        down(out.eq0_);
        down(out.rnul_);
        down(out.unit_);
        for (auto &p : out.params_)
            p.relation = p.relation.restrict_to(out.ctx_);
        return out;
    }

    /// Checks the declared invariants: relations live in the context and each
    /// param relation only uses generators and earlier params.
    void validate() const
    {
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (!params_[i].relation.uses_only_first(generators_.size() + i + 1))
                throw RingError("param relation for '" + params_[i].name + "' uses a later parameter");
    }

private:
    Poly adopt(Poly p) const
    {
        if (p.nvars() > ctx_->size() || (p.context() && !p.context()->is_prefix_of(*ctx_)))
            throw RingError("relation uses variables outside the presentation");
        return p.embed(ctx_);
    }

    void relift()
    {
        for (auto &p : eq0_)
            p = p.embed(ctx_);
        for (auto &p : rnul_)
            p = p.embed(ctx_);
        for (auto &p : unit_)
            p = p.embed(ctx_);
        for (auto &p : params_)
            p.relation = p.relation.embed(ctx_);
    }

    std::vector<std::string> generators_;
    std::vector<Poly> eq0_, rnul_, unit_;
    std::vector<Param> params_;
    ContextPtr ctx_;
};

} // namespace idemcert

#endif // IDEMCERT_RING_PRESENTATION_HPP
