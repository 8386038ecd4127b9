#pragma once

// Finite slices of the Herbrand universe: one canonical representative per
// variant class whose smallest member has height <= depth.
//
// Level h+1 is built from the class representatives of level h. This is
// sound because variance is a congruence for application arguments and
// constructors, negation, connectives and quantifier bodies. The expression
// bound by a quantifier is different: it is matched structurally against the
// rectified body, so binders are drawn from raw quantifier-free trees, plus a
// single quantified tree standing in for every binder that contains a
// quantifier (such a binder never occurs in a rectified body).

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/rectify.hpp"

namespace rpl {

namespace detail {

class UniverseBuilder {
public:
    explicit UniverseBuilder(const Signature& sig) : sig_(sig)
    {
        sig_.check();
        for (const auto& s : sig_.symbols) {
            Expression e = Expression::symbol(s);
            classes_.push_back(e);
            seen_.insert(e);
            binders_.push_back(e);
        }
    }

    /// Raises every level up to `h` (all expression kinds).
    void grow_to(std::uint32_t h)
    {
        while (level_ < h) grow();
    }

    const std::vector<Expression>& classes() const noexcept { return classes_; }

    /// Atoms of height <= level+1 built on the current level.
    std::vector<Expression> atoms_one_above() const
    {
        std::unordered_set<Expression, ExpressionHash> seen;
        std::vector<Expression> out;
        auto add = [&](const Expression& raw) {
            Expression c = canonical_form(raw);
            if (seen.insert(c).second) out.push_back(std::move(c));
        };
        for (const auto& s : sig_.symbols) add(Expression::symbol(s));
        for_each_application(add);
        return out;
    }

private:
    template <class F>
    void for_each_application(F&& add) const
    {
        std::vector<Expression> args;
        for (const auto& ctor : classes_)
            for (std::uint32_t n = 1; n <= sig_.max_arity; ++n) tuples(ctor, n, args, add);
    }

    template <class F>
    void tuples(const Expression& ctor, std::uint32_t n, std::vector<Expression>& args, F& add) const
    {
        if (args.size() == n) {
            add(Expression::apply(ctor, args));
            return;
        }
        for (const auto& a : classes_) {
            args.push_back(a);
            tuples(ctor, n, args, add);
            args.pop_back();
        }
    }

    void grow()
    {
        std::vector<Expression> fresh;
        auto add = [&](const Expression& raw) {
            Expression c = canonical_form(raw);
            if (seen_.insert(c).second) fresh.push_back(std::move(c));
        };
        for_each_application(add);
        for (const auto& a : classes_) add(Expression::negation(a));
        for (auto op : {Connective::And, Connective::Or, Connective::Implies})
            for (const auto& l : classes_)
                for (const auto& r : classes_) add(Expression::connective(op, l, r));
        for (auto q : {Quantifier::Forall, Quantifier::Exists})
            for (const auto& x : binders_)
                for (const auto& b : classes_) add(Expression::quantified(q, x, b));

        grow_binders();
        classes_.insert(classes_.end(), fresh.begin(), fresh.end());
        ++level_;
    }

    // Quantifier-free user trees of height <= level+1, plus one quantified
    // stand-in once height 1 is reachable.
    void grow_binders()
    {
        std::vector<Expression> next;
        std::vector<Expression> qf;
        for (const auto& b : binders_)
            if (b.quantifier_count() == 0) qf.push_back(b);
        std::unordered_set<Expression, ExpressionHash> have(binders_.begin(), binders_.end());
        auto add = [&](Expression e) {
            if (have.insert(e).second) next.push_back(std::move(e));
        };
        std::vector<Expression> args;
        for (const auto& c : qf)
            for (std::uint32_t n = 1; n <= sig_.max_arity; ++n) binder_tuples(c, n, qf, args, add);
        for (const auto& a : qf) add(Expression::negation(a));
        for (auto op : {Connective::And, Connective::Or, Connective::Implies})
            for (const auto& l : qf)
                for (const auto& r : qf) add(Expression::connective(op, l, r));
        if (level_ == 0) {
            Expression s = Expression::symbol(sig_.symbols.front());
            add(Expression::quantified(Quantifier::Forall, s, s));
        }
        binders_.insert(binders_.end(), next.begin(), next.end());
    }

    template <class F>
    void binder_tuples(const Expression& ctor, std::uint32_t n, const std::vector<Expression>& pool,
                       std::vector<Expression>& args, F& add) const
    {
        if (args.size() == n) {
            add(Expression::apply(ctor, args));
            return;
        }
        for (const auto& a : pool) {
            args.push_back(a);
            binder_tuples(ctor, n, pool, args, add);
            args.pop_back();
        }
    }

    Signature sig_;
    std::uint32_t level_ = 0;
    std::vector<Expression> classes_;
    std::unordered_set<Expression, ExpressionHash> seen_;
    std::vector<Expression> binders_;
};

inline void sort_by_height_then_key(std::vector<Expression>& v)
{
    std::vector<std::pair<std::pair<std::uint32_t, std::string>, Expression>> keyed;
    keyed.reserve(v.size());
    for (auto& e : v) keyed.push_back({{e.height(), print_canonical(e)}, std::move(e)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    v.clear();
    for (auto& [k, e] : keyed) v.push_back(std::move(e));
}

}  // namespace detail

/// One canonical atom per variant class of height <= depth, ordered by
/// height and then by canonical text.
inline std::vector<Expression> enumerate_atoms(const Signature& sig, std::uint32_t depth)
{
    detail::UniverseBuilder b(sig);
    std::vector<Expression> out;
    if (depth == 0) {
        for (const auto& s : sig.symbols) out.push_back(Expression::symbol(s));
    } else {
        b.grow_to(depth - 1);
        out = b.atoms_one_above();
    }
    detail::sort_by_height_then_key(out);
    return out;
}

/// Every variant class (atoms and logical expressions) of height <= depth.
inline std::vector<Expression> enumerate_expressions(const Signature& sig, std::uint32_t depth)
{
    detail::UniverseBuilder b(sig);
    b.grow_to(depth);
    std::vector<Expression> out = b.classes();
    detail::sort_by_height_then_key(out);
    return out;
}

}  // namespace rpl
