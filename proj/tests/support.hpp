#pragma once

// Helpers shared by the unit tests and the acceptance binary: corpus paths,
// random expression generators and brute-force oracles.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rpl/rpl.hpp"

namespace rpl::testing {

inline std::string corpus(const std::string& name) { return std::string(RPL_CORPUS_DIR) + "/" + name; }

inline Expression sym(const std::string& s) { return Expression::symbol(Symbol::user(s)); }
inline Expression app(const std::string& f, std::vector<Expression> args) { return Expression::apply(sym(f), std::move(args)); }
inline Expression P(const std::string& text) { return parse(text); }

// Random expressions -------------------------------------------------------

struct GenConfig {
    std::vector<std::string> symbols{"a", "b", "c", "d"};
    std::uint32_t max_height = 4;
    std::uint32_t max_arity = 2;
    std::uint32_t max_quantifiers = 1000;
    bool compound_binders = true;  // occasionally bind an application
    std::uint32_t quantifier_weight = 1;  // out of 4 + weight at each inner node
};

class ExpressionGen {
public:
    ExpressionGen(GenConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)), rng_(seed) {}

    Expression any()
    {
        quantifiers_ = 0;
        return gen(pick(cfg_.max_height + 1));
    }

    /// An atom (symbol or application) of height <= max_height.
    Expression atom()
    {
        quantifiers_ = 0;
        std::uint32_t h = pick(cfg_.max_height + 1);
        if (h == 0) return leaf();
        return application(h);
    }

    std::mt19937_64& rng() { return rng_; }

    std::uint32_t pick(std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng_); }

private:
    Expression leaf() { return sym(cfg_.symbols[pick(static_cast<std::uint32_t>(cfg_.symbols.size()))]); }

    Expression application(std::uint32_t h)
    {
        std::uint32_t n = 1 + pick(cfg_.max_arity);
        Expression ctor = pick(4) == 0 ? gen(pick(h)) : leaf();
        std::vector<Expression> args;
        for (std::uint32_t k = 0; k < n; ++k) args.push_back(gen(pick(h)));
        return Expression::apply(ctor, std::move(args));
    }

    Expression gen(std::uint32_t h)
    {
        if (h == 0) return leaf();
        switch (pick(4 + cfg_.quantifier_weight)) {
        case 0:
        case 1: return application(h);
        case 2: return Expression::negation(gen(h - 1));
        case 3: {
            Connective op = static_cast<Connective>(pick(3));
            return Expression::connective(op, gen(pick(h)), gen(h - 1));
        }
        default: {
            if (quantifiers_ >= cfg_.max_quantifiers) return application(h);
            ++quantifiers_;
            Quantifier q = pick(2) ? Quantifier::Forall : Quantifier::Exists;
            Expression x = leaf();
            if (cfg_.compound_binders && h >= 2 && pick(6) == 0) x = Expression::apply(leaf(), {leaf()});
            return Expression::quantified(q, x, gen(h - 1));
        }
        }
    }

    GenConfig cfg_;
    std::mt19937_64 rng_;
    std::uint32_t quantifiers_ = 0;
};

/// Renames the symbol bound by the quantifier node `target` to `fresh`
/// inside that node only. `fresh` must not occur in `e`.
inline Expression rename_binder_at(const Expression& e, const Expression& target, const Expression& fresh)
{
    if (e == target && e.kind() == Expression::Kind::Quantified && e.variable().is_symbol())
        return replace_all(e, e.variable(), fresh);
    if (e.is_symbol()) return e;
    std::vector<Expression> kids;
    for (const auto& k : e.children()) kids.push_back(rename_binder_at(k, target, fresh));
    return e.with_children(std::move(kids));
}

inline void quantified_nodes(const Expression& e, std::vector<Expression>& out)
{
    if (e.kind() == Expression::Kind::Quantified && e.variable().is_symbol()) out.push_back(e);
    if (e.is_symbol()) return;
    for (const auto& k : e.children()) quantified_nodes(k, out);
}

// Brute-force universe -----------------------------------------------------
//
// Every raw tree of height <= depth over the given symbols, built straight
// from the grammar (symbols; E(E1..En) with 1 <= n <= max_arity; negation;
// the three connectives; both quantifiers with any expression as binder).

inline std::vector<Expression> raw_trees(const std::vector<std::string>& symbols, std::uint32_t max_arity,
                                         std::uint32_t depth)
{
    std::vector<Expression> all;
    for (const auto& s : symbols) all.push_back(sym(s));
    for (std::uint32_t h = 1; h <= depth; ++h) {
        std::vector<Expression> prev = all;
        std::vector<Expression> fresh;
        auto keep = [&](const Expression& e) {
            if (e.height() == h) fresh.push_back(e);
        };
        for (const auto& c : prev)
            for (std::uint32_t n = 1; n <= max_arity; ++n) {
                std::vector<std::size_t> idx(n, 0);
                while (true) {
                    std::vector<Expression> args;
                    for (auto i : idx) args.push_back(prev[i]);
                    keep(Expression::apply(c, args));
                    std::size_t k = 0;
                    while (k < n && ++idx[k] == prev.size()) idx[k++] = 0;
                    if (k == n) break;
                }
            }
        for (const auto& a : prev) keep(Expression::negation(a));
        for (int op = 0; op < 3; ++op)
            for (const auto& l : prev)
                for (const auto& r : prev) keep(Expression::connective(static_cast<Connective>(op), l, r));
        for (int q = 0; q < 2; ++q)
            for (const auto& x : prev)
                for (const auto& b : prev)
                    keep(Expression::quantified(q ? Quantifier::Exists : Quantifier::Forall, x, b));
        all.insert(all.end(), fresh.begin(), fresh.end());
    }
    return all;
}

/// Number of variant classes of atoms among raw trees of height <= depth.
inline std::size_t brute_force_atom_classes(const std::vector<std::string>& symbols, std::uint32_t max_arity,
                                            std::uint32_t depth)
{
    std::set<std::string> keys;
    for (const auto& e : raw_trees(symbols, max_arity, depth))
        if (is_atom(e)) keys.insert(print_canonical(canonical_form(e)));
    return keys.size();
}

inline std::set<std::string> brute_force_atom_keys(const std::vector<std::string>& symbols,
                                                   std::uint32_t max_arity, std::uint32_t depth)
{
    std::set<std::string> keys;
    for (const auto& e : raw_trees(symbols, max_arity, depth))
        if (is_atom(e)) keys.insert(print_canonical(canonical_form(e)));
    return keys;
}

inline std::set<std::string> brute_force_expression_keys(const std::vector<std::string>& symbols,
                                                         std::uint32_t max_arity, std::uint32_t depth)
{
    std::set<std::string> keys;
    for (const auto& e : raw_trees(symbols, max_arity, depth)) keys.insert(print_canonical(canonical_form(e)));
    return keys;
}

}  // namespace rpl::testing
