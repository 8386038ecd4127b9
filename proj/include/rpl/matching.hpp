#pragma once

// Candidate instantiations for exact model checking.
//
// For a rectified body R and its quantified variable v, every atomic leaf of
// R's logical skeleton that mentions v is used as a pattern: v is the hole,
// other free variables of the leaf are wildcards, and variables bound inside
// the leaf must line up with bound variables of the interpretation element
// (matching modulo variance). Any atom A for which some instance of a leaf is
// a member of the interpretation shows up as a hole solution, so every atom
// outside the returned set makes all v-leaves non-members.

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/rectify.hpp"

namespace rpl {

struct CandidateSearch {
    std::vector<Expression> candidates;  // canonical forms, sorted by key
    /// False when a shape the matcher does not cover was met; the candidate
    /// set may then be incomplete and callers must not claim exactness.
    bool complete = true;
};

namespace detail {

class LeafMatcher {
public:
    explicit LeafMatcher(const Symbol& hole) : hole_(hole) {}

    /// Matches `pattern` against `element`; on success returns the hole's
    /// solution (canonical form), or nullopt if the hole did not occur.
    bool run(const Expression& pattern, const Expression& element)
    {
        binders_.clear();
        solution_.reset();
        return match(pattern, element);
    }

    const std::optional<Expression>& solution() const noexcept { return solution_; }
    bool unhandled() const noexcept { return unhandled_; }

private:
    // Index of the innermost binder pairing for a pattern / element symbol.
    std::optional<std::size_t> bound_in_pattern(const Symbol& s) const
    {
        for (std::size_t k = binders_.size(); k-- > 0;)
            if (binders_[k].first == s) return k;
        return std::nullopt;
    }
    std::optional<std::size_t> bound_in_element(const Symbol& s) const
    {
        for (std::size_t k = binders_.size(); k-- > 0;)
            if (binders_[k].second == s) return k;
        return std::nullopt;
    }

    bool closed_in_element(const Expression& e) const
    {
        if (binders_.empty()) return true;
        bool closed = true;
        for_each_symbol(e, [&](const Symbol& s) {
            if (closed && bound_in_element(s)) closed = false;
        });
        return closed;
    }

    bool match(const Expression& p, const Expression& e)
    {
        if (p.is_symbol()) {
            const Symbol& s = p.as_symbol();
            if (auto k = bound_in_pattern(s)) {
                if (!e.is_symbol()) return false;
                auto j = bound_in_element(e.as_symbol());
                return j && *j == *k;
            }
            if (s == hole_) {
                if (!closed_in_element(e)) return false;
                Expression c = canonical_form(e);
                if (solution_ && !(*solution_ == c)) return false;
                solution_ = std::move(c);
                return true;
            }
            if (s.kind() == SymbolKind::RectVar) return true;  // free elsewhere: wildcard
            return e.is_symbol() && e.as_symbol() == s && !bound_in_element(s);
        }
        if (p.kind() != e.kind() || p.children().size() != e.children().size()) return false;
        switch (p.kind()) {
        case Expression::Kind::Connective:
            if (p.connective_op() != e.connective_op()) return false;
            break;
        case Expression::Kind::Quantified: {
            if (p.quantifier() != e.quantifier()) return false;
            if (!p.variable().is_symbol() || !e.variable().is_symbol()) {
                unhandled_ = true;
                return false;
            }
            binders_.emplace_back(p.variable().as_symbol(), e.variable().as_symbol());
            bool ok = match(p.body(), e.body());
            binders_.pop_back();
            return ok;
        }
        default: break;
        }
        auto pk = p.children();
        auto ek = e.children();
        for (std::size_t i = 0; i < pk.size(); ++i)
            if (!match(pk[i], ek[i])) return false;
        return true;
    }

    Symbol hole_;
    std::vector<std::pair<Symbol, Symbol>> binders_;
    std::optional<Expression> solution_;
    bool unhandled_ = false;
};

// Atomic leaves of the logical skeleton (below negations, connectives and
// quantifier bodies) in which `v` occurs. `bare` is set when v itself is a leaf.
inline void skeleton_leaves(const Expression& r, const Expression& v, std::vector<Expression>& out, bool& bare)
{
    switch (r.kind()) {
    case Expression::Kind::Negation: skeleton_leaves(r.operand(), v, out, bare); return;
    case Expression::Kind::Connective:
        skeleton_leaves(r.left(), v, out, bare);
        skeleton_leaves(r.right(), v, out, bare);
        return;
    case Expression::Kind::Quantified: skeleton_leaves(r.body(), v, out, bare); return;
    default: break;
    }
    if (r == v) bare = true;
    if (occurs_in(v, r)) out.push_back(r);
}

}  // namespace detail

inline CandidateSearch find_support(const Interpretation& interp, const Expression& r, const Symbol& v,
                                    RangePolicy policy = RangePolicy::AtomsOnly)
{
    CandidateSearch result;
    Expression hole = Expression::symbol(v);
    std::vector<Expression> leaves;
    bool bare = false;
    detail::skeleton_leaves(r, hole, leaves, bare);
    // A logical expression substituted for a bare leaf changes the skeleton
    // itself; the generic-atom argument does not cover that case.
    if (bare && policy == RangePolicy::AllExpressions) result.complete = false;

    std::unordered_set<Expression, ExpressionHash> seen;
    std::vector<std::pair<std::string, Expression>> keyed;
    detail::LeafMatcher matcher(v);
    for (const auto& leaf : leaves) {
        for (const auto& element : interp.canonical_atoms()) {
            if (!matcher.run(leaf, element)) continue;
            const auto& sol = matcher.solution();
            if (!sol) continue;
            if (policy == RangePolicy::AtomsOnly && !is_atom(*sol)) continue;
            if (seen.insert(*sol).second) keyed.emplace_back(print_canonical(*sol), *sol);
        }
    }
    if (matcher.unhandled()) result.complete = false;
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, e] : keyed) result.candidates.push_back(std::move(e));
    return result;
}

/// Atoms (or expressions, under AllExpressions) that can make some v-leaf of
/// `r` a member of `interp`, up to variance.
inline std::vector<Expression> support_candidates(const Interpretation& interp, const Expression& r,
                                                  const Symbol& v, RangePolicy policy = RangePolicy::AtomsOnly)
{
    return find_support(interp, r, v, policy).candidates;
}

}  // namespace rpl
