#pragma once

// Rectification: deterministic renaming of quantified expressions to the
// variable pool v1, v2, ... The index is threaded left to right through
// applications and connectives; a quantified expression rectifies its body
// first and then binds the next free index, so inner quantifiers receive
// smaller indices than the quantifiers enclosing them.
//
// Variance (alpha-equivalence for this language) is equality of the
// rectifications computed from the same start index; the canonical text of
// the rectification at index 1 is used as the variant-class key.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/print.hpp"

namespace rpl {

struct RectOutcome {
    Expression rectified;
    std::uint32_t final_index;
};

/// Canonical identity of a variant class.
class VariantKey {
public:
    explicit VariantKey(std::string text) : text_(std::move(text)) {}
    const std::string& text() const noexcept { return text_; }
    friend bool operator==(const VariantKey&, const VariantKey&) = default;
    friend auto operator<=>(const VariantKey&, const VariantKey&) = default;

private:
    std::string text_;
};

class NotAnAtom : public std::invalid_argument {
public:
    explicit NotAnAtom(const std::string& what, std::size_t line = 0)
        : std::invalid_argument(what), line_(line) {}
    /// 1-based source line when the atom came from a file; 0 otherwise.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline bool binds_internal_var(const Expression& e)
{
    if (e.kind() == Expression::Kind::Quantified && e.variable().is_symbol() &&
        e.variable().as_symbol().kind() != SymbolKind::User)
        return true;
    if (e.quantifier_count() == 0) return false;
    for (const auto& k : e.children())
        if (binds_internal_var(k)) return true;
    return false;
}

// Moves every quantifier that binds an internal variable onto a private
// temporary, so fresh v_j introduced by rectification can never be captured
// by an already-present v_j. Identity on parsed user input.
inline Expression freshen_bound_internal(const Expression& e, std::uint32_t& next_temp)
{
    if (e.quantifier_count() == 0) return e;
    std::vector<Expression> kids;
    kids.reserve(e.children().size());
    for (const auto& k : e.children()) kids.push_back(freshen_bound_internal(k, next_temp));
    if (e.kind() == Expression::Kind::Quantified && e.variable().is_symbol() &&
        e.variable().as_symbol().kind() != SymbolKind::User) {
        Expression t = Expression::symbol(Symbol::temp(next_temp++));
        kids[1] = replace_all(kids[1], e.variable(), t);
        kids[0] = t;
    }
    return e.with_children(std::move(kids));
}

inline RectOutcome rect_raw(const Expression& e, std::uint32_t i)
{
    switch (e.kind()) {
    case Expression::Kind::Symbol: return {e, i};
    case Expression::Kind::Quantified: {
        auto [body, j] = rect_raw(e.body(), i);
        Expression v = Expression::symbol(Symbol::rect_var(j));
        return {Expression::quantified(e.quantifier(), v, replace_all(body, e.variable(), v)), j + 1};
    }
    default: break;
    }
    if (e.quantifier_count() == 0) return {e, i};
    std::vector<Expression> kids;
    kids.reserve(e.children().size());
    for (const auto& k : e.children()) {
        auto [r, next] = rect_raw(k, i);
        kids.push_back(std::move(r));
        i = next;
    }
    return {e.with_children(std::move(kids)), i};
}

}  // namespace detail

/// Rectifies `e` starting at variable index `start_index` (>= 1).
/// The final index is always start_index + quantifier_count(e).
/// Precondition: no rectification variable occurs free in `e`.
inline RectOutcome rect(const Expression& e, std::uint32_t start_index = 1)
{
    if (start_index < 1) throw std::invalid_argument("rectification start index must be >= 1");
    if (detail::binds_internal_var(e)) {
        std::uint32_t temps = 0;
        return detail::rect_raw(detail::freshen_bound_internal(e, temps), start_index);
    }
    return detail::rect_raw(e, start_index);
}

/// Rectifies a finite sequence as the right-nested conjunction
/// (E1 & (E2 & ... En)) and splits the result back, so the outputs are
/// pairwise standardised apart.
inline std::vector<Expression> rect_set(std::span<const Expression> es)
{
    if (es.empty()) return {};
    Expression conj = es.back();
    for (std::size_t k = es.size() - 1; k-- > 0;) conj = Expression::connective(Connective::And, es[k], conj);
    Expression r = rect(conj, 1).rectified;
    std::vector<Expression> out;
    out.reserve(es.size());
    for (std::size_t k = 0; k + 1 < es.size(); ++k) {
        out.push_back(r.left());
        r = r.right();
    }
    out.push_back(r);
    return out;
}

/// rect(e, 1).rectified, the representative of e's variant class.
inline Expression canonical_form(const Expression& e) { return rect(e, 1).rectified; }

inline VariantKey canonical_key(const Expression& e) { return VariantKey(print_canonical(canonical_form(e))); }

inline bool is_variant(const Expression& a, const Expression& b) { return canonical_form(a) == canonical_form(b); }

/// Largest index of a rectification variable occurring in `e`, 0 if none.
inline std::uint32_t max_var_index(const Expression& e)
{
    std::uint32_t m = 0;
    for_each_symbol(e, [&](const Symbol& s) {
        if (s.is_rect_var()) m = std::max(m, s.index());
    });
    return m;
}

/// R[A/v] without the atom check: the replacement is rectified above every
/// index used in `r`, then substituted simultaneously for `v`.
inline Expression instantiate(const Expression& r, const Symbol& v, const Expression& a)
{
    Expression av = rect(a, max_var_index(r) + 1).rectified;
    return replace_all(r, Expression::symbol(v), av);
}

/// R[A/v] for a rectified `r` and an atom `a`.
inline Expression substitute(const Expression& r, const Symbol& v, const Expression& a)
{
    if (!is_atom(a)) throw NotAnAtom("cannot instantiate " + v.text() + " with non-atom " + print_canonical(a));
    return instantiate(r, v, a);
}

}  // namespace rpl
