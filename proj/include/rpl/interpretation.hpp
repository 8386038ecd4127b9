#pragma once

// Herbrand interpretations: finite sets of variant classes of atoms, plus the
// finite signature that bounds universe enumeration.

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/parse.hpp"
#include "rpl/rectify.hpp"

namespace rpl {

/// What a quantified variable may be instantiated with.
enum class RangePolicy : std::uint8_t {
    AtomsOnly,       ///< rectified atoms (the default)
    AllExpressions,  ///< any expression
};

struct Signature {
    std::vector<Symbol> symbols;  // sorted, unique, user symbols only
    std::uint32_t max_arity = 1;
    RangePolicy range = RangePolicy::AtomsOnly;

    /// Collects the user symbols occurring in `sources` plus `extras`.
    static Signature from(std::span<const Expression> sources, std::span<const Symbol> extras = {},
                          std::uint32_t max_arity = 1, RangePolicy range = RangePolicy::AtomsOnly)
    {
        std::set<Symbol> seen(extras.begin(), extras.end());
        for (const auto& e : sources)
            for_each_symbol(e, [&](const Symbol& s) {
                if (s.kind() == SymbolKind::User) seen.insert(s);
            });
        Signature sig;
        sig.symbols.assign(seen.begin(), seen.end());
        sig.max_arity = max_arity;
        sig.range = range;
        if (max_arity < 1) throw std::invalid_argument("signature max_arity must be >= 1");
        return sig;  // may be empty; only enumeration needs symbols
    }

    void check() const
    {
        if (symbols.empty()) throw std::invalid_argument("signature needs at least one non-logical symbol");
        if (max_arity < 1) throw std::invalid_argument("signature max_arity must be >= 1");
    }
};

class Interpretation {
public:
    Interpretation() = default;

    const std::vector<Expression>& originals() const noexcept { return originals_; }
    /// Canonical (rectified at index 1) representatives, one per class, sorted by key.
    const std::vector<Expression>& canonical_atoms() const noexcept { return canonical_; }
    std::size_t size() const noexcept { return canonical_.size(); }
    bool empty() const noexcept { return canonical_.empty(); }

    std::vector<VariantKey> keys() const
    {
        std::vector<VariantKey> out;
        out.reserve(canonical_.size());
        for (const auto& c : canonical_) out.emplace_back(print_canonical(c));
        return out;
    }

    bool contains_key(const VariantKey& k) const
    {
        return std::any_of(canonical_.begin(), canonical_.end(),
                           [&](const Expression& c) { return print_canonical(c) == k.text(); });
    }

    /// Membership of an already-rectified-at-1 atom.
    bool contains_canonical(const Expression& c) const { return lookup_.count(c) != 0; }

    friend Interpretation interp_from_atoms(std::span<const Expression> atoms);

private:
    std::vector<Expression> originals_;
    std::vector<Expression> canonical_;
    std::unordered_set<Expression, ExpressionHash> lookup_;
};

/// Builds I(S) from atoms; variant duplicates collapse to one class.
/// Throws NotAnAtom (with the 1-based position) on a logical expression.
inline Interpretation interp_from_atoms(std::span<const Expression> atoms)
{
    Interpretation interp;
    std::vector<std::pair<std::string, Expression>> keyed;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const auto& a = atoms[k];
        if (!is_atom(a)) throw NotAnAtom("interpretation element is not an atom: " + print_canonical(a), k + 1);
        interp.originals_.push_back(a);
        Expression c = canonical_form(a);
        if (interp.lookup_.insert(c).second) keyed.emplace_back(print_canonical(c), c);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [key, c] : keyed) interp.canonical_.push_back(std::move(c));
    return interp;
}

/// Same, reporting NotAnAtom against file line numbers.
inline Interpretation interp_from_lines(std::span<const SourceLine> lines)
{
    std::vector<Expression> atoms;
    for (const auto& l : lines) {
        if (!is_atom(l.expr))
            throw NotAnAtom("line " + std::to_string(l.line) + ": not an atom: " + print_canonical(l.expr), l.line);
        atoms.push_back(l.expr);
    }
    return interp_from_atoms(atoms);
}

inline bool member(const Interpretation& i, const Expression& atom)
{
    if (!is_atom(atom)) throw NotAnAtom("membership is only defined for atoms: " + print_canonical(atom));
    return i.contains_canonical(canonical_form(atom));
}

}  // namespace rpl
