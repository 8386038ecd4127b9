#pragma once

// First-order fragments: a set V of variables, term symbols T and predicate
// symbols P, each with a set of arities. A symbol may sit in both T and P
// and carry several arities; occurrences are told apart by position.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/print.hpp"
#include "rpl/rectify.hpp"
#include "rpl/satisfaction.hpp"
#include "rpl/verdict.hpp"

namespace rpl {

class InvalidFragmentSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotASentence : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PoolNotDisjoint : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FragmentSpec {
    std::set<Symbol> variables;
    std::map<Symbol, std::set<std::uint32_t>> term_symbols;
    std::map<Symbol, std::set<std::uint32_t>> predicate_symbols;

    bool is_variable(const Symbol& s) const { return variables.count(s) != 0; }
    bool is_term_symbol(const Symbol& s, std::uint32_t arity) const { return has(term_symbols, s, arity); }
    bool is_predicate(const Symbol& s, std::uint32_t arity) const { return has(predicate_symbols, s, arity); }

    /// True when some term symbol has arity >= 1 (the term universe is infinite).
    bool has_function_symbols() const
    {
        for (const auto& [s, ar] : term_symbols)
            if (!ar.empty() && *ar.rbegin() >= 1) return true;
        return false;
    }

    void check() const
    {
        for (const auto& v : variables) {
            if (term_symbols.count(v)) throw InvalidFragmentSpec("variable " + v.text() + " is also a term symbol");
            if (predicate_symbols.count(v))
                throw InvalidFragmentSpec("variable " + v.text() + " is also a predicate symbol");
        }
    }

private:
    static bool has(const std::map<Symbol, std::set<std::uint32_t>>& m, const Symbol& s, std::uint32_t n)
    {
        auto it = m.find(s);
        return it != m.end() && it->second.count(n) != 0;
    }
};

struct FormulaClass {
    enum class Kind : std::uint8_t { Term, OpenFormula, Sentence, NotInFragment };
    Kind kind = Kind::NotInFragment;
    std::string reason;  // NotInFragment only

    bool operator==(const FormulaClass& o) const { return kind == o.kind; }
};

inline std::string_view to_string(FormulaClass::Kind k) noexcept
{
    switch (k) {
    case FormulaClass::Kind::Term: return "Term";
    case FormulaClass::Kind::OpenFormula: return "OpenFormula";
    case FormulaClass::Kind::Sentence: return "Sentence";
    case FormulaClass::Kind::NotInFragment: return "NotInFragment";
    }
    return "?";
}

inline std::string to_string(const FormulaClass& c)
{
    std::string s(to_string(c.kind));
    if (c.kind == FormulaClass::Kind::NotInFragment && !c.reason.empty()) s += " (" + c.reason + ")";
    return s;
}

namespace detail {

inline std::optional<Symbol> symbol_of(const Expression& e)
{
    if (e.is_symbol()) return e.as_symbol();
    return std::nullopt;
}

// Term check; on failure `why` says what went wrong.
inline bool term_check(const FragmentSpec& spec, const Expression& e, std::string& why)
{
    if (e.is_symbol()) {
        const Symbol& s = e.as_symbol();
        if (spec.is_variable(s) || spec.is_term_symbol(s, 0)) return true;
        why = s.text() + " is not a variable or constant";
        return false;
    }
    if (e.kind() != Expression::Kind::Apply) {
        why = print_canonical(e) + " is not a term";
        return false;
    }
    auto f = symbol_of(e.constructor());
    auto n = static_cast<std::uint32_t>(e.arguments().size());
    if (!f || !spec.is_term_symbol(*f, n)) {
        why = print_canonical(e.constructor()) + " is not a term symbol of arity " + std::to_string(n);
        return false;
    }
    for (const auto& a : e.arguments())
        if (!term_check(spec, a, why)) return false;
    return true;
}

// Formula check. Collects V-symbols occurring outside the scope of a
// quantifier binding them.
inline bool formula_check(const FragmentSpec& spec, const Expression& e, std::set<Symbol>& free,
                          std::string& why)
{
    switch (e.kind()) {
    case Expression::Kind::Negation: return formula_check(spec, e.operand(), free, why);
    case Expression::Kind::Connective:
        return formula_check(spec, e.left(), free, why) && formula_check(spec, e.right(), free, why);
    case Expression::Kind::Quantified: {
        auto x = symbol_of(e.variable());
        if (!x || !spec.is_variable(*x)) {
            why = "quantified " + print_canonical(e.variable()) + " is not a variable of the fragment";
            return false;
        }
        std::set<Symbol> inner;
        if (!formula_check(spec, e.body(), inner, why)) return false;
        inner.erase(*x);
        free.insert(inner.begin(), inner.end());
        return true;
    }
    case Expression::Kind::Symbol: {
        const Symbol& p = e.as_symbol();
        if (spec.is_predicate(p, 0)) return true;
        why = p.text() + " is not a predicate symbol of arity 0";
        return false;
    }
    case Expression::Kind::Apply: {
        auto p = symbol_of(e.constructor());
        auto n = static_cast<std::uint32_t>(e.arguments().size());
        if (!p || !spec.is_predicate(*p, n)) {
            why = print_canonical(e.constructor()) + " is not a predicate symbol of arity " + std::to_string(n);
            return false;
        }
        for (const auto& a : e.arguments()) {
            if (!term_check(spec, a, why)) return false;
            for_each_symbol(a, [&](const Symbol& s) {
                if (spec.is_variable(s)) free.insert(s);
            });
        }
        return true;
    }
    }
    return false;
}

}  // namespace detail

inline bool is_term(const FragmentSpec& spec, const Expression& e)
{
    std::string why;
    return detail::term_check(spec, e, why);
}

/// Formula readings take precedence: an arity-0 symbol declared both as a
/// predicate and as a constant classifies as a sentence.
inline FormulaClass classify_formula(const FragmentSpec& spec, const Expression& e)
{
    std::set<Symbol> free;
    std::string formula_why;
    if (detail::formula_check(spec, e, free, formula_why))
        return {free.empty() ? FormulaClass::Kind::Sentence : FormulaClass::Kind::OpenFormula, {}};
    std::string term_why;
    if (detail::term_check(spec, e, term_why)) return {FormulaClass::Kind::Term, {}};
    return {FormulaClass::Kind::NotInFragment, formula_why};
}

inline bool is_ground_fragment_atom(const FragmentSpec& spec, const Expression& e)
{
    return is_atom(e) && classify_formula(spec, e).kind == FormulaClass::Kind::Sentence;
}

/// Ground terms of height <= depth, ordered by height then canonical text.
inline std::vector<Expression> ground_terms(const FragmentSpec& spec, std::uint32_t depth)
{
    std::vector<Expression> all;
    std::unordered_set<Expression, ExpressionHash> seen;
    for (const auto& [s, ar] : spec.term_symbols)
        if (ar.count(0)) {
            all.push_back(Expression::symbol(s));
            seen.insert(all.back());
        }
    for (std::uint32_t h = 1; h <= depth; ++h) {
        std::vector<Expression> level = all;
        std::vector<Expression> fresh;
        std::vector<Expression> args;
        for (const auto& [f, ar] : spec.term_symbols)
            for (auto n : ar) {
                if (n == 0) continue;
                auto rec = [&](auto&& self) -> void {
                    if (args.size() == n) {
                        Expression t = Expression::apply(Expression::symbol(f), args);
                        if (seen.insert(t).second) fresh.push_back(std::move(t));
                        return;
                    }
                    for (const auto& a : level) {
                        args.push_back(a);
                        self(self);
                        args.pop_back();
                    }
                };
                rec(rec);
            }
        if (fresh.empty()) break;
        all.insert(all.end(), fresh.begin(), fresh.end());
    }
    detail::sort_by_height_then_key(all);
    return all;
}

/// Ground atoms p(t1..tn) over terms of height <= depth, plus arity-0
/// predicates; ordered by height then canonical text.
inline std::vector<Expression> ground_atoms(const FragmentSpec& spec, std::uint32_t depth)
{
    std::vector<Expression> terms = ground_terms(spec, depth);
    std::vector<Expression> out;
    std::unordered_set<Expression, ExpressionHash> seen;
    std::vector<Expression> args;
    for (const auto& [p, ar] : spec.predicate_symbols)
        for (auto n : ar) {
            if (n == 0) {
                Expression a = Expression::symbol(p);
                if (seen.insert(a).second) out.push_back(std::move(a));
                continue;
            }
            auto rec = [&](auto&& self) -> void {
                if (args.size() == n) {
                    Expression a = Expression::apply(Expression::symbol(p), args);
                    if (seen.insert(a).second) out.push_back(std::move(a));
                    return;
                }
                for (const auto& t : terms) {
                    args.push_back(t);
                    self(self);
                    args.pop_back();
                }
            };
            rec(rec);
        }
    detail::sort_by_height_then_key(out);
    return out;
}

/// Keeps the classes whose representatives are ground atoms of the fragment.
inline Interpretation restrict(const Interpretation& i, const FragmentSpec& spec)
{
    std::vector<Expression> kept;
    for (const auto& c : i.canonical_atoms())
        if (is_ground_fragment_atom(spec, c)) kept.push_back(c);
    return interp_from_atoms(kept);
}

namespace detail {

// First-order substitution of a ground term for x, stopping below
// quantifiers that rebind x.
inline Expression fo_subst(const Expression& e, const Symbol& x, const Expression& t)
{
    switch (e.kind()) {
    case Expression::Kind::Symbol: return e.as_symbol() == x ? t : e;
    case Expression::Kind::Quantified:
        if (e.variable().is_symbol() && e.variable().as_symbol() == x) return e;
        return Expression::quantified(e.quantifier(), e.variable(), fo_subst(e.body(), x, t));
    default: break;
    }
    std::vector<Expression> kids;
    kids.reserve(e.children().size());
    for (const auto& k : e.children()) kids.push_back(fo_subst(k, x, t));
    return e.with_children(std::move(kids));
}

class FoEvaluator {
public:
    FoEvaluator(const Interpretation& i, const FragmentSpec& spec, std::uint32_t depth)
        : interp_(i), terms_(ground_terms(spec, depth)), exact_(!spec.has_function_symbols())
    {
    }

    Verdict eval(const Expression& e) const
    {
        switch (e.kind()) {
        case Expression::Kind::Symbol:
        case Expression::Kind::Apply: return from_bool(interp_.contains_canonical(canonical_form(e)));
        case Expression::Kind::Negation: return kleene_not(eval(e.operand()));
        case Expression::Kind::Connective: {
            Verdict a = eval(e.left());
            Verdict b = eval(e.right());
            switch (e.connective_op()) {
            case Connective::And: return kleene_and(a, b);
            case Connective::Or: return kleene_or(a, b);
            case Connective::Implies: return kleene_implies(a, b);
            }
            return Verdict::Unknown;
        }
        case Expression::Kind::Quantified: {
            const bool universal = e.quantifier() == Quantifier::Forall;
            const Verdict decisive = universal ? Verdict::Falsified : Verdict::Satisfied;
            const Symbol& x = e.variable().as_symbol();
            bool unknown = false;
            for (const auto& t : terms_) {
                Verdict v = eval(fo_subst(e.body(), x, t));
                if (v == decisive) return decisive;
                if (v == Verdict::Unknown) unknown = true;
            }
            // An empty universe makes forall vacuously true and exists false.
            if (unknown || !exact_) return Verdict::Unknown;
            return universal ? Verdict::Satisfied : Verdict::Falsified;
        }
        }
        return Verdict::Unknown;
    }

private:
    const Interpretation& interp_;
    std::vector<Expression> terms_;
    bool exact_;
};

}  // namespace detail

/// Classical Herbrand satisfaction over ground terms of height <= depth.
/// Two-valued for function-free fragments; otherwise a found witness or
/// counterexample decides and everything else is Unknown.
inline Verdict fo_satisfies(const Interpretation& i, const Expression& f, const FragmentSpec& spec,
                            std::uint32_t depth)
{
    FormulaClass c = classify_formula(spec, f);
    if (c.kind != FormulaClass::Kind::Sentence)
        throw NotASentence(print_canonical(f) + " is " + to_string(c) + ", not a sentence");
    return detail::FoEvaluator(i, spec, depth).eval(f);
}

struct ConservativeMismatch {
    std::vector<Expression> extension;  // J, canonical atoms
    Verdict fo = Verdict::Unknown;
    Verdict rpl = Verdict::Unknown;
};

struct ConservativeReport {
    Verdict fo = Verdict::Unknown;
    std::size_t extensions = 0;
    std::size_t inconclusive = 0;  // extensions where a side gave Unknown
    std::vector<ConservativeMismatch> mismatches;

    bool ok() const noexcept { return mismatches.empty(); }
};

/// Checks, for every J = base + subset(pool), that the exact RPL verdict of
/// f in J equals its first-order verdict in base.
inline ConservativeReport conservative_check(const FragmentSpec& spec, const Expression& f,
                                             const Interpretation& base, std::span<const Expression> pool,
                                             std::uint32_t depth)
{
    spec.check();
    for (const auto& a : pool) {
        if (!is_atom(a)) throw NotAnAtom("pool element is not an atom: " + print_canonical(a));
        if (is_ground_fragment_atom(spec, a))
            throw PoolNotDisjoint("pool atom " + print_canonical(a) + " belongs to the fragment");
    }
    for (const auto& a : base.canonical_atoms())
        if (!is_ground_fragment_atom(spec, a))
            throw std::invalid_argument("base atom " + print_canonical(a) + " is not a ground fragment atom");
    if (pool.size() > 20) throw std::invalid_argument("extension pool too large to enumerate");

    ConservativeReport report;
    report.fo = fo_satisfies(base, f, spec, depth);

    // Signature: everything the sentence, base, pool and fragment mention.
    std::vector<Expression> sources{f};
    sources.insert(sources.end(), base.canonical_atoms().begin(), base.canonical_atoms().end());
    sources.insert(sources.end(), pool.begin(), pool.end());
    std::vector<Symbol> extras;
    for (const auto& [s, ar] : spec.term_symbols) extras.push_back(s);
    for (const auto& [s, ar] : spec.predicate_symbols) extras.push_back(s);
    Signature sig = Signature::from(sources, extras);

    const std::size_t n = pool.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Expression> j(base.canonical_atoms().begin(), base.canonical_atoms().end());
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (std::size_t{1} << k)) j.push_back(pool[k]);
        Interpretation ji = interp_from_atoms(j);
        Verdict rpl = satisfies_exact(ji, f, sig);
        ++report.extensions;
        if (report.fo == Verdict::Unknown || rpl == Verdict::Unknown) {
            ++report.inconclusive;
            continue;
        }
        if (rpl != report.fo) report.mismatches.push_back({ji.canonical_atoms(), report.fo, rpl});
    }
    return report;
}

}  // namespace rpl
