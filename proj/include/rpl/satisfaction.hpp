#pragma once

// Satisfaction of expressions in Herbrand interpretations.
//
// An expression is evaluated through its rectification at index 1. Atoms are
// satisfied iff their variant class is in the interpretation; connectives use
// strong Kleene tables. Quantifiers range over an infinite domain, so two
// computable modes exist:
//
//  * bounded: instantiate with every enumerated atom of height <= depth.
//    A witness (for exists) or counterexample (for forall) settles the
//    quantifier; otherwise the result is Unknown.
//  * exact: instantiate with the support candidates of the body plus one
//    fresh generic atom g<n>, which stands for every atom outside the
//    candidate set. Two-valued whenever the candidate search is complete.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/matching.hpp"
#include "rpl/print.hpp"
#include "rpl/rectify.hpp"
#include "rpl/universe.hpp"
#include "rpl/verdict.hpp"

namespace rpl {

enum class CheckMode : std::uint8_t { Exact, Bounded };

struct ModeSpec {
    CheckMode mode = CheckMode::Exact;
    std::uint32_t depth = 0;  // bounded mode only

    static ModeSpec exact() { return {CheckMode::Exact, 0}; }
    static ModeSpec bounded(std::uint32_t depth) { return {CheckMode::Bounded, depth}; }
};

struct EvalStats {
    std::uint64_t instantiations = 0;  // quantifier instances evaluated
    std::uint64_t candidates = 0;      // support candidates found (exact) or domain size used (bounded)
    std::uint32_t depth = 0;           // enumeration depth (bounded)
    bool incomplete = false;           // exact mode fell back to Unknown somewhere

    EvalStats& operator+=(const EvalStats& o)
    {
        instantiations += o.instantiations;
        candidates += o.candidates;
        depth = std::max(depth, o.depth);
        incomplete = incomplete || o.incomplete;
        return *this;
    }
};

struct Evaluation {
    Verdict verdict = Verdict::Unknown;
    /// Instantiations that decided the outermost quantifier chain, outermost first.
    std::vector<Expression> witnesses;
};

class Evaluator {
public:
    Evaluator(const Interpretation& interp, Signature sig, ModeSpec mode)
        : interp_(interp), sig_(std::move(sig)), mode_(mode)
    {
        stats_.depth = mode_.mode == CheckMode::Bounded ? mode_.depth : 0;
    }

    Evaluation evaluate(const Expression& e) { return eval(canonical_form(e)); }

    const EvalStats& stats() const noexcept { return stats_; }
    void reset_stats()
    {
        stats_ = {};
        stats_.depth = mode_.mode == CheckMode::Bounded ? mode_.depth : 0;
    }

private:
    bool holds(const Expression& atom) const { return interp_.contains_canonical(canonical_form(atom)); }

    Evaluation eval(const Expression& r)
    {
        switch (r.kind()) {
        case Expression::Kind::Symbol:
        case Expression::Kind::Apply: return {from_bool(holds(r)), {}};
        case Expression::Kind::Negation: {
            Evaluation sub = eval(r.operand());
            sub.verdict = kleene_not(sub.verdict);
            return sub;
        }
        case Expression::Kind::Connective: return connective(r);
        case Expression::Kind::Quantified: return quantified(r);
        }
        return {};
    }

    Evaluation connective(const Expression& r)
    {
        Evaluation a = eval(r.left());
        // Short-circuit when the left operand alone decides.
        switch (r.connective_op()) {
        case Connective::And:
            if (a.verdict == Verdict::Falsified) return a;
            break;
        case Connective::Or:
            if (a.verdict == Verdict::Satisfied) return a;
            break;
        case Connective::Implies:
            if (a.verdict == Verdict::Falsified) return {Verdict::Satisfied, std::move(a.witnesses)};
            break;
        }
        Evaluation b = eval(r.right());
        Verdict v = Verdict::Unknown;
        switch (r.connective_op()) {
        case Connective::And: v = kleene_and(a.verdict, b.verdict); break;
        case Connective::Or: v = kleene_or(a.verdict, b.verdict); break;
        case Connective::Implies: v = kleene_implies(a.verdict, b.verdict); break;
        }
        // Report the witnesses of the operand that fixed the result, if one did.
        if (v != Verdict::Unknown && b.verdict != Verdict::Unknown) return {v, std::move(b.witnesses)};
        return {v, std::move(a.witnesses)};
    }

    const std::vector<Expression>& bounded_domain()
    {
        if (!domain_ && sig_.symbols.empty()) domain_.emplace();
        if (!domain_) {
            domain_ = sig_.range == RangePolicy::AtomsOnly ? enumerate_atoms(sig_, mode_.depth)
                                                           : enumerate_expressions(sig_, mode_.depth);
        }
        return *domain_;
    }

    Evaluation quantified(const Expression& r)
    {
        const bool universal = r.quantifier() == Quantifier::Forall;
        const Verdict decisive = universal ? Verdict::Falsified : Verdict::Satisfied;
        const Symbol& v = r.variable().as_symbol();
        const Expression& body = r.body();

        std::vector<Expression> domain;
        bool exhaustive = false;
        if (mode_.mode == CheckMode::Exact) {
            CandidateSearch found = find_support(interp_, body, v, sig_.range);
            stats_.candidates += found.candidates.size();
            domain = std::move(found.candidates);
            domain.push_back(Expression::symbol(Symbol::generic(++generics_)));
            exhaustive = found.complete;
            if (!found.complete) stats_.incomplete = true;
        } else {
            domain = bounded_domain();
            stats_.candidates += domain.size();
        }

        bool any_unknown = false;
        for (const auto& a : domain) {
            ++stats_.instantiations;
            Evaluation sub = eval(instantiate(body, v, a));
            if (sub.verdict == decisive) {
                std::vector<Expression> w{a};
                w.insert(w.end(), sub.witnesses.begin(), sub.witnesses.end());
                return {decisive, std::move(w)};
            }
            if (sub.verdict == Verdict::Unknown) any_unknown = true;
        }
        if (!exhaustive || any_unknown) return {Verdict::Unknown, {}};
        return {universal ? Verdict::Satisfied : Verdict::Falsified, {}};
    }

    const Interpretation& interp_;
    Signature sig_;
    ModeSpec mode_;
    EvalStats stats_;
    std::uint32_t generics_ = 0;
    std::optional<std::vector<Expression>> domain_;
};

inline Verdict satisfies_bounded(const Interpretation& i, const Expression& e, const Signature& sig,
                                 std::uint32_t depth)
{
    return Evaluator(i, sig, ModeSpec::bounded(depth)).evaluate(e).verdict;
}

inline Verdict satisfies_exact(const Interpretation& i, const Expression& e, const Signature& sig)
{
    return Evaluator(i, sig, ModeSpec::exact()).evaluate(e).verdict;
}

/// Signature used when the caller does not supply one: the user symbols left
/// in the canonical forms of the program and the interpretation (names that
/// only serve as quantified variables disappear), plus `extras`.
inline Signature default_signature(const Interpretation& i, std::span<const Expression> program,
                                   std::span<const Symbol> extras = {}, std::uint32_t max_arity = 1,
                                   RangePolicy range = RangePolicy::AtomsOnly)
{
    std::vector<Expression> all;
    for (const auto& e : program) all.push_back(canonical_form(e));
    all.insert(all.end(), i.canonical_atoms().begin(), i.canonical_atoms().end());
    return Signature::from(all, extras, max_arity, range);
}

struct ExpressionReport {
    Expression expression;
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> witnesses;  // canonical texts
    std::uint64_t candidates_examined = 0;
};

struct CheckReport {
    std::vector<ExpressionReport> items;
    Verdict aggregate = Verdict::Satisfied;
    EvalStats stats;
    ModeSpec mode;
};

inline Verdict aggregate_of(const std::vector<ExpressionReport>& items)
{
    bool unknown = false;
    for (const auto& it : items) {
        if (it.verdict == Verdict::Falsified) return Verdict::Falsified;
        if (it.verdict == Verdict::Unknown) unknown = true;
    }
    return unknown ? Verdict::Unknown : Verdict::Satisfied;
}

inline CheckReport check_program(const Interpretation& i, std::span<const Expression> program, ModeSpec mode,
                                 const Signature& sig)
{
    CheckReport report;
    report.mode = mode;
    Evaluator ev(i, sig, mode);
    for (const auto& e : program) {
        ev.reset_stats();
        Evaluation res = ev.evaluate(e);
        ExpressionReport item{e, res.verdict, {}, ev.stats().instantiations};
        for (const auto& w : res.witnesses) item.witnesses.push_back(print_canonical(w));
        report.items.push_back(std::move(item));
        report.stats += ev.stats();
    }
    report.aggregate = aggregate_of(report.items);
    return report;
}

}  // namespace rpl
