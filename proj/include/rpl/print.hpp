#pragma once

// Canonical ASCII rendering. Fully parenthesised, single spaces between
// tokens, `, ` between arguments. Structurally distinct trees print to
// distinct strings, so the text doubles as a key.

#include <ostream>
#include <string>

#include "rpl/expression.hpp"

namespace rpl {

inline std::string_view to_string(Connective op) noexcept
{
    switch (op) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Implies: return "=>";
    }
    return "?";
}

inline std::string_view to_string(Quantifier q) noexcept { return q == Quantifier::Forall ? "forall" : "exists"; }

inline std::string_view to_string(LogicalTag t) noexcept
{
    switch (t) {
    case LogicalTag::Not: return "~";
    case LogicalTag::And: return "&";
    case LogicalTag::Or: return "|";
    case LogicalTag::Implies: return "=>";
    case LogicalTag::Forall: return "forall";
    case LogicalTag::Exists: return "exists";
    }
    return "?";
}

namespace detail {
inline void print_into(std::string& out, const Expression& e)
{
    switch (e.kind()) {
    case Expression::Kind::Symbol: out += e.as_symbol().text(); return;
    case Expression::Kind::Apply: {
        print_into(out, e.constructor());
        out += '(';
        bool first = true;
        for (const auto& a : e.arguments()) {
            if (!first) out += ", ";
            first = false;
            print_into(out, a);
        }
        out += ')';
        return;
    }
    case Expression::Kind::Negation:
        out += "(~ ";
        print_into(out, e.operand());
        out += ')';
        return;
    case Expression::Kind::Connective:
        out += '(';
        print_into(out, e.left());
        out += ' ';
        out += to_string(e.connective_op());
        out += ' ';
        print_into(out, e.right());
        out += ')';
        return;
    case Expression::Kind::Quantified:
        out += '(';
        out += to_string(e.quantifier());
        out += ' ';
        print_into(out, e.variable());
        out += ' ';
        print_into(out, e.body());
        out += ')';
        return;
    }
}
}  // namespace detail

inline std::string print_canonical(const Expression& e)
{
    std::string out;
    detail::print_into(out, e);
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Expression& e) { return os << print_canonical(e); }

}  // namespace rpl
