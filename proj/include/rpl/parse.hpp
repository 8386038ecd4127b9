#pragma once

// Recursive-descent parser for the concrete syntax
//
//   expr   := symbol | expr '(' expr (',' expr)* ')'
//           | '(' '~' expr ')' | '(' expr binop expr ')' | '(' quant expr expr ')'
//   binop  := '&' | '|' | '=>' | '<=>'
//   quant  := 'forall' | 'exists'
//
// Unicode aliases (∧ ∨ ⇒ ⇔ ¬ ∀ ∃) are accepted on input. `<=>` is expanded
// while parsing: (A <=> B) becomes ((A & B) | ((~ A) & (~ B))).
// `#` starts a comment running to the end of the line.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rpl/expression.hpp"
#include "rpl/print.hpp"

namespace rpl {

struct SourceSpan {
    std::size_t start = 0;  // byte offset, inclusive
    std::size_t end = 0;    // byte offset, exclusive
};

enum class ParseErrorKind : std::uint8_t {
    UnbalancedParens,
    MissingOperand,
    ReservedSymbol,
    EmptyArgumentList,
    TrailingInput,
    UnknownToken,
};

inline std::string_view to_string(ParseErrorKind k) noexcept
{
    switch (k) {
    case ParseErrorKind::UnbalancedParens: return "UnbalancedParens";
    case ParseErrorKind::MissingOperand: return "MissingOperand";
    case ParseErrorKind::ReservedSymbol: return "ReservedSymbol";
    case ParseErrorKind::EmptyArgumentList: return "EmptyArgumentList";
    case ParseErrorKind::TrailingInput: return "TrailingInput";
    case ParseErrorKind::UnknownToken: return "UnknownToken";
    }
    return "?";
}

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
        : std::runtime_error(message), kind_(kind), span_(span) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    std::string_view code() const noexcept { return to_string(kind_); }
    SourceSpan span() const noexcept { return span_; }

    /// Same error moved by `delta` bytes (used when a line is parsed out of a file).
    ParseError shifted(std::size_t delta) const
    {
        return ParseError(kind_, {span_.start + delta, span_.end + delta}, what());
    }

private:
    ParseErrorKind kind_;
    SourceSpan span_;
};

struct ParseOptions {
    /// Accept `v<n>` and `g<n>` as rectification variables and generic atoms.
    /// Off for user input; on for re-reading canonical output.
    bool allow_internal = false;
};

namespace detail {

enum class Tok : std::uint8_t {
    LParen, RParen, Comma, Not, And, Or, Implies, Iff, Forall, Exists, Symbol, End,
};

struct Token {
    Tok kind;
    SourceSpan span;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_blank();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, {pos_, pos_}, {}});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void skip_blank()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    Token take(Tok kind, std::size_t len)
    {
        Token t{kind, {pos_, pos_ + len}, std::string(src_.substr(pos_, len))};
        pos_ += len;
        return t;
    }

    Token next()
    {
        char c = src_[pos_];
        switch (c) {
        case '(': return take(Tok::LParen, 1);
        case ')': return take(Tok::RParen, 1);
        case ',': return take(Tok::Comma, 1);
        case '~': return take(Tok::Not, 1);
        case '&': return take(Tok::And, 1);
        case '|': return take(Tok::Or, 1);
        default: break;
        }
        if (starts_with("=>")) return take(Tok::Implies, 2);
        if (starts_with("<=>")) return take(Tok::Iff, 3);
        // UTF-8 aliases
        if (starts_with("∧")) return take(Tok::And, 3);
        if (starts_with("∨")) return take(Tok::Or, 3);
        if (starts_with("⇒")) return take(Tok::Implies, 3);
        if (starts_with("⇔")) return take(Tok::Iff, 3);
        if (starts_with("¬")) return take(Tok::Not, 2);
        if (starts_with("∀")) return take(Tok::Forall, 3);
        if (starts_with("∃")) return take(Tok::Exists, 3);
        if (is_symbol_char(c)) {
            std::size_t len = 0;
            while (pos_ + len < src_.size() && is_symbol_char(src_[pos_ + len])) ++len;
            std::string_view word = src_.substr(pos_, len);
            if (word == "forall") return take(Tok::Forall, len);
            if (word == "exists") return take(Tok::Exists, len);
            return take(Tok::Symbol, len);
        }
        std::size_t len = 1;
        // keep a whole UTF-8 sequence together in the diagnostic span
        while (pos_ + len < src_.size() && (static_cast<unsigned char>(src_[pos_ + len]) & 0xC0) == 0x80) ++len;
        throw ParseError(ParseErrorKind::UnknownToken, {pos_, pos_ + len},
                         "unknown token '" + std::string(src_.substr(pos_, len)) + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), opts_(opts) {}

    Expression parse_all()
    {
        Expression e = expr();
        if (peek().kind == Tok::RParen)
            throw ParseError(ParseErrorKind::UnbalancedParens, peek().span, "unmatched ')'");
        if (peek().kind != Tok::End)
            throw ParseError(ParseErrorKind::TrailingInput, peek().span,
                             "unexpected '" + peek().text + "' after complete expression");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void missing(const char* what) const
    {
        const Token& t = peek();
        if (t.kind == Tok::End)
            throw ParseError(ParseErrorKind::UnbalancedParens, t.span, std::string("input ended; expected ") + what);
        throw ParseError(ParseErrorKind::MissingOperand, t.span,
                         std::string("expected ") + what + ", found '" + t.text + "'");
    }

    void expect_close(const Token& open)
    {
        if (peek().kind == Tok::RParen) {
            advance();
            return;
        }
        if (peek().kind == Tok::End)
            throw ParseError(ParseErrorKind::UnbalancedParens, {open.span.start, peek().span.end},
                             "'(' is never closed");
        throw ParseError(ParseErrorKind::MissingOperand, peek().span, "expected ')', found '" + peek().text + "'");
    }

    Expression symbol_from(const Token& t) const
    {
        if (is_reserved_name(t.text)) {
            if (!opts_.allow_internal)
                throw ParseError(ParseErrorKind::ReservedSymbol, t.span,
                                 "symbol '" + t.text + "' is reserved for internal variables");
            auto idx = static_cast<std::uint32_t>(std::stoul(t.text.substr(1)));
            return Expression::symbol(t.text.front() == 'v' ? Symbol::rect_var(idx) : Symbol::generic(idx));
        }
        return Expression::symbol(Symbol::user(t.text));
    }

    // An argument list may only start here if it cannot be the start of a
    // parenthesised logical expression; used after a quantifier's bound expression.
    bool may_open_args() const
    {
        const Token& nxt = peek(1);
        return nxt.kind != Tok::Not && nxt.kind != Tok::Forall && nxt.kind != Tok::Exists;
    }

    Expression expr(bool binder_position = false)
    {
        Expression head = primary();
        while (peek().kind == Tok::LParen) {
            if (binder_position) {
                if (!may_open_args()) break;
                // Speculate: "x (p & q)" is a binder followed by a body, not x applied.
                std::size_t saved = pos_;
                try {
                    head = Expression::apply(head, args());
                } catch (const ParseError&) {
                    pos_ = saved;
                    break;
                }
            } else {
                head = Expression::apply(head, args());
            }
        }
        return head;
    }

    std::vector<Expression> args()
    {
        const Token& open = advance();  // '('
        if (peek().kind == Tok::RParen)
            throw ParseError(ParseErrorKind::EmptyArgumentList, {open.span.start, peek().span.end},
                             "argument list must not be empty");
        std::vector<Expression> out;
        out.push_back(operand("an argument"));
        while (peek().kind == Tok::Comma) {
            advance();
            out.push_back(operand("an argument"));
        }
        expect_close(open);
        return out;
    }

    Expression operand(const char* what, bool binder_position = false)
    {
        auto k = peek().kind;
        if (k != Tok::Symbol && k != Tok::LParen) missing(what);
        return expr(binder_position);
    }

    Expression primary()
    {
        const Token& t = peek();
        if (t.kind == Tok::Symbol) {
            advance();
            return symbol_from(t);
        }
        if (t.kind == Tok::LParen) {
            const Token& open = advance();
            return parenthesised(open);
        }
        if (t.kind == Tok::RParen) throw ParseError(ParseErrorKind::UnbalancedParens, t.span, "unmatched ')'");
        missing("an expression");
    }

    Expression parenthesised(const Token& open)
    {
        switch (peek().kind) {
        case Tok::Not: {
            advance();
            Expression body = operand("an operand of '~'");
            expect_close(open);
            return Expression::negation(std::move(body));
        }
        case Tok::Forall:
        case Tok::Exists: {
            Quantifier q = advance().kind == Tok::Forall ? Quantifier::Forall : Quantifier::Exists;
            Expression var = operand("a quantified expression", true);
            Expression body = operand("a quantifier body");
            expect_close(open);
            return Expression::quantified(q, std::move(var), std::move(body));
        }
        default: break;
        }
        Expression lhs = operand("an expression");
        Tok op = peek().kind;
        if (op != Tok::And && op != Tok::Or && op != Tok::Implies && op != Tok::Iff) {
            if (op == Tok::RParen)
                throw ParseError(ParseErrorKind::MissingOperand, peek().span,
                                 "expected a binary connective and a second operand");
            missing("a binary connective");
        }
        advance();
        Expression rhs = operand("a right operand");
        expect_close(open);
        switch (op) {
        case Tok::And: return Expression::connective(Connective::And, lhs, rhs);
        case Tok::Or: return Expression::connective(Connective::Or, lhs, rhs);
        case Tok::Implies: return Expression::connective(Connective::Implies, lhs, rhs);
        default: break;
        }
        // (A <=> B) is shorthand for ((A & B) | ((~ A) & (~ B)))
        return Expression::connective(
            Connective::Or, Expression::connective(Connective::And, lhs, rhs),
            Expression::connective(Connective::And, Expression::negation(lhs), Expression::negation(rhs)));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ParseOptions opts_;
};

}  // namespace detail

/// Parses exactly one expression; anything but whitespace and comments after
/// it is an error.
inline Expression parse(std::string_view input, ParseOptions opts = {})
{
    detail::Lexer lexer(input);
    detail::Parser parser(lexer.run(), opts);
    return parser.parse_all();
}

/// One parsed line of a program or interpretation file.
struct SourceLine {
    Expression expr;
    std::size_t line = 0;    // 1-based
    std::size_t offset = 0;  // byte offset of the line start in the file
};

/// Splits a `.rpl`/`.rpli` document into one expression per non-blank,
/// non-comment line. ParseError spans are file-relative.
inline std::vector<SourceLine> parse_lines(std::string_view text, ParseOptions opts = {})
{
    std::vector<SourceLine> out;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') {
            try {
                out.push_back({parse(line, opts), line_no, start});
            } catch (const ParseError& e) {
                throw e.shifted(start);
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace rpl
