#pragma once

// Expression data model: one syntactic category covering what first-order
// logic splits into terms and formulas. Every expression is closed; a symbol
// only acts as a variable because some quantifier binds it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rpl {

/// Where a symbol comes from. User symbols are read from input text; the other
/// kinds are minted internally and live in namespaces no user symbol can reach.
enum class SymbolKind : std::uint8_t {
    User,     ///< non-logical symbol of the loaded language
    RectVar,  ///< rectification variable `v<n>`
    Generic,  ///< surrogate atom `g<n>` used by exact model checking
    Temp,     ///< transient binder used while re-rectifying (never printed in output)
};

class Symbol {
public:
    static Symbol user(std::string name) { return Symbol(SymbolKind::User, 0, std::move(name)); }
    static Symbol rect_var(std::uint32_t index) { return Symbol(SymbolKind::RectVar, index, "v" + std::to_string(index)); }
    static Symbol generic(std::uint32_t index) { return Symbol(SymbolKind::Generic, index, "g" + std::to_string(index)); }
    static Symbol temp(std::uint32_t index) { return Symbol(SymbolKind::Temp, index, "_t" + std::to_string(index)); }

    SymbolKind kind() const noexcept { return kind_; }
    /// Numeric index for internal kinds; 0 for user symbols.
    std::uint32_t index() const noexcept { return index_; }
    const std::string& text() const noexcept { return text_; }

    bool is_rect_var() const noexcept { return kind_ == SymbolKind::RectVar; }

    friend bool operator==(const Symbol& a, const Symbol& b) noexcept
    {
        return a.kind_ == b.kind_ && a.index_ == b.index_ && a.text_ == b.text_;
    }
    friend auto operator<=>(const Symbol& a, const Symbol& b) noexcept
    {
        if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
        if (auto c = a.index_ <=> b.index_; c != 0) return c;
        return a.text_.compare(b.text_) <=> 0;
    }

private:
    Symbol(SymbolKind kind, std::uint32_t index, std::string text)
        : kind_(kind), index_(index), text_(std::move(text)) {}

    SymbolKind kind_;
    std::uint32_t index_;
    std::string text_;
};

/// True for `forall` / `exists`, the only alphanumeric logical tokens.
inline bool is_keyword(std::string_view s) noexcept { return s == "forall" || s == "exists"; }

namespace detail {
inline bool is_positive_numeral(std::string_view s) noexcept
{
    if (s.empty() || s.front() == '0') return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}
}  // namespace detail

/// `v<n>` and `g<n>` with n a positive numeral (no leading zero) are reserved
/// for rectification variables and generic atoms.
inline bool is_reserved_name(std::string_view s) noexcept
{
    return s.size() >= 2 && (s.front() == 'v' || s.front() == 'g') && detail::is_positive_numeral(s.substr(1));
}

inline bool is_symbol_char(char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

inline bool is_well_formed_name(std::string_view s) noexcept
{
    if (s.empty() || is_keyword(s)) return false;
    for (char c : s)
        if (!is_symbol_char(c)) return false;
    return true;
}

enum class Connective : std::uint8_t { And, Or, Implies };
enum class Quantifier : std::uint8_t { Forall, Exists };

/// Outermost constructor of a logical expression.
enum class LogicalTag : std::uint8_t { Not, And, Or, Implies, Forall, Exists };

class Expression;

/// Immutable expression tree with shared structure. Copies are cheap.
class Expression {
public:
    enum class Kind : std::uint8_t { Symbol, Apply, Negation, Connective, Quantified };

    /// Builders do not re-check well-formedness (an Apply may be given zero
    /// arguments); use validate() on trees from untrusted sources.
    static Expression symbol(Symbol s);
    static Expression symbol(std::string name) { return symbol(Symbol::user(std::move(name))); }
    static Expression apply(Expression constructor, std::vector<Expression> args);
    static Expression negation(Expression body);
    static Expression connective(Connective op, Expression left, Expression right);
    static Expression quantified(Quantifier q, Expression variable, Expression body);

    Kind kind() const noexcept;
    bool is_symbol() const noexcept { return kind() == Kind::Symbol; }

    const Symbol& as_symbol() const;
    const Expression& constructor() const;
    std::span<const Expression> arguments() const;
    const Expression& operand() const;  // negation body
    Connective connective_op() const;
    const Expression& left() const;
    const Expression& right() const;
    Quantifier quantifier() const;
    const Expression& variable() const;
    const Expression& body() const;

    /// All direct children in left-to-right order (constructor first for Apply,
    /// bound expression first for quantifiers).
    std::span<const Expression> children() const;

    std::size_t hash() const noexcept;
    /// Tree height: symbols are 0, every other node is one more than its tallest child.
    std::uint32_t height() const noexcept;
    /// Number of quantifier nodes.
    std::uint32_t quantifier_count() const noexcept;

    friend bool operator==(const Expression& a, const Expression& b) noexcept;

    /// Rebuild this node with new children (same kind and tag).
    Expression with_children(std::vector<Expression> kids) const;

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expression make(Kind kind, std::uint8_t tag, std::variant<std::monostate, Symbol> sym,
                           std::vector<Expression> kids);

    std::shared_ptr<const Node> node_;
};

struct Expression::Node {
    Kind kind;
    std::uint8_t tag;  // Connective or Quantifier value
    std::variant<std::monostate, Symbol> sym;
    std::vector<Expression> kids;
    std::size_t hash;
    std::uint32_t height;
    std::uint32_t quantifiers;
};

inline Expression Expression::make(Kind kind, std::uint8_t tag, std::variant<std::monostate, Symbol> sym,
                                   std::vector<Expression> kids)
{
    std::size_t h = std::hash<int>{}(static_cast<int>(kind)) * 31u + tag;
    std::uint32_t height = 0;
    std::uint32_t quantifiers = kind == Kind::Quantified ? 1u : 0u;
    if (const auto* s = std::get_if<Symbol>(&sym)) {
        h ^= std::hash<std::string>{}(s->text()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(s->kind()) << 3;
    }
    for (const auto& k : kids) {
        h ^= k.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        height = std::max(height, k.height() + 1);
        quantifiers += k.quantifier_count();
    }
    return Expression(std::make_shared<const Node>(
        Node{kind, tag, std::move(sym), std::move(kids), h, height, quantifiers}));
}

inline Expression Expression::symbol(Symbol s) { return make(Kind::Symbol, 0, std::move(s), {}); }

inline Expression Expression::apply(Expression constructor, std::vector<Expression> args)
{
    args.insert(args.begin(), std::move(constructor));
    return make(Kind::Apply, 0, {}, std::move(args));
}

inline Expression Expression::negation(Expression body) { return make(Kind::Negation, 0, {}, {std::move(body)}); }

inline Expression Expression::connective(Connective op, Expression left, Expression right)
{
    return make(Kind::Connective, static_cast<std::uint8_t>(op), {}, {std::move(left), std::move(right)});
}

inline Expression Expression::quantified(Quantifier q, Expression variable, Expression body)
{
    return make(Kind::Quantified, static_cast<std::uint8_t>(q), {}, {std::move(variable), std::move(body)});
}

inline Expression::Kind Expression::kind() const noexcept { return node_->kind; }

namespace detail {
[[noreturn]] inline void wrong_kind(const char* what) { throw std::logic_error(std::string("expression is not ") + what); }
}  // namespace detail

inline const Symbol& Expression::as_symbol() const
{
    if (kind() != Kind::Symbol) detail::wrong_kind("a symbol");
    return std::get<Symbol>(node_->sym);
}
inline const Expression& Expression::constructor() const
{
    if (kind() != Kind::Apply) detail::wrong_kind("an application");
    return node_->kids.front();
}
inline std::span<const Expression> Expression::arguments() const
{
    if (kind() != Kind::Apply) detail::wrong_kind("an application");
    return std::span<const Expression>(node_->kids).subspan(1);
}
inline const Expression& Expression::operand() const
{
    if (kind() != Kind::Negation) detail::wrong_kind("a negation");
    return node_->kids[0];
}
inline Connective Expression::connective_op() const
{
    if (kind() != Kind::Connective) detail::wrong_kind("a binary connective");
    return static_cast<Connective>(node_->tag);
}
inline const Expression& Expression::left() const
{
    if (kind() != Kind::Connective) detail::wrong_kind("a binary connective");
    return node_->kids[0];
}
inline const Expression& Expression::right() const
{
    if (kind() != Kind::Connective) detail::wrong_kind("a binary connective");
    return node_->kids[1];
}
inline Quantifier Expression::quantifier() const
{
    if (kind() != Kind::Quantified) detail::wrong_kind("quantified");
    return static_cast<Quantifier>(node_->tag);
}
inline const Expression& Expression::variable() const
{
    if (kind() != Kind::Quantified) detail::wrong_kind("quantified");
    return node_->kids[0];
}
inline const Expression& Expression::body() const
{
    if (kind() != Kind::Quantified) detail::wrong_kind("quantified");
    return node_->kids[1];
}

inline std::span<const Expression> Expression::children() const { return node_->kids; }
inline std::size_t Expression::hash() const noexcept { return node_->hash; }
inline std::uint32_t Expression::height() const noexcept { return node_->height; }
inline std::uint32_t Expression::quantifier_count() const noexcept { return node_->quantifiers; }

inline bool operator==(const Expression& a, const Expression& b) noexcept
{
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind || x.tag != y.tag || x.kids.size() != y.kids.size() || x.sym != y.sym)
        return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (!(x.kids[i] == y.kids[i])) return false;
    return true;
}

inline Expression Expression::with_children(std::vector<Expression> kids) const
{
    return make(node_->kind, node_->tag, node_->sym, std::move(kids));
}

struct ExpressionHash {
    std::size_t operator()(const Expression& e) const noexcept { return e.hash(); }
};

// ---------------------------------------------------------------------------
// Structural queries

/// Atoms are expressions whose outermost constructor is neither a connective
/// nor a quantifier: bare symbols and applications.
inline bool is_atom(const Expression& e) noexcept
{
    return e.kind() == Expression::Kind::Symbol || e.kind() == Expression::Kind::Apply;
}

using OutermostConstructor = std::variant<Expression, LogicalTag>;

inline OutermostConstructor outermost_constructor(const Expression& e)
{
    switch (e.kind()) {
    case Expression::Kind::Symbol: return e;
    case Expression::Kind::Apply: return e.constructor();
    case Expression::Kind::Negation: return LogicalTag::Not;
    case Expression::Kind::Connective:
        switch (e.connective_op()) {
        case Connective::And: return LogicalTag::And;
        case Connective::Or: return LogicalTag::Or;
        case Connective::Implies: return LogicalTag::Implies;
        }
        break;
    case Expression::Kind::Quantified:
        return e.quantifier() == Quantifier::Forall ? LogicalTag::Forall : LogicalTag::Exists;
    }
    throw std::logic_error("unreachable expression kind");
}

inline std::uint32_t quantifier_count(const Expression& e) noexcept { return e.quantifier_count(); }

/// Simultaneously replaces every subexpression structurally equal to `target`
/// by `replacement`. Inserted replacements are not scanned again.
inline Expression replace_all(const Expression& e, const Expression& target, const Expression& replacement)
{
    if (e == target) return replacement;
    if (e.is_symbol() || e.height() < target.height()) return e;
    auto kids = e.children();
    std::vector<Expression> out;
    out.reserve(kids.size());
    bool changed = false;
    for (const auto& k : kids) {
        out.push_back(replace_all(k, target, replacement));
        changed = changed || !(out.back() == k);
    }
    return changed ? e.with_children(std::move(out)) : e;
}

/// True if `needle` occurs as a subexpression of `e` (including e itself).
inline bool occurs_in(const Expression& needle, const Expression& e) noexcept
{
    if (e == needle) return true;
    if (e.height() <= needle.height()) return false;
    for (const auto& k : e.children())
        if (occurs_in(needle, k)) return true;
    return false;
}

/// Calls f on every symbol occurrence, left to right.
template <class F>
void for_each_symbol(const Expression& e, F&& f)
{
    if (e.is_symbol()) {
        f(e.as_symbol());
        return;
    }
    for (const auto& k : e.children()) for_each_symbol(k, f);
}

// ---------------------------------------------------------------------------
// Validation of externally built trees

enum class ValidationErrorKind : std::uint8_t { ZeroArityApplication, ReservedSymbol, MalformedSymbol };

inline std::string_view to_string(ValidationErrorKind k) noexcept
{
    switch (k) {
    case ValidationErrorKind::ZeroArityApplication: return "ZeroArityApplication";
    case ValidationErrorKind::ReservedSymbol: return "ReservedSymbol";
    case ValidationErrorKind::MalformedSymbol: return "MalformedSymbol";
    }
    return "?";
}

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ValidationErrorKind kind, const std::string& msg)
        : std::invalid_argument(msg), kind_(kind) {}
    ValidationErrorKind kind() const noexcept { return kind_; }

private:
    ValidationErrorKind kind_;
};

/// Re-checks a tree against the expression grammar. User symbols must be well
/// formed and outside the reserved `v<n>`/`g<n>` pools; internal symbols are
/// accepted only when `allow_internal` is set.
inline const Expression& validate(const Expression& tree, bool allow_internal = false)
{
    if (tree.is_symbol()) {
        const auto& s = tree.as_symbol();
        if (s.kind() == SymbolKind::User) {
            if (!is_well_formed_name(s.text()))
                throw ValidationError(ValidationErrorKind::MalformedSymbol, "malformed symbol '" + s.text() + "'");
            if (is_reserved_name(s.text()))
                throw ValidationError(ValidationErrorKind::ReservedSymbol,
                                      "symbol '" + s.text() + "' is in a reserved namespace");
        } else if (!allow_internal) {
            throw ValidationError(ValidationErrorKind::ReservedSymbol,
                                  "internal symbol '" + s.text() + "' in user expression");
        }
        return tree;
    }
    if (tree.kind() == Expression::Kind::Apply && tree.arguments().empty())
        throw ValidationError(ValidationErrorKind::ZeroArityApplication, "application with no arguments");
    for (const auto& k : tree.children()) validate(k, allow_internal);
    return tree;
}

}  // namespace rpl

template <>
struct std::hash<rpl::Expression> {
    std::size_t operator()(const rpl::Expression& e) const noexcept { return e.hash(); }
};
