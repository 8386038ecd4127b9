#include <gtest/gtest.h>

#include "support.hpp"

using namespace rpl;
using rpl::testing::app;
using rpl::testing::sym;

TEST(Expression, AtomsAndOutermostConstructor)
{
    Expression a = sym("a");
    Expression pa = app("p", {a});
    Expression neg = Expression::negation(pa);
    Expression conj = Expression::connective(Connective::And, pa, a);
    Expression q = Expression::quantified(Quantifier::Forall, sym("x"), app("p", {sym("x")}));

    EXPECT_TRUE(is_atom(a));
    EXPECT_TRUE(is_atom(pa));
    EXPECT_FALSE(is_atom(neg));
    EXPECT_FALSE(is_atom(conj));
    EXPECT_FALSE(is_atom(q));

    EXPECT_EQ(std::get<Expression>(outermost_constructor(pa)), sym("p"));
    EXPECT_EQ(std::get<LogicalTag>(outermost_constructor(neg)), LogicalTag::Not);
    EXPECT_EQ(std::get<LogicalTag>(outermost_constructor(q)), LogicalTag::Forall);

    // A quantified constructor still makes an atom.
    Expression compound = Expression::apply(q, {sym("ann"), sym("bill")});
    EXPECT_TRUE(is_atom(compound));
    EXPECT_EQ(std::get<Expression>(outermost_constructor(compound)), q);
}

TEST(Expression, HeightAndQuantifierCount)
{
    Expression e = rpl::parse("(forall x (p(x) & (exists y q(y, x))))");
    EXPECT_EQ(e.quantifier_count(), 2u);
    EXPECT_EQ(quantifier_count(rpl::parse("p(a)")), 0u);
    EXPECT_EQ(sym("a").height(), 0u);
    EXPECT_EQ(app("p", {sym("a")}).height(), 1u);
    EXPECT_EQ(app("p", {app("f", {sym("a")})}).height(), 2u);
}

TEST(Expression, StructuralEquality)
{
    EXPECT_EQ(rpl::parse("p(a, b)"), app("p", {sym("a"), sym("b")}));
    EXPECT_NE(rpl::parse("p(a, b)"), rpl::parse("p(b, a)"));
    EXPECT_NE(rpl::parse("(p & q)"), rpl::parse("(p | q)"));
    EXPECT_NE(Expression::symbol(Symbol::rect_var(1)), sym("x"));
}

TEST(Expression, ReplaceAllIsSimultaneous)
{
    Expression e = rpl::parse("p(x, f(x), y)");
    Expression r = replace_all(e, sym("x"), app("f", {sym("x")}));
    EXPECT_EQ(print_canonical(r), "p(f(x), f(f(x)), y)");
    EXPECT_EQ(replace_all(e, sym("zz"), sym("a")), e);
}

TEST(Expression, ReplaceAllCompoundTarget)
{
    Expression e = rpl::parse("(forall f(a) (forall f p(f(a), f)))");
    Expression r = replace_all(e, app("f", {sym("a")}), sym("k"));
    EXPECT_EQ(print_canonical(r), "(forall k (forall f p(k, f)))");
}

TEST(Expression, Validate)
{
    EXPECT_NO_THROW(validate(rpl::parse("p(a)")));
    try {
        validate(Expression::apply(sym("p"), {}));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.kind(), ValidationErrorKind::ZeroArityApplication);
    }
    try {
        validate(app("p", {sym("v3")}));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.kind(), ValidationErrorKind::ReservedSymbol);
    }
    try {
        validate(sym("a b"));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.kind(), ValidationErrorKind::MalformedSymbol);
    }
    Expression internal = app("p", {Expression::symbol(Symbol::rect_var(1))});
    EXPECT_THROW(validate(internal), ValidationError);
    EXPECT_NO_THROW(validate(internal, true));
}

TEST(Expression, ReservedNames)
{
    EXPECT_TRUE(is_reserved_name("v1"));
    EXPECT_TRUE(is_reserved_name("v10"));
    EXPECT_TRUE(is_reserved_name("g2"));
    EXPECT_FALSE(is_reserved_name("v0"));
    EXPECT_FALSE(is_reserved_name("v01"));
    EXPECT_FALSE(is_reserved_name("v"));
    EXPECT_FALSE(is_reserved_name("vx"));
    EXPECT_FALSE(is_reserved_name("t1"));
}

TEST(Expression, SymbolsUsedAsEverything)
{
    // One symbol as constant, constructor of several arities and argument of itself.
    Expression e = rpl::parse("e(e(1, 1), e(1))");
    EXPECT_EQ(e.arguments().size(), 2u);
    EXPECT_EQ(e.arguments()[0].arguments().size(), 2u);
    EXPECT_EQ(e.arguments()[1].arguments().size(), 1u);
    EXPECT_EQ(print_canonical(rpl::parse("x(x)")), "x(x)");
}
