#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace rpl;

namespace {

Signature signature(std::vector<std::string> names, std::uint32_t max_arity)
{
    Signature sig;
    for (const auto& n : names) sig.symbols.push_back(Symbol::user(n));
    std::sort(sig.symbols.begin(), sig.symbols.end());
    sig.max_arity = max_arity;
    return sig;
}

std::set<std::string> keys_of(const std::vector<Expression>& es)
{
    std::set<std::string> out;
    for (const auto& e : es) out.insert(print_canonical(e));
    return out;
}

std::vector<std::string> texts(const std::vector<Expression>& es)
{
    std::vector<std::string> out;
    for (const auto& e : es) out.push_back(print_canonical(e));
    return out;
}

}  // namespace

TEST(Universe, SmallListings)
{
    EXPECT_EQ(texts(enumerate_atoms(signature({"a"}, 1), 1)), (std::vector<std::string>{"a", "a(a)"}));
    EXPECT_EQ(texts(enumerate_atoms(signature({"a", "b"}, 1), 0)), (std::vector<std::string>{"a", "b"}));
}

TEST(Universe, NoVariantDuplicates)
{
    auto atoms = enumerate_atoms(signature({"a", "b"}, 2), 2);
    std::set<std::string> keys;
    for (const auto& a : atoms) {
        EXPECT_TRUE(is_atom(a));
        EXPECT_EQ(canonical_form(a), a);
        EXPECT_TRUE(keys.insert(canonical_key(a).text()).second) << print_canonical(a);
    }
}

TEST(Universe, OrderedByHeightThenText)
{
    auto atoms = enumerate_atoms(signature({"a", "b"}, 1), 2);
    for (std::size_t k = 1; k < atoms.size(); ++k) {
        auto prev = std::make_pair(atoms[k - 1].height(), print_canonical(atoms[k - 1]));
        auto cur = std::make_pair(atoms[k].height(), print_canonical(atoms[k]));
        EXPECT_LT(prev, cur);
    }
}

struct OracleCase {
    std::vector<std::string> symbols;
    std::uint32_t max_arity;
    std::uint32_t depth;
};

void PrintTo(const OracleCase& c, std::ostream* os)
{
    for (const auto& s : c.symbols) *os << s;
    *os << "/" << c.max_arity << "/" << c.depth;
}

class UniverseOracle : public ::testing::TestWithParam<OracleCase> {};

TEST_P(UniverseOracle, AtomsMatchBruteForce)
{
    const auto& c = GetParam();
    auto mine = keys_of(enumerate_atoms(signature(c.symbols, c.max_arity), c.depth));
    auto oracle = rpl::testing::brute_force_atom_keys(c.symbols, c.max_arity, c.depth);
    EXPECT_EQ(mine.size(), oracle.size());
    EXPECT_EQ(mine, oracle);
}

TEST_P(UniverseOracle, ExpressionsMatchBruteForce)
{
    const auto& c = GetParam();
    auto mine = keys_of(enumerate_expressions(signature(c.symbols, c.max_arity), c.depth));
    auto oracle = rpl::testing::brute_force_expression_keys(c.symbols, c.max_arity, c.depth);
    EXPECT_EQ(mine, oracle);
}

INSTANTIATE_TEST_SUITE_P(Signatures, UniverseOracle,
                         ::testing::Values(OracleCase{{"a"}, 1, 0}, OracleCase{{"a"}, 1, 1},
                                           OracleCase{{"a"}, 1, 2}, OracleCase{{"a", "b"}, 1, 2},
                                           OracleCase{{"a", "b"}, 2, 1}, OracleCase{{"p"}, 2, 2}),
                         [](const ::testing::TestParamInfo<OracleCase>& info) {
                             std::string name;
                             for (const auto& s : info.param.symbols) name += s;
                             return name + "_arity" + std::to_string(info.param.max_arity) + "_depth" +
                                    std::to_string(info.param.depth);
                         });

TEST(Universe, SignatureChecks)
{
    Signature empty;
    EXPECT_THROW(enumerate_atoms(empty, 1), std::invalid_argument);
    Signature zero = signature({"a"}, 0);
    EXPECT_THROW(enumerate_atoms(zero, 1), std::invalid_argument);
}
