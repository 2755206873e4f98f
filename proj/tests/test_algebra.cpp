#include "oracles.hpp"

#include "lions/algebra.hpp"
#include "lions/builder.hpp"

#include <gtest/gtest.h>

using namespace lions;

namespace {

ChainSum one_left(const LionsForest& t)
{
    ForestChain c = chain_of(t);
    c.ncomps = 2;
    return ChainSum(c);
}

} // namespace

TEST(Algebra, ForestLawsUpToThreeNodes)
{
    auto rep = verify_axioms("forests", 3, {"assoc", "comm", "unit", "coassoc", "counit", "bialgebra", "grading"});
    EXPECT_TRUE(rep.pass()) << rep.text();
    EXPECT_EQ(rep.results.size(), 7u);
    for (const auto& r : rep.results)
        EXPECT_GT(r.checked, 0) << r.axiom;
}

TEST(Algebra, WordLawsUpToLengthThree)
{
    auto rep = verify_axioms("words", 3, {"unit", "coassoc", "counit", "grading"}, Fault::None, 2);
    EXPECT_TRUE(rep.pass()) << rep.text();
}

TEST(Algebra, InjectedFaultsAreCaught)
{
    for (auto fault : {Fault::DropTerm, Fault::DoubleTerm})
        for (const std::string fam : {"forests", "words"}) {
            auto rep = verify_axioms(fam, 3, {"coassoc", "counit"}, fault);
            EXPECT_FALSE(rep.pass()) << fam;
            bool witnessed = false;
            for (const auto& r : rep.results)
                witnessed = witnessed || (!r.pass && !r.counterexample.empty());
            EXPECT_TRUE(witnessed);
        }
}

TEST(Algebra, ReportIsDeterministic)
{
    auto a = verify_axioms("forests", 3, {"coassoc"}, Fault::DropTerm, 1);
    auto b = verify_axioms("forests", 3, {"coassoc"}, Fault::DropTerm, 4);
    EXPECT_EQ(a.json(), b.json());
    EXPECT_NE(a.json().find("lions-verify/1"), std::string::npos);
}

TEST(Algebra, UnknownFamilyOrAxiomThrows)
{
    EXPECT_ANY_THROW(verify_axioms("trees", 2, {"assoc"}));
    EXPECT_ANY_THROW(verify_axioms("forests", 2, {"nope"}));
}

TEST(Algebra, CoproductOfRootedForest)
{
    for (const auto& t : enumerate_forests(3, 1))
        for (int label : {1, 2}) {
            auto rooted = forest_root(t, label);
            auto expect = one_left(rooted) + chain_root_right(forest_coproduct(t), label);
            EXPECT_EQ(forest_coproduct(rooted), expect) << forest_str(t);
        }
}

TEST(Algebra, CoproductOfDecoupledForest)
{
    for (const auto& t : enumerate_forests(4, 1))
        EXPECT_EQ(forest_coproduct(forest_decouple(t)), chain_decouple(forest_coproduct(t))) << forest_str(t);
}

TEST(Algebra, CoproductOfProductIsTwisted)
{
    auto all = enumerate_forests(2, 1);
    for (const auto& a : all)
        for (const auto& b : all) {
            auto lhs = forest_coproduct(forest_product(a, b));
            EXPECT_EQ(lhs, twisted_product(forest_coproduct(a), forest_coproduct(b))) << forest_str(a) << " " << forest_str(b);
        }
}

TEST(Algebra, CounitPicksTheEmptyForest)
{
    ForestSum x(unit_forest(), Rational(3));
    x.add(eval_expr(parse_expr("[1]_1")), Rational(5));
    EXPECT_EQ(counit(x), 3);
    for (const auto& t : enumerate_forests(3, 1)) {
        const auto d = forest_coproduct(t);
        EXPECT_EQ(counit_at(d, 1).size(), 1u);
        EXPECT_EQ(counit_at(d, 0).size(), 1u);
    }
}

TEST(Algebra, TruncationExamples)
{
    const TruncationSpec spec{{1, 1, 2}, false};
    EXPECT_TRUE(within({1, 1}, spec));
    EXPECT_FALSE(within({2, 1}, spec));
    EXPECT_FALSE(within({1, 1}, TruncationSpec{{1, 1, 2}, true}));
    EXPECT_TRUE(within({0, 1}, TruncationSpec{{1, 2, 3}, false}));
    EXPECT_FALSE(within({0, 2}, TruncationSpec{{1, 2, 3}, false}));

    WordSum w;
    for (const auto& x : enumerate_words(3, 1))
        w.add(x, Rational(1));
    auto kept = truncate(w, spec);
    for (const auto& [k, t] : kept.terms())
        EXPECT_LE(t.basis.size(), 2u);
    long expect = 0;
    for (int n = 0; n <= 2; ++n)
        expect += oracle::tagged_count(n, 1);
    EXPECT_EQ(static_cast<long>(kept.size()), expect);
}

TEST(Algebra, GradingIsAdditive)
{
    auto all = enumerate_forests(2, 1);
    for (const auto& a : all)
        for (const auto& b : all) {
            auto ga = forest_grading(a), gb = forest_grading(b), gp = forest_grading(forest_product(a, b));
            EXPECT_EQ(gp.first, ga.first + gb.first);
            EXPECT_EQ(gp.second, ga.second + gb.second);
        }
}
