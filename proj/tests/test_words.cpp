#include "oracles.hpp"

#include "lions/algebra.hpp"
#include "lions/words.hpp"

#include <gtest/gtest.h>

using namespace lions;

namespace {

LionsWord word(const std::string& s) { return parse_word(s); }

Rational total(const WordSum& x)
{
    Rational s(0);
    for (const auto& [k, t] : x.terms())
        s += t.coeff;
    return s;
}

} // namespace

TEST(Words, FromSequence)
{
    auto w = word_from_seq({1, 2}, parse_seq("(1,2)", {"0"}));
    EXPECT_EQ(w.part.blocks(), Partition({{1}, {2}}));
    EXPECT_TRUE(w.part.tag_block("0").empty());
    EXPECT_TRUE(word_from_seq({}, parse_seq("()", {"0"})).empty());
    auto v = word_from_seq({1, 1, 2}, parse_seq("(#0,1,1)", {"0"}));
    EXPECT_EQ(v.part.tag_block("0"), (Block{1}));
    EXPECT_EQ(v.part.blocks(), Partition({{2, 3}}));
    try {
        word_from_seq({1}, parse_seq("(1,1)", {"0"}));
        FAIL();
    } catch (const WordError& e) {
        EXPECT_EQ(e.kind, WordError::Kind::LengthMismatch);
    }
}

TEST(Words, TextAndSequenceRoundTrip)
{
    for (const auto& w : enumerate_words(3, 2)) {
        EXPECT_EQ(word_str(parse_word(word_str(w))), word_str(w));
        auto [letters, a] = word_to_seq(w);
        EXPECT_EQ(word_str(word_from_seq(letters, a)), word_str(w));
    }
    EXPECT_EQ(word_str(word("w[1,2|1,1]")), "w[1,2|1,1]");
    EXPECT_THROW(word("w[1,2|1]"), WordError);
}

TEST(Words, EnumerationCount)
{
    // Sum over lengths of d^n times tagged partitions of an n-set.
    long expect = 0;
    for (int n = 0; n <= 4; ++n) {
        long p = 1;
        for (int i = 0; i < n; ++i)
            p *= 2;
        expect += p * oracle::tagged_count(n, 1);
    }
    EXPECT_EQ(static_cast<long>(enumerate_words(4, 2).size()), expect);
}

TEST(Words, ShuffleExamples)
{
    auto s = word_shuffle_basis(word("w[1|#0]"), word("w[2|#0]"));
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.coeff(word("w[1,2|#0,#0]")), 1);
    EXPECT_EQ(s.coeff(word("w[2,1|#0,#0]")), 1);
    EXPECT_EQ(word_shuffle_basis(unit_word(), word("w[1,2|#0,1]")), WordSum(word("w[1,2|#0,1]")));
    EXPECT_EQ(total(word_shuffle_basis(word("w[1|1]"), word("w[2,1|1,2]"))), 3);
    EXPECT_EQ(word_shuffle_basis(word("w[1|1]"), word("w[1,1|1,2]")).coeff(word("w[1,1,1|1,2,3]")), 3);
}

TEST(Words, ShuffleTermCountIsBinomial)
{
    auto all = enumerate_words(2, 2);
    for (const auto& a : all)
        for (const auto& b : all)
            EXPECT_EQ(total(word_shuffle_basis(a, b)), oracle::binom(static_cast<int>(a.size() + b.size()), static_cast<int>(a.size())));
}

TEST(Words, CoproductExamples)
{
    auto w = word("w[1,2|1,1]");
    auto d = word_coproduct_basis(w);
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(word_count(w, w, unit_word()), 1);
    EXPECT_EQ(word_count(w, unit_word(), w), 1);
    EXPECT_EQ(word_count(w, word("w[1|1]"), word("w[2|1]")), 1);
    EXPECT_EQ(word_count(w, word("w[2|1]"), word("w[1|1]")), 0);
    // The shared block couples prefix and suffix.
    bool coupled = false;
    for (const auto& [k, t] : d.terms())
        if (t.basis.comps[0].size() == 1) {
            auto [left, right] = word_pair_tagged(t.basis);
            coupled = !left.part.tag_block(block_tag({1})).empty();
            EXPECT_EQ(word_str(right), "w[2|1]");
        }
    EXPECT_TRUE(coupled);

    auto free = word_coproduct_basis(word("w[1,2|1,2]"));
    for (const auto& [k, t] : free.terms())
        if (t.basis.comps[0].size() == 1) {
            auto [left, right] = word_pair_tagged(t.basis);
            EXPECT_EQ(left.part.blocks(), Partition(std::vector<Block>{{1}}));
        }

    auto unit = word_coproduct_basis(unit_word());
    ASSERT_EQ(unit.size(), 1u);
    EXPECT_TRUE(unit.terms().begin()->second.basis.comps[0].empty());
}

TEST(Words, CoproductHasLengthPlusOneTerms)
{
    for (const auto& w : enumerate_words(4, 2)) {
        Rational s(0);
        const auto d = word_coproduct_basis(w);
        for (const auto& [k, t] : d.terms())
            s += t.coeff;
        EXPECT_EQ(s, static_cast<long>(w.size()) + 1);
    }
}

TEST(Words, TaggedPairRoundTrip)
{
    for (const auto& w : enumerate_words(3, 1)) {
        const auto d = word_coproduct_basis(w);
        for (const auto& [k, t] : d.terms()) {
            auto [left, right] = word_pair_tagged(t.basis);
            EXPECT_EQ(word_chain_str(word_pair_from_tagged(left, right)), k);
        }
    }
}

TEST(Words, Grading)
{
    EXPECT_EQ(word_grading(unit_word()), std::make_pair(0, 0));
    EXPECT_EQ(word_grading(word("w[1,2|#0,#0]")), std::make_pair(2, 0));
    EXPECT_EQ(word_grading(word("w[1,2|#0,1]")), std::make_pair(1, 1));
}

TEST(Words, LawsUpToLengthTwo)
{
    auto rep = verify_axioms("words", 2, {"assoc", "comm", "unit", "coassoc", "counit", "bialgebra", "grading"});
    EXPECT_TRUE(rep.pass()) << rep.text();
}
