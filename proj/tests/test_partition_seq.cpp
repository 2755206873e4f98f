#include "oracles.hpp"

#include "lions/partition_seq.hpp"
#include "lions/partitions.hpp"

#include <gtest/gtest.h>

using namespace lions;

namespace {

PartSeq seq(const std::string& s, const TagSet& tags = {"0"}) { return parse_seq(s, tags); }

std::set<std::string> as_set(const std::vector<PartSeq>& v)
{
    std::set<std::string> s;
    for (const auto& a : v)
        s.insert(a.str());
    return s;
}

} // namespace

TEST(PartSeq, ValidatesEnvelope)
{
    EXPECT_NO_THROW(seq("(#0,1,1,2)"));
    try {
        parse_seq("(1,3)", {});
        FAIL();
    } catch (const SeqError& e) {
        EXPECT_EQ(e.kind, SeqError::Kind::EnvelopeViolation);
    }
    try {
        seq("(#0,2)");
        FAIL();
    } catch (const SeqError& e) {
        EXPECT_EQ(e.kind, SeqError::Kind::EnvelopeViolation);
    }
    try {
        seq("(#1)");
        FAIL();
    } catch (const SeqError& e) {
        EXPECT_EQ(e.kind, SeqError::Kind::UnknownTag);
    }
}

TEST(PartSeq, TextRoundTrip)
{
    for (int n = 0; n <= 4; ++n)
        for (const auto& a : enumerate_seqs(n, {"0", "1"}))
            EXPECT_EQ(parse_seq(a.str(), a.tags()), a);
}

TEST(PartSeq, EnumerationSmallCases)
{
    EXPECT_EQ(as_set(enumerate_seqs(2, {"0"})), (std::set<std::string>{"(#0,#0)", "(#0,1)", "(1,#0)", "(1,1)", "(1,2)"}));
    EXPECT_EQ(enumerate_seqs(0, {"0", "1"}).size(), 1u);
    EXPECT_EQ(enumerate_seqs(3, {"0"}).size(), 15u);
}

TEST(PartSeq, EnumerationMatchesBruteForce)
{
    for (const TagSet& tags : {TagSet{}, TagSet{"0"}, TagSet{"0", "1"}})
        for (int n = 0; n <= 4; ++n)
            EXPECT_EQ(as_set(enumerate_seqs(n, tags)), oracle::brute_seqs(n, tags)) << "n=" << n << " tags=" << tags.size();
}

TEST(PartSeq, EnumerationIsSortedAndUnique)
{
    auto v = enumerate_seqs(4, {"0", "1"});
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    EXPECT_EQ(std::adjacent_find(v.begin(), v.end()), v.end());
}

TEST(PartSeq, CountsEqualTaggedPartitions)
{
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(static_cast<long>(enumerate_seqs(n, {"0"}).size()), oracle::tagged_count(n, 1));
        EXPECT_EQ(static_cast<long>(enumerate_seqs(n, {"0", "1"}).size()), oracle::tagged_count(n, 2));
    }
}

TEST(PartSeq, Stats)
{
    auto s = seq_stats(seq("(#0,1,1,2)"));
    EXPECT_EQ(s.length, 4u);
    EXPECT_EQ(s.max, 2);
    EXPECT_EQ(s.tag_preimages["0"], (std::vector<int>{1}));
    EXPECT_EQ(s.num_preimages, (std::vector<std::vector<int>>{{2, 3}, {4}}));

    auto e = seq_stats(seq("()"));
    EXPECT_EQ(e.length, 0u);
    EXPECT_EQ(e.max, 0);

    auto t = seq_stats(seq("(1,2,#0,1)"));
    EXPECT_EQ(t.tag_preimages["0"], (std::vector<int>{3}));
    EXPECT_EQ(t.num_preimages, (std::vector<std::vector<int>>{{1, 4}, {2}}));
}

TEST(PartSeq, EquivClassRep)
{
    EXPECT_EQ(equiv_class_rep({5, 7, 5}, 7), seq("(1,#0,1)"));
    EXPECT_EQ(equiv_class_rep({9, 9}, 9), seq("(#0,#0)"));
    EXPECT_EQ(equiv_class_rep({3, 4, 4, 3}, 9), seq("(1,2,2,1)"));
}

TEST(PartSeq, Order)
{
    EXPECT_TRUE(seq_leq(seq("(1,2)"), seq("(1,1)")));
    EXPECT_FALSE(seq_leq(seq("(#0,1)"), seq("(1,1)")));
    EXPECT_THROW(seq_leq(seq("(1)"), seq("(1,1)")), SeqError);
}

TEST(PartSeq, OrderIsPartialOrder)
{
    for (int n = 0; n <= 4; ++n) {
        auto all = enumerate_seqs(n, {"0"});
        for (const auto& a : all) {
            EXPECT_TRUE(seq_leq(a, a));
            for (const auto& b : all) {
                if (seq_leq(a, b) && seq_leq(b, a))
                    EXPECT_EQ(a, b);
                if (n <= 3 && seq_leq(a, b))
                    for (const auto& c : all)
                        if (seq_leq(b, c))
                            EXPECT_TRUE(seq_leq(a, c));
            }
        }
    }
}

TEST(PartSeq, OrderMatchesRefinementOfTaggedPartitions)
{
    // a <= b iff every block of a sits inside a block of b with tags kept apart.
    auto refines = [](const TaggedPartition& p, const TaggedPartition& q) {
        for (const auto& [t, b] : p.tags())
            if (!std::includes(q.tag_block(t).begin(), q.tag_block(t).end(), b.begin(), b.end()))
                return false;
        const auto qp = q.prime();
        for (const auto& b : p.blocks().blocks()) {
            bool found = false;
            for (const auto& c : qp.blocks())
                found = found || std::includes(c.begin(), c.end(), b.begin(), b.end());
            if (!found)
                return false;
        }
        return true;
    };
    for (int n = 0; n <= 4; ++n) {
        auto all = enumerate_seqs(n, {"0"});
        for (const auto& a : all)
            for (const auto& b : all)
                EXPECT_EQ(seq_leq(a, b), refines(seq_to_tagged_partition(a), seq_to_tagged_partition(b))) << a.str() << " " << b.str();
    }
}

TEST(PartSeq, Compose)
{
    EXPECT_EQ(compose_b_circ_a({7, 7, 9}, seq("(1,1,2)")), (std::vector<long>{7, 9}));
    EXPECT_EQ(compose_b_circ_a({5}, seq("(1)")), (std::vector<long>{5}));
    EXPECT_EQ(compose_b_circ_a({2, 3, 2}, seq("(1,2,1)")), (std::vector<long>{2, 3}));
    EXPECT_THROW(compose_b_circ_a({2, 3}, seq("(1,1)")), SeqError);
    EXPECT_THROW(compose_b_circ_a({2, 3}, seq("(#0,1)"), 3), SeqError);
}

TEST(PartSeq, Grading)
{
    EXPECT_EQ(grading_seq(seq("(#0,1,1,2)"), {1, 2, 0}), 7);
    EXPECT_EQ(grading_seq(seq("()"), {1, 2, 0}), 0);
    EXPECT_EQ(as_set(enumerate_truncated({1, 1, 1}, {"0"})), (std::set<std::string>{"()", "(#0)", "(1)"}));
    EXPECT_EQ(as_set(enumerate_truncated({1, 1, 1}, {"0"}, true)), (std::set<std::string>{"()"}));
}

TEST(PartSeq, GradingMatchesTaggedPartition)
{
    const GradingParams p{2, 3, 0};
    for (const auto& a : enumerate_seqs(4, {"0"})) {
        auto tp = seq_to_tagged_partition(a);
        const long k = static_cast<long>(tp.tag_block("0").size());
        EXPECT_EQ(grading_seq(a, p), p.alpha * k + p.beta * (static_cast<long>(a.size()) - k));
    }
}

TEST(PartSeq, Split)
{
    auto [a1, a2] = split_seq(seq("(#0,1,1,2)"), 2);
    EXPECT_EQ(a1, seq("(#0,1)"));
    EXPECT_EQ(a2.str(), "(#{2},1)");
    auto [e, all] = split_seq(seq("(#0,1)"), 0);
    EXPECT_TRUE(e.empty());
    EXPECT_EQ(all, seq("(#0,1)"));
    EXPECT_THROW(split_seq(seq("(1)"), 2), SeqError);
}

TEST(PartSeq, SplitJoinRoundTripAndCounts)
{
    for (const TagSet& tags : {TagSet{"0"}, TagSet{"0", "1"}})
        for (int n = 0; n <= 5; ++n) {
            for (const auto& a : enumerate_seqs(n, tags))
                for (std::size_t j = 0; j <= a.size(); ++j) {
                    auto [a1, a2] = split_seq(a, j);
                    EXPECT_EQ(join_seq(a1, a2), a);
                }
            for (int j = 0; j <= n; ++j) {
                std::size_t sum = 0;
                for (const auto& a1 : enumerate_seqs(j, tags))
                    sum += enumerate_seqs(n - j, suffix_tags(a1)).size();
                EXPECT_EQ(sum, enumerate_seqs(n, tags).size());
            }
        }
}

TEST(PartSeq, TaggedPartitionBijection)
{
    auto tp = seq_to_tagged_partition(seq("(#0,1,1,2)"));
    EXPECT_EQ(tp.tag_block("0"), (Block{1}));
    EXPECT_EQ(tp.blocks(), Partition({{2, 3}, {4}}));
    EXPECT_EQ(seq_to_tagged_partition(seq("(1,2)")).blocks(), Partition({{1}, {2}}));
    EXPECT_TRUE(seq_to_tagged_partition(seq("(1,2)")).tag_block("0").empty());
    for (int n = 0; n <= 5; ++n)
        for (const auto& a : enumerate_seqs(n, {"0", "1"}))
            EXPECT_EQ(tagged_partition_to_seq(seq_to_tagged_partition(a)), a);
}
