#include "oracles.hpp"

#include "lions/partitions.hpp"

#include <gtest/gtest.h>

using namespace lions;

namespace {

std::set<Partition> joints(const std::vector<Coupling>& cs)
{
    std::set<Partition> s;
    for (const auto& c : cs)
        s.insert(c.joint);
    return s;
}

// Partitions of the union whose restrictions are p and q.
std::set<Partition> brute_couplings(const Partition& p, const Partition& q)
{
    auto g = p.ground();
    auto h = q.ground();
    std::vector<int> all = g;
    all.insert(all.end(), h.begin(), h.end());
    std::sort(all.begin(), all.end());
    std::set<Partition> out;
    for (const auto& j : all_partitions(all))
        if (j.restrict_to(g) == p && j.restrict_to(h) == q)
            out.insert(j);
    return out;
}

Partition part(const std::string& s) { return parse_partition(s); }

} // namespace

TEST(Partitions, TextRoundTrip)
{
    EXPECT_EQ(part("{1,3,4 | 2}").str(), "{1,3,4 | 2}");
    EXPECT_EQ(part("{2 | 4,1}"), Partition({{1, 4}, {2}}));
    EXPECT_THROW(part("{1 | 1}"), PartitionError);
    auto tp = parse_tagged_partition("tags: #0={1}; blocks: {2,3}|{4}");
    EXPECT_EQ(parse_tagged_partition(tp.str()), tp);
}

TEST(Partitions, BellNumbers)
{
    for (int n = 0; n <= 7; ++n) {
        std::vector<int> g(static_cast<std::size_t>(n));
        std::iota(g.begin(), g.end(), 1);
        EXPECT_EQ(static_cast<long>(all_partitions(g).size()), oracle::bell(n));
        EXPECT_EQ(static_cast<long>(all_tagged_partitions(g, {"0"}).size()), oracle::tagged_count(n, 1));
    }
}

TEST(Partitions, TwoBlocksAgainstOneBlock)
{
    auto cs = couplings(part("{1 | 2}"), part("{3,4}"));
    EXPECT_EQ(joints(cs), (std::set<Partition>{part("{1,3,4 | 2}"), part("{1 | 2,3,4}"), part("{1 | 2 | 3,4}")}));
}

TEST(Partitions, CouplingEdgeCases)
{
    auto cs = couplings(Partition(), part("{3,4}"));
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].joint, part("{3,4}"));
    EXPECT_EQ(couplings(part("{1}"), part("{2}")).size(), 2u);
    try {
        couplings(part("{1}"), part("{1}"));
        FAIL();
    } catch (const PartitionError& e) {
        EXPECT_EQ(e.kind, PartitionError::Kind::GroundOverlap);
    }
}

TEST(Partitions, CouplingCountsMatchMatchingsAndBruteForce)
{
    std::vector<std::vector<int>> lefts{{1}, {1, 2}, {1, 2, 3}};
    for (const auto& lg : lefts)
        for (const auto& p : all_partitions(lg))
            for (const auto& q : all_partitions({10, 11, 12})) {
                const auto cs = couplings(p, q);
                long expect = 0;
                const int a = static_cast<int>(p.size()), b = static_cast<int>(q.size());
                for (int k = 0; k <= std::min(a, b); ++k)
                    expect += oracle::factorial(k) * oracle::binom(a, k) * oracle::binom(b, k);
                EXPECT_EQ(static_cast<long>(cs.size()), expect);
                EXPECT_EQ(joints(cs), brute_couplings(p, q));
                EXPECT_EQ(joints(cs), joints(couplings(q, p)));
                for (const auto& c : cs) {
                    EXPECT_EQ(c.left, p);
                    EXPECT_EQ(c.right, q);
                }
            }
}

TEST(Partitions, CouplingMaps)
{
    Coupling g{part("{1 | 2}"), part("{3,4}"), part("{1,3,4 | 2}")};
    auto m = coupling_maps(g);
    EXPECT_EQ(m.varphi.at({1}), (Block{3, 4}));
    EXPECT_EQ(m.varphi.at({2}), (Block{2}));
    EXPECT_EQ(m.phi.at({1, 3, 4}), (Block{3, 4}));
    EXPECT_EQ(m.phi.at({2}), (Block{2}));
    EXPECT_EQ(m.psi_left.at({1}), (Block{1, 3, 4}));
    EXPECT_EQ(m.psi_right.at({3, 4}), (Block{1, 3, 4}));

    Coupling free{part("{1 | 2}"), part("{3,4}"), part("{1 | 2 | 3,4}")};
    auto f = coupling_maps(free);
    EXPECT_EQ(f.varphi.at({1}), (Block{1}));
    EXPECT_EQ(f.varphi.at({2}), (Block{2}));
}

TEST(Partitions, IterativeCouplings)
{
    EXPECT_EQ(iterative_couplings({part("{1}"), part("{2}"), part("{3}")}).size(), 5u);
    EXPECT_EQ(iterative_couplings({part("{1 | 2}")}), std::vector<Partition>{part("{1 | 2}")});
    auto two = iterative_couplings({part("{1 | 2}"), part("{3,4}")});
    EXPECT_EQ(std::set<Partition>(two.begin(), two.end()), joints(couplings(part("{1 | 2}"), part("{3,4}"))));
}

TEST(Partitions, CouplingsAssociativity)
{
    // Coupling (P,Q) first and then R, or Q with R first, or P with R first, all give the same joints.
    for (const auto& p : all_partitions({1, 2}))
        for (const auto& q : all_partitions({3, 4}))
            for (const auto& r : all_partitions({5, 6})) {
                std::set<Partition> left, right, middle;
                for (const auto& g : couplings(p, q))
                    for (const auto& h : couplings(g.joint, r))
                        left.insert(h.joint);
                for (const auto& g : couplings(q, r))
                    for (const auto& h : couplings(p, g.joint))
                        right.insert(h.joint);
                for (const auto& g : couplings(p, r))
                    for (const auto& h : couplings(g.joint, q))
                        middle.insert(h.joint);
                auto it = iterative_couplings({p, q, r});
                const std::set<Partition> direct(it.begin(), it.end());
                EXPECT_EQ(left, direct);
                EXPECT_EQ(right, direct);
                EXPECT_EQ(middle, direct);
            }
}

TEST(Partitions, CouplingToTagged)
{
    Coupling g{part("{1 | 2}"), part("{3,4}"), part("{1,3,4 | 2}")};
    auto tp = coupling_to_tagged(g);
    EXPECT_EQ(tp.tag_block(block_tag({3, 4})), (Block{1}));
    EXPECT_EQ(tp.blocks(), part("{2}"));
    auto tp2 = coupling_to_tagged({part("{1 | 2}"), part("{3,4}"), part("{1 | 2,3,4}")});
    EXPECT_EQ(tp2.tag_block(block_tag({3, 4})), (Block{2}));
    EXPECT_EQ(tp2.blocks(), part("{1}"));

    for (const auto& p : all_partitions({1, 2, 3}))
        for (const auto& q : all_partitions({4, 5}))
            for (const auto& c : couplings(p, q))
                EXPECT_EQ(tagged_to_coupling(coupling_to_tagged(c), p, q), c);
}

TEST(Partitions, OverlineUnion)
{
    EXPECT_EQ(overline_union(part("{1,2}"), part("{2,3}")), part("{1,2,3}"));
    EXPECT_EQ(overline_union(part("{1 | 2,3}"), part("{3,4 | 5}")), part("{1 | 2,3,4 | 5}"));
    try {
        overline_union(part("{1 | 2 | 3}"), part("{2,3}"));
        FAIL();
    } catch (const PartitionError& e) {
        EXPECT_EQ(e.kind, PartitionError::Kind::NestingViolation);
    }
}

TEST(Partitions, PushoutOracleReproducesCouplings)
{
    for (const auto& p : all_partitions({1, 2, 3}))
        for (const auto& q : all_partitions({4, 5, 6})) {
            // Every injective pair (f, g) with f increasing; each is one matching.
            std::set<Partition> seen;
            const auto& pb = p.blocks();
            const auto& qb = q.blocks();
            const std::size_t k_max = std::min(pb.size(), qb.size());
            for (std::size_t k = 0; k <= k_max; ++k) {
                std::vector<bool> fm(pb.size(), false);
                std::fill(fm.begin(), fm.begin() + static_cast<long>(k), true);
                do {
                    std::vector<Block> f;
                    for (std::size_t i = 0; i < pb.size(); ++i)
                        if (fm[i])
                            f.push_back(pb[i]);
                    std::vector<std::size_t> gi(qb.size());
                    std::iota(gi.begin(), gi.end(), 0);
                    do {
                        std::vector<Block> g;
                        for (std::size_t i = 0; i < k; ++i)
                            g.push_back(qb[gi[i]]);
                        seen.insert(pushout_oracle(p, q, f, g).joint);
                    } while (std::next_permutation(gi.begin(), gi.end()));
                } while (std::prev_permutation(fm.begin(), fm.end()));
            }
            EXPECT_EQ(seen, joints(couplings(p, q)));
        }
    auto part1 = part("{1 | 2}"), part2 = part("{3,4}");
    EXPECT_EQ(pushout_oracle(part1, part2, {{1}}, {{3, 4}}).joint, part("{1,3,4 | 2}"));
    EXPECT_EQ(pushout_oracle(part1, part2, {}, {}).joint, part("{1 | 2 | 3,4}"));
    EXPECT_THROW(pushout_oracle(part1, part2, {{1}, {2}}, {{3, 4}, {3, 4}}), PartitionError);
}

TEST(Partitions, BellSplitsOverRightPartitions)
{
    // |P(M u N)| = sum over Q in P(N) of the partitions of M tagged by the blocks of Q.
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n + m <= 6 && n <= 3; ++n) {
            std::vector<int> mg(static_cast<std::size_t>(m)), ng(static_cast<std::size_t>(n));
            std::iota(mg.begin(), mg.end(), 1);
            std::iota(ng.begin(), ng.end(), 10);
            long sum = 0;
            for (const auto& q : all_partitions(ng)) {
                TagSet tags;
                for (const auto& b : q.blocks())
                    tags.push_back(block_tag(b));
                sum += static_cast<long>(all_tagged_partitions(mg, make_tag_set(tags)).size());
            }
            EXPECT_EQ(sum, oracle::bell(m + n));
        }
}
