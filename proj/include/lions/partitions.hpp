#pragma once

#include "lions/partition_seq.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lions {

using Block = std::vector<int>; // sorted, nonempty

class PartitionError : public std::runtime_error {
public:
    enum class Kind { Malformed, GroundOverlap, CoverMismatch, NestingViolation, NotInjective, Syntax };
    PartitionError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

// Blocks are sorted internally and ordered by their smallest element.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    std::vector<int> ground() const;
    // Index of the block holding x, or -1.
    int block_of(int x) const;
    Partition restrict_to(const std::vector<int>& subset) const;

    std::string str() const;
    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.blocks_ < b.blocks_; }

private:
    std::vector<Block> blocks_;
};

Partition parse_partition(const std::string& text);
std::vector<Partition> all_partitions(const std::vector<int>& ground);

class TaggedPartition {
public:
    TaggedPartition() = default;
    TaggedPartition(std::map<TagId, Block> tags, Partition blocks);

    const std::map<TagId, Block>& tags() const { return tags_; }
    const Partition& blocks() const { return blocks_; }
    const Block& tag_block(const TagId& t) const;
    TagSet tag_set() const;
    std::vector<int> ground() const;
    // Blocks together with the nonempty tag sets.
    Partition prime() const;
    TaggedPartition restrict_to(const std::vector<int>& subset) const;

    std::string str() const;
    friend bool operator==(const TaggedPartition& a, const TaggedPartition& b)
    {
        return a.tags_ == b.tags_ && a.blocks_ == b.blocks_;
    }
    friend bool operator<(const TaggedPartition& a, const TaggedPartition& b)
    {
        if (a.tags_ != b.tags_)
            return a.tags_ < b.tags_;
        return a.blocks_ < b.blocks_;
    }

private:
    std::map<TagId, Block> tags_;
    Partition blocks_;
};

TaggedPartition parse_tagged_partition(const std::string& text);
std::vector<TaggedPartition> all_tagged_partitions(const std::vector<int>& ground, const TagSet& tags);

struct Coupling {
    Partition left;
    Partition right;
    Partition joint;
    friend bool operator==(const Coupling& a, const Coupling& b) { return a.joint == b.joint && a.left == b.left && a.right == b.right; }
    friend bool operator<(const Coupling& a, const Coupling& b) { return a.joint < b.joint; }
};

std::vector<Coupling> couplings(const Partition& p, const Partition& q);

struct CouplingMaps {
    std::map<Block, Block> psi_left;  // block of left -> joint block
    std::map<Block, Block> psi_right; // block of right -> joint block
    std::map<Block, Block> phi;       // joint block -> right part, or itself
    std::map<Block, Block> varphi;    // left block -> coupled right block, or itself
};
CouplingMaps coupling_maps(const Coupling& g);

std::vector<Partition> iterative_couplings(const std::vector<Partition>& parts);

// Left ground tagged by the right blocks (tag names from block_tag).
TaggedPartition coupling_to_tagged(const Coupling& g);
Coupling tagged_to_coupling(const TaggedPartition& tp, const Partition& left, const Partition& right);

Partition overline_union(const Partition& p, const Partition& q);

// Renames every element through f.
template <class F>
TaggedPartition relabel(const TaggedPartition& tp, F f)
{
    std::map<TagId, Block> tags;
    for (const auto& [t, b] : tp.tags()) {
        Block nb;
        for (int x : b)
            nb.push_back(f(x));
        tags[t] = std::move(nb);
    }
    std::vector<Block> blocks;
    for (const auto& b : tp.blocks().blocks()) {
        Block nb;
        for (int x : b)
            nb.push_back(f(x));
        blocks.push_back(std::move(nb));
    }
    return TaggedPartition(std::move(tags), Partition(std::move(blocks)));
}

// Disjoint union; tag blocks are merged per tag.
TaggedPartition tagged_union(const TaggedPartition& a, const TaggedPartition& b);

// z-th element of Z is sent to f[z] in P and g[z] in Q.
Coupling pushout_oracle(const Partition& p, const Partition& q, const std::vector<Block>& f, const std::vector<Block>& g);

} // namespace lions
