#pragma once

#include "lions/formal_sum.hpp"
#include "lions/partition_seq.hpp"
#include "lions/partitions.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lions {

class ForestError : public std::runtime_error {
public:
    enum class Kind {
        CycleDetected,
        TagWithoutRoot,
        ParentEscape,
        SiblingParentEscape,
        Malformed,
        BadLabel,
        ArityMismatch,
        NotATree,
        DanglingTagReference,
    };
    ForestError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

// Nodes are 0..n-1; parent[x] == -1 marks a root. hyper is a tagged
// partition of the nodes. ids carries the external node names.
struct LionsForest {
    std::vector<int> parent;
    std::vector<int> labels;
    TaggedPartition hyper;
    std::vector<int> ids;

    std::size_t size() const { return parent.size(); }
    bool empty() const { return parent.empty(); }
    std::vector<int> roots() const;
    std::vector<int> children(int x) const;
};

std::vector<int> node_depths(const std::vector<int>& parent);
// Throws ForestError describing the first violated condition.
void check_lions_conditions(const std::vector<int>& parent, const TaggedPartition& hyper);
bool is_lions_admissible(const std::vector<int>& parent, const TaggedPartition& hyper);

// Dense input: validates shape, labels and (2.1)-(2.3).
LionsForest make_forest(std::vector<int> parent, std::vector<int> labels, TaggedPartition hyper);
// Arbitrary ids: edges are child -> parent pairs, hyper is over the ids.
LionsForest forest_validate(const std::vector<int>& nodes, const std::vector<std::pair<int, int>>& edges,
                            const std::map<int, int>& labels, const TaggedPartition& hyper);
LionsForest unit_forest(const TagSet& tags = {"0"});

struct LionsPartitionForest {
    std::vector<int> parent;
    std::vector<int> labels;
    TaggedPartition root_tags;
    std::vector<Partition> local; // local[x] partitions {x} and the children of x
};

LionsPartitionForest to_partition_forest(const LionsForest& t);
LionsForest from_partition_forest(const LionsPartitionForest& p);
TaggedPartition stitch_local(const std::vector<int>& parent, const TaggedPartition& root_tags, const std::vector<Partition>& local);

std::vector<TaggedPartition> enumerate_admissible(const std::vector<int>& parent, const TagSet& tags = {"0"});
TaggedPartition project_admissible(const std::vector<int>& parent, const TaggedPartition& tp);

// Forests with at most max_nodes nodes, labels 1..d, every decoration; one per
// isomorphism class, the empty forest included.
std::vector<LionsForest> enumerate_forests(int max_nodes, int d, const TagSet& tags = {"0"});

LionsForest forest_product(const LionsForest& a, const LionsForest& b);
LionsForest forest_decouple(const LionsForest& t, const TagId& tag = "0");
LionsForest decouple_seq(const PartSeq& a, const std::vector<LionsForest>& forests);
LionsForest forest_root(const LionsForest& t, int label);

std::pair<int, int> forest_grading(const LionsForest& t);

std::string canonical_key(const LionsForest& t);
std::string forest_str(const LionsForest& t);

using ForestSum = FormalSum<LionsForest>;
ForestSum forest_product(const ForestSum& x, const ForestSum& y);

// Edges are named by their child node.
struct Cut {
    std::vector<int> edges;
};
std::vector<Cut> enumerate_cuts(const LionsForest& t);

// k forests sharing one node set; comp[x] says which factor x belongs to
// (0 is leftmost). Edges between factors are absent. joint is the common
// hyperedge structure: the factors are coupled through it.
struct ForestChain {
    std::vector<int> parent;
    std::vector<int> labels;
    std::vector<int> comp;
    TaggedPartition joint;
    int ncomps = 1;

    std::size_t size() const { return parent.size(); }
    std::vector<int> nodes_of(int j) const;
    LionsForest component(int j) const;
};

ForestChain chain_of(const LionsForest& t);
ForestChain prune_root(const LionsForest& t, const Cut& c);
std::string canonical_key(const ForestChain& c);
std::string chain_str(const ForestChain& c);
std::pair<int, int> chain_grading(const ForestChain& c);

using ChainSum = FormalSum<ForestChain>;

ChainSum forest_coproduct(const LionsForest& t);
ChainSum forest_coproduct(const ForestSum& x);
// Coproduct of factor j; factors to its right shift by one.
ChainSum forest_coproduct_at(const ForestChain& c, int j);
ChainSum forest_coproduct_at(const ChainSum& x, int j);

ForestChain chain_tensor(const ForestChain& a, const ForestChain& b);
ForestChain chain_permute(const ForestChain& c, const std::vector<int>& order);
// Product of factors j and j+1.
ForestChain chain_merge(const ForestChain& c, int j);
ChainSum chain_merge(const ChainSum& x, int j);
ForestChain chain_drop(const ForestChain& c, int j);

// Lions couplings between U (left) and Y (right), as two-factor chains.
std::vector<ForestChain> lions_couplings(const LionsForest& u, const LionsForest& y);
// True when every hyperedge of factor j avoiding the roots of factor j stays inside
// factors 0..j.
bool is_lions_coupling(const ForestChain& c);

// Coefficient of a given coupled pair in the coproduct of t.
long forest_count(const LionsForest& t, const ForestChain& pair);
// Sum over all couplings of u and y.
long forest_count(const LionsForest& t, const LionsForest& u, const LionsForest& y);

// Grafts the roots of factor 1 onto a fresh node tagged "0".
ChainSum chain_root_right(const ChainSum& x, int label);
// Moves the joint tag block into the ordinary blocks.
ChainSum chain_decouple(const ChainSum& x, const TagId& tag = "0");

} // namespace lions
