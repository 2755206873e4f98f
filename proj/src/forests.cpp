#include "lions/forests.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace lions {

namespace {

using Kind = ForestError::Kind;

std::vector<std::vector<int>> children_lists(const std::vector<int>& parent)
{
    std::vector<std::vector<int>> ch(parent.size());
    for (std::size_t x = 0; x < parent.size(); ++x)
        if (parent[x] >= 0)
            ch[static_cast<std::size_t>(parent[x])].push_back(static_cast<int>(x));
    return ch;
}

std::vector<int> roots_of(const std::vector<int>& parent)
{
    std::vector<int> r;
    for (std::size_t x = 0; x < parent.size(); ++x)
        if (parent[x] < 0)
            r.push_back(static_cast<int>(x));
    return r;
}

std::vector<int> dense_range(std::size_t n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += sep;
        s += parts[i];
    }
    return s;
}

std::string ints_str(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Subsets of edges below x meeting every path from x at most once, the empty set included.
std::vector<std::vector<int>> antichains(const std::vector<std::vector<int>>& ch, int x)
{
    std::vector<std::vector<int>> acc{{}};
    for (int c : ch[static_cast<std::size_t>(x)]) {
        auto below = antichains(ch, c);
        below.push_back({c});
        std::vector<std::vector<int>> next;
        for (const auto& a : acc)
            for (const auto& b : below) {
                auto u = a;
                u.insert(u.end(), b.begin(), b.end());
                next.push_back(std::move(u));
            }
        acc = std::move(next);
    }
    return acc;
}

// Nodes reachable downward from x.
std::vector<int> subtree(const std::vector<std::vector<int>>& ch, int x)
{
    std::vector<int> out{x};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int c : ch[static_cast<std::size_t>(out[i])])
            out.push_back(c);
    return out;
}

std::string tag_set_str(const TagSet& tags) { return "@{" + join(tags, ",") + "}"; }

} // namespace

std::vector<int> LionsForest::roots() const { return roots_of(parent); }

std::vector<int> LionsForest::children(int x) const
{
    std::vector<int> c;
    for (std::size_t y = 0; y < parent.size(); ++y)
        if (parent[y] == x)
            c.push_back(static_cast<int>(y));
    return c;
}

std::vector<int> node_depths(const std::vector<int>& parent)
{
    const int n = static_cast<int>(parent.size());
    std::vector<int> depth(parent.size(), -1);
    for (int x = 0; x < n; ++x) {
        int y = x, steps = 0;
        while (parent[static_cast<std::size_t>(y)] >= 0) {
            y = parent[static_cast<std::size_t>(y)];
            if (y >= n)
                throw ForestError(Kind::Malformed, "parent out of range at node " + std::to_string(x));
            if (++steps > n)
                throw ForestError(Kind::CycleDetected, "cycle through node " + std::to_string(x));
        }
        depth[static_cast<std::size_t>(x)] = steps;
    }
    return depth;
}

void check_lions_conditions(const std::vector<int>& parent, const TaggedPartition& hyper)
{
    if (hyper.ground() != dense_range(parent.size()))
        throw ForestError(Kind::Malformed, "hyperedges must cover every node exactly once");
    const auto depth = node_depths(parent);
    for (const auto& [t, b] : hyper.tags()) {
        if (b.empty())
            continue;
        bool has_root = std::any_of(b.begin(), b.end(), [&](int x) { return parent[static_cast<std::size_t>(x)] < 0; });
        if (!has_root)
            throw ForestError(Kind::TagWithoutRoot, "tag #" + t + " holds no root");
    }
    const auto prime = hyper.prime();
    for (const auto& b : prime.blocks()) {
        int dmin = depth[static_cast<std::size_t>(b.front())];
        for (int x : b)
            dmin = std::min(dmin, depth[static_cast<std::size_t>(x)]);
        std::map<int, std::set<int>> parents_at;
        for (int y : b) {
            const int p = parent[static_cast<std::size_t>(y)];
            if (depth[static_cast<std::size_t>(y)] > dmin && !std::binary_search(b.begin(), b.end(), p))
                throw ForestError(Kind::ParentEscape, "node " + std::to_string(y) + " has its parent outside its hyperedge");
            if (p >= 0)
                parents_at[depth[static_cast<std::size_t>(y)]].insert(p);
        }
        for (const auto& [d, ps] : parents_at) {
            if (ps.size() < 2)
                continue;
            for (int p : ps)
                if (!std::binary_search(b.begin(), b.end(), p))
                    throw ForestError(Kind::SiblingParentEscape,
                                      "nodes at depth " + std::to_string(d) + " share a hyperedge but parent " + std::to_string(p) + " is outside it");
        }
    }
}

bool is_lions_admissible(const std::vector<int>& parent, const TaggedPartition& hyper)
{
    try {
        check_lions_conditions(parent, hyper);
        return true;
    } catch (const ForestError&) {
        return false;
    }
}

LionsForest make_forest(std::vector<int> parent, std::vector<int> labels, TaggedPartition hyper)
{
    if (labels.size() != parent.size())
        throw ForestError(Kind::Malformed, "one label per node expected");
    for (int p : parent)
        if (p < -1 || p >= static_cast<int>(parent.size()))
            throw ForestError(Kind::Malformed, "parent index out of range");
    for (int l : labels)
        if (l < 1)
            throw ForestError(Kind::BadLabel, "labels must be positive");
    if (hyper.tags().empty())
        hyper = TaggedPartition({{"0", {}}}, hyper.blocks());
    check_lions_conditions(parent, hyper);
    std::vector<int> ids(parent.size());
    std::iota(ids.begin(), ids.end(), 1);
    return LionsForest{std::move(parent), std::move(labels), std::move(hyper), std::move(ids)};
}

LionsForest forest_validate(const std::vector<int>& nodes, const std::vector<std::pair<int, int>>& edges,
                            const std::map<int, int>& labels, const TaggedPartition& hyper)
{
    std::map<int, int> index;
    for (int id : nodes)
        if (!index.emplace(id, static_cast<int>(index.size())).second)
            throw ForestError(Kind::Malformed, "duplicate node id " + std::to_string(id));
    auto dense = [&](int id) {
        auto it = index.find(id);
        if (it == index.end())
            throw ForestError(Kind::Malformed, "unknown node id " + std::to_string(id));
        return it->second;
    };
    std::vector<int> parent(nodes.size(), -1);
    for (const auto& [c, p] : edges) {
        auto& slot = parent[static_cast<std::size_t>(dense(c))];
        if (slot != -1)
            throw ForestError(Kind::Malformed, "node " + std::to_string(c) + " has two parents");
        slot = dense(p);
    }
    std::vector<int> lab(nodes.size(), 0);
    for (int id : nodes) {
        auto it = labels.find(id);
        if (it == labels.end())
            throw ForestError(Kind::BadLabel, "node " + std::to_string(id) + " has no label");
        lab[static_cast<std::size_t>(dense(id))] = it->second;
    }
    node_depths(parent);
    auto t = make_forest(std::move(parent), std::move(lab), relabel(hyper, dense));
    t.ids = nodes;
    return t;
}

LionsForest unit_forest(const TagSet& tags)
{
    std::map<TagId, Block> t;
    for (const auto& id : make_tag_set(tags))
        t[id];
    return LionsForest{{}, {}, TaggedPartition(std::move(t), Partition()), {}};
}

LionsPartitionForest to_partition_forest(const LionsForest& t)
{
    LionsPartitionForest p{t.parent, t.labels, t.hyper.restrict_to(t.roots()), {}};
    const auto prime = t.hyper.prime();
    const auto ch = children_lists(t.parent);
    for (std::size_t x = 0; x < t.size(); ++x) {
        std::vector<int> g = ch[x];
        g.push_back(static_cast<int>(x));
        p.local.push_back(prime.restrict_to(g));
    }
    return p;
}

TaggedPartition stitch_local(const std::vector<int>& parent, const TaggedPartition& root_tags, const std::vector<Partition>& local)
{
    const auto depth = node_depths(parent);
    const int top = depth.empty() ? -1 : *std::max_element(depth.begin(), depth.end());
    Partition acc = root_tags.prime();
    for (int level = 0; level < top; ++level) {
        std::vector<Block> q;
        for (std::size_t x = 0; x < parent.size(); ++x)
            if (depth[x] == level)
                q.insert(q.end(), local[x].blocks().begin(), local[x].blocks().end());
        acc = overline_union(acc, Partition(std::move(q)));
    }
    std::map<TagId, Block> tags;
    for (const auto& [t, b] : root_tags.tags())
        tags[t];
    std::vector<Block> blocks;
    for (const auto& b : acc.blocks()) {
        bool tagged = false;
        for (const auto& [t, rb] : root_tags.tags())
            if (!rb.empty() && std::binary_search(b.begin(), b.end(), rb.front())) {
                tags[t] = b;
                tagged = true;
            }
        if (!tagged)
            blocks.push_back(b);
    }
    return TaggedPartition(std::move(tags), Partition(std::move(blocks)));
}

LionsForest from_partition_forest(const LionsPartitionForest& p)
{
    return make_forest(p.parent, p.labels, stitch_local(p.parent, p.root_tags, p.local));
}

std::vector<TaggedPartition> enumerate_admissible(const std::vector<int>& parent, const TagSet& tags)
{
    const auto ch = children_lists(parent);
    std::vector<std::vector<Partition>> options;
    for (std::size_t x = 0; x < parent.size(); ++x) {
        std::vector<int> g = ch[x];
        g.push_back(static_cast<int>(x));
        std::sort(g.begin(), g.end());
        options.push_back(all_partitions(g));
    }
    std::vector<TaggedPartition> out;
    std::vector<std::size_t> pick(parent.size(), 0);
    std::vector<Partition> local(parent.size());
    for (const auto& rt : all_tagged_partitions(roots_of(parent), tags)) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            for (std::size_t x = 0; x < parent.size(); ++x)
                local[x] = options[x][pick[x]];
            out.push_back(stitch_local(parent, rt, local));
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == options[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TaggedPartition project_admissible(const std::vector<int>& parent, const TaggedPartition& tp)
{
    const auto prime = tp.prime();
    const auto ch = children_lists(parent);
    std::vector<Partition> local;
    for (std::size_t x = 0; x < parent.size(); ++x) {
        std::vector<int> g = ch[x];
        g.push_back(static_cast<int>(x));
        local.push_back(prime.restrict_to(g));
    }
    return stitch_local(parent, tp.restrict_to(roots_of(parent)), local);
}

std::vector<LionsForest> enumerate_forests(int max_nodes, int d, const TagSet& tags)
{
    std::vector<LionsForest> out;
    std::set<std::string> seen;
    auto keep = [&](LionsForest t) {
        if (seen.insert(canonical_key(t)).second)
            out.push_back(std::move(t));
    };
    keep(unit_forest(tags));
    for (int n = 1; n <= max_nodes; ++n) {
        // parent[i] < i enumerates every rooted forest shape at least once.
        std::vector<int> parent(static_cast<std::size_t>(n), -1);
        while (true) {
            auto decorations = enumerate_admissible(parent, tags);
            std::vector<int> labels(static_cast<std::size_t>(n), 1);
            while (true) {
                for (const auto& h : decorations)
                    keep(make_forest(parent, labels, h));
                int i = 0;
                while (i < n && labels[static_cast<std::size_t>(i)] == d)
                    labels[static_cast<std::size_t>(i++)] = 1;
                if (i == n)
                    break;
                ++labels[static_cast<std::size_t>(i)];
            }
            int i = n - 1;
            while (i >= 0 && parent[static_cast<std::size_t>(i)] == i - 1)
                parent[static_cast<std::size_t>(i--)] = -1;
            if (i < 0)
                break;
            ++parent[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

LionsForest forest_product(const LionsForest& a, const LionsForest& b)
{
    const int shift = static_cast<int>(a.size());
    LionsForest t;
    t.parent = a.parent;
    for (int p : b.parent)
        t.parent.push_back(p < 0 ? p : p + shift);
    t.labels = a.labels;
    t.labels.insert(t.labels.end(), b.labels.begin(), b.labels.end());
    t.hyper = tagged_union(a.hyper, relabel(b.hyper, [&](int x) { return x + shift; }));
    t.ids.resize(t.parent.size());
    std::iota(t.ids.begin(), t.ids.end(), 1);
    return t;
}

ForestSum forest_product(const ForestSum& x, const ForestSum& y)
{
    return lift_bilinear<LionsForest>(x, y, [](const LionsForest& a, const LionsForest& b) { return ForestSum(forest_product(a, b)); });
}

LionsForest forest_decouple(const LionsForest& t, const TagId& tag)
{
    auto tags = t.hyper.tags();
    auto blocks = t.hyper.blocks().blocks();
    auto it = tags.find(tag);
    if (it != tags.end() && !it->second.empty()) {
        blocks.push_back(it->second);
        it->second.clear();
    }
    LionsForest out = t;
    out.hyper = TaggedPartition(std::move(tags), Partition(std::move(blocks)));
    return out;
}

LionsForest decouple_seq(const PartSeq& a, const std::vector<LionsForest>& forests)
{
    if (a.size() != forests.size())
        throw ForestError(Kind::ArityMismatch, "E^a needs " + std::to_string(a.size()) + " forests, got " + std::to_string(forests.size()));
    const TagSet tags = forests.empty() ? TagSet{"0"} : forests.front().hyper.tag_set();
    LionsForest out = unit_forest(tags);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].is_tag)
            out = forest_product(out, forests[i]);
    for (int j = 1; j <= a.max_num(); ++j) {
        LionsForest group = unit_forest(tags);
        for (int i : a.preimage_num(j))
            group = forest_product(group, forests[static_cast<std::size_t>(i) - 1]);
        out = forest_product(out, forest_decouple(group));
    }
    return out;
}

LionsForest forest_root(const LionsForest& t, int label)
{
    if (label < 1)
        throw ForestError(Kind::BadLabel, "root label must be positive");
    const int x0 = static_cast<int>(t.size());
    LionsForest out = t;
    for (auto& p : out.parent)
        if (p < 0)
            p = x0;
    out.parent.push_back(-1);
    out.labels.push_back(label);
    auto tags = t.hyper.tags();
    tags["0"].push_back(x0);
    out.hyper = TaggedPartition(std::move(tags), t.hyper.blocks());
    out.ids.resize(out.parent.size());
    std::iota(out.ids.begin(), out.ids.end(), 1);
    return out;
}

std::pair<int, int> forest_grading(const LionsForest& t)
{
    int k = 0;
    for (const auto& kv : t.hyper.tags())
        k += static_cast<int>(kv.second.size());
    return {k, static_cast<int>(t.size()) - k};
}

std::string canonical_key(const LionsForest& t)
{
    const auto pf = to_partition_forest(t);
    const auto ch = children_lists(t.parent);
    std::vector<std::string> key(t.size());
    std::function<const std::string&(int)> node_key = [&](int x) -> const std::string& {
        auto& k = key[static_cast<std::size_t>(x)];
        if (!k.empty())
            return k;
        std::vector<std::string> codes;
        for (const auto& b : pf.local[static_cast<std::size_t>(x)].blocks()) {
            std::vector<std::string> kids;
            bool has_x = false;
            for (int y : b) {
                if (y == x)
                    has_x = true;
                else
                    kids.push_back(node_key(y));
            }
            std::sort(kids.begin(), kids.end());
            codes.push_back(std::string(has_x ? "*" : "") + "[" + join(kids, ",") + "]");
        }
        std::sort(codes.begin(), codes.end());
        k = "n" + std::to_string(t.labels[static_cast<std::size_t>(x)]) + "{" + join(codes, ",") + "}";
        return k;
    };
    std::string s = "F";
    for (const auto& [tag, b] : pf.root_tags.tags()) {
        std::vector<std::string> ks;
        for (int r : b)
            ks.push_back(node_key(r));
        std::sort(ks.begin(), ks.end());
        s += "#" + tag + ":[" + join(ks, ",") + "]";
    }
    std::vector<std::string> blocks;
    for (const auto& b : pf.root_tags.blocks().blocks()) {
        std::vector<std::string> ks;
        for (int r : b)
            ks.push_back(node_key(r));
        std::sort(ks.begin(), ks.end());
        blocks.push_back("[" + join(ks, ",") + "]");
    }
    std::sort(blocks.begin(), blocks.end());
    return s + "|" + join(blocks, ",");
}

std::string forest_str(const LionsForest& t)
{
    return "forest(parent=[" + ints_str(t.parent) + "], labels=[" + ints_str(t.labels) + "], " + t.hyper.str() + ")";
}

std::vector<Cut> enumerate_cuts(const LionsForest& t)
{
    const auto r = t.roots();
    if (r.size() != 1)
        throw ForestError(Kind::NotATree, "cuts are defined on trees; got " + std::to_string(r.size()) + " roots");
    std::vector<Cut> out;
    for (auto& a : antichains(children_lists(t.parent), r.front()))
        if (!a.empty()) {
            std::sort(a.begin(), a.end());
            out.push_back(Cut{a});
        }
    return out;
}

std::vector<int> ForestChain::nodes_of(int j) const
{
    std::vector<int> v;
    for (std::size_t x = 0; x < comp.size(); ++x)
        if (comp[x] == j)
            v.push_back(static_cast<int>(x));
    return v;
}

LionsForest ForestChain::component(int j) const
{
    const auto nodes = nodes_of(j);
    std::vector<int> dense(parent.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        dense[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
    LionsForest t;
    for (int x : nodes) {
        const int p = parent[static_cast<std::size_t>(x)];
        if (p >= 0 && comp[static_cast<std::size_t>(p)] != j)
            throw ForestError(Kind::Malformed, "edge crosses factors");
        t.parent.push_back(p < 0 ? -1 : dense[static_cast<std::size_t>(p)]);
        t.labels.push_back(labels[static_cast<std::size_t>(x)]);
        t.ids.push_back(x + 1);
    }
    t.hyper = relabel(joint.restrict_to(nodes), [&](int x) { return dense[static_cast<std::size_t>(x)]; });
    return t;
}

ForestChain chain_of(const LionsForest& t)
{
    return ForestChain{t.parent, t.labels, std::vector<int>(t.size(), 0), t.hyper, 1};
}

ForestChain prune_root(const LionsForest& t, const Cut& c)
{
    ForestChain out{t.parent, t.labels, std::vector<int>(t.size(), 0), t.hyper, 2};
    for (int e : c.edges)
        out.parent[static_cast<std::size_t>(e)] = -1;
    const auto r = t.roots();
    if (r.size() != 1)
        throw ForestError(Kind::NotATree, "prune/root needs a tree");
    for (int x : subtree(children_lists(out.parent), r.front()))
        out.comp[static_cast<std::size_t>(x)] = 1;
    return out;
}

std::string canonical_key(const ForestChain& c)
{
    const std::size_t n = c.size();
    const auto ch = children_lists(c.parent);
    // Isomorphism-invariant key for each decorated subtree.
    std::vector<std::string> dkey(n);
    std::vector<std::string> code(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string tag;
        for (const auto& [t, b] : c.joint.tags())
            if (std::binary_search(b.begin(), b.end(), static_cast<int>(x)))
                tag = "T" + t;
        if (tag.empty())
            tag = "B" + std::to_string(c.joint.blocks().blocks()[static_cast<std::size_t>(c.joint.blocks().block_of(static_cast<int>(x)))].size());
        code[x] = tag;
    }
    std::function<const std::string&(int)> key_of = [&](int x) -> const std::string& {
        auto& k = dkey[static_cast<std::size_t>(x)];
        if (!k.empty())
            return k;
        std::vector<std::string> kids;
        for (int y : ch[static_cast<std::size_t>(x)])
            kids.push_back(key_of(y));
        std::sort(kids.begin(), kids.end());
        k = "(" + std::to_string(c.labels[static_cast<std::size_t>(x)]) + code[static_cast<std::size_t>(x)] + "[" + join(kids, "") + "])";
        return k;
    };
    // Sibling groups, each sorted by invariant key; runs of equal keys may be permuted.
    std::vector<std::vector<int>> groups;
    {
        auto r = roots_of(c.parent);
        std::stable_sort(r.begin(), r.end(), [&](int a, int b) {
            if (c.comp[static_cast<std::size_t>(a)] != c.comp[static_cast<std::size_t>(b)])
                return c.comp[static_cast<std::size_t>(a)] < c.comp[static_cast<std::size_t>(b)];
            return key_of(a) < key_of(b);
        });
        groups.push_back(r);
        for (std::size_t x = 0; x < n; ++x) {
            auto g = ch[x];
            std::stable_sort(g.begin(), g.end(), [&](int a, int b) { return key_of(a) < key_of(b); });
            groups.push_back(g);
        }
    }
    struct Run {
        std::size_t group, begin, end;
    };
    std::vector<Run> runs;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        std::size_t i = 0;
        while (i < g.size()) {
            std::size_t j = i + 1;
            while (j < g.size() && c.comp[static_cast<std::size_t>(g[j])] == c.comp[static_cast<std::size_t>(g[i])] && key_of(g[j]) == key_of(g[i]))
                ++j;
            if (j - i > 1) {
                std::sort(groups[gi].begin() + static_cast<long>(i), groups[gi].begin() + static_cast<long>(j));
                runs.push_back({gi, i, j});
            }
            i = j;
        }
    }
    std::string best;
    bool have = false;
    std::vector<int> order, pos(n);
    while (true) {
        order.clear();
        std::function<void(int)> visit = [&](int x) {
            order.push_back(x);
            for (int y : groups[static_cast<std::size_t>(x) + 1])
                visit(y);
        };
        for (int r : groups[0])
            visit(r);
        for (std::size_t i = 0; i < n; ++i)
            pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        std::string enc;
        std::map<int, int> block_no;
        for (int x : order) {
            const auto ux = static_cast<std::size_t>(x);
            const int p = c.parent[ux];
            std::string part = code[ux];
            if (part[0] == 'B') {
                const int b = c.joint.blocks().block_of(x);
                auto it = block_no.emplace(b, static_cast<int>(block_no.size())).first;
                part = "B" + std::to_string(it->second);
            }
            enc += "(" + std::to_string(c.comp[ux]) + "," + std::to_string(p < 0 ? -1 : pos[static_cast<std::size_t>(p)]) + "," +
                   std::to_string(c.labels[ux]) + "," + part + ")";
        }
        if (!have || enc < best) {
            best = enc;
            have = true;
        }
        // Odometer over the permutations of every run.
        std::size_t k = 0;
        for (; k < runs.size(); ++k) {
            auto& g = groups[runs[k].group];
            auto b = g.begin() + static_cast<long>(runs[k].begin);
            auto e = g.begin() + static_cast<long>(runs[k].end);
            if (std::next_permutation(b, e))
                break;
        }
        if (k == runs.size())
            break;
    }
    return "C" + std::to_string(c.ncomps) + tag_set_str(c.joint.tag_set()) + ":" + best;
}

std::string chain_str(const ForestChain& c)
{
    std::vector<std::string> parts;
    for (int j = 0; j < c.ncomps; ++j)
        parts.push_back(forest_str(c.component(j)));
    return join(parts, " x ") + " joint " + c.joint.str();
}

std::pair<int, int> chain_grading(const ForestChain& c)
{
    int k = 0;
    for (const auto& kv : c.joint.tags())
        k += static_cast<int>(kv.second.size());
    return {k, static_cast<int>(c.size()) - k};
}

ChainSum forest_coproduct_at(const ForestChain& c, int j)
{
    const auto ch = children_lists(c.parent);
    // Per tree of factor j: the choices (nodes sent right, edges removed).
    struct Choice {
        std::vector<int> right;
        std::vector<int> cut;
    };
    std::vector<std::vector<Choice>> per_tree;
    for (int r : roots_of(c.parent)) {
        if (c.comp[static_cast<std::size_t>(r)] != j)
            continue;
        std::vector<Choice> opts;
        opts.push_back({{}, {}});
        opts.push_back({subtree(ch, r), {}});
        for (auto& a : antichains(ch, r)) {
            if (a.empty())
                continue;
            auto pr = c.parent;
            for (int e : a)
                pr[static_cast<std::size_t>(e)] = -1;
            opts.push_back({subtree(children_lists(pr), r), a});
        }
        per_tree.push_back(std::move(opts));
    }
    ChainSum out;
    std::vector<std::size_t> pick(per_tree.size(), 0);
    while (true) {
        ForestChain d = c;
        d.ncomps = c.ncomps + 1;
        for (auto& k : d.comp)
            if (k > j)
                ++k;
        for (std::size_t t = 0; t < per_tree.size(); ++t) {
            const auto& ch_t = per_tree[t][pick[t]];
            for (int x : ch_t.right)
                d.comp[static_cast<std::size_t>(x)] = j + 1;
            for (int e : ch_t.cut)
                d.parent[static_cast<std::size_t>(e)] = -1;
        }
        out.add(d, Rational(1));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == per_tree[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    return out;
}

ChainSum forest_coproduct_at(const ChainSum& x, int j)
{
    return x.map_linear<ForestChain>([j](const ForestChain& c) { return forest_coproduct_at(c, j); });
}

ChainSum forest_coproduct(const LionsForest& t) { return forest_coproduct_at(chain_of(t), 0); }

ChainSum forest_coproduct(const ForestSum& x)
{
    return x.map_linear<ForestChain>([](const LionsForest& t) { return forest_coproduct(t); });
}

ForestChain chain_tensor(const ForestChain& a, const ForestChain& b)
{
    const int shift = static_cast<int>(a.size());
    ForestChain out = a;
    for (int p : b.parent)
        out.parent.push_back(p < 0 ? p : p + shift);
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    for (int k : b.comp)
        out.comp.push_back(k + a.ncomps);
    out.joint = tagged_union(a.joint, relabel(b.joint, [&](int x) { return x + shift; }));
    out.ncomps = a.ncomps + b.ncomps;
    return out;
}

ForestChain chain_permute(const ForestChain& c, const std::vector<int>& order)
{
    if (static_cast<int>(order.size()) != c.ncomps)
        throw ForestError(Kind::ArityMismatch, "permutation size differs from chain length");
    std::vector<int> to(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        to[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    ForestChain out = c;
    for (auto& k : out.comp)
        k = to[static_cast<std::size_t>(k)];
    return out;
}

ForestChain chain_merge(const ForestChain& c, int j)
{
    ForestChain out = c;
    for (auto& k : out.comp)
        if (k > j)
            --k;
    out.ncomps = c.ncomps - 1;
    return out;
}

ChainSum chain_merge(const ChainSum& x, int j)
{
    return x.map_linear<ForestChain>([j](const ForestChain& c) { return ChainSum(chain_merge(c, j)); });
}

ForestChain chain_drop(const ForestChain& c, int j)
{
    if (!c.nodes_of(j).empty())
        throw ForestError(Kind::Malformed, "only empty factors can be dropped");
    return chain_merge(c, j);
}

bool is_lions_coupling(const ForestChain& c)
{
    for (const auto& b : c.joint.blocks().blocks()) {
        // The lowest factor a block meets decides; it may reach right only through a root there.
        int lo = c.ncomps, hi = -1;
        for (int x : b) {
            lo = std::min(lo, c.comp[static_cast<std::size_t>(x)]);
            hi = std::max(hi, c.comp[static_cast<std::size_t>(x)]);
        }
        for (int i = lo; i < hi; ++i) {
            bool meets = false, root = false;
            for (int x : b)
                if (c.comp[static_cast<std::size_t>(x)] == i) {
                    meets = true;
                    root = root || c.parent[static_cast<std::size_t>(x)] < 0;
                }
            if (meets && !root)
                return false;
        }
    }
    return true;
}

std::vector<ForestChain> lions_couplings(const LionsForest& u, const LionsForest& y)
{
    const int shift = static_cast<int>(u.size());
    ForestChain base{u.parent, u.labels, std::vector<int>(u.size(), 0), {}, 2};
    for (int p : y.parent)
        base.parent.push_back(p < 0 ? p : p + shift);
    base.labels.insert(base.labels.end(), y.labels.begin(), y.labels.end());
    base.comp.resize(u.size() + y.size(), 1);
    std::vector<Block> free, fixed;
    for (const auto& b : u.hyper.blocks().blocks()) {
        bool root = std::any_of(b.begin(), b.end(), [&](int x) { return u.parent[static_cast<std::size_t>(x)] < 0; });
        (root ? free : fixed).push_back(b);
    }
    auto yh = relabel(y.hyper, [&](int x) { return x + shift; });
    std::map<TagId, Block> tags = u.hyper.tags();
    for (const auto& [t, b] : yh.tags())
        tags[t].insert(tags[t].end(), b.begin(), b.end());
    std::vector<ForestChain> out;
    for (const auto& g : couplings(Partition(free), yh.blocks())) {
        auto blocks = g.joint.blocks();
        blocks.insert(blocks.end(), fixed.begin(), fixed.end());
        ForestChain c = base;
        c.joint = TaggedPartition(tags, Partition(std::move(blocks)));
        out.push_back(std::move(c));
    }
    return out;
}

long forest_count(const LionsForest& t, const ForestChain& pair)
{
    return forest_coproduct(t).coeff(pair).get_num().get_si();
}

long forest_count(const LionsForest& t, const LionsForest& u, const LionsForest& y)
{
    const auto ku = canonical_key(u), ky = canonical_key(y);
    long n = 0;
    const ChainSum d = forest_coproduct(t);
    for (const auto& [k, term] : d.terms())
        if (canonical_key(term.basis.component(0)) == ku && canonical_key(term.basis.component(1)) == ky)
            n += term.coeff.get_num().get_si();
    return n;
}

ChainSum chain_root_right(const ChainSum& x, int label)
{
    if (label < 1)
        throw ForestError(Kind::BadLabel, "root label must be positive");
    ChainSum out;
    for (const auto& [k, term] : x.terms()) {
        ForestChain c = term.basis;
        const int x0 = static_cast<int>(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.parent[i] < 0 && c.comp[i] == 1)
                c.parent[i] = x0;
        c.parent.push_back(-1);
        c.labels.push_back(label);
        c.comp.push_back(1);
        auto tags = c.joint.tags();
        tags["0"].push_back(x0);
        c.joint = TaggedPartition(std::move(tags), c.joint.blocks());
        out.add(c, term.coeff);
    }
    return out;
}

ChainSum chain_decouple(const ChainSum& x, const TagId& tag)
{
    ChainSum out;
    for (const auto& [k, term] : x.terms()) {
        ForestChain c = term.basis;
        auto tags = c.joint.tags();
        auto blocks = c.joint.blocks().blocks();
        auto it = tags.find(tag);
        if (it != tags.end() && !it->second.empty()) {
            blocks.push_back(it->second);
            it->second.clear();
        }
        c.joint = TaggedPartition(std::move(tags), Partition(std::move(blocks)));
        out.add(c, term.coeff);
    }
    return out;
}

} // namespace lions
