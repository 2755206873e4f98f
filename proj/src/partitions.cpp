#include "lions/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lions {

namespace {

std::string block_str(const Block& b)
{
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(b[i]);
    }
    return s;
}

std::string strip(const std::string& s)
{
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t += ch;
    return t;
}

Block parse_int_list(const std::string& s)
{
    Block out;
    if (s.empty())
        return out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos)
            j = s.size();
        std::string item = s.substr(i, j - i);
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-'; }))
            throw PartitionError(PartitionError::Kind::Syntax, "bad element '" + item + "' at offset " + std::to_string(i));
        out.push_back(std::stoi(item));
        i = j + 1;
    }
    return out;
}

std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '{')
            ++depth;
        if (c == '}')
            --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool disjoint(const Block& a, const Block& b)
{
    std::vector<int> tmp;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
    return tmp.empty();
}

Block merge(const Block& a, const Block& b)
{
    Block out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Block intersect(const Block& a, const std::vector<int>& sorted_subset)
{
    Block out;
    std::set_intersection(a.begin(), a.end(), sorted_subset.begin(), sorted_subset.end(), std::back_inserter(out));
    return out;
}

} // namespace

Partition::Partition(std::vector<Block> blocks)
{
    std::set<int> seen;
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        if (b.empty())
            throw PartitionError(PartitionError::Kind::Malformed, "empty block");
        for (int x : b)
            if (!seen.insert(x).second)
                throw PartitionError(PartitionError::Kind::Malformed, "element " + std::to_string(x) + " in two blocks");
    }
    std::sort(blocks.begin(), blocks.end());
    blocks_ = std::move(blocks);
}

std::vector<int> Partition::ground() const
{
    std::vector<int> g;
    for (const auto& b : blocks_)
        g.insert(g.end(), b.begin(), b.end());
    std::sort(g.begin(), g.end());
    return g;
}

int Partition::block_of(int x) const
{
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), x))
            return static_cast<int>(i);
    return -1;
}

Partition Partition::restrict_to(const std::vector<int>& subset) const
{
    std::vector<int> s = subset;
    std::sort(s.begin(), s.end());
    std::vector<Block> out;
    for (const auto& b : blocks_) {
        Block r = intersect(b, s);
        if (!r.empty())
            out.push_back(std::move(r));
    }
    return Partition(std::move(out));
}

std::string Partition::str() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i)
            s += " | ";
        s += block_str(blocks_[i]);
    }
    return s + "}";
}

Partition parse_partition(const std::string& text)
{
    std::string t = strip(text);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw PartitionError(PartitionError::Kind::Syntax, "partition must be braced: " + text);
    std::string body = t.substr(1, t.size() - 2);
    std::vector<Block> blocks;
    if (!body.empty())
        for (const auto& part : split_top(body, '|'))
            blocks.push_back(parse_int_list(part));
    return Partition(std::move(blocks));
}

std::vector<Partition> all_partitions(const std::vector<int>& ground)
{
    std::vector<Partition> out;
    std::vector<int> g = ground;
    std::sort(g.begin(), g.end());
    std::vector<Block> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == g.size()) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t k = 0; k < cur.size(); ++k) {
            cur[k].push_back(g[i]);
            self(self, i + 1);
            cur[k].pop_back();
        }
        cur.push_back({g[i]});
        self(self, i + 1);
        cur.pop_back();
    };
    rec(rec, 0);
    return out;
}

TaggedPartition::TaggedPartition(std::map<TagId, Block> tags, Partition blocks) : tags_(std::move(tags)), blocks_(std::move(blocks))
{
    std::set<int> seen;
    for (const auto& x : blocks_.ground())
        seen.insert(x);
    for (auto& [t, b] : tags_) {
        std::sort(b.begin(), b.end());
        for (int x : b)
            if (!seen.insert(x).second)
                throw PartitionError(PartitionError::Kind::Malformed, "element " + std::to_string(x) + " tagged twice or also in a block");
    }
}

const Block& TaggedPartition::tag_block(const TagId& t) const
{
    static const Block empty;
    auto it = tags_.find(t);
    return it == tags_.end() ? empty : it->second;
}

TagSet TaggedPartition::tag_set() const
{
    TagSet out;
    for (const auto& kv : tags_)
        out.push_back(kv.first);
    return out;
}

std::vector<int> TaggedPartition::ground() const
{
    std::vector<int> g = blocks_.ground();
    for (const auto& kv : tags_)
        g.insert(g.end(), kv.second.begin(), kv.second.end());
    std::sort(g.begin(), g.end());
    return g;
}

Partition TaggedPartition::prime() const
{
    std::vector<Block> b = blocks_.blocks();
    for (const auto& kv : tags_)
        if (!kv.second.empty())
            b.push_back(kv.second);
    return Partition(std::move(b));
}

TaggedPartition TaggedPartition::restrict_to(const std::vector<int>& subset) const
{
    std::vector<int> s = subset;
    std::sort(s.begin(), s.end());
    std::map<TagId, Block> tags;
    for (const auto& [t, b] : tags_)
        tags[t] = intersect(b, s);
    return TaggedPartition(std::move(tags), blocks_.restrict_to(s));
}

std::string TaggedPartition::str() const
{
    std::string s = "tags: ";
    bool first = true;
    for (const auto& [t, b] : tags_) {
        if (!first)
            s += ", ";
        first = false;
        s += "#" + t + "={" + block_str(b) + "}";
    }
    s += "; blocks: ";
    const auto& bl = blocks_.blocks();
    for (std::size_t i = 0; i < bl.size(); ++i) {
        if (i)
            s += "|";
        s += "{" + block_str(bl[i]) + "}";
    }
    return s;
}

TaggedPartition parse_tagged_partition(const std::string& text)
{
    std::string t = strip(text);
    const std::string tag_kw = "tags:";
    const std::string blk_kw = ";blocks:";
    std::size_t kb = t.find(blk_kw);
    if (t.compare(0, tag_kw.size(), tag_kw) != 0 || kb == std::string::npos)
        throw PartitionError(PartitionError::Kind::Syntax, "expected 'tags: ...; blocks: ...'");
    std::string tag_part = t.substr(tag_kw.size(), kb - tag_kw.size());
    std::string blk_part = t.substr(kb + blk_kw.size());
    std::map<TagId, Block> tags;
    if (!tag_part.empty()) {
        for (const auto& item : split_top(tag_part, ',')) {
            std::size_t eq = item.rfind('=');
            if (item.empty() || item[0] != '#' || eq == std::string::npos)
                throw PartitionError(PartitionError::Kind::Syntax, "bad tag entry '" + item + "'");
            std::string body = item.substr(eq + 1);
            if (body.size() < 2 || body.front() != '{' || body.back() != '}')
                throw PartitionError(PartitionError::Kind::Syntax, "bad tag block '" + body + "'");
            tags[item.substr(1, eq - 1)] = parse_int_list(body.substr(1, body.size() - 2));
        }
    }
    std::vector<Block> blocks;
    if (!blk_part.empty())
        for (const auto& item : split_top(blk_part, '|')) {
            if (item.size() < 2 || item.front() != '{' || item.back() != '}')
                throw PartitionError(PartitionError::Kind::Syntax, "bad block '" + item + "'");
            blocks.push_back(parse_int_list(item.substr(1, item.size() - 2)));
        }
    return TaggedPartition(std::move(tags), Partition(std::move(blocks)));
}

std::vector<TaggedPartition> all_tagged_partitions(const std::vector<int>& ground, const TagSet& tags)
{
    std::vector<TaggedPartition> out;
    std::vector<int> g = ground;
    std::sort(g.begin(), g.end());
    const std::size_t k = tags.size();
    std::vector<std::size_t> choice(g.size(), 0); // k means untagged
    while (true) {
        std::map<TagId, Block> tb;
        for (const auto& t : tags)
            tb[t];
        std::vector<int> rest;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (choice[i] < k)
                tb[tags[choice[i]]].push_back(g[i]);
            else
                rest.push_back(g[i]);
        }
        for (auto& p : all_partitions(rest))
            out.emplace_back(tb, std::move(p));
        std::size_t i = 0;
        while (i < g.size() && choice[i] == k)
            choice[i++] = 0;
        if (i == g.size())
            break;
        ++choice[i];
    }
    return out;
}

std::vector<Coupling> couplings(const Partition& p, const Partition& q)
{
    if (!disjoint(p.ground(), q.ground()))
        throw PartitionError(PartitionError::Kind::GroundOverlap, "coupled partitions must have disjoint grounds");
    std::vector<Coupling> out;
    const auto& pb = p.blocks();
    const auto& qb = q.blocks();
    std::vector<int> match(pb.size(), -1);
    std::vector<bool> used(qb.size(), false);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == pb.size()) {
            std::vector<Block> joint;
            for (std::size_t a = 0; a < pb.size(); ++a)
                joint.push_back(match[a] < 0 ? pb[a] : merge(pb[a], qb[static_cast<std::size_t>(match[a])]));
            for (std::size_t b = 0; b < qb.size(); ++b)
                if (!used[b])
                    joint.push_back(qb[b]);
            out.push_back(Coupling{p, q, Partition(std::move(joint))});
            return;
        }
        self(self, i + 1);
        for (std::size_t b = 0; b < qb.size(); ++b) {
            if (used[b])
                continue;
            used[b] = true;
            match[i] = static_cast<int>(b);
            self(self, i + 1);
            match[i] = -1;
            used[b] = false;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

CouplingMaps coupling_maps(const Coupling& g)
{
    CouplingMaps m;
    auto lg = g.left.ground();
    auto rg = g.right.ground();
    for (const auto& jb : g.joint.blocks()) {
        Block l = intersect(jb, lg);
        Block r = intersect(jb, rg);
        if (!l.empty())
            m.psi_left[l] = jb;
        if (!r.empty())
            m.psi_right[r] = jb;
        m.phi[jb] = r.empty() ? jb : r;
        if (!l.empty())
            m.varphi[l] = r.empty() ? l : r;
    }
    return m;
}

std::vector<Partition> iterative_couplings(const std::vector<Partition>& parts)
{
    if (parts.empty())
        return {Partition()};
    std::vector<Partition> acc{parts.front()};
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::set<Partition> next;
        for (const auto& g : acc)
            for (const auto& c : couplings(g, parts[i]))
                next.insert(c.joint);
        acc.assign(next.begin(), next.end());
    }
    return acc;
}

TaggedPartition coupling_to_tagged(const Coupling& g)
{
    auto maps = coupling_maps(g);
    std::map<TagId, Block> tags;
    for (const auto& qb : g.right.blocks())
        tags[block_tag(qb)];
    std::vector<Block> fixed;
    for (const auto& [l, img] : maps.varphi) {
        if (img == l)
            fixed.push_back(l);
        else
            tags[block_tag(img)] = l;
    }
    return TaggedPartition(std::move(tags), Partition(std::move(fixed)));
}

Coupling tagged_to_coupling(const TaggedPartition& tp, const Partition& left, const Partition& right)
{
    if (!(tp.prime() == left))
        throw PartitionError(PartitionError::Kind::CoverMismatch, "tagged partition does not cover the left partition");
    std::map<TagId, Block> by_name;
    for (const auto& qb : right.blocks())
        by_name[block_tag(qb)] = qb;
    std::vector<Block> joint = tp.blocks().blocks();
    std::set<TagId> named;
    for (const auto& [t, b] : tp.tags()) {
        auto it = by_name.find(t);
        if (it == by_name.end())
            throw PartitionError(PartitionError::Kind::CoverMismatch, "tag #" + t + " names no right block");
        named.insert(t);
        joint.push_back(merge(b, it->second));
    }
    for (const auto& [name, qb] : by_name)
        if (!named.count(name))
            joint.push_back(qb);
    return Coupling{left, right, Partition(std::move(joint))};
}

TaggedPartition tagged_union(const TaggedPartition& a, const TaggedPartition& b)
{
    std::map<TagId, Block> tags = a.tags();
    for (const auto& [t, blk] : b.tags()) {
        auto& dst = tags[t];
        dst.insert(dst.end(), blk.begin(), blk.end());
    }
    std::vector<Block> blocks = a.blocks().blocks();
    blocks.insert(blocks.end(), b.blocks().blocks().begin(), b.blocks().blocks().end());
    return TaggedPartition(std::move(tags), Partition(std::move(blocks)));
}

Partition overline_union(const Partition& p, const Partition& q)
{
    auto m = p.ground();
    auto n = q.ground();
    for (const auto& qb : q.blocks()) {
        Block qm = intersect(qb, m);
        if (qm.empty())
            continue;
        bool nested = std::any_of(p.blocks().begin(), p.blocks().end(), [&](const Block& pb) {
            Block pn = intersect(pb, n);
            return !pn.empty() && std::includes(pn.begin(), pn.end(), qm.begin(), qm.end());
        });
        if (!nested)
            throw PartitionError(PartitionError::Kind::NestingViolation, "block {" + block_str(qb) + "} does not nest in the left partition");
    }
    std::vector<Block> out;
    for (const auto& pb : p.blocks()) {
        if (intersect(pb, n).empty()) {
            out.push_back(pb);
            continue;
        }
        Block acc = pb;
        for (const auto& qb : q.blocks())
            if (!intersect(qb, pb).empty())
                acc = merge(acc, qb);
        out.push_back(std::move(acc));
    }
    for (const auto& qb : q.blocks())
        if (intersect(qb, m).empty())
            out.push_back(qb);
    try {
        return Partition(std::move(out));
    } catch (const PartitionError&) {
        throw PartitionError(PartitionError::Kind::NestingViolation, "nested union does not produce a partition");
    }
}

Coupling pushout_oracle(const Partition& p, const Partition& q, const std::vector<Block>& f, const std::vector<Block>& g)
{
    if (f.size() != g.size())
        throw PartitionError(PartitionError::Kind::Malformed, "f and g must share the domain Z");
    if (!disjoint(p.ground(), q.ground()))
        throw PartitionError(PartitionError::Kind::GroundOverlap, "coupled partitions must have disjoint grounds");
    std::set<Block> fs(f.begin(), f.end()), gs(g.begin(), g.end());
    if (fs.size() != f.size() || gs.size() != g.size())
        throw PartitionError(PartitionError::Kind::NotInjective, "pushout legs must be injective");
    auto known = [](const Partition& part, const Block& b) {
        return std::find(part.blocks().begin(), part.blocks().end(), b) != part.blocks().end();
    };
    std::vector<Block> joint;
    for (std::size_t z = 0; z < f.size(); ++z) {
        if (!known(p, f[z]) || !known(q, g[z]))
            throw PartitionError(PartitionError::Kind::Malformed, "pushout leg does not land on a block");
        joint.push_back(merge(f[z], g[z]));
    }
    for (const auto& b : p.blocks())
        if (!fs.count(b))
            joint.push_back(b);
    for (const auto& b : q.blocks())
        if (!gs.count(b))
            joint.push_back(b);
    return Coupling{p, q, Partition(std::move(joint))};
}

} // namespace lions
