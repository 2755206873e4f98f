#include "lions/partition_seq.hpp"
#include "lions/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lions {

Rational parse_rational(const std::string& text)
{
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t += ch;
    if (t.empty())
        throw std::invalid_argument("empty rational");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    bool slash = false;
    bool digit_before = false, digit_after = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '/' && !slash) {
            slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(t[i]))) {
            (slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("bad rational: " + text);
        }
    }
    if (!digit_before || (slash && !digit_after))
        throw std::invalid_argument("bad rational: " + text);
    if (t[0] == '+')
        t.erase(0, 1);
    Rational q(t, 10);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

TagSet make_tag_set(std::vector<TagId> tags)
{
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return tags;
}

TagSet default_tags(int count)
{
    TagSet out;
    for (int i = 0; i < count; ++i)
        out.push_back(std::to_string(i));
    return make_tag_set(out);
}

TagId block_tag(const std::vector<int>& block)
{
    std::string s = "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(block[i]);
    }
    return s + "}";
}

int PartSeq::max_num() const
{
    int m = 0;
    for (const auto& t : entries_)
        if (!t.is_tag)
            m = std::max(m, t.num);
    return m;
}

std::size_t PartSeq::tagged_count() const
{
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const Token& t) { return t.is_tag; }));
}

std::vector<int> PartSeq::preimage_num(int j) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (!entries_[i].is_tag && entries_[i].num == j)
            out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::vector<int> PartSeq::preimage_tag(const TagId& t) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].is_tag && entries_[i].tag == t)
            out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::string PartSeq::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            s += ',';
        s += entries_[i].is_tag ? "#" + entries_[i].tag : std::to_string(entries_[i].num);
    }
    return s + ")";
}

PartSeq validate_seq(std::vector<Token> entries, TagSet tags)
{
    tags = make_tag_set(std::move(tags));
    int running = 0;
    for (const auto& t : entries) {
        if (t.is_tag) {
            if (!std::binary_search(tags.begin(), tags.end(), t.tag))
                throw SeqError(SeqError::Kind::UnknownTag, "unknown tag #" + t.tag);
            continue;
        }
        if (t.num < 1 || t.num > running + 1)
            throw SeqError(SeqError::Kind::EnvelopeViolation,
                           "value " + std::to_string(t.num) + " exceeds 1 + running max " + std::to_string(running));
        running = std::max(running, t.num);
    }
    PartSeq a;
    a.entries_ = std::move(entries);
    a.tags_ = std::move(tags);
    return a;
}

PartSeq parse_seq(const std::string& text, const TagSet& tags)
{
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t += ch;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw SeqError(SeqError::Kind::Syntax, "sequence must be parenthesised: " + text);
    std::vector<Token> entries;
    std::vector<TagId> seen;
    std::size_t i = 1;
    const std::size_t end = t.size() - 1;
    while (i < end) {
        if (t[i] == '#') {
            ++i;
            std::string id;
            int depth = 0;
            while (i < end && (depth > 0 || t[i] != ',')) {
                if (t[i] == '{')
                    ++depth;
                if (t[i] == '}')
                    --depth;
                id += t[i++];
            }
            if (id.empty())
                throw SeqError(SeqError::Kind::Syntax, "empty tag at offset " + std::to_string(i));
            entries.push_back(Token::Tag(id));
            seen.push_back(id);
        } else {
            std::size_t j = i;
            while (j < end && std::isdigit(static_cast<unsigned char>(t[j])))
                ++j;
            if (j == i)
                throw SeqError(SeqError::Kind::Syntax, "expected number at offset " + std::to_string(i));
            entries.push_back(Token::Num(std::stoi(t.substr(i, j - i))));
            i = j;
        }
        if (i < end) {
            if (t[i] != ',')
                throw SeqError(SeqError::Kind::Syntax, "expected ',' at offset " + std::to_string(i));
            ++i;
            if (i == end)
                throw SeqError(SeqError::Kind::Syntax, "trailing ','");
        }
    }
    return validate_seq(std::move(entries), tags.empty() ? seen : tags);
}

namespace {

void enumerate_rec(int n, const TagSet& tags, std::vector<Token>& cur, int running, std::vector<PartSeq>& out)
{
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(validate_seq(cur, tags));
        return;
    }
    for (const auto& t : tags) {
        cur.push_back(Token::Tag(t));
        enumerate_rec(n, tags, cur, running, out);
        cur.pop_back();
    }
    for (int v = 1; v <= running + 1; ++v) {
        cur.push_back(Token::Num(v));
        enumerate_rec(n, tags, cur, std::max(running, v), out);
        cur.pop_back();
    }
}

} // namespace

std::vector<PartSeq> enumerate_seqs(int n, const TagSet& tags)
{
    std::vector<PartSeq> out;
    if (n < 0)
        return out;
    std::vector<Token> cur;
    enumerate_rec(n, make_tag_set(tags), cur, 0, out);
    return out;
}

SeqStats seq_stats(const PartSeq& a)
{
    SeqStats s;
    s.length = a.size();
    s.max = a.max_num();
    for (const auto& t : a.tags())
        s.tag_preimages[t] = a.preimage_tag(t);
    for (int j = 1; j <= s.max; ++j)
        s.num_preimages.push_back(a.preimage_num(j));
    return s;
}

PartSeq equiv_class_rep(const std::vector<long>& b, long c)
{
    std::map<long, int> label;
    std::vector<Token> entries;
    for (long v : b) {
        if (v == c) {
            entries.push_back(Token::Tag("0"));
            continue;
        }
        auto it = label.find(v);
        if (it == label.end())
            it = label.emplace(v, static_cast<int>(label.size()) + 1).first;
        entries.push_back(Token::Num(it->second));
    }
    return validate_seq(std::move(entries), {"0"});
}

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

bool seq_leq(const PartSeq& a, const PartSeq& a2)
{
    if (a.size() != a2.size())
        throw SeqError(SeqError::Kind::LengthMismatch, "seq_leq on sequences of different length");
    if (a.tags() != a2.tags())
        throw SeqError(SeqError::Kind::UnknownTag, "seq_leq on sequences with different tag sets");
    for (const auto& t : a.tags())
        if (!subset_of(a.preimage_tag(t), a2.preimage_tag(t)))
            return false;
    std::vector<std::vector<int>> targets;
    for (const auto& t : a2.tags())
        targets.push_back(a2.preimage_tag(t));
    for (int j = 1; j <= a2.max_num(); ++j)
        targets.push_back(a2.preimage_num(j));
    for (int j = 1; j <= a.max_num(); ++j) {
        auto blk = a.preimage_num(j);
        bool found = std::any_of(targets.begin(), targets.end(), [&](const auto& tb) { return subset_of(blk, tb); });
        if (!found)
            return false;
    }
    return true;
}

std::vector<long> compose_b_circ_a(const std::vector<long>& b, const PartSeq& a)
{
    if (b.size() != a.size())
        throw SeqError(SeqError::Kind::LengthMismatch, "compose: |b| != |a|");
    std::vector<long> out;
    for (int j = 1; j <= a.max_num(); ++j) {
        auto blk = a.preimage_num(j);
        long v = b[blk.front() - 1];
        for (int p : blk)
            if (b[p - 1] != v)
                throw SeqError(SeqError::Kind::NotConstantOnBlock, "b is not constant on block " + std::to_string(j));
        out.push_back(v);
    }
    return out;
}

std::vector<long> compose_b_circ_a(const std::vector<long>& b, const PartSeq& a, long c)
{
    if (b.size() != a.size())
        throw SeqError(SeqError::Kind::LengthMismatch, "compose: |b| != |a|");
    if (!seq_leq(a, equiv_class_rep(b, c)))
        throw SeqError(SeqError::Kind::OrderViolation, "a is not below the class of b");
    return compose_b_circ_a(b, a);
}

Rational grading_seq(const PartSeq& a, const GradingParams& p)
{
    auto k = static_cast<long>(a.tagged_count());
    auto n = static_cast<long>(a.size()) - k;
    return p.alpha * k + p.beta * n;
}

std::vector<PartSeq> enumerate_truncated(const GradingParams& p, const TagSet& tags, bool strict)
{
    std::vector<PartSeq> out;
    Rational step = std::min(p.alpha, p.beta);
    for (int n = 0; step * n <= p.gamma; ++n)
        for (auto& a : enumerate_seqs(n, tags)) {
            Rational g = grading_seq(a, p);
            if (strict ? g < p.gamma : g <= p.gamma)
                out.push_back(std::move(a));
        }
    return out;
}

TagSet suffix_tags(const PartSeq& a1)
{
    TagSet t = a1.tags();
    for (int j = 1; j <= a1.max_num(); ++j)
        t.push_back(block_tag(a1.preimage_num(j)));
    return make_tag_set(t);
}

std::pair<PartSeq, PartSeq> split_seq(const PartSeq& a, std::size_t j)
{
    if (j > a.size())
        throw SeqError(SeqError::Kind::IndexOutOfRange, "split index beyond sequence length");
    std::vector<Token> head(a.entries().begin(), a.entries().begin() + static_cast<long>(j));
    PartSeq a1 = validate_seq(head, a.tags());
    int m = a1.max_num();
    std::vector<Token> tail;
    for (std::size_t i = j; i < a.size(); ++i) {
        const Token& t = a[i];
        if (t.is_tag)
            tail.push_back(t);
        else if (t.num <= m)
            tail.push_back(Token::Tag(block_tag(a1.preimage_num(t.num))));
        else
            tail.push_back(Token::Num(t.num - m));
    }
    return {a1, validate_seq(std::move(tail), suffix_tags(a1))};
}

PartSeq join_seq(const PartSeq& a1, const PartSeq& a2)
{
    int m = a1.max_num();
    std::map<TagId, int> block_num;
    for (int j = 1; j <= m; ++j)
        block_num[block_tag(a1.preimage_num(j))] = j;
    std::vector<Token> out = a1.entries();
    for (const auto& t : a2.entries()) {
        if (!t.is_tag) {
            out.push_back(Token::Num(t.num + m));
        } else if (std::binary_search(a1.tags().begin(), a1.tags().end(), t.tag)) {
            out.push_back(t);
        } else {
            auto it = block_num.find(t.tag);
            if (it == block_num.end())
                throw SeqError(SeqError::Kind::UnknownTag, "tag #" + t.tag + " names no block of the prefix");
            out.push_back(Token::Num(it->second));
        }
    }
    return validate_seq(std::move(out), a1.tags());
}

TaggedPartition seq_to_tagged_partition(const PartSeq& a)
{
    std::map<TagId, Block> tags;
    for (const auto& t : a.tags())
        tags[t] = a.preimage_tag(t);
    std::vector<Block> blocks;
    for (int j = 1; j <= a.max_num(); ++j)
        blocks.push_back(a.preimage_num(j));
    return TaggedPartition(std::move(tags), Partition(std::move(blocks)));
}

PartSeq tagged_partition_to_seq(const TaggedPartition& tp)
{
    auto ground = tp.ground();
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (ground[i] != static_cast<int>(i) + 1)
            throw SeqError(SeqError::Kind::IndexOutOfRange, "tagged partition ground is not {1..n}");
    std::vector<Token> entries(ground.size());
    for (const auto& [t, blk] : tp.tags())
        for (int x : blk)
            entries[x - 1] = Token::Tag(t);
    // Blocks are already ordered by their least element, which is first-occurrence order.
    int j = 0;
    for (const auto& blk : tp.blocks().blocks()) {
        ++j;
        for (int x : blk)
            entries[x - 1] = Token::Num(j);
    }
    return validate_seq(std::move(entries), tp.tag_set());
}

} // namespace lions
