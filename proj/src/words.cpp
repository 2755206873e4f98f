#include "lions/words.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace lions {

namespace {

std::vector<int> iota_from(int first, std::size_t count)
{
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

std::string tag_suffix(const TagSet& tags)
{
    if (tags == TagSet{"0"})
        return "";
    std::string s = "@{";
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (i)
            s += ',';
        s += tags[i];
    }
    return s + "}";
}

std::string seq_body(const TaggedPartition& tp)
{
    std::string s = tagged_partition_to_seq(tp).str();
    return s.substr(1, s.size() - 2);
}

std::string letters_str(const std::vector<int>& l)
{
    std::string s;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(l[i]);
    }
    return s;
}

// Every increasing injection of n1 slots into n1 + n2 positions, as 0/1 masks.
void riffles(std::size_t n1, std::size_t n2, std::vector<std::vector<bool>>& out)
{
    std::vector<bool> mask(n1 + n2, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(n1), true);
    // prev_permutation from the lexicographically largest arrangement walks all masks.
    do {
        out.push_back(mask);
    } while (std::prev_permutation(mask.begin(), mask.end()));
}

} // namespace

LionsWord make_word(std::vector<int> letters, TaggedPartition part)
{
    auto g = part.ground();
    if (g != iota_from(1, letters.size()))
        throw WordError(WordError::Kind::LengthMismatch, "partition ground must be the positions 1..n");
    for (int l : letters)
        if (l < 1)
            throw WordError(WordError::Kind::Malformed, "letters must be positive");
    return LionsWord{std::move(letters), std::move(part)};
}

LionsWord unit_word(const TagSet& tags)
{
    std::map<TagId, Block> t;
    for (const auto& id : make_tag_set(tags))
        t[id];
    return LionsWord{{}, TaggedPartition(std::move(t), Partition())};
}

LionsWord word_from_seq(const std::vector<int>& letters, const PartSeq& a)
{
    if (letters.size() != a.size())
        throw WordError(WordError::Kind::LengthMismatch, "letters and sequence differ in length");
    return make_word(letters, seq_to_tagged_partition(a));
}

std::pair<std::vector<int>, PartSeq> word_to_seq(const LionsWord& w)
{
    return {w.letters, tagged_partition_to_seq(w.part)};
}

std::string word_str(const LionsWord& w)
{
    return "w[" + letters_str(w.letters) + "|" + seq_body(w.part) + "]" + tag_suffix(w.part.tag_set());
}

namespace {

TagSet parse_tag_suffix(const std::string& t, std::size_t at)
{
    if (at >= t.size())
        return {"0"};
    if (t.compare(at, 2, "@{") != 0 || t.back() != '}')
        throw WordError(WordError::Kind::Syntax, "bad tag-set suffix at offset " + std::to_string(at));
    std::string body = t.substr(at + 2, t.size() - at - 3);
    TagSet out;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '{')
            ++depth;
        if (c == '}')
            --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return make_tag_set(out);
}

std::vector<int> parse_letters(const std::string& s, std::size_t base)
{
    std::vector<int> out;
    if (s.empty())
        return out;
    std::size_t i = 0;
    while (true) {
        std::size_t j = s.find(',', i);
        std::string item = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw WordError(WordError::Kind::Syntax, "bad letter at offset " + std::to_string(base + i));
        out.push_back(std::stoi(item));
        if (j == std::string::npos)
            break;
        i = j + 1;
    }
    return out;
}

} // namespace

LionsWord parse_word(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    if (t.compare(0, 2, "w[") != 0)
        throw WordError(WordError::Kind::Syntax, "word must start with 'w[' at offset 0");
    std::size_t bar = t.find('|');
    std::size_t close = t.find(']', bar == std::string::npos ? 0 : bar);
    if (bar == std::string::npos || close == std::string::npos)
        throw WordError(WordError::Kind::Syntax, "expected 'w[letters|sequence]'");
    auto letters = parse_letters(t.substr(2, bar - 2), 2);
    TagSet tags = parse_tag_suffix(t, close + 1);
    PartSeq a = parse_seq("(" + t.substr(bar + 1, close - bar - 1) + ")", tags);
    return word_from_seq(letters, a);
}

std::pair<int, int> word_grading(const LionsWord& w)
{
    int k = 0;
    for (const auto& kv : w.part.tags())
        k += static_cast<int>(kv.second.size());
    return {k, static_cast<int>(w.size()) - k};
}

WordSum word_shuffle_basis(const LionsWord& w1, const LionsWord& w2)
{
    if (w1.part.tag_set() != w2.part.tag_set())
        throw WordError(WordError::Kind::TagSetMismatch, "shuffle of words over different tag sets");
    const std::size_t n1 = w1.size(), n2 = w2.size();
    std::vector<std::vector<bool>> masks;
    riffles(n1, n2, masks);
    WordSum out;
    for (const auto& mask : masks) {
        std::vector<int> pos1, pos2;
        std::vector<int> letters;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            (mask[i] ? pos1 : pos2).push_back(static_cast<int>(i) + 1);
            letters.push_back(mask[i] ? w1.letters[pos1.size() - 1] : w2.letters[pos2.size() - 1]);
        }
        auto p1 = relabel(w1.part, [&](int x) { return pos1[static_cast<std::size_t>(x) - 1]; });
        auto p2 = relabel(w2.part, [&](int x) { return pos2[static_cast<std::size_t>(x) - 1]; });
        out.add(LionsWord{std::move(letters), tagged_union(p1, p2)}, Rational(1));
    }
    return out;
}

WordSum word_shuffle(const WordSum& x, const WordSum& y)
{
    return lift_bilinear<LionsWord>(x, y, word_shuffle_basis);
}

std::size_t WordChain::offset(std::size_t j) const
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < j; ++i)
        off += comps[i].size();
    return off;
}

LionsWord WordChain::component(std::size_t j) const
{
    const int off = static_cast<int>(offset(j));
    auto sub = joint.restrict_to(iota_from(off + 1, comps[j].size()));
    return LionsWord{comps[j], relabel(sub, [&](int x) { return x - off; })};
}

WordChain word_chain_of(const LionsWord& w) { return WordChain{{w.letters}, w.part}; }

std::string word_chain_str(const WordChain& c)
{
    std::string s;
    for (std::size_t j = 0; j < c.comps.size(); ++j) {
        if (j)
            s += "x";
        s += "[" + letters_str(c.comps[j]) + "]";
    }
    return s + ":" + tagged_partition_to_seq(c.joint).str() + tag_suffix(c.joint.tag_set());
}

WordChainSum word_coproduct_at(const WordChain& c, std::size_t j)
{
    WordChainSum out;
    const auto& w = c.comps[j];
    for (std::size_t i = 0; i <= w.size(); ++i) {
        WordChain d;
        for (std::size_t k = 0; k < c.comps.size(); ++k) {
            if (k != j) {
                d.comps.push_back(c.comps[k]);
                continue;
            }
            d.comps.emplace_back(w.begin(), w.begin() + static_cast<long>(i));
            d.comps.emplace_back(w.begin() + static_cast<long>(i), w.end());
        }
        d.joint = c.joint;
        out.add(d, Rational(1));
    }
    return out;
}

WordChainSum word_coproduct_at(const WordChainSum& x, std::size_t j)
{
    return x.map_linear<WordChain>([j](const WordChain& c) { return word_coproduct_at(c, j); });
}

WordChainSum word_coproduct_basis(const LionsWord& w) { return word_coproduct_at(word_chain_of(w), 0); }

WordChainSum word_coproduct(const WordSum& x)
{
    return x.map_linear<WordChain>([](const LionsWord& w) { return word_coproduct_basis(w); });
}

long word_count(const LionsWord& w, const LionsWord& w1, const LionsWord& w2)
{
    long n = 0;
    const WordChainSum d = word_coproduct_basis(w);
    for (const auto& [k, t] : d.terms()) {
        if (canonical_key(t.basis.component(0)) == canonical_key(w1) && canonical_key(t.basis.component(1)) == canonical_key(w2))
            n += t.coeff.get_num().get_si();
    }
    return n;
}

std::pair<LionsWord, LionsWord> word_pair_tagged(const WordChain& c)
{
    if (c.comps.size() != 2)
        throw WordError(WordError::Kind::Malformed, "tagged pair view needs a chain of length 2");
    const int n1 = static_cast<int>(c.comps[0].size());
    LionsWord right = c.component(1);
    std::map<TagId, Block> tags;
    for (const auto& [t, b] : c.joint.tags()) {
        Block l;
        for (int x : b)
            if (x <= n1)
                l.push_back(x);
        tags[t] = l;
    }
    for (const auto& rb : right.part.blocks().blocks())
        tags[block_tag(rb)];
    std::vector<Block> blocks;
    for (const auto& b : c.joint.blocks().blocks()) {
        Block l, r;
        for (int x : b)
            (x <= n1 ? l : r).push_back(x <= n1 ? x : x - n1);
        if (l.empty())
            continue;
        if (r.empty())
            blocks.push_back(l);
        else
            tags[block_tag(r)] = l;
    }
    LionsWord left{c.comps[0], TaggedPartition(std::move(tags), Partition(std::move(blocks)))};
    return {left, right};
}

WordChain word_pair_from_tagged(const LionsWord& left, const LionsWord& right)
{
    const int n1 = static_cast<int>(left.size());
    const TagSet base = right.part.tag_set();
    std::map<TagId, Block> tags;
    for (const auto& t : base) {
        Block b = left.part.tag_block(t);
        for (int x : right.part.tag_block(t))
            b.push_back(x + n1);
        tags[t] = b;
    }
    std::vector<Block> blocks = left.part.blocks().blocks();
    std::map<TagId, Block> by_name;
    for (const auto& rb : right.part.blocks().blocks())
        by_name[block_tag(rb)] = rb;
    for (const auto& [t, b] : left.part.tags()) {
        if (std::binary_search(base.begin(), base.end(), t))
            continue;
        auto it = by_name.find(t);
        if (it == by_name.end())
            throw WordError(WordError::Kind::TagSetMismatch, "tag #" + t + " names no block of the right word");
        Block j = b;
        for (int x : it->second)
            j.push_back(x + n1);
        blocks.push_back(j);
        by_name.erase(it);
    }
    for (const auto& [name, rb] : by_name) {
        Block j;
        for (int x : rb)
            j.push_back(x + n1);
        blocks.push_back(j);
    }
    return WordChain{{left.letters, right.letters}, TaggedPartition(std::move(tags), Partition(std::move(blocks)))};
}

WordChain word_chain_tensor(const WordChain& a, const WordChain& b)
{
    const int shift = static_cast<int>(a.offset(a.comps.size()));
    WordChain out{a.comps, tagged_union(a.joint, relabel(b.joint, [&](int x) { return x + shift; }))};
    out.comps.insert(out.comps.end(), b.comps.begin(), b.comps.end());
    return out;
}

WordChain word_chain_permute(const WordChain& c, const std::vector<std::size_t>& order)
{
    std::vector<int> newpos(c.offset(c.comps.size()) + 1, 0);
    WordChain out;
    int next = 1;
    for (std::size_t k : order) {
        out.comps.push_back(c.comps[k]);
        const int off = static_cast<int>(c.offset(k));
        for (std::size_t i = 1; i <= c.comps[k].size(); ++i)
            newpos[static_cast<std::size_t>(off) + i] = next++;
    }
    out.joint = relabel(c.joint, [&](int x) { return newpos[static_cast<std::size_t>(x)]; });
    return out;
}

WordChainSum word_chain_merge(const WordChain& c, std::size_t j)
{
    const auto& a = c.comps[j];
    const auto& b = c.comps[j + 1];
    const int off = static_cast<int>(c.offset(j));
    const int na = static_cast<int>(a.size());
    std::vector<std::vector<bool>> masks;
    riffles(a.size(), b.size(), masks);
    WordChainSum out;
    for (const auto& mask : masks) {
        std::vector<int> pa, pb, letters;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            (mask[i] ? pa : pb).push_back(off + static_cast<int>(i) + 1);
            letters.push_back(mask[i] ? a[pa.size() - 1] : b[pb.size() - 1]);
        }
        WordChain d;
        for (std::size_t k = 0; k < c.comps.size(); ++k) {
            if (k == j)
                d.comps.push_back(letters);
            else if (k != j + 1)
                d.comps.push_back(c.comps[k]);
        }
        d.joint = relabel(c.joint, [&](int x) {
            if (x <= off || x > off + static_cast<int>(mask.size()))
                return x;
            int local = x - off;
            return local <= na ? pa[static_cast<std::size_t>(local) - 1] : pb[static_cast<std::size_t>(local - na) - 1];
        });
        out.add(d, Rational(1));
    }
    return out;
}

WordChainSum word_chain_merge(const WordChainSum& x, std::size_t j)
{
    return x.map_linear<WordChain>([j](const WordChain& c) { return word_chain_merge(c, j); });
}

WordChain word_chain_drop(const WordChain& c, std::size_t j)
{
    if (!c.comps[j].empty())
        throw WordError(WordError::Kind::Malformed, "only empty components can be dropped");
    WordChain out = c;
    out.comps.erase(out.comps.begin() + static_cast<long>(j));
    return out;
}

std::pair<int, int> word_chain_grading(const WordChain& c)
{
    int k = 0;
    for (const auto& kv : c.joint.tags())
        k += static_cast<int>(kv.second.size());
    return {k, static_cast<int>(c.offset(c.comps.size())) - k};
}

std::vector<LionsWord> enumerate_words(int max_len, int d, const TagSet& tags)
{
    std::vector<LionsWord> out;
    for (int n = 0; n <= max_len; ++n) {
        auto seqs = enumerate_seqs(n, tags);
        std::vector<int> letters(static_cast<std::size_t>(n), 1);
        while (true) {
            for (const auto& a : seqs)
                out.push_back(word_from_seq(letters, a));
            int i = 0;
            while (i < n && letters[static_cast<std::size_t>(i)] == d)
                letters[static_cast<std::size_t>(i++)] = 1;
            if (i == n)
                break;
            ++letters[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

} // namespace lions
