#pragma once

#include "lions/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lions {

// Tags are opaque strings. Base tags are usually "0", "1", ...; tags that stand
// for a block of positions of another sequence are spelled "{2,3}".
using TagId = std::string;
using TagSet = std::vector<TagId>; // kept sorted and unique

TagSet make_tag_set(std::vector<TagId> tags);
TagSet default_tags(int count); // {"0", "1", ..., count-1}
TagId block_tag(const std::vector<int>& block);

struct Token {
    bool is_tag = false;
    TagId tag;
    int num = 0;

    static Token Tag(TagId t) { return Token{true, std::move(t), 0}; }
    static Token Num(int v) { return Token{false, {}, v}; }

    friend bool operator==(const Token& a, const Token& b)
    {
        return a.is_tag == b.is_tag && a.tag == b.tag && a.num == b.num;
    }
    // Tags order before numbers; tags by id, numbers by value.
    friend bool operator<(const Token& a, const Token& b)
    {
        if (a.is_tag != b.is_tag)
            return a.is_tag;
        if (a.is_tag)
            return a.tag < b.tag;
        return a.num < b.num;
    }
};

class SeqError : public std::runtime_error {
public:
    enum class Kind { UnknownTag, EnvelopeViolation, LengthMismatch, NotConstantOnBlock, OrderViolation, IndexOutOfRange, Syntax };
    SeqError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

class PartSeq {
public:
    PartSeq() = default;

    const std::vector<Token>& entries() const { return entries_; }
    const TagSet& tags() const { return tags_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Token& operator[](std::size_t i) const { return entries_[i]; }

    int max_num() const; // m[a]; 0 when there are no numbers
    std::size_t tagged_count() const;
    // 1-based positions.
    std::vector<int> preimage_num(int j) const;
    std::vector<int> preimage_tag(const TagId& t) const;

    std::string str() const;

    friend bool operator==(const PartSeq& a, const PartSeq& b)
    {
        return a.entries_ == b.entries_ && a.tags_ == b.tags_;
    }
    friend bool operator<(const PartSeq& a, const PartSeq& b)
    {
        if (a.entries_ != b.entries_)
            return a.entries_ < b.entries_;
        return a.tags_ < b.tags_;
    }

private:
    friend PartSeq validate_seq(std::vector<Token> entries, TagSet tags);
    std::vector<Token> entries_;
    TagSet tags_;
};

PartSeq validate_seq(std::vector<Token> entries, TagSet tags);

// Text form "(#0,1,1,2)". When tags is empty the tag set is taken from the tags
// that occur in the text.
PartSeq parse_seq(const std::string& text, const TagSet& tags = {});

std::vector<PartSeq> enumerate_seqs(int n, const TagSet& tags);

struct SeqStats {
    std::size_t length = 0;
    int max = 0;
    std::map<TagId, std::vector<int>> tag_preimages;
    std::vector<std::vector<int>> num_preimages; // index j-1
};
SeqStats seq_stats(const PartSeq& a);

// Block of positions holding c is tagged "0"; other blocks numbered by first occurrence.
PartSeq equiv_class_rep(const std::vector<long>& b, long c);

bool seq_leq(const PartSeq& a, const PartSeq& a2);

// Entry j is the common value of b on a^{-1}[j].
std::vector<long> compose_b_circ_a(const std::vector<long>& b, const PartSeq& a);
// Same, after checking a is below the class of b with distinguished value c.
std::vector<long> compose_b_circ_a(const std::vector<long>& b, const PartSeq& a, long c);

struct GradingParams {
    Rational alpha{1};
    Rational beta{1};
    Rational gamma{1};
};

Rational grading_seq(const PartSeq& a, const GradingParams& p);
std::vector<PartSeq> enumerate_truncated(const GradingParams& p, const TagSet& tags, bool strict = false);

std::pair<PartSeq, PartSeq> split_seq(const PartSeq& a, std::size_t j);
PartSeq join_seq(const PartSeq& a1, const PartSeq& a2);
// Tag set of the suffix produced by split_seq: tags of a1 plus one tag per number block of a1.
TagSet suffix_tags(const PartSeq& a1);

class TaggedPartition;
TaggedPartition seq_to_tagged_partition(const PartSeq& a);
PartSeq tagged_partition_to_seq(const TaggedPartition& tp);

} // namespace lions
