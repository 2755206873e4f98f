#pragma once

#include "lions/formal_sum.hpp"
#include "lions/partition_seq.hpp"
#include "lions/partitions.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lions {

class WordError : public std::runtime_error {
public:
    enum class Kind { LengthMismatch, TagSetMismatch, Malformed, Syntax };
    WordError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

// Letters from {1..d}; positions 1..n carry a tagged partition.
struct LionsWord {
    std::vector<int> letters;
    TaggedPartition part;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
};

LionsWord make_word(std::vector<int> letters, TaggedPartition part);
LionsWord unit_word(const TagSet& tags = {"0"});
LionsWord word_from_seq(const std::vector<int>& letters, const PartSeq& a);
std::pair<std::vector<int>, PartSeq> word_to_seq(const LionsWord& w);

// Text form: "w[1,2|#0,1]"; a trailing "@{0,1}" lists the tag set when it is not {0}.
std::string word_str(const LionsWord& w);
LionsWord parse_word(const std::string& text);
inline std::string canonical_key(const LionsWord& w) { return word_str(w); }

std::pair<int, int> word_grading(const LionsWord& w);

using WordSum = FormalSum<LionsWord>;

WordSum word_shuffle_basis(const LionsWord& w1, const LionsWord& w2);
WordSum word_shuffle(const WordSum& x, const WordSum& y);

// k coupled words; positions of the components are concatenated 1..N and
// share one tagged partition.
struct WordChain {
    std::vector<std::vector<int>> comps;
    TaggedPartition joint;

    std::size_t length() const { return comps.size(); }
    std::size_t offset(std::size_t j) const;
    LionsWord component(std::size_t j) const;
};

WordChain word_chain_of(const LionsWord& w);
std::string word_chain_str(const WordChain& c);
inline std::string canonical_key(const WordChain& c) { return word_chain_str(c); }

using WordChainSum = FormalSum<WordChain>;

WordChainSum word_coproduct_basis(const LionsWord& w);
WordChainSum word_coproduct(const WordSum& x);
// Deconcatenates component j; j = 0 is the leftmost factor.
WordChainSum word_coproduct_at(const WordChain& c, std::size_t j);
WordChainSum word_coproduct_at(const WordChainSum& x, std::size_t j);
long word_count(const LionsWord& w, const LionsWord& w1, const LionsWord& w2);

// Left word tagged by the right word's blocks ("{..}" tags use right positions), right word over the base tags.
std::pair<LionsWord, LionsWord> word_pair_tagged(const WordChain& c);
WordChain word_pair_from_tagged(const LionsWord& left, const LionsWord& right);

WordChain word_chain_tensor(const WordChain& a, const WordChain& b);
WordChain word_chain_permute(const WordChain& c, const std::vector<std::size_t>& order);
// Shuffles components j and j+1 together.
WordChainSum word_chain_merge(const WordChain& c, std::size_t j);
WordChainSum word_chain_merge(const WordChainSum& x, std::size_t j);
// Drops an empty component j.
WordChain word_chain_drop(const WordChain& c, std::size_t j);
std::pair<int, int> word_chain_grading(const WordChain& c);

std::vector<LionsWord> enumerate_words(int max_len, int d, const TagSet& tags = {"0"});

} // namespace lions
