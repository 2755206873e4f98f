#pragma once

#include "lions/forests.hpp"
#include "lions/words.hpp"

#include <string>
#include <vector>

namespace lions {

inline std::pair<int, int> basis_grading(const LionsWord& w) { return word_grading(w); }
inline std::pair<int, int> basis_grading(const LionsForest& t) { return forest_grading(t); }
inline std::pair<int, int> basis_grading(const WordChain& c) { return word_chain_grading(c); }
inline std::pair<int, int> basis_grading(const ForestChain& c) { return chain_grading(c); }

struct TruncationSpec {
    GradingParams params;
    bool strict = false; // drop alpha*k + beta*n >= gamma instead of > gamma
};

bool within(const std::pair<int, int>& g, const TruncationSpec& spec);

template <class B>
FormalSum<B> truncate(const FormalSum<B>& x, const TruncationSpec& spec)
{
    return x.filter([&](const B& b) { return within(basis_grading(b), spec); });
}

Rational counit(const WordSum& x);
Rational counit(const ForestSum& x);

// Terms whose factor j is empty, with that factor removed.
ChainSum counit_at(const ChainSum& x, int j);
WordChainSum counit_at(const WordChainSum& x, std::size_t j);

ChainSum chain_tensor(const ChainSum& x, const ChainSum& y);
WordChainSum word_chain_tensor(const WordChainSum& x, const WordChainSum& y);

// ((a,b),(c,d)) -> ((a,c),(b,d)) on four-factor chains.
ChainSum twist(const ChainSum& x);
WordChainSum twist(const WordChainSum& x);

// (product x product) o Twist o (Delta x Delta), given the two coproducts.
ChainSum twisted_product(const ChainSum& dx, const ChainSum& dy);
WordChainSum twisted_product(const WordChainSum& dx, const WordChainSum& dy);

enum class Fault { None, DropTerm, DoubleTerm };

struct AxiomResult {
    std::string axiom;
    int bound = 0;
    long checked = 0;
    bool pass = true;
    std::vector<std::string> counterexample;
};

struct VerifyReport {
    std::string family;
    std::vector<AxiomResult> results;
    bool pass() const;
    std::string text() const;
    std::string json() const;
};

// family: "words" (d = 2) or "forests" (d = 1). axioms from
// assoc, comm, unit, coassoc, counit, bialgebra, grading.
VerifyReport verify_axioms(const std::string& family, int max_size, const std::vector<std::string>& axioms,
                           Fault fault = Fault::None, int threads = 0);

} // namespace lions
