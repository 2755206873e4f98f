#include "lions/algebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

namespace lions {

bool within(const std::pair<int, int>& g, const TruncationSpec& spec)
{
    const Rational v = spec.params.alpha * g.first + spec.params.beta * g.second;
    return spec.strict ? v < spec.params.gamma : v <= spec.params.gamma;
}

Rational counit(const WordSum& x) { return x.coeff(unit_word(x.empty() ? TagSet{"0"} : x.terms().begin()->second.basis.part.tag_set())); }

Rational counit(const ForestSum& x)
{
    Rational c(0);
    for (const auto& [k, t] : x.terms())
        if (t.basis.empty())
            c += t.coeff;
    return c;
}

ChainSum counit_at(const ChainSum& x, int j)
{
    ChainSum out;
    for (const auto& [k, t] : x.terms())
        if (t.basis.nodes_of(j).empty())
            out.add(chain_drop(t.basis, j), t.coeff);
    return out;
}

WordChainSum counit_at(const WordChainSum& x, std::size_t j)
{
    WordChainSum out;
    for (const auto& [k, t] : x.terms())
        if (t.basis.comps[j].empty())
            out.add(word_chain_drop(t.basis, j), t.coeff);
    return out;
}

ChainSum chain_tensor(const ChainSum& x, const ChainSum& y)
{
    return lift_bilinear<ForestChain>(x, y, [](const ForestChain& a, const ForestChain& b) { return ChainSum(chain_tensor(a, b)); });
}

WordChainSum word_chain_tensor(const WordChainSum& x, const WordChainSum& y)
{
    return lift_bilinear<WordChain>(x, y, [](const WordChain& a, const WordChain& b) { return WordChainSum(word_chain_tensor(a, b)); });
}

ChainSum twist(const ChainSum& x)
{
    return x.map_linear<ForestChain>([](const ForestChain& c) { return ChainSum(chain_permute(c, {0, 2, 1, 3})); });
}

WordChainSum twist(const WordChainSum& x)
{
    return x.map_linear<WordChain>([](const WordChain& c) { return WordChainSum(word_chain_permute(c, {0, 2, 1, 3})); });
}

ChainSum twisted_product(const ChainSum& dx, const ChainSum& dy) { return chain_merge(chain_merge(twist(chain_tensor(dx, dy)), 0), 1); }

WordChainSum twisted_product(const WordChainSum& dx, const WordChainSum& dy)
{
    return word_chain_merge(word_chain_merge(twist(word_chain_tensor(dx, dy)), 0), 1);
}

namespace {

struct WordFamily {
    using B = LionsWord;
    using C = WordChain;
    static constexpr const char* name = "words";
    static std::vector<B> basis(int n) { return enumerate_words(n, 2); }
    static int size(const B& b) { return static_cast<int>(b.size()); }
    static FormalSum<B> product(const B& a, const B& b) { return word_shuffle_basis(a, b); }
    static FormalSum<B> product(const FormalSum<B>& a, const FormalSum<B>& b) { return word_shuffle(a, b); }
    static B unit() { return unit_word(); }
    static C chain(const B& b) { return word_chain_of(b); }
    static FormalSum<C> coproduct(const B& b) { return word_coproduct_basis(b); }
    static FormalSum<C> coproduct_at(const FormalSum<C>& x, int j) { return word_coproduct_at(x, static_cast<std::size_t>(j)); }
    static FormalSum<C> counit_at(const FormalSum<C>& x, int j) { return lions::counit_at(x, static_cast<std::size_t>(j)); }
    static FormalSum<C> twisted(const FormalSum<C>& a, const FormalSum<C>& b) { return twisted_product(a, b); }
    static std::vector<std::pair<int, int>> comp_gradings(const C& c)
    {
        std::vector<std::pair<int, int>> g;
        for (std::size_t j = 0; j < c.comps.size(); ++j)
            g.push_back(word_grading(c.component(j)));
        return g;
    }
    static Rational counit(const FormalSum<B>& x) { return lions::counit(x); }
};

struct ForestFamily {
    using B = LionsForest;
    using C = ForestChain;
    static constexpr const char* name = "forests";
    static std::vector<B> basis(int n) { return enumerate_forests(n, 1); }
    static int size(const B& b) { return static_cast<int>(b.size()); }
    static FormalSum<B> product(const B& a, const B& b) { return FormalSum<B>(forest_product(a, b)); }
    static FormalSum<B> product(const FormalSum<B>& a, const FormalSum<B>& b) { return forest_product(a, b); }
    static B unit() { return unit_forest(); }
    static C chain(const B& b) { return chain_of(b); }
    static FormalSum<C> coproduct(const B& b) { return forest_coproduct(b); }
    static FormalSum<C> coproduct_at(const FormalSum<C>& x, int j) { return forest_coproduct_at(x, j); }
    static FormalSum<C> counit_at(const FormalSum<C>& x, int j) { return lions::counit_at(x, j); }
    static FormalSum<C> twisted(const FormalSum<C>& a, const FormalSum<C>& b) { return twisted_product(a, b); }
    static std::vector<std::pair<int, int>> comp_gradings(const C& c)
    {
        std::vector<std::pair<int, int>> g;
        for (int j = 0; j < c.ncomps; ++j)
            g.push_back(forest_grading(c.component(j)));
        return g;
    }
    static Rational counit(const FormalSum<B>& x) { return lions::counit(x); }
};

// Runs check(i) for i in [0, n) across threads; returns the first failing index's message.
struct Sweep {
    long checked = 0;
    bool pass = true;
    std::vector<std::string> counterexample;
};

Sweep sweep(std::size_t n, int threads, const std::function<std::vector<std::string>(std::size_t)>& check)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, static_cast<std::size_t>(threads)));
    std::vector<std::future<std::pair<std::size_t, std::vector<std::string>>>> futs;
    for (std::size_t w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                auto bad = check(i);
                if (!bad.empty())
                    return std::make_pair(i, bad);
            }
            return std::make_pair(n, std::vector<std::string>{});
        }));
    Sweep s;
    std::size_t first = n;
    for (auto& f : futs) {
        auto [i, bad] = f.get();
        if (i < first) {
            first = i;
            s.counterexample = bad;
        }
    }
    s.pass = first == n;
    s.checked = static_cast<long>(s.pass ? n : first + 1);
    return s;
}

template <class Fam>
class Verifier {
public:
    using B = typename Fam::B;
    using C = typename Fam::C;
    using Sum = FormalSum<B>;
    using CSum = FormalSum<C>;

    Verifier(int max_size, Fault fault, int threads) : max_size_(max_size), fault_(fault), threads_(threads)
    {
        all_ = Fam::basis(max_size);
        for (const auto& b : all_)
            if (Fam::size(b) <= std::min(max_size, 3))
                small_.push_back(b);
        for (const auto& b : all_)
            if (Fam::size(b) <= std::min(max_size, 2))
                tiny_.push_back(b);
    }

    AxiomResult run(const std::string& axiom)
    {
        Sweep s;
        if (axiom == "assoc")
            s = triples([&](const B& a, const B& b, const B& c) {
                return Fam::product(Fam::product(Sum(a), Sum(b)), Sum(c)) == Fam::product(Sum(a), Fam::product(Sum(b), Sum(c)));
            });
        else if (axiom == "comm")
            s = pairs(small_, [&](const B& a, const B& b) { return Fam::product(a, b) == Fam::product(b, a); });
        else if (axiom == "unit")
            s = singles([&](const B& a) {
                return Fam::product(a, Fam::unit()) == Sum(a) && Fam::product(Fam::unit(), a) == Sum(a) && Fam::counit(Sum(a)) == (Fam::size(a) == 0 ? 1 : 0);
            });
        else if (axiom == "coassoc")
            s = singles([&](const B& a) {
                auto d = delta(a);
                return Fam::coproduct_at(d, 0) == Fam::coproduct_at(d, 1);
            });
        else if (axiom == "counit")
            s = singles([&](const B& a) {
                auto d = delta(a);
                CSum id(Fam::chain(a));
                return Fam::counit_at(d, 0) == id && Fam::counit_at(d, 1) == id;
            });
        else if (axiom == "bialgebra")
            s = pairs(small_, [&](const B& a, const B& b) {
                CSum lhs;
                const auto ab = Fam::product(a, b);
                for (const auto& [k, t] : ab.terms()) {
                    auto d = delta(t.basis);
                    d *= t.coeff;
                    lhs += d;
                }
                return lhs == Fam::twisted(delta(a), delta(b)) &&
                       Fam::counit(Fam::product(Sum(a), Sum(b))) == Fam::counit(Sum(a)) * Fam::counit(Sum(b));
            });
        else if (axiom == "grading")
            s = pairs(small_, [&](const B& a, const B& b) { return grading_ok(a, b); });
        else
            throw std::invalid_argument("unknown axiom '" + axiom + "'");
        AxiomResult r{axiom, max_size_, s.checked, s.pass, s.counterexample};
        return r;
    }

private:
    CSum delta(const B& b) const
    {
        CSum d = Fam::coproduct(b);
        if (fault_ == Fault::None || Fam::size(b) < 2 || d.empty())
            return d;
        const auto& first = d.terms().begin()->second;
        if (fault_ == Fault::DropTerm)
            d.add(first.basis, -first.coeff);
        else
            d.add(first.basis, first.coeff);
        return d;
    }

    static std::pair<int, int> add(std::pair<int, int> a, std::pair<int, int> b) { return {a.first + b.first, a.second + b.second}; }

    bool grading_ok(const B& a, const B& b) const
    {
        const auto ga = basis_grading(a), gb = basis_grading(b);
        const auto ab = Fam::product(a, b);
        for (const auto& [k, t] : ab.terms())
            if (basis_grading(t.basis) != add(ga, gb))
                return false;
        for (const auto* x : {&a, &b}) {
            const auto d = delta(*x);
            for (const auto& [k, t] : d.terms()) {
                std::pair<int, int> sum{0, 0};
                for (auto g : Fam::comp_gradings(t.basis))
                    sum = add(sum, g);
                if (sum != basis_grading(*x))
                    return false;
            }
        }
        for (const auto& p : {GradingParams{1, 1, 2}, GradingParams{1, 2, 3}})
            for (bool strict : {false, true}) {
                TruncationSpec spec{p, strict};
                Sum x(a), y(b);
                // Ideal absorption: truncation commutes with the product after truncating the factors.
                if (truncate(Fam::product(x, y), spec) != truncate(Fam::product(truncate(x, spec), truncate(y, spec)), spec))
                    return false;
                // The kept span is a sub-coalgebra: its coproduct has every factor within the bound.
                const auto kept = truncate(x, spec);
                for (const auto& [k, t] : kept.terms()) {
                    const auto d = delta(t.basis);
                    for (const auto& [kc, tc] : d.terms())
                        for (auto g : Fam::comp_gradings(tc.basis))
                            if (!within(g, spec))
                                return false;
                }
                if (truncate(truncate(x, spec), spec) != truncate(x, spec))
                    return false;
            }
        return true;
    }

    template <class F>
    Sweep singles(F f)
    {
        return sweep(all_.size(), threads_, [&](std::size_t i) -> std::vector<std::string> {
            if (f(all_[i]))
                return {};
            return {canonical_key(all_[i])};
        });
    }

    template <class F>
    Sweep pairs(const std::vector<B>& set, F f)
    {
        const std::size_t n = set.size();
        return sweep(n * n, threads_, [&](std::size_t i) -> std::vector<std::string> {
            const auto& a = set[i / n];
            const auto& b = set[i % n];
            if (f(a, b))
                return {};
            return {canonical_key(a), canonical_key(b)};
        });
    }

    template <class F>
    Sweep triples(F f)
    {
        const std::size_t n = tiny_.size();
        return sweep(n * n * n, threads_, [&](std::size_t i) -> std::vector<std::string> {
            const auto& a = tiny_[i / (n * n)];
            const auto& b = tiny_[(i / n) % n];
            const auto& c = tiny_[i % n];
            if (f(a, b, c))
                return {};
            return {canonical_key(a), canonical_key(b), canonical_key(c)};
        });
    }

    int max_size_;
    Fault fault_;
    int threads_;
    std::vector<B> all_, small_, tiny_;
};

template <class Fam>
VerifyReport run_family(int max_size, const std::vector<std::string>& axioms, Fault fault, int threads)
{
    Verifier<Fam> v(max_size, fault, threads);
    VerifyReport rep{Fam::name, {}};
    for (const auto& a : axioms)
        rep.results.push_back(v.run(a));
    return rep;
}

} // namespace

bool VerifyReport::pass() const
{
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

std::string VerifyReport::text() const
{
    std::ostringstream os;
    for (const auto& r : results) {
        os << family << " " << r.axiom << " bound=" << r.bound << " checked=" << r.checked << " " << (r.pass ? "PASS" : "FAIL");
        if (!r.pass) {
            os << " counterexample:";
            for (const auto& k : r.counterexample)
                os << " " << k;
        }
        os << "\n";
    }
    return os.str();
}

std::string VerifyReport::json() const
{
    nlohmann::ordered_json j;
    j["format"] = "lions-verify/1";
    j["family"] = family;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : results)
        j["results"].push_back({{"axiom", r.axiom}, {"bound", r.bound}, {"checked", r.checked}, {"status", r.pass ? "pass" : "fail"}, {"counterexample", r.counterexample}});
    return j.dump(2) + "\n";
}

VerifyReport verify_axioms(const std::string& family, int max_size, const std::vector<std::string>& axioms, Fault fault, int threads)
{
    if (threads <= 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (family == "words")
        return run_family<WordFamily>(max_size, axioms, fault, threads);
    if (family == "forests")
        return run_family<ForestFamily>(max_size, axioms, fault, threads);
    throw std::invalid_argument("unknown family '" + family + "'");
}

} // namespace lions
