#pragma once

#include "lions/partition_seq.hpp"
#include "lions/rational.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lions {

class CalcError : public std::runtime_error {
public:
    enum class Kind { ArityConflict, Syntax, Unbound };
    CalcError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

// 'x' with index 0 is x0 and index j >= 1 the free variable x_j; 'm' index k is
// the moment m_k; 'y' index i is particle y_i.
struct Var {
    char kind = 'x';
    int index = 0;
    friend auto operator<=>(const Var&, const Var&) = default;
};

using Monomial = std::map<Var, int>;

class Poly {
public:
    Poly() = default;
    Poly(const Rational& c); // NOLINT: constants convert implicitly
    static Poly var(Var v);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend bool operator==(const Poly&, const Poly&) = default;

    Poly pow(int e) const;
    Poly derivative(Var v) const;
    // Simultaneous substitution of the mapped variables.
    Poly substitute(const std::map<Var, Poly>& s) const;
    Rational eval(const std::map<Var, Rational>& at) const;
    // x and y weigh 1, m_k weighs k.
    int weighted_degree() const;
    int max_index(char kind) const; // -1 when absent

    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

// f(x0, mu, x_1..x_arity) with mu entering through its moments.
struct MomentPoly {
    Poly p;
    int arity = 0;
    friend bool operator==(const MomentPoly&, const MomentPoly&) = default;
};

// Grammar: sum of terms like `3/2 * x0^2 * m1 * m3 * x2`, joined by + or -.
MomentPoly parse_moment_poly(const std::string& text);
std::string moment_poly_str(const MomentPoly& f);

// Maps each tag of a to the x index it differentiates; "0" -> x0 by default.
using TagBinding = std::map<TagId, int>;

// Applies the entries of a left to right. A tag t is d/dx_{bind[t]}; a number j
// refers to x_{arity+j}, a Lions step when j is new and d/dx otherwise.
MomentPoly lions_derivative(const MomentPoly& f, const PartSeq& a, const TagBinding& bind = {{"0", 0}});

// x0 -> y_i, x_j -> y_{particle[j-1]}, m_k -> (1/N) sum_j y_j^k.
Poly empirical_lift(const MomentPoly& f, int n, int i, const std::vector<long>& particle = {});

// Derivative of the lift along y_{idx[0]}, y_{idx[1]}, ... against the sum over
// a below the class of idx with distinguished particle i, weighted N^{-m[a]}.
bool finite_identity_check(const MomentPoly& f, int n, int i, const std::vector<long>& idx);

struct DiscreteCoupling {
    std::vector<std::pair<Rational, Rational>> atoms; // (x_j, y_j), weight 1/N each
};

Rational moment(const DiscreteCoupling& pi, int k, bool target);

// Expansion point of a function with free variables: x0 -> y0 and x_j -> y_j.
struct ExpansionPoint {
    Rational x0, y0;
    std::vector<std::pair<Rational, Rational>> free; // (x_j, y_j), j = 1..arity
    DiscreteCoupling pi;
};

// The discrete integral of d_a f against the increments. Tags of a name either
// "0" or a free variable through bind; numbers are integrated against pi.
Rational D_eval(const MomentPoly& f, const PartSeq& a, const ExpansionPoint& at, const TagBinding& bind);
Rational D_a_eval(const MomentPoly& f, const PartSeq& a, const Rational& x0, const Rational& y0, const DiscreteCoupling& pi);

// f at the source (x0, mu, x_j) or at the target (y0, nu, y_j).
Rational eval_at(const MomentPoly& f, const ExpansionPoint& at, bool target);

// Sum over a of length <= order of D^a f / |a|!.
Rational taylor_expand_exact(const MomentPoly& f, const Rational& x0, const Rational& y0, const DiscreteCoupling& pi, int order);
// Same sum restricted to alpha*k + beta*n <= gamma (or < gamma when strict).
Rational taylor_expand_truncated(const MomentPoly& f, const Rational& x0, const Rational& y0, const DiscreteCoupling& pi,
                                 const GradingParams& g, bool strict = false);

bool schwarz_check(const MomentPoly& f, const PartSeq& a, const std::vector<int>& sigma);

// d_a f at the target, expanded over the sequences tagged by the blocks of a.
bool iterated_expand_check(const MomentPoly& f, const PartSeq& a, const ExpansionPoint& at);

// d_{a2} d_{a1} f == d_{join(a1,a2)} f for the split of a at j.
bool split_consistency_check(const MomentPoly& f, const PartSeq& a, std::size_t j);

// Moment polynomial of arity 0 in x0, m_1..m_3 with weighted degree <= max_degree.
MomentPoly random_moment_poly(std::mt19937_64& rng, int max_degree);
Rational random_rational(std::mt19937_64& rng);
DiscreteCoupling random_coupling(std::mt19937_64& rng, int n);

} // namespace lions
