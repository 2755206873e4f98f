#include "oracles.hpp"

#include "lions/lions_calculus.hpp"

#include <gtest/gtest.h>

using namespace lions;

namespace {

MomentPoly mp(const std::string& s) { return parse_moment_poly(s); }
PartSeq seq(const std::string& s) { return parse_seq(s, {"0"}); }
Poly y(int i) { return Poly::var({'y', i}); }
Poly x(int i) { return Poly::var({'x', i}); }

// Direct evaluation of f at x0 and the empirical measure of the given atoms.
Rational eval_direct(const MomentPoly& f, const Rational& x0, const std::vector<Rational>& atoms)
{
    std::map<Var, Rational> at{{{'x', 0}, x0}};
    for (int k = 1; k <= 6; ++k) {
        Rational s(0);
        for (const auto& a : atoms) {
            Rational p(1);
            for (int e = 0; e < k; ++e)
                p *= a;
            s += p;
        }
        at[{'m', k}] = s / static_cast<long>(atoms.size());
    }
    return f.p.eval(at);
}

} // namespace

TEST(Calculus, ParseAndPrint)
{
    auto f = mp("3/2 * x0^2 * m1 - m2 + 4");
    EXPECT_EQ(f.arity, 0);
    EXPECT_EQ(mp(moment_poly_str(f)), f);
    EXPECT_EQ(f.p.weighted_degree(), 3);
    EXPECT_EQ(mp("x2 * m1").arity, 2);
    EXPECT_EQ(mp("0").p, Poly());
    try {
        mp("x0 ^");
        FAIL();
    } catch (const CalcError& e) {
        EXPECT_EQ(e.kind, CalcError::Kind::Syntax);
    }
}

TEST(Calculus, DerivativeExamples)
{
    auto m2 = mp("m2");
    EXPECT_EQ(lions_derivative(m2, seq("(1)")).p, Poly(2) * x(1));
    EXPECT_EQ(lions_derivative(m2, seq("(1,1)")).p, Poly(2));
    EXPECT_TRUE(lions_derivative(m2, seq("(1,2)")).p.is_zero());
    EXPECT_EQ(lions_derivative(mp("m1^2"), seq("(1,2)")).p, Poly(2));
    EXPECT_EQ(lions_derivative(mp("x0^2"), seq("(#0,#0)")).p, Poly(2));
    EXPECT_EQ(lions_derivative(mp("x0 * m3"), seq("(#0,1)")).p, Poly(3) * x(1).pow(2));
    EXPECT_EQ(lions_derivative(m2, seq("()")), m2);
    EXPECT_EQ(lions_derivative(m2, seq("(1)")).arity, 1);
}

TEST(Calculus, Errors)
{
    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const CalcError& e) {
            return static_cast<int>(e.kind);
        }
        return -1;
    };
    EXPECT_EQ(kind([] { lions_derivative(mp("m1"), parse_seq("(#1)", {"0", "1"})); }), static_cast<int>(CalcError::Kind::ArityConflict));
    EXPECT_EQ(kind([] { lions_derivative(mp("m1"), parse_seq("(#1)", {"0", "1"}), {{"0", 0}, {"1", 3}}); }),
              static_cast<int>(CalcError::Kind::ArityConflict));
    EXPECT_EQ(kind([] { empirical_lift(mp("x1 * m1"), 2, 1); }), static_cast<int>(CalcError::Kind::ArityConflict));
    EXPECT_EQ(kind([] { mp("x0").p.eval({}); }), static_cast<int>(CalcError::Kind::Unbound));
    EXPECT_EQ(kind([] { mp("y1"); }), static_cast<int>(CalcError::Kind::Syntax));
}

TEST(Calculus, EmpiricalLiftExamples)
{
    EXPECT_EQ(empirical_lift(mp("m1"), 2, 1), Rational(1, 2) * (y(1) + y(2)));
    EXPECT_EQ(empirical_lift(mp("x0 * m1"), 2, 1), Rational(1, 2) * y(1) * (y(1) + y(2)));
    EXPECT_EQ(empirical_lift(mp("x0^2 * m2"), 3, 2).weighted_degree(), 4);
}

TEST(Calculus, FirstLionsDerivativeMatchesLiftGradient)
{
    // N * d/dy_j of the lift, j != i, equals d_(1) f with x1 at y_j.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_moment_poly(rng, 3);
        const int n = 3;
        auto lhs = empirical_lift(f, n, 1).derivative({'y', 2}) * Poly(Rational(n));
        auto d = lions_derivative(f, seq("(1)"));
        std::map<Var, Poly> sub{{{'x', 0}, y(1)}, {{'x', 1}, y(2)}};
        for (int k = 1; k <= 6; ++k) {
            Poly s;
            for (int j = 1; j <= n; ++j)
                s += y(j).pow(k);
            sub[{'m', k}] = Rational(1, n) * s;
        }
        EXPECT_EQ(lhs, d.p.substitute(sub)) << moment_poly_str(f);
    }
}

TEST(Calculus, FiniteIdentityExamples)
{
    EXPECT_TRUE(finite_identity_check(mp("m1"), 2, 1, {2}));
    EXPECT_TRUE(finite_identity_check(mp("x0"), 3, 1, {2, 3}));
    EXPECT_TRUE(finite_identity_check(mp("x0^2 * m2"), 2, 1, {1, 1, 2}));
}

TEST(Calculus, FiniteIdentityProperty)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_moment_poly(rng, 3);
        const int n = 1 + static_cast<int>(rng() % 4);
        const int i = 1 + static_cast<int>(rng() % static_cast<unsigned long>(n));
        std::vector<long> idx(1 + rng() % 3);
        for (auto& v : idx)
            v = 1 + static_cast<long>(rng() % static_cast<unsigned long>(n));
        EXPECT_TRUE(finite_identity_check(f, n, i, idx)) << moment_poly_str(f) << " n=" << n << " i=" << i;
    }
}

TEST(Calculus, DaEvalExamples)
{
    DiscreteCoupling one{{{Rational(0), Rational(1)}}};
    EXPECT_EQ(D_a_eval(mp("m1"), seq("(1)"), 0, 0, one), 1);
    EXPECT_EQ(D_a_eval(mp("x0"), seq("(#0)"), Rational(1, 3), 2, one), Rational(5, 3));
    DiscreteCoupling two{{{Rational(1), Rational(2)}, {Rational(3), Rational(-1)}}};
    EXPECT_EQ(D_a_eval(mp("x0 * m2"), seq("()"), 2, 0, two), 2 * Rational(10, 2));
    EXPECT_EQ(moment(two, 2, false), 5);
    EXPECT_EQ(moment(two, 2, true), Rational(5, 2));
}

TEST(Calculus, TaylorExactMatchesDirectEvaluation)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_moment_poly(rng, 3);
        const int n = 1 + static_cast<int>(rng() % 4);
        auto pi = random_coupling(rng, n);
        const auto x0 = random_rational(rng), y0 = random_rational(rng);
        std::vector<Rational> target;
        for (const auto& a : pi.atoms)
            target.push_back(a.second);
        EXPECT_EQ(taylor_expand_exact(f, x0, y0, pi, f.p.weighted_degree()), eval_direct(f, y0, target)) << moment_poly_str(f);
    }
    // A constant needs only the empty sequence.
    DiscreteCoupling pi{{{Rational(1), Rational(4)}}};
    EXPECT_EQ(taylor_expand_exact(mp("7"), 0, 5, pi, 0), 7);
    EXPECT_EQ(taylor_expand_exact(mp("m1"), 0, 5, pi, 1), 4);
}

TEST(Calculus, TaylorBelowFullOrderLeavesRemainder)
{
    DiscreteCoupling pi{{{Rational(0), Rational(1)}}};
    EXPECT_NE(taylor_expand_exact(mp("m2"), 0, 0, pi, 1), 1);
    EXPECT_EQ(taylor_expand_exact(mp("m2"), 0, 0, pi, 2), 1);
}

TEST(Calculus, TruncatedTaylorAtFullOrderIsExact)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_moment_poly(rng, 2);
        auto pi = random_coupling(rng, 2);
        const auto x0 = random_rational(rng), y0 = random_rational(rng);
        const Rational full = taylor_expand_exact(f, x0, y0, pi, 2);
        EXPECT_EQ(taylor_expand_truncated(f, x0, y0, pi, GradingParams{1, 1, 2}), full);
        EXPECT_EQ(taylor_expand_truncated(f, x0, y0, pi, GradingParams{1, 1, 3}, true), full);
    }
}

TEST(Calculus, SchwarzExamplesAndProperty)
{
    EXPECT_TRUE(schwarz_check(mp("m1 * m2"), seq("(1,2)"), {1, 0}));
    EXPECT_TRUE(schwarz_check(mp("x0 * m3"), seq("(#0,1,1)"), {0, 1, 2}));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_moment_poly(rng, 3);
        for (int n = 0; n <= 3; ++n)
            for (const auto& a : enumerate_seqs(n, {"0"})) {
                std::vector<int> sigma(static_cast<std::size_t>(n));
                std::iota(sigma.begin(), sigma.end(), 0);
                do
                    EXPECT_TRUE(schwarz_check(f, a, sigma)) << moment_poly_str(f) << " " << a.str();
                while (std::next_permutation(sigma.begin(), sigma.end()));
            }
    }
}

TEST(Calculus, SplitConsistency)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_moment_poly(rng, 3);
        for (int n = 0; n <= 3; ++n)
            for (const auto& a : enumerate_seqs(n, {"0"}))
                for (std::size_t j = 0; j <= a.size(); ++j)
                    EXPECT_TRUE(split_consistency_check(f, a, j)) << moment_poly_str(f) << " " << a.str() << " j=" << j;
    }
}

TEST(Calculus, IteratedExpansion)
{
    std::mt19937_64 rng(17);
    DiscreteCoupling pi{{{Rational(0), Rational(1)}, {Rational(2), Rational(1, 2)}}};
    ExpansionPoint at{Rational(1), Rational(-1), {{Rational(1, 3), Rational(2)}, {Rational(-1), Rational(0)}}, pi};
    EXPECT_TRUE(iterated_expand_check(mp("m2"), seq("(1)"), at));
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_moment_poly(rng, 2);
        for (int n = 0; n <= 2; ++n)
            for (const auto& a : enumerate_seqs(n, {"0"}))
                EXPECT_TRUE(iterated_expand_check(f, a, at)) << moment_poly_str(f) << " " << a.str();
    }
}
