#include "lions/lions_calculus.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace lions {

Poly::Poly(const Rational& c) { add_term({}, c); }

Poly Poly::var(Var v)
{
    Poly p;
    p.add_term({{v, 1}}, Rational(1));
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh)
        return;
    it->second += c;
    if (it->second == 0)
        terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    Poly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            for (const auto& [v, e] : mb)
                m[v] += e;
            out.add_term(m, ca * cb);
        }
    return *this = std::move(out);
}

Poly Poly::pow(int e) const
{
    Poly r(Rational(1));
    for (int i = 0; i < e; ++i)
        r *= *this;
    return r;
}

Poly Poly::derivative(Var v) const
{
    Poly out;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        if (it == m.end())
            continue;
        Monomial d = m;
        const int e = it->second;
        if (e == 1)
            d.erase(v);
        else
            d[v] = e - 1;
        out.add_term(d, c * e);
    }
    return out;
}

Poly Poly::substitute(const std::map<Var, Poly>& s) const
{
    Poly out;
    for (const auto& [m, c] : terms_) {
        Poly t(c);
        Monomial rest;
        for (const auto& [v, e] : m) {
            auto it = s.find(v);
            if (it == s.end())
                rest[v] = e;
            else
                t *= it->second.pow(e);
        }
        Poly r;
        r.add_term(rest, Rational(1));
        out += t * r;
    }
    return out;
}

Rational Poly::eval(const std::map<Var, Rational>& at) const
{
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m) {
            auto it = at.find(v);
            if (it == at.end())
                throw CalcError(CalcError::Kind::Unbound, std::string("no value for ") + v.kind + std::to_string(v.index));
            for (int i = 0; i < e; ++i)
                t *= it->second;
        }
        sum += t;
    }
    return sum;
}

int Poly::weighted_degree() const
{
    int best = 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [v, e] : m)
            d += (v.kind == 'm' ? v.index : 1) * e;
        best = std::max(best, d);
    }
    return best;
}

int Poly::max_index(char kind) const
{
    int best = -1;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v.kind == kind)
                best = std::max(best, v.index);
    return best;
}

std::string Poly::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        std::string body;
        if (a != 1 || m.empty())
            body = a.get_str();
        for (const auto& [v, e] : m) {
            if (!body.empty())
                body += " * ";
            body += std::string(1, v.kind) + std::to_string(v.index);
            if (e != 1)
                body += "^" + std::to_string(e);
        }
        s += body;
    }
    return s;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    Poly parse()
    {
        Poly p;
        skip();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        for (;;) {
            Poly t = term();
            if (neg)
                p -= t;
            else
                p += t;
            skip();
            if (i_ == s_.size())
                break;
            if (accept('+'))
                neg = false;
            else if (accept('-'))
                neg = true;
            else
                fail("expected '+' or '-'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw CalcError(CalcError::Kind::Syntax, msg + " at offset " + std::to_string(i_));
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool accept(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    long number()
    {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j])))
            ++j;
        if (j == i_)
            fail("expected a number");
        long v = std::stol(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }

    Poly factor()
    {
        skip();
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            long num = number();
            long den = 1;
            if (accept('/'))
                den = number();
            if (den == 0)
                fail("zero denominator");
            return Poly(make_rational(num, den));
        }
        if (i_ < s_.size() && (s_[i_] == 'x' || s_[i_] == 'm' || s_[i_] == 'y')) {
            const char kind = s_[i_++];
            const std::size_t at = i_;
            if (at >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[at])))
                fail("expected an index");
            int idx = static_cast<int>(number());
            if (kind != 'x' && idx == 0)
                fail(std::string(1, kind) + "0 is not a variable");
            int e = 1;
            if (accept('^'))
                e = static_cast<int>(number());
            return Poly::var({kind, idx}).pow(e);
        }
        fail("expected a coefficient or variable");
    }

    Poly term()
    {
        Poly t = factor();
        while (accept('*'))
            t *= factor();
        return t;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

Var x(int j) { return {'x', j}; }

Poly lions_step(const Poly& f, int fresh)
{
    Poly out;
    const int top = f.max_index('m');
    for (int k = 1; k <= top; ++k) {
        Poly d = f.derivative({'m', k});
        if (d.is_zero())
            continue;
        out += d * Poly(Rational(k)) * Poly::var(x(fresh)).pow(k - 1);
    }
    return out;
}

Rational factorial(std::size_t n)
{
    Rational r(1);
    for (std::size_t i = 2; i <= n; ++i)
        r *= static_cast<long>(i);
    return r;
}

} // namespace

MomentPoly parse_moment_poly(const std::string& text)
{
    Poly p = PolyParser(text).parse();
    if (p.max_index('y') >= 0)
        throw CalcError(CalcError::Kind::Syntax, "particle variables are not allowed in a moment polynomial");
    return {p, std::max(0, p.max_index('x'))};
}

std::string moment_poly_str(const MomentPoly& f) { return f.p.str(); }

MomentPoly lions_derivative(const MomentPoly& f, const PartSeq& a, const TagBinding& bind)
{
    Poly g = f.p;
    int top = 0;
    for (const auto& t : a.entries()) {
        if (t.is_tag) {
            auto it = bind.find(t.tag);
            if (it == bind.end())
                throw CalcError(CalcError::Kind::ArityConflict, "tag #" + t.tag + " is bound to no variable");
            if (it->second > f.arity)
                throw CalcError(CalcError::Kind::ArityConflict, "tag #" + t.tag + " names x" + std::to_string(it->second) + " beyond the arity");
            g = g.derivative(x(it->second));
        } else if (t.num <= top) {
            g = g.derivative(x(f.arity + t.num));
        } else {
            top = t.num;
            g = lions_step(g, f.arity + t.num);
        }
    }
    return {g, f.arity + a.max_num()};
}

Poly empirical_lift(const MomentPoly& f, int n, int i, const std::vector<long>& particle)
{
    if (static_cast<int>(particle.size()) < f.arity)
        throw CalcError(CalcError::Kind::ArityConflict, "lift needs a particle for every free variable");
    std::map<Var, Poly> s;
    s[x(0)] = Poly::var({'y', i});
    for (int j = 1; j <= f.arity; ++j)
        s[x(j)] = Poly::var({'y', static_cast<int>(particle[static_cast<std::size_t>(j - 1)])});
    const Rational inv = make_rational(1, n);
    for (int k = 1; k <= f.p.max_index('m'); ++k) {
        Poly m;
        for (int j = 1; j <= n; ++j)
            m += Poly::var({'y', j}).pow(k);
        s[{'m', k}] = m * Poly(inv);
    }
    return f.p.substitute(s);
}

bool finite_identity_check(const MomentPoly& f, int n, int i, const std::vector<long>& idx)
{
    Poly lhs = empirical_lift(f, n, i);
    for (long p : idx)
        lhs = lhs.derivative({'y', static_cast<int>(p)});
    const PartSeq cls = equiv_class_rep(idx, i);
    Poly rhs;
    for (const auto& a : enumerate_seqs(static_cast<int>(idx.size()), {"0"})) {
        if (!seq_leq(a, cls))
            continue;
        const auto particle = compose_b_circ_a(idx, a);
        Rational w(1);
        for (int j = 0; j < a.max_num(); ++j)
            w /= n;
        rhs += empirical_lift(lions_derivative(f, a), n, i, particle) * Poly(w);
    }
    return lhs == rhs;
}

Rational moment(const DiscreteCoupling& pi, int k, bool target)
{
    Rational s(0);
    for (const auto& [a, b] : pi.atoms) {
        Rational v(1);
        for (int e = 0; e < k; ++e)
            v *= target ? b : a;
        s += v;
    }
    return s / static_cast<long>(pi.atoms.size());
}

Rational eval_at(const MomentPoly& f, const ExpansionPoint& at, bool target)
{
    std::map<Var, Rational> v;
    v[x(0)] = target ? at.y0 : at.x0;
    for (std::size_t j = 0; j < at.free.size(); ++j)
        v[x(static_cast<int>(j) + 1)] = target ? at.free[j].second : at.free[j].first;
    for (int k = 1; k <= f.p.max_index('m'); ++k)
        v[{'m', k}] = moment(at.pi, k, target);
    return f.p.eval(v);
}

Rational D_eval(const MomentPoly& f, const PartSeq& a, const ExpansionPoint& at, const TagBinding& bind)
{
    if (static_cast<int>(at.free.size()) < f.arity)
        throw CalcError(CalcError::Kind::ArityConflict, "expansion point lacks free variables");
    const MomentPoly g = lions_derivative(f, a, bind);
    std::map<Var, Rational> v;
    v[x(0)] = at.x0;
    for (int j = 1; j <= f.arity; ++j)
        v[x(j)] = at.free[static_cast<std::size_t>(j - 1)].first;
    for (int k = 1; k <= g.p.max_index('m'); ++k)
        v[{'m', k}] = moment(at.pi, k, false);

    // Increment of each tag and free-variable position does not depend on the atoms.
    Rational fixed(1);
    for (const auto& t : a.entries())
        if (t.is_tag) {
            const int j = bind.at(t.tag);
            fixed *= j == 0 ? at.y0 - at.x0 : at.free[static_cast<std::size_t>(j - 1)].second - at.free[static_cast<std::size_t>(j - 1)].first;
        }

    const int m = a.max_num();
    const std::size_t n = at.pi.atoms.size();
    std::vector<int> mult(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& t : a.entries())
        if (!t.is_tag)
            ++mult[static_cast<std::size_t>(t.num)];

    Rational sum(0);
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    for (;;) {
        Rational w = fixed;
        for (int j = 1; j <= m; ++j) {
            const auto& [xa, ya] = at.pi.atoms[pick[static_cast<std::size_t>(j - 1)]];
            v[x(f.arity + j)] = xa;
            for (int e = 0; e < mult[static_cast<std::size_t>(j)]; ++e)
                w *= ya - xa;
        }
        sum += w * g.p.eval(v);
        std::size_t d = 0;
        while (d < pick.size() && ++pick[d] == n)
            pick[d++] = 0;
        if (d == pick.size())
            break;
    }
    for (int j = 0; j < m; ++j)
        sum /= static_cast<long>(n);
    return sum;
}

Rational D_a_eval(const MomentPoly& f, const PartSeq& a, const Rational& x0, const Rational& y0, const DiscreteCoupling& pi)
{
    return D_eval(f, a, ExpansionPoint{x0, y0, {}, pi}, {{"0", 0}});
}

Rational taylor_expand_exact(const MomentPoly& f, const Rational& x0, const Rational& y0, const DiscreteCoupling& pi, int order)
{
    Rational sum(0);
    for (int n = 0; n <= order; ++n)
        for (const auto& a : enumerate_seqs(n, {"0"}))
            sum += D_a_eval(f, a, x0, y0, pi) / factorial(a.size());
    return sum;
}

Rational taylor_expand_truncated(const MomentPoly& f, const Rational& x0, const Rational& y0, const DiscreteCoupling& pi,
                                 const GradingParams& g, bool strict)
{
    Rational sum(0);
    for (const auto& a : enumerate_truncated(g, {"0"}, strict))
        sum += D_a_eval(f, a, x0, y0, pi) / factorial(a.size());
    return sum;
}

bool schwarz_check(const MomentPoly& f, const PartSeq& a, const std::vector<int>& sigma)
{
    std::vector<long> b;
    for (int s : sigma) {
        const Token& t = a[static_cast<std::size_t>(s)];
        b.push_back(t.is_tag ? -1 : t.num);
    }
    const PartSeq rep = equiv_class_rep(b, -1);
    std::map<Var, Poly> rename;
    for (std::size_t p = 0; p < rep.size(); ++p)
        if (!rep[p].is_tag)
            rename[x(f.arity + rep[p].num)] = Poly::var(x(f.arity + static_cast<int>(b[p])));
    const Poly lhs = lions_derivative(f, a).p;
    const Poly rhs = lions_derivative(f, rep).p.substitute(rename);
    return lhs == rhs;
}

bool iterated_expand_check(const MomentPoly& f, const PartSeq& a, const ExpansionPoint& at)
{
    const MomentPoly g = lions_derivative(f, a);
    TagBinding bind{{"0", 0}};
    for (int j = 1; j <= a.max_num(); ++j)
        bind[block_tag(a.preimage_num(j))] = j;
    const TagSet tags = suffix_tags(a);
    const int order = g.p.weighted_degree();
    Rational sum(0);
    for (int n = 0; n <= order; ++n)
        for (const auto& ab : enumerate_seqs(n, tags))
            sum += D_eval(g, ab, at, bind) / factorial(ab.size());
    return sum == eval_at(g, at, true);
}

bool split_consistency_check(const MomentPoly& f, const PartSeq& a, std::size_t j)
{
    const auto [a1, a2] = split_seq(a, j);
    TagBinding bind{{"0", 0}};
    for (int k = 1; k <= a1.max_num(); ++k)
        bind[block_tag(a1.preimage_num(k))] = f.arity + k;
    const MomentPoly g = lions_derivative(f, a1);
    return lions_derivative(g, a2, bind).p == lions_derivative(f, a).p;
}

Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
    return make_rational(num(rng), den(rng));
}

MomentPoly random_moment_poly(std::mt19937_64& rng, int max_degree)
{
    // Monomials in x0, m1, m2, m3 up to the weighted degree.
    std::vector<Monomial> pool;
    std::vector<Var> vars{x(0), {'m', 1}, {'m', 2}, {'m', 3}};
    auto weight = [](Var v) { return v.kind == 'm' ? v.index : 1; };
    auto rec = [&](auto&& self, std::size_t i, Monomial cur, int deg) -> void {
        if (i == vars.size()) {
            pool.push_back(cur);
            return;
        }
        for (int e = 0; deg + e * weight(vars[i]) <= max_degree; ++e) {
            Monomial next = cur;
            if (e > 0)
                next[vars[i]] = e;
            self(self, i + 1, next, deg + e * weight(vars[i]));
        }
    };
    rec(rec, 0, {}, 0);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), count(1, 4);
    Poly p;
    const std::size_t terms = count(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        Poly m(random_rational(rng));
        for (const auto& [v, e] : pool[pick(rng)])
            m *= Poly::var(v).pow(e);
        p += m;
    }
    return {p, 0};
}

DiscreteCoupling random_coupling(std::mt19937_64& rng, int n)
{
    DiscreteCoupling pi;
    for (int j = 0; j < n; ++j)
        pi.atoms.emplace_back(random_rational(rng), random_rational(rng));
    return pi;
}

} // namespace lions
